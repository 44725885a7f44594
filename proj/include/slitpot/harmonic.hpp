#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "slitpot/interval_set.hpp"
#include "slitpot/walk.hpp"

namespace slitpot {

/// A Monte Carlo estimate with its standard error.
struct Estimate {
  double value = 0.0;
  double stderr_ = 0.0;
};

struct HarmonicMeasureEstimate {
  cplx source;
  long n_samples = 0;
  std::vector<long> counts;          // per component
  std::vector<double> masses;        // counts / N
  std::vector<double> stderrs;       // sqrt(m (1 - m) / N)
  long nonterminated = 0;
  double nonterminated_fraction = 0.0;
  int bins_per_component = 0;
  /// bin_counts[k][j]: hits on component k with theta in bin j, where
  /// t = mid_k + half_k * cos(theta).
  std::vector<std::vector<long>> bin_counts;
  double mean_steps = 0.0;
  RandomWalkConfig config;

  double total_mass() const;
  /// Fraction of all walks that landed in the given bin.
  double bin_mass(std::size_t component, int bin) const {
    return static_cast<double>(bin_counts[component][static_cast<std::size_t>(bin)]) /
           static_cast<double>(n_samples);
  }
};

/// Options that do not change the estimate itself.
struct SamplingOptions {
  int bins = 32;
  /// Stream id mixed into the per-sample seeds; distinct ids give independent
  /// sample sets under the same master seed.
  std::uint64_t stream = 0;
  /// When non-null, receives every sample in index order.
  std::vector<HitSample>* keep = nullptr;
};

/// Aggregates N independent walks from z0. Throws SamplerFailure when more
/// than 1% of the walks do not terminate.
HarmonicMeasureEstimate estimate_harmonic_measure(const IntervalSet& E, cplx z0, long N,
                                                  const RandomWalkConfig& cfg,
                                                  const SamplingOptions& opt = {});

/// Same aggregation over an existing sample list (for example a cache).
HarmonicMeasureEstimate summarize_samples(const IntervalSet& E, cplx z0,
                                          const std::vector<HitSample>& samples,
                                          const RandomWalkConfig& cfg, int bins = 32);

/// Runs N walks and returns them in index order.
std::vector<HitSample> draw_samples(const Walker& walker, cplx z0, long N,
                                    std::uint64_t stream = 0);

/// Green function G(z, pole) of C \ E for bounded E.
///
/// With X the hitting point of a walk from z and t0 any point of E,
///   G(z, p) = E log|(X - p) / (X - t0)| - log|(z - p) / (z - t0)|.
/// The t0 terms carry the Green function with pole at infinity, which the
/// bare log-kernel average misses whenever E is bounded.
Estimate green_at(const IntervalSet& E, cplx z, cplx pole, long N,
                  const RandomWalkConfig& cfg, std::uint64_t stream = 0);

/// Green function with pole at infinity, log|z - t0| - E log|X - t0|.
Estimate green_infinity_at(const IntervalSet& E, cplx z, long N,
                           const RandomWalkConfig& cfg, std::uint64_t stream = 0);

struct MartinEstimate {
  std::vector<cplx> queries;
  double R = 0.0;
  /// Escape probabilities P_z(reach |w| = R before E), at R and 2R.
  std::vector<Estimate> escape_R, escape_2R;
  Estimate escape_i_R, escape_i_2R;
  /// Normalized values p(z) / p(i) at 2R (primary) and R.
  std::vector<Estimate> values, values_R;
  /// max over queries of |v_2R - v_R| / v_2R.
  double discrepancy = 0.0;
  bool converged = true;
  /// value(i y_max) / y_max over the purely imaginary queries (NaN if none).
  double sigma_hat = NAN;
};

/// Symmetric Martin function normalized to 1 at i, as a ratio of escape
/// probabilities from {|w| < R} \ E. Requires R > 10 * max(|q|, |e|) over
/// queries q and endpoints e inside the disk.
MartinEstimate martin_ratio(const IntervalSet& E, const std::vector<cplx>& queries, double R,
                            long N, const RandomWalkConfig& cfg);

struct BetaSample {
  double t = 0.0;
  double beta_hat = 0.0;
  double stderr_ = 0.0;
  long n_samples = 0;
};

/// Harmonic measure of the boundary of S_t = {|x - t| < t/2, |y| < t/2} in
/// S_t \ E, seen from t.
BetaSample beta_at(const IntervalSet& E, double t, long N, const RandomWalkConfig& cfg,
                   std::uint64_t stream = 0);

struct SquarePointResult {
  cplx point;
  Estimate omega_H, omega_V;
  bool holds = false;  // omega_H >= omega_V - 3 (se_H + se_V)
};

/// Harmonic measures of the horizontal and vertical sides of the square
/// {|Re z - x| < t, |Im z| < t} with the slits E removed.
std::vector<SquarePointResult> square_lemma_check(const IntervalSet& E, double x, double t,
                                                  const std::vector<cplx>& points, long N,
                                                  const RandomWalkConfig& cfg);

struct DecayRow {
  double y = 0.0;
  Estimate h;        // harmonic measure of the marked component from iy
  Estimate martin;   // normalized Martin value at iy
  double ratio = 0.0;
  double ratio_stderr = 0.0;
};

struct DecayTable {
  std::vector<DecayRow> rows;
  bool martin_converged = true;
  bool decreasing_end = false;  // final ratio strictly below the first
  bool monotone_smoothed = false;
  double R = 0.0;
};

DecayTable lemma1_decay_check(const IntervalSet& E, std::size_t marked,
                              const std::vector<double>& y_grid, long N,
                              const RandomWalkConfig& cfg);

/// Integral of |t - lambda|^(-d) against the harmonic measure from i.
/// 80% of the budget is unconditional; 20% is drawn conditionally on hitting
/// the component that contains lambda and reweighted by its mass.
Estimate harmonic_moment(const IntervalSet& E, double lambda, double d, long N,
                         const RandomWalkConfig& cfg);

}  // namespace slitpot

#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "slitpot/entire.hpp"
#include "slitpot/extremal.hpp"
#include "slitpot/harmonic.hpp"
#include "slitpot/weight.hpp"

namespace slitpot {

// ---------------------------------------------------------------------------
// Mergelyan integrals of log M_W^(n)

struct MergelyanMeasure {
  enum class Kind {
    omega,     // sampled harmonic measure from i
    poisson,   // dx / (1 + x^2)
    benedicks  // dx / (1 + |x|^(1 + 1/p))
  };
  Kind kind = Kind::poisson;
  double p = 2.0;
  /// Hit samples for Kind::omega; walks that did not end on E count as zero.
  const std::vector<HitSample>* samples = nullptr;

  static MergelyanMeasure omega(const std::vector<HitSample>& s) {
    return {Kind::omega, 2.0, &s};
  }
  static MergelyanMeasure poisson() { return {Kind::poisson, 2.0, nullptr}; }
  static MergelyanMeasure benedicks(double p) { return {Kind::benedicks, p, nullptr}; }
};

struct MergelyanValue {
  double value = 0.0;
  double stderr_ = 0.0;   // omega only
  /// Largest share of the total carried by the first or the last component.
  double edge_share = 0.0;
  bool truncated = false; // edge_share > 0.1
};

/// Integral of log M over E, with log M interpolated linearly between the
/// profile points of each component (constant beyond the outer points).
/// Every component needs at least one profile point.
MergelyanValue mergelyan_integral_n(const IntervalSet& E, const std::vector<ProfilePoint>& profile,
                                    const MergelyanMeasure& mu);

/// Chebyshev-Lobatto points, `per_component` of them (at least 2) per component.
std::vector<double> profile_nodes(const IntervalSet& E, int per_component);

/// Integral over R of max(log|P|, 0) / (1 + x^2) for a witness polynomial.
double akhiezer_integral(const ExtremalWitness& w);

// ---------------------------------------------------------------------------
// de Branges sums

struct DeBrangesSums {
  std::vector<double> zeros;
  std::vector<double> log_terms;    // log W(lambda) - log|F'(lambda)|
  std::vector<double> log_partial;
  std::vector<double> partial;      // may be +inf where the log form is finite
  /// (S_K - S_{K/10}) / (S_{K/10} - S_{K/100}), computed in log space.
  double last_decade_ratio = 0.0;
  bool summable = false;            // last_decade_ratio < 0.9
};

/// Partial sums of W(lambda_n) / |F'(lambda_n)| over the first K zeros
/// (K <= 0 takes all). Throws std::invalid_argument for a zero outside the
/// support of W.
DeBrangesSums debranges_sum(const Weight& W, const KreinFunction& F, long K = 0);

// ---------------------------------------------------------------------------
// Diagnostics and verdict

struct DensityConfig {
  std::vector<int> degrees{4, 8, 12, 16, 24};
  std::complex<double> probe{0.0, 1.0};
  int nodes_per_component = 5;
  double benedicks_p = 2.0;
  GridPolicy policy;
};

struct DensityRow {
  int degree = 0;
  MergelyanValue omega, poisson, benedicks;
  ExtremalWitness probe_witness;
  double ab = 0.0;      // Akhiezer integral of the probe witness
  double ab_sup = 0.0;  // running maximum over the degrees so far
  double probe_log_value = 0.0;  // log of the phase-relaxed value at the probe
  double db_partial = NAN;       // de Branges partial sum over min(degree, K) terms
};

struct DensityDiagnostics {
  std::vector<DensityRow> rows;
  std::optional<DeBrangesSums> debranges;
  long omega_samples = 0;
};

/// Profiles, integrals and probe witnesses for every configured degree.
/// `samples` are walks from i on supp W (may be empty: the omega column is
/// then NaN).
DensityDiagnostics density_diagnostics(const Weight& W, const DensityConfig& cfg,
                                       const std::vector<HitSample>& samples,
                                       std::optional<DeBrangesSums> debranges = std::nullopt);

/// degree,integral_omega,integral_poisson,integral_benedicks,ab_sup,db_partial
std::string diagnostics_csv(const DensityDiagnostics& d);

enum class Verdict { dense_suggested, not_dense_suggested, inconclusive };
std::string verdict_label(Verdict v);

struct VerdictRecord {
  Verdict verdict = Verdict::inconclusive;
  /// Ratio of the last two increments per unit log-degree (growth persists at >= 0.9).
  double poisson_increment_ratio = 0.0;
  double omega_increment_ratio = 0.0;
  /// Ratio of the last two probe slopes per unit degree.
  double probe_slope_ratio = 0.0;
  double probe_last_slope = 0.0;
  bool mergelyan_growing = false;
  bool mergelyan_plateau = false;
  bool probe_geometric = false;
  bool debranges_summable = false;
  bool debranges_divergent = false;  // last-decade ratio >= 1
  bool omega_plateau = false;
  std::string evidence;
};

/// Heuristic reading of truncated data. A summable de Branges sum with a
/// plateauing Poisson integral gives not-dense-suggested; otherwise sustained
/// Poisson growth, geometric probe growth or de Branges partial sums whose
/// increments do not shrink give dense-suggested. On a
/// compact window the probe always grows geometrically for large n, which is
/// why the not-dense evidence is checked first. Needs at least 5 degrees.
VerdictRecord density_verdict(const DensityDiagnostics& d);

// ---------------------------------------------------------------------------
// Constructions

struct PropASpec {
  int n_max = 4;             // intervals I_1 .. I_n_max around e^n
  long samples = 20000;      // walks per two-slit estimate
  double length_floor = 1e-2;  // shorter intervals leave the degree-24 program numerically singular
  RandomWalkConfig walk;     // eps_shell 0 selects 1e-3 * current length
};

struct PropAComponent {
  int n = 0;
  Interval interval;
  double target = 0.0;       // n^-2 e^-n (n > 1)
  Estimate omega;            // two-slit harmonic measure of I_n from i
  double omega_upper = 0.0;  // omega + 3 stderr, or 3 / N with no hits
  bool target_met = true;
  int halvings = 0;
};

struct PropASet {
  IntervalSet E;
  std::vector<PropAComponent> components;
  Weight W;                  // exp exp n on I_n
  CanonicalProductSpec F;    // zeros e^n, n >= 1; the first n_max lie in E
};

/// Intervals I_n containing e^n with W = exp exp n. Lengths start at 1 and
/// are halved until the two-slit measure is below n^-2 e^-n with a
/// 3-stderr margin, or the floor is reached.
PropASet build_prop_a(const PropASpec& spec);

struct PropBSpec {
  double rho = 0.3;
  int n_max = 4;               // unit intervals centred at +-e^n
  double lambda_halfwidth = 0.05;
  long debranges_pairs = 1000; // zeros +-lambda_k, k <= pairs
  long product_N = 10000;
  double shift = -3.0;         // W_r used in the de Branges sum
};

struct PropBSet {
  IntervalSet E;        // unit intervals plus small intervals around the zeros in the window
  Weight W;             // power law on E
  IntervalSet E_db;     // small intervals around every zero used in the sum
  Weight W_db;          // power law on E_db, shifted
  CanonicalProductSpec F;
};

PropBSet build_prop_b(const PropBSpec& spec);

}  // namespace slitpot

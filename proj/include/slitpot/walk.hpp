#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>

#include "slitpot/interval_set.hpp"
#include "slitpot/rng.hpp"

namespace slitpot {

using cplx = std::complex<double>;

struct RandomWalkConfig {
  /// Absorption distance to E. 0 selects 1e-6 * (shortest component length).
  double eps_shell = 0.0;
  /// Upper bound on the jump radius.
  double step_cap = 1e4;
  long max_steps = 1'000'000;
  /// Beyond this modulus the walk is returned to the circle of this radius by
  /// sampling the exact exterior hitting distribution. 0 selects
  /// max(2 * hull radius, 4).
  double escape_radius = 0.0;
  std::uint64_t seed = 1;
  /// Thread count; 0 uses the default. Never changes results.
  unsigned workers = 0;
};

/// Fills the automatic fields and checks the constraints against E.
/// `min_steps` is the smallest acceptable max_steps (aggregate estimators
/// insist on 1000).
RandomWalkConfig resolve_config(const IntervalSet& E, RandomWalkConfig cfg,
                                long min_steps = 1000);

/// Raised when more than 1% of walks exhaust their step budget.
class SamplerFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Outcome : std::uint8_t { hit_set, hit_outer, unterminated };

struct HitSample {
  Outcome outcome = Outcome::unterminated;
  /// Projected hit point on E (hit_set only; NaN otherwise).
  double hit_point = NAN;
  /// Component of E that was hit, -1 otherwise.
  int component = -1;
  long steps = 0;
  /// Final position: the projection onto E or onto the outer boundary.
  cplx exit{NAN, NAN};

  bool terminated() const { return outcome != Outcome::unterminated; }
};

/// Optional absorbing outer boundary.
struct OuterBoundary {
  enum class Kind { none, circle, square };
  Kind kind = Kind::none;
  cplx center{0.0, 0.0};
  /// Circle radius, or half side of an axis-parallel square.
  double size = 0.0;

  static OuterBoundary circle(double R, cplx c = {0.0, 0.0}) {
    return {Kind::circle, c, R};
  }
  static OuterBoundary square(cplx c, double half) { return {Kind::square, c, half}; }

  bool contains(cplx z) const;
  /// True when an exit point lies on a horizontal side of the square.
  bool on_horizontal_side(cplx exit) const;
};

/// Walk-on-spheres sampler for the domain (C \ E) ∩ interior(outer).
///
/// Jumps to a uniform point on the circle of radius
/// min(dist(z, E), dist(z, outer), step_cap); absorbs within eps_shell of E
/// (projecting to the nearest point of E) or of the outer boundary.
class Walker {
 public:
  Walker(const IntervalSet& E, const RandomWalkConfig& resolved,
         OuterBoundary outer = {});

  HitSample walk(cplx z0, SplitMix64& rng) const;

  const IntervalSet& set() const { return E_; }
  const RandomWalkConfig& config() const { return cfg_; }
  const OuterBoundary& outer() const { return outer_; }

 private:
  IntervalSet E_;
  RandomWalkConfig cfg_;
  OuterBoundary outer_;
};

/// One walk from z0. Throws std::invalid_argument when z0 lies on E.
HitSample sample_hit(const IntervalSet& E, cplx z0, const RandomWalkConfig& cfg,
                     SplitMix64& rng);

}  // namespace slitpot

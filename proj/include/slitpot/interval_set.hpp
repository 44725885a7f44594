#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace slitpot {

struct Interval {
  double a = 0.0;
  double b = 0.0;

  double length() const { return b - a; }
  double mid() const { return 0.5 * (a + b); }
  double half() const { return 0.5 * (b - a); }
  bool contains(double t) const { return a <= t && t <= b; }
  /// Distance from the origin to the interval.
  double dist_to_origin() const {
    if (a <= 0.0 && 0.0 <= b) return 0.0;
    return std::min(std::abs(a), std::abs(b));
  }
};

/// Asserts |I_m| >= c * max(dist(0, I_m), 1)^(-M) for every component.
struct LengthFloor {
  double c = 1.0;
  double M = 0.0;
};

/// Result of projecting a plane point onto the set.
struct Nearest {
  double distance = 0.0;
  double point = 0.0;          // nearest point of E on the real axis
  std::size_t component = 0;   // index of the component containing `point`
};

/// Ordered, strictly disjoint union of nondegenerate closed real intervals.
///
/// The empty set is representable (used for "no slit" configurations); every
/// estimator that needs a nonempty boundary checks for it.
class IntervalSet {
 public:
  IntervalSet() = default;

  /// Validates ordering, nondegeneracy, disjointness and the optional floor.
  /// Throws std::invalid_argument on violation.
  explicit IntervalSet(std::vector<Interval> components,
                       std::optional<LengthFloor> floor = std::nullopt);

  /// Sorts and merges overlapping (or touching) intervals before validating.
  static IntervalSet merged(std::vector<Interval> pieces,
                            std::optional<LengthFloor> floor = std::nullopt);

  std::span<const Interval> components() const { return components_; }
  std::size_t size() const { return components_.size(); }
  bool empty() const { return components_.empty(); }
  const Interval& operator[](std::size_t i) const { return components_[i]; }
  const std::optional<LengthFloor>& length_floor() const { return floor_; }

  Interval hull() const;
  /// max |endpoint|; zero for the empty set.
  double hull_radius() const;
  double min_length() const;
  bool contains(double t) const;

  /// Nearest point of E to z (z anywhere in the plane). Requires a nonempty set.
  Nearest nearest(std::complex<double> z) const {
    const double x = z.real();
    const double ay = std::abs(z.imag());
    // First component whose left endpoint exceeds x.
    std::size_t lo = 0, hi = components_.size();
    while (lo < hi) {
      const std::size_t m = (lo + hi) / 2;
      if (components_[m].a <= x) lo = m + 1; else hi = m;
    }
    Nearest best{INFINITY, 0.0, 0};
    if (lo > 0) {
      const Interval& left = components_[lo - 1];
      if (x <= left.b) return {ay, x, lo - 1};
      best = {std::hypot(x - left.b, ay), left.b, lo - 1};
    }
    if (lo < components_.size()) {
      const Interval& right = components_[lo];
      const double d = std::hypot(right.a - x, ay);
      if (d < best.distance) best = {d, right.a, lo};
    }
    return best;
  }

  double distance(std::complex<double> z) const { return nearest(z).distance; }

  /// Lebesgue measure of E within [lo, hi].
  double measure_within(double lo, double hi) const;

  bool operator==(const IntervalSet& other) const;

 private:
  std::vector<Interval> components_;
  std::optional<LengthFloor> floor_;
};

// ---------------------------------------------------------------------------
// Location queries

struct Location {
  enum class Kind { component, gap, below_hull, above_hull };
  Kind kind = Kind::component;
  /// For `component`: the component index. For `gap`: index of the component
  /// on the left of the gap (the right neighbour is index + 1).
  std::size_t index = 0;
};

/// Exact classification of t; endpoints belong to their component.
Location locate(const IntervalSet& E, double t);

// ---------------------------------------------------------------------------
// Power-gap sets  E = U_n [ |n|^p sgn n - delta, |n|^p sgn n + delta ]

struct BenedicksSetSpec {
  double p = 2.0;
  double delta = 0.25;
  long n_min = -3;
  long n_max = 3;
};

double benedicks_center(double p, long n);
IntervalSet make_benedicks_set(const BenedicksSetSpec& spec);

// ---------------------------------------------------------------------------
// Metric tests on a window [-T, T]

struct MetricReport {
  double T = 0.0;
  /// Integral of dx / (1 + |x|) over [-T, T] \ E.
  double gap_integral = 0.0;
  /// Integral of dist(x, E) / (1 + x^2) over [-T, T].
  double dist_integral = 0.0;
  /// Window-limited relative-density verdict.
  bool relatively_dense = false;
  double witness_a = 0.0;   // window length a of the witness (when dense)
  double witness_b = 0.0;   // guaranteed measure b in every window of length a
  Interval largest_gap{};   // counterexample evidence
  bool window_limited = true;
};

MetricReport metric_tests(const IntervalSet& E, double T);

// ---------------------------------------------------------------------------
// Text formats

/// One `a b` pair per line, `#` comments; a `# length_floor c=<c> M=<M>`
/// directive carries the optional floor.
std::string format_interval_set(const IntervalSet& E);
IntervalSet parse_interval_set(const std::string& text);

std::string format_benedicks_spec(const BenedicksSetSpec& spec);
BenedicksSetSpec parse_benedicks_spec(const std::string& text);

}  // namespace slitpot

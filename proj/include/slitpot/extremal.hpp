#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include "slitpot/weight.hpp"

namespace slitpot {

struct GridPolicy {
  /// Per component: max(min_points, per_degree * (n + 1)) Chebyshev points
  /// plus the endpoints.
  int min_points = 16;
  int per_degree = 4;
  /// Refinement rounds that add local maximizers of |P| / W off the grid.
  int refine_rounds = 40;
  /// Continuous violation accepted by the refinement, relative.
  double refine_tol = 1e-9;
};

/// Chebyshev constraint grid on every component of W's support.
std::vector<double> default_grid(const IntervalSet& E, int n, const GridPolicy& policy = {});

/// Optimal polynomial for max Re(e^{i phase} P(z0)) subject to |P| <= W on
/// the grid, written in Chebyshev polynomials of (x - mid) / half over the
/// hull [lo, hi] of the grid.
struct ExtremalWitness {
  int degree = 0;
  std::complex<double> z0;
  double value = 0.0;      // achieved |P(z0)| (or the phase-relaxed value)
  double log_value = 0.0;
  /// True for complex z0: the phase relaxation over real coefficients
  /// bounds the Hall majorant from below only.
  bool lower_bound = false;
  double phase = 0.0;
  double lo = 0.0, hi = 0.0;
  std::vector<double> coeffs;
  std::vector<double> active_points;
  std::size_t grid_size = 0;
  int iterations = 0;
  int refinements = 0;
  /// max_j |P(x_j)| / W(x_j) - 1 over the final grid.
  double grid_violation = 0.0;

  double eval(double x) const;
  std::complex<double> eval(std::complex<double> z) const;
  /// JSON object with the fields above.
  std::string to_json() const;
};

class ExtremalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Dual simplex (exchange) solver for the finite Hall-majorant program
///   max c . pi  s.t.  |phi(x_j) . pi| <= W(x_j),
/// over polynomials of degree n. Internally the basis is orthonormal for
/// the 1/W-weighted grid (built by Arnoldi), which keeps the program well
/// scaled when W spans many orders of magnitude; witnesses are reported in
/// Chebyshev form. The active set is kept between solves, so a sequence of
/// probes reuses the previous optimum.
class ExtremalSolver {
 public:
  /// `grid` may be empty (default_grid is used). Points must lie in E.
  ExtremalSolver(Weight W, int n, std::vector<double> grid = {}, GridPolicy policy = {});

  /// Real z0: max |P(z0)|. Complex z0: the best of 32 phases in [0, pi)
  /// (the other 32 of the 64-phase grid give the same values with P -> -P).
  /// Real z0 inside E is added to the grid first.
  ExtremalWitness solve(std::complex<double> z0);

  int degree() const { return n_; }
  std::size_t grid_size() const { return xs_.size(); }
  const std::vector<double>& grid() const { return xs_; }

 private:
  using real = long double;

  /// Basis values q_0..q_n at x (Arnoldi recurrence).
  void basis_row(real x, real* out) const;
  void add_point(double x);
  void initial_basis();
  /// Simplex iterations for the current objective; returns the iteration count.
  int optimize(const std::vector<real>& c);
  /// Adds off-grid local maxima of |P| / W; returns how many were added.
  int refine(const std::vector<real>& pi, double probe);
  /// cap_log: log W(z0) when z0 is a point of E, +inf otherwise.
  ExtremalWitness solve_phase(std::complex<double> z0, double phase, double cap_log);
  std::vector<real> objective(std::complex<double> z0, double phase) const;
  std::vector<real> current_pi() const;
  real eval_pi(const std::vector<real>& pi, real x) const;
  /// Chebyshev coefficients on [lo_, hi_] of the polynomial with basis coefficients pi.
  std::vector<double> to_chebyshev(const std::vector<real>& pi) const;

  Weight W_;
  int n_;
  GridPolicy policy_;
  double lo_, hi_;
  real center_ = 0.0, scale_ = 1.0;
  /// Polynomials orthonormal for sum_j q(x_j)^2 / W(x_j)^2 over the initial
  /// grid: q_0 = q0_, q_{k+1} = (t q_k - sum_{i<=k} h(i,k) q_i) / h(k+1,k) in
  /// t = (x - center_) / scale_. h_ is (n + 2) x (n + 1), column-major.
  real q0_ = 1.0;
  std::vector<real> h_;
  std::vector<double> xs_;
  std::vector<real> phi_;  // row-major, xs_.size() x (n + 1), rows divided by W(x_j)
  std::vector<std::size_t> basis_;
  std::vector<int> signs_;
  bool have_basis_ = false;
  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  std::size_t excluded_ = kNone;  // grid point left out of the current solve
  std::vector<real> last_c_;
};

/// One-shot solve with a fresh solver.
ExtremalWitness hall_majorant_n(const Weight& W, std::complex<double> z0, int n,
                                const std::vector<double>& grid = {}, const GridPolicy& policy = {});

struct ProfilePoint {
  double x = 0.0;
  double log_m = 0.0;
  double log_w = 0.0;  // +inf off E
};

/// x -> log M_W^(n)(x) over eval_points with one warm-started solver.
std::vector<ProfilePoint> hall_profile(const Weight& W, int n, const std::vector<double>& eval_points,
                                       const std::vector<double>& grid = {},
                                       const GridPolicy& policy = {});

struct GrowthRow {
  double x = 0.0;
  int degree = 0;
  double log_m = 0.0;
  double log_w = 0.0;
  double ratio = 0.0;  // log M / log W
};

struct GrowthTable {
  std::vector<GrowthRow> rows;  // grouped by x, degrees in the given order
  bool bounded = true;          // every ratio <= 1 + 1e-6
  bool nondecreasing = true;    // per x, in degree
  double final_min_ratio = 0.0; // min over x at the largest degree
};

/// Ratio log M^(n)(x) / log W(x) for a power-law weight on its support.
/// Requires log W(x) >= 1 at every x.
GrowthTable growth_ratio_check(const Weight& W, const std::vector<int>& degrees,
                               const std::vector<double>& x_points, const GridPolicy& policy = {});

}  // namespace slitpot

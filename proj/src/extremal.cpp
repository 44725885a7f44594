#include "slitpot/extremal.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <unordered_set>

#include "json.hpp"
#include "slitpot/rng.hpp"
#include "slitpot/text.hpp"

namespace slitpot {

using cplx = std::complex<double>;

namespace {

using real = long double;
using MatrixR = Eigen::Matrix<real, Eigen::Dynamic, Eigen::Dynamic>;
using VectorR = Eigen::Matrix<real, Eigen::Dynamic, 1>;

constexpr double kPriceTol = 1e-11;
constexpr real kEps = std::numeric_limits<real>::epsilon();
constexpr double kMaxLogWeight = 650.0;

template <class T>
T clenshaw(const std::vector<double>& a, T u) {
  T b1{0.0}, b2{0.0};
  for (std::size_t k = a.size(); k-- > 1;) {
    const T t = T{2.0} * u * b1 - b2 + T{a[k]};
    b2 = b1;
    b1 = t;
  }
  return a.empty() ? T{0.0} : u * b1 - b2 + T{a[0]};
}

}  // namespace

std::vector<double> default_grid(const IntervalSet& E, int n, const GridPolicy& policy) {
  if (n < 0) throw std::invalid_argument("degree must be >= 0");
  const int m = std::max(policy.min_points, policy.per_degree * (n + 1));
  std::vector<double> xs;
  for (const Interval& I : E.components()) {
    xs.push_back(I.a);
    for (int j = m - 1; j >= 0; --j)
      xs.push_back(I.mid() + I.half() * std::cos(std::numbers::pi * (j + 0.5) / m));
    xs.push_back(I.b);
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  return xs;
}

double ExtremalWitness::eval(double x) const {
  const real c = 0.5L * (static_cast<real>(lo) + hi), h = 0.5L * (static_cast<real>(hi) - lo);
  return static_cast<double>(clenshaw(coeffs, (x - c) / h));
}

cplx ExtremalWitness::eval(cplx z) const {
  const double c = 0.5 * (lo + hi), h = 0.5 * (hi - lo);
  return clenshaw(coeffs, (z - c) / h);
}

std::string ExtremalWitness::to_json() const {
  nlohmann::json j;
  j["degree"] = degree;
  j["z0"] = {z0.real(), z0.imag()};
  j["value"] = value;
  j["log_value"] = log_value;
  j["lower_bound"] = lower_bound;
  j["phase"] = phase;
  j["basis_interval"] = {lo, hi};
  j["coefficients"] = coeffs;
  j["active_points"] = active_points;
  j["grid_size"] = grid_size;
  j["iterations"] = iterations;
  j["refinements"] = refinements;
  j["grid_violation"] = grid_violation;
  return j.dump(2);
}

// ---------------------------------------------------------------------------

ExtremalSolver::ExtremalSolver(Weight W, int n, std::vector<double> grid, GridPolicy policy)
    : W_(std::move(W)), n_(n), policy_(policy) {
  if (n < 0) throw std::invalid_argument("degree must be >= 0");
  if (grid.empty()) grid = default_grid(W_.support(), n, policy_);
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  if (grid.size() < static_cast<std::size_t>(n) + 2)
    throw std::invalid_argument("constraint grid needs at least n + 2 points");
  lo_ = grid.front();
  hi_ = grid.back();
  if (!(lo_ < hi_)) throw std::invalid_argument("constraint grid is degenerate");
  center_ = 0.5L * (static_cast<real>(lo_) + hi_);
  scale_ = 0.5L * (static_cast<real>(hi_) - lo_);

  // Weighted Arnoldi on the grid.
  const std::size_t m = grid.size(), d = static_cast<std::size_t>(n) + 1;
  std::vector<real> t(m), w2(m);
  for (std::size_t j = 0; j < m; ++j) {
    const double lw = W_.log_weight(grid[j]);
    if (!std::isfinite(lw)) throw std::invalid_argument("grid point " + fmt_short(grid[j]) + " is not in E");
    if (lw > kMaxLogWeight) throw ExtremalError("log W = " + fmt_short(lw) + " exceeds the supported range");
    t[j] = (grid[j] - center_) / scale_;
    w2[j] = std::exp(-2.0L * lw);
  }
  auto dot = [&](const std::vector<real>& a, const std::vector<real>& b) {
    real s = 0.0;
    for (std::size_t j = 0; j < m; ++j) s += a[j] * b[j] * w2[j];
    return s;
  };
  std::vector<std::vector<real>> Q(d, std::vector<real>(m));
  real norm0 = 0.0;
  for (std::size_t j = 0; j < m; ++j) norm0 += w2[j];
  q0_ = 1.0L / std::sqrt(norm0);
  std::fill(Q[0].begin(), Q[0].end(), q0_);
  h_.assign((d + 1) * d, 0.0L);
  for (std::size_t k = 0; k + 1 < d; ++k) {
    std::vector<real> v(m);
    for (std::size_t j = 0; j < m; ++j) v[j] = t[j] * Q[k][j];
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t i = 0; i <= k; ++i) {
        const real c = dot(Q[i], v);
        h_[k * (d + 1) + i] += c;
        for (std::size_t j = 0; j < m; ++j) v[j] -= c * Q[i][j];
      }
    }
    const real nv = std::sqrt(dot(v, v));
    if (!(nv > 0.0L)) throw ExtremalError("constraint grid does not determine a degree-" + std::to_string(n) + " polynomial");
    h_[k * (d + 1) + k + 1] = nv;
    for (std::size_t j = 0; j < m; ++j) Q[k + 1][j] = v[j] / nv;
  }
  for (double x : grid) add_point(x);
}

void ExtremalSolver::basis_row(real x, real* out) const {
  const std::size_t d = static_cast<std::size_t>(n_) + 1;
  const real t = (x - center_) / scale_;
  out[0] = q0_;
  for (std::size_t k = 0; k + 1 < d; ++k) {
    real v = t * out[k];
    for (std::size_t i = 0; i <= k; ++i) v -= h_[k * (d + 1) + i] * out[i];
    out[k + 1] = v / h_[k * (d + 1) + k + 1];
  }
}

ExtremalSolver::real ExtremalSolver::eval_pi(const std::vector<real>& pi, real x) const {
  std::vector<real> row(pi.size());
  basis_row(x, row.data());
  real p = 0.0;
  for (std::size_t k = 0; k < pi.size(); ++k) p += row[k] * pi[k];
  return p;
}

void ExtremalSolver::add_point(double x) {
  if (x < lo_ || x > hi_) throw std::invalid_argument("grid point outside the basis interval");
  const double lw = W_.log_weight(x);
  if (!std::isfinite(lw)) throw std::invalid_argument("grid point " + fmt_short(x) + " is not in E");
  if (lw > kMaxLogWeight) throw ExtremalError("log W = " + fmt_short(lw) + " exceeds the supported range");
  const std::size_t d = static_cast<std::size_t>(n_) + 1;
  xs_.push_back(x);
  phi_.resize(xs_.size() * d);
  real* row = &phi_[(xs_.size() - 1) * d];
  basis_row(x, row);
  const real s = std::exp(-static_cast<real>(lw));
  for (std::size_t k = 0; k < d; ++k) row[k] *= s;
}

void ExtremalSolver::initial_basis() {
  // Gaussian elimination with row pivoting on the constraint matrix picks
  // n + 1 well-separated interpolation points.
  const std::size_t m = xs_.size(), d = static_cast<std::size_t>(n_) + 1;
  std::vector<real> A = phi_;
  std::vector<bool> used(m, false);
  basis_.clear();
  for (std::size_t k = 0; k < d; ++k) {
    std::size_t best = m;
    real best_abs = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      if (used[i] || i == excluded_) continue;
      const real a = std::abs(A[i * d + k]);
      if (a > best_abs) { best_abs = a; best = i; }
    }
    if (best == m) throw ExtremalError("constraint grid does not determine a degree-" +
                                       std::to_string(n_) + " polynomial");
    used[best] = true;
    basis_.push_back(best);
    for (std::size_t i = 0; i < m; ++i) {
      if (used[i]) continue;
      const real f = A[i * d + k] / A[best * d + k];
      for (std::size_t j = k; j < d; ++j) A[i * d + j] -= f * A[best * d + j];
    }
  }
  signs_.assign(d, 0);
  have_basis_ = true;
}

std::vector<ExtremalSolver::real> ExtremalSolver::objective(cplx z0, double phase) const {
  using cr = std::complex<real>;
  const std::size_t d = static_cast<std::size_t>(n_) + 1;
  const cr t = (cr(z0.real(), z0.imag()) - center_) / scale_;
  const cr rot = std::polar(1.0L, static_cast<real>(phase));
  std::vector<cr> q(d);
  q[0] = q0_;
  for (std::size_t k = 0; k + 1 < d; ++k) {
    cr v = t * q[k];
    for (std::size_t i = 0; i <= k; ++i) v -= h_[k * (d + 1) + i] * q[i];
    q[k + 1] = v / h_[k * (d + 1) + k + 1];
  }
  std::vector<real> out(d);
  for (std::size_t k = 0; k < d; ++k) out[k] = (rot * q[k]).real();
  return out;
}

std::vector<ExtremalSolver::real> ExtremalSolver::current_pi() const {
  const std::size_t d = static_cast<std::size_t>(n_) + 1;
  MatrixR B(d, d);
  VectorR rhs(d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t k = 0; k < d; ++k) B(i, k) = phi_[basis_[i] * d + k];
    rhs(i) = signs_[i];
  }
  const VectorR pi = B.partialPivLu().solve(rhs);
  return {pi.data(), pi.data() + d};
}

std::vector<double> ExtremalSolver::to_chebyshev(const std::vector<real>& pi) const {
  // Interpolation at the d Chebyshev points of the first kind is exact for
  // degree n = d - 1.
  const std::size_t d = pi.size();
  std::vector<real> f(d);
  for (std::size_t j = 0; j < d; ++j) {
    const real u = std::cos(std::numbers::pi_v<real> * (static_cast<real>(j) + 0.5L) / static_cast<real>(d));
    f[j] = eval_pi(pi, center_ + scale_ * u);
  }
  std::vector<double> a(d);
  for (std::size_t k = 0; k < d; ++k) {
    real s = 0.0;
    for (std::size_t j = 0; j < d; ++j)
      s += f[j] * std::cos(std::numbers::pi_v<real> * static_cast<real>(k) * (static_cast<real>(j) + 0.5L) /
                           static_cast<real>(d));
    a[k] = static_cast<double>((k == 0 ? 1.0L : 2.0L) * s / static_cast<real>(d));
  }
  return a;
}

int ExtremalSolver::optimize(const std::vector<real>& c) {
  const std::size_t m = xs_.size(), d = static_cast<std::size_t>(n_) + 1;
  if (!have_basis_) initial_basis();
  const bool fresh = c != last_c_;
  last_c_ = c;
  VectorR cv(d);
  for (std::size_t k = 0; k < d; ++k) cv(static_cast<long>(k)) = c[k];

  const int max_iter = static_cast<int>(20 * m + 100 * d + 1000);
  int degenerate_run = 0, resets = 0;
  bool bland = false;
  std::unordered_set<std::uint64_t> seen;  // active sets visited so far
  bool need_signs = fresh || std::find(signs_.begin(), signs_.end(), 0) != signs_.end();
  std::vector<bool> in_basis(m, false);
  for (int iter = 0; iter < max_iter; ++iter) {
    std::fill(in_basis.begin(), in_basis.end(), false);
    for (auto j : basis_) in_basis[j] = true;
    {
      // Rounding can make the exchange return to an earlier active set; the
      // smallest-point rule is used from then on.
      std::uint64_t h = 1469598103934665603ull;
      for (std::size_t j = 0; j < m; ++j)
        if (in_basis[j]) h = splitmix64_mix(h ^ j);
      if (!seen.insert(h).second) bland = true;
    }

    MatrixR B(d, d);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t k = 0; k < d; ++k) B(i, k) = phi_[basis_[i] * d + k];
    Eigen::PartialPivLU<MatrixR> lu(B);
    const real rcond = lu.rcond();
    if (!(rcond > 1e-18L)) {
      // Rescale by restarting from a fresh well-separated basis.
      if (++resets > 2)
        throw ExtremalError("basis matrix singular (rcond " + fmt_short(static_cast<double>(rcond)) +
                            ", degree " + std::to_string(n_) + ", grid " + std::to_string(m) + ")");
      initial_basis();
      need_signs = true;
      continue;
    }
    // Dual values: Phi_S^T v = c.
    const VectorR y = lu.transpose().solve(cv);
    std::vector<real> v(d), beta(d);
    real vsum = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
      v[i] = y(static_cast<long>(i));
      vsum += std::abs(v[i]);
    }
    // Relative accuracy of the dual values for this basis.
    const real noise = std::max(1e-16L, kEps / rcond);
    for (std::size_t i = 0; i < d; ++i) {
      // Rounding can leave a basic value slightly on the wrong side; only a
      // clear sign change switches the side of the active constraint.
      if (need_signs || signs_[i] * v[i] < -noise * vsum) signs_[i] = v[i] < 0.0L ? -1 : 1;
      beta[i] = std::max(signs_[i] * v[i], 0.0L);
    }
    need_signs = false;

    VectorR rhs(d);
    for (std::size_t i = 0; i < d; ++i) rhs(static_cast<long>(i)) = signs_[i];
    const VectorR pi = lu.solve(rhs);

    // Pricing: r_j = P(x_j) / W(x_j) (the rows carry the 1/W scaling).
    std::size_t enter = m;
    real enter_r = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      if (in_basis[j] || j == excluded_) continue;
      real p = 0.0, pabs = 0.0;
      for (std::size_t k = 0; k < d; ++k) {
        const real t = phi_[j * d + k] * pi(static_cast<long>(k));
        p += t;
        pabs += std::abs(t);
      }
      const real r = p;
      // Violations below the rounding level of the evaluation are not priced.
      const real slack = kPriceTol + 4.0L * static_cast<real>(d) * kEps * pabs;
      if (std::abs(r) <= 1.0L + slack) continue;
      if (bland) {
        if (enter == m || xs_[j] < xs_[enter]) { enter = j; enter_r = r; }
      } else if (std::abs(r) > std::abs(enter_r)) {
        enter = j;
        enter_r = r;
      }
    }
    if (enter == m) return iter;

    const int sigma = enter_r < 0.0L ? -1 : 1;
    VectorR a(d);
    for (std::size_t k = 0; k < d; ++k) a(static_cast<long>(k)) = sigma * phi_[enter * d + k];
    const VectorR u = lu.transpose().solve(a);
    real dmax = 0.0;
    std::vector<real> delta(d);
    for (std::size_t i = 0; i < d; ++i) {
      delta[i] = signs_[i] * u(static_cast<long>(i));
      dmax = std::max(dmax, std::abs(delta[i]));
    }
    std::size_t leave = d;
    real tmin = INFINITY;
    for (std::size_t i = 0; i < d; ++i) {
      if (delta[i] <= 1e-15L * dmax) continue;
      const real t = beta[i] / delta[i];
      const bool tie = leave != d && std::abs(t - tmin) <= 1e-14L * std::max(tmin, 1e-300L);
      if (t < tmin && !tie) { tmin = t; leave = i; }
      else if (tie && xs_[basis_[i]] < xs_[basis_[leave]]) { leave = i; tmin = std::min(t, tmin); }
    }
    if (leave == d) throw ExtremalError("exchange step found no leaving point (numerical breakdown)");

    // A step whose gain is at the rounding level counts as degenerate.
    if (tmin * (std::abs(enter_r) - 1.0L) <= 1e-16L * std::max(vsum, 1e-300L)) {
      if (++degenerate_run > 10) bland = true;
    } else {
      degenerate_run = 0;
    }
    basis_[leave] = enter;
    signs_[leave] = sigma;
  }
  throw ExtremalError("exchange iteration limit reached (degree " + std::to_string(n_) + ")");
}

int ExtremalSolver::refine(const std::vector<real>& pi, double probe) {
  auto ratio = [&](std::size_t k, double x) {
    return static_cast<double>(std::abs(eval_pi(pi, x)) *
                               std::exp(-static_cast<real>(W_.log_weight_in(k, x))));
  };
  const int K = std::max(64, 8 * (n_ + 1));
  std::vector<double> found;
  const auto& comps = W_.support().components();
  for (std::size_t k = 0; k < comps.size(); ++k) {
    const Interval& I = comps[k];
    auto at = [&](double t) { return I.mid() - I.half() * std::cos(std::numbers::pi * t); };
    std::vector<double> f(static_cast<std::size_t>(K) + 1);
    for (int i = 0; i <= K; ++i) f[static_cast<std::size_t>(i)] = ratio(k, at(static_cast<double>(i) / K));
    for (int i = 1; i < K; ++i) {
      const auto s = static_cast<std::size_t>(i);
      if (!(f[s] >= f[s - 1] && f[s] >= f[s + 1])) continue;
      // Golden-section search for the maximizer in the bracket.
      double a = static_cast<double>(i - 1) / K, b = static_cast<double>(i + 1) / K;
      const double g = 0.5 * (std::sqrt(5.0) - 1.0);
      double x1 = b - g * (b - a), x2 = a + g * (b - a);
      double f1 = ratio(k, at(x1)), f2 = ratio(k, at(x2));
      for (int it = 0; it < 60 && b - a > 1e-15; ++it) {
        if (f1 < f2) { a = x1; x1 = x2; f1 = f2; x2 = a + g * (b - a); f2 = ratio(k, at(x2)); }
        else { b = x2; x2 = x1; f2 = f1; x1 = b - g * (b - a); f1 = ratio(k, at(x1)); }
      }
      const double t = f1 > f2 ? x1 : x2, ft = std::max(f1, f2);
      if (ft > 1.0 + policy_.refine_tol) found.push_back(std::clamp(at(t), I.a, I.b));
    }
  }
  int added = 0;
  for (double x : found) {
    if (excluded_ != kNone && std::abs(x - probe) <= 1e-12 * std::max(1.0, std::abs(probe))) continue;
    if (std::find(xs_.begin(), xs_.end(), x) != xs_.end()) continue;
    add_point(x);
    ++added;
  }
  return added;
}

ExtremalWitness ExtremalSolver::solve_phase(cplx z0, double phase, double cap_log) {
  const std::vector<real> c = objective(z0, phase);
  const std::size_t d = c.size();
  // With the probe's own constraint dropped (cap_log finite), the optimum of
  // the full program is min(R, W(z0)) for the relaxed optimum R, attained by
  // the relaxed polynomial scaled down. Keeping the constraint instead makes
  // the dual optimum a single nonzero value, whose degenerate pivots stall.
  auto scaled_pi = [&] {
    std::vector<real> pi = current_pi();
    if (std::isfinite(cap_log)) {
      real val = 0.0;
      for (std::size_t k = 0; k < d; ++k) val += c[k] * pi[k];
      const real f = std::min(1.0L, std::exp(static_cast<real>(cap_log)) / val);
      for (real& t : pi) t *= f;
    }
    return pi;
  };
  ExtremalWitness w;
  w.iterations = optimize(c);
  for (int round = 0; round < policy_.refine_rounds; ++round) {
    const int added = refine(scaled_pi(), z0.real());
    if (added == 0) break;
    ++w.refinements;
    w.iterations += optimize(c);
  }
  std::vector<real> pi = scaled_pi();
  // Certified feasibility: shrink by the largest computed ratio if rounding
  // left any grid value above its bound.
  std::vector<real> ratio(xs_.size());
  real worst = 1.0;
  for (std::size_t j = 0; j < xs_.size(); ++j) {
    real p = 0.0;
    for (std::size_t k = 0; k < d; ++k) p += phi_[j * d + k] * pi[k];
    ratio[j] = std::abs(p);
    worst = std::max(worst, ratio[j]);
  }
  w.grid_violation = static_cast<double>(worst - 1.0L);
  if (worst > 1.0L)
    for (real& t : pi) t /= worst;
  real val = 0.0;
  for (std::size_t k = 0; k < d; ++k) val += c[k] * pi[k];
  w.degree = n_;
  w.z0 = z0;
  w.phase = phase;
  w.lo = lo_;
  w.hi = hi_;
  w.coeffs = to_chebyshev(pi);
  w.value = static_cast<double>(val);
  w.log_value = static_cast<double>(std::log(val));
  w.grid_size = xs_.size();
  for (std::size_t j = 0; j < xs_.size(); ++j)
    if (ratio[j] / worst >= 1.0L - 1e-8L) w.active_points.push_back(xs_[j]);
  if (std::isfinite(cap_log) && w.log_value >= cap_log - 1e-12) w.active_points.push_back(z0.real());
  std::sort(w.active_points.begin(), w.active_points.end());
  return w;
}

ExtremalWitness ExtremalSolver::solve(cplx z0) {
  if (z0.imag() == 0.0) {
    const double x = z0.real();
    const double lw = W_.log_weight(x);
    if (!std::isfinite(lw)) return solve_phase(z0, 0.0, INFINITY);
    if (x < lo_ || x > hi_) throw std::invalid_argument("probe outside the basis interval");
    // The probe's constraint is applied through the cap; it is left out of
    // the grid for this solve and kept as an ordinary constraint afterwards.
    const auto it = std::find(xs_.begin(), xs_.end(), x);
    std::size_t idx;
    if (it == xs_.end()) {
      add_point(x);
      idx = xs_.size() - 1;
    } else {
      idx = static_cast<std::size_t>(it - xs_.begin());
    }
    excluded_ = idx;
    if (std::find(basis_.begin(), basis_.end(), idx) != basis_.end()) have_basis_ = false;
    ExtremalWitness w;
    try {
      w = solve_phase(z0, 0.0, lw);
    } catch (...) {
      excluded_ = kNone;
      throw;
    }
    excluded_ = kNone;
    return w;
  }
  ExtremalWitness best;
  bool have = false;
  constexpr int kPhases = 32;
  for (int k = 0; k < kPhases; ++k) {
    ExtremalWitness w = solve_phase(z0, std::numbers::pi * k / kPhases, INFINITY);
    if (!have || w.value > best.value) {
      best = std::move(w);
      have = true;
    }
  }
  best.lower_bound = true;
  return best;
}



ExtremalWitness hall_majorant_n(const Weight& W, cplx z0, int n, const std::vector<double>& grid,
                                const GridPolicy& policy) {
  ExtremalSolver s(W, n, grid, policy);
  return s.solve(z0);
}

std::vector<ProfilePoint> hall_profile(const Weight& W, int n, const std::vector<double>& eval_points,
                                       const std::vector<double>& grid, const GridPolicy& policy) {
  ExtremalSolver s(W, n, grid, policy);
  std::vector<ProfilePoint> out;
  out.reserve(eval_points.size());
  for (double x : eval_points) {
    const ExtremalWitness w = s.solve(cplx{x, 0.0});
    out.push_back({x, w.log_value, W.log_weight(x)});
  }
  return out;
}

GrowthTable growth_ratio_check(const Weight& W, const std::vector<int>& degrees,
                               const std::vector<double>& x_points, const GridPolicy& policy) {
  if (W.model() != Weight::Model::power_law)
    throw std::invalid_argument("growth ratio check needs the power-law weight");
  if (degrees.empty() || x_points.empty()) throw std::invalid_argument("empty degree or point list");
  for (double x : x_points)
    if (!(W.log_weight(x) >= 1.0)) throw std::invalid_argument("need x in E with log W(x) >= 1");
  GrowthTable T;
  std::vector<std::vector<double>> log_m(x_points.size());
  for (int n : degrees) {
    const auto prof = hall_profile(W, n, x_points, {}, policy);
    for (std::size_t i = 0; i < x_points.size(); ++i) log_m[i].push_back(prof[i].log_m);
  }
  T.final_min_ratio = INFINITY;
  for (std::size_t i = 0; i < x_points.size(); ++i) {
    const double lw = W.log_weight(x_points[i]);
    for (std::size_t k = 0; k < degrees.size(); ++k) {
      GrowthRow r{x_points[i], degrees[k], log_m[i][k], lw, log_m[i][k] / lw};
      T.bounded = T.bounded && r.ratio <= 1.0 + 1e-6;
      if (k > 0) T.nondecreasing = T.nondecreasing && r.ratio >= T.rows.back().ratio - 1e-9;
      T.rows.push_back(r);
    }
    T.final_min_ratio = std::min(T.final_min_ratio, T.rows.back().ratio);
  }
  return T;
}

}  // namespace slitpot

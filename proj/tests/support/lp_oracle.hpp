#pragma once

// Brute-force reference for the finite Hall-majorant program.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "slitpot/extremal.hpp"

namespace slitpot::testing {

using real = long double;

/// Chebyshev T_0..T_n of (x - mid) / half.
inline std::vector<real> cheb_row(real x, real mid, real half, int n) {
  std::vector<real> t(static_cast<std::size_t>(n + 1));
  const real u = (x - mid) / half;
  t[0] = 1;
  if (n >= 1) t[1] = u;
  for (int k = 2; k <= n; ++k) t[k] = 2 * u * t[k - 1] - t[k - 2];
  return t;
}

/// max P(z0) subject to |P(x_j)| <= W(x_j) over polynomials of degree n,
/// written as  max b.c  s.t.  G c + s = 1, s >= 0  with the rows of G the
/// scaled Chebyshev rows +-phi(x_j) / W_j, and solved by a primal-dual
/// interior-point method on the normal equations.
inline double lp_oracle(const std::vector<double>& xs, const std::vector<double>& log_w, double z0,
                        int n, real lo, real hi) {
  using Mat = Eigen::Matrix<real, Eigen::Dynamic, Eigen::Dynamic>;
  using Vec = Eigen::Matrix<real, Eigen::Dynamic, 1>;
  const real mid = (lo + hi) / 2, half = (hi - lo) / 2;
  const Eigen::Index m = n + 1;
  const Eigen::Index J = static_cast<Eigen::Index>(xs.size());
  Mat G(2 * J, m);
  for (Eigen::Index j = 0; j < J; ++j) {
    const auto r = cheb_row(xs[static_cast<std::size_t>(j)], mid, half, n);
    const real w = std::exp(static_cast<real>(log_w[static_cast<std::size_t>(j)]));
    for (Eigen::Index i = 0; i < m; ++i) {
      G(j, i) = r[static_cast<std::size_t>(i)] / w;
      G(J + j, i) = -G(j, i);
    }
  }
  const auto rb = cheb_row(z0, mid, half, n);
  Vec b(m);
  for (Eigen::Index i = 0; i < m; ++i) b(i) = rb[static_cast<std::size_t>(i)];
  const real bscale = b.cwiseAbs().maxCoeff();
  b /= bscale;

  const Eigen::Index K = 2 * J;
  Vec c = Vec::Zero(m), s = Vec::Ones(K), z = Vec::Ones(K);
  auto max_step = [](const Vec& v, const Vec& dv) {
    real a = 1;
    for (Eigen::Index k = 0; k < v.size(); ++k)
      if (dv(k) < 0) a = std::min(a, -v(k) / dv(k));
    return a;
  };
  for (int it = 0; it < 200; ++it) {
    const Vec rd = G.transpose() * z - b;
    const Vec rp = G * c + s - Vec::Ones(K);
    const real mu = s.dot(z) / static_cast<real>(K);
    // The dual residual floors near 1e-12 on fine grids; stop on the relative gap.
    const real primal = b.dot(c), dual = z.sum();
    if (std::abs(dual - primal) <= 1e-11L * std::abs(primal) && rd.cwiseAbs().maxCoeff() < 1e-9L &&
        rp.cwiseAbs().maxCoeff() < 1e-12L)
      return static_cast<double>(primal * bscale);
    const Vec d = z.cwiseQuotient(s);
    const Mat N = G.transpose() * d.asDiagonal() * G;
    const Eigen::LDLT<Mat> ldlt(N);
    // Newton direction for complementarity target sigma * mu.
    auto direction = [&](const Vec& rc, Vec& dc, Vec& ds, Vec& dz) {
      const Vec t = (-rc + z.cwiseProduct(rp)).cwiseQuotient(s);
      dc = ldlt.solve(-rd - G.transpose() * t);
      ds = -rp - G * dc;
      dz = (-rc - z.cwiseProduct(ds)).cwiseQuotient(s);
    };
    Vec dc, ds, dz;
    // Mehrotra predictor-corrector.
    direction(s.cwiseProduct(z), dc, ds, dz);
    const real ap = max_step(s, ds), ad = max_step(z, dz);
    const real mu_aff = (s + ap * ds).dot(z + ad * dz) / static_cast<real>(K);
    const real sigma = std::pow(mu_aff / mu, 3);
    const Vec rc = s.cwiseProduct(z) + ds.cwiseProduct(dz) - Vec::Constant(K, sigma * mu);
    direction(rc, dc, ds, dz);
    const real a_p = std::min<real>(1, 0.99L * max_step(s, ds));
    const real a_d = std::min<real>(1, 0.99L * max_step(z, dz));
    c += a_p * dc;
    s += a_p * ds;
    z += a_d * dz;
  }
  throw std::runtime_error("oracle interior-point method did not converge");
}

/// Ten times the default per-component Chebyshev grid, endpoints included.
inline std::vector<double> fine_grid(const IntervalSet& E, int n) {
  const GridPolicy p;
  const int k = 10 * std::max(p.min_points, p.per_degree * (n + 1));
  std::vector<double> xs;
  for (const Interval& I : E.components()) {
    xs.push_back(I.a);
    for (int j = 0; j < k; ++j)
      xs.push_back(I.mid() + I.half() * std::cos(std::numbers::pi * (j + 0.5) / k));
    xs.push_back(I.b);
  }
  std::sort(xs.begin(), xs.end());
  return xs;
}

struct OracleCase {
  Weight W;
  int n = 0;
  double z0 = 0.0;  // off E: just outside the hull or mid-gap
};

/// One to three components in [-1, 1], per-component log W in [0, 3], degree 1..20.
inline OracleCase random_case(std::mt19937_64& gen) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const int nc = 1 + static_cast<int>(u(gen) * 3.0);
  std::vector<double> cuts;
  for (int k = 0; k < 2 * nc; ++k) cuts.push_back(-1.0 + 2.0 * u(gen));
  std::sort(cuts.begin(), cuts.end());
  std::vector<Interval> comps;
  for (int k = 0; k < nc; ++k)
    if (cuts[2 * k + 1] - cuts[2 * k] > 0.05) comps.push_back({cuts[2 * k], cuts[2 * k + 1]});
  if (comps.empty()) comps.push_back({-0.5, 0.5});
  const IntervalSet E(comps);
  std::vector<double> lw;
  for (std::size_t k = 0; k < E.size(); ++k) lw.push_back(3.0 * u(gen));
  const int n = 1 + static_cast<int>(u(gen) * 20.0);
  double z0 = E.hull().b + 0.1 + 0.3 * u(gen);
  if (E.size() > 1 && u(gen) < 0.5) z0 = 0.5 * (E[0].b + E[1].a);
  return {Weight::per_interval(E, lw), n, z0};
}

/// Reference value for a case on the fine grid.
inline double oracle_value(const OracleCase& c) {
  const IntervalSet& E = c.W.support();
  const auto xs = fine_grid(E, c.n);
  std::vector<double> lws;
  for (double x : xs) lws.push_back(c.W.log_weight(x));
  return lp_oracle(xs, lws, c.z0, c.n, E.hull().a, E.hull().b);
}

}  // namespace slitpot::testing

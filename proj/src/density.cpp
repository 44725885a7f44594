#include "slitpot/density.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "slitpot/text.hpp"

namespace slitpot {

namespace {

/// log M on one component, linear between nodes.
struct ComponentProfile {
  std::vector<double> x, log_m;

  double operator()(double t) const {
    if (t <= x.front()) return log_m.front();
    if (t >= x.back()) return log_m.back();
    const auto it = std::upper_bound(x.begin(), x.end(), t);
    const std::size_t j = static_cast<std::size_t>(it - x.begin());
    const double s = (t - x[j - 1]) / (x[j] - x[j - 1]);
    return (1.0 - s) * log_m[j - 1] + s * log_m[j];
  }
};

std::vector<ComponentProfile> split_profile(const IntervalSet& E,
                                            const std::vector<ProfilePoint>& profile) {
  std::vector<ComponentProfile> out(E.size());
  std::vector<ProfilePoint> sorted = profile;
  std::sort(sorted.begin(), sorted.end(), [](auto& a, auto& b) { return a.x < b.x; });
  for (const ProfilePoint& p : sorted) {
    const Location loc = locate(E, p.x);
    if (loc.kind != Location::Kind::component)
      throw std::invalid_argument("profile point " + fmt_short(p.x) + " outside E");
    if (!std::isfinite(p.log_m)) throw std::invalid_argument("non-finite profile value");
    ComponentProfile& c = out[loc.index];
    if (!c.x.empty() && c.x.back() == p.x) continue;
    c.x.push_back(p.x);
    c.log_m.push_back(p.log_m);
  }
  for (const auto& c : out)
    if (c.x.empty()) throw std::invalid_argument("component without profile points");
  return out;
}

double log_add(double a, double b) {
  if (a == -INFINITY) return b;
  if (b == -INFINITY) return a;
  const double m = std::max(a, b);
  return m + std::log1p(std::exp(std::min(a, b) - m));
}

/// log|P(x)| in extended precision, so large |x| does not overflow.
double log_abs_witness(const ExtremalWitness& w, long double x) {
  const long double c = 0.5L * (static_cast<long double>(w.lo) + w.hi);
  const long double h = 0.5L * (static_cast<long double>(w.hi) - w.lo);
  const long double u = h > 0 ? (x - c) / h : 0.0L;
  long double b1 = 0, b2 = 0;
  for (std::size_t k = w.coeffs.size(); k-- > 1;) {
    const long double b0 = w.coeffs[k] + 2 * u * b1 - b2;
    b2 = b1;
    b1 = b0;
  }
  const long double v = (w.coeffs.empty() ? 0.0L : w.coeffs[0]) + u * b1 - b2;
  return static_cast<double>(std::log(std::abs(v)));
}

/// Increase per unit log-degree over the last step divided by the same over
/// the step before.
double increment_ratio(const std::vector<int>& deg, const std::vector<double>& v) {
  const std::size_t m = v.size();
  const double a = (v[m - 1] - v[m - 2]) / std::log(static_cast<double>(deg[m - 1]) / deg[m - 2]);
  const double b = (v[m - 2] - v[m - 3]) / std::log(static_cast<double>(deg[m - 2]) / deg[m - 3]);
  const double tiny = 1e-12 * (1.0 + std::abs(v[m - 1]));
  if (b <= tiny) return a > tiny ? INFINITY : 0.0;
  return a / b;
}

}  // namespace

// ---------------------------------------------------------------------------

std::vector<double> profile_nodes(const IntervalSet& E, int per_component) {
  if (per_component < 2) throw std::invalid_argument("need at least 2 profile nodes per component");
  std::vector<double> out;
  for (const Interval& I : E.components()) {
    for (int j = 0; j < per_component; ++j) {
      const double s = 0.5 * (1.0 - std::cos(std::numbers::pi * j / (per_component - 1)));
      out.push_back(j == per_component - 1 ? I.b : I.a + s * I.length());
    }
  }
  return out;
}

MergelyanValue mergelyan_integral_n(const IntervalSet& E, const std::vector<ProfilePoint>& profile,
                                    const MergelyanMeasure& mu) {
  if (E.empty()) throw std::invalid_argument("empty set");
  const auto prof = split_profile(E, profile);
  std::vector<double> contrib(E.size(), 0.0);
  MergelyanValue out;
  if (mu.kind == MergelyanMeasure::Kind::omega) {
    if (!mu.samples || mu.samples->empty()) throw std::invalid_argument("no hit samples");
    const auto& S = *mu.samples;
    double sum = 0.0, sum2 = 0.0;
    for (const HitSample& s : S) {
      if (s.outcome != Outcome::hit_set) continue;
      const auto k = static_cast<std::size_t>(s.component);
      if (k >= E.size() || !E[k].contains(s.hit_point))
        throw std::invalid_argument("hit samples were drawn on a different set");
      const double f = prof[k](s.hit_point);
      contrib[k] += f;
      sum += f;
      sum2 += f * f;
    }
    const double N = static_cast<double>(S.size());
    out.value = sum / N;
    out.stderr_ = std::sqrt(std::max(sum2 / N - out.value * out.value, 0.0) / N);
    for (double& c : contrib) c /= N;
  } else {
    if (mu.kind == MergelyanMeasure::Kind::benedicks && !(mu.p > 0.0))
      throw std::invalid_argument("Benedicks exponent must be positive");
    const double e = 1.0 + 1.0 / mu.p;
    auto density = [&](double t) {
      return mu.kind == MergelyanMeasure::Kind::poisson ? 1.0 / (1.0 + t * t)
                                                        : 1.0 / (1.0 + std::pow(std::abs(t), e));
    };
    using GL = boost::math::quadrature::gauss<double, 10>;
    for (std::size_t k = 0; k < E.size(); ++k) {
      std::vector<double> cuts{E[k].a};
      for (double x : prof[k].x)
        if (x > cuts.back() && x < E[k].b) cuts.push_back(x);
      cuts.push_back(E[k].b);
      for (std::size_t j = 0; j + 1 < cuts.size(); ++j)
        contrib[k] += GL::integrate([&](double t) { return prof[k](t) * density(t); },
                                    cuts[j], cuts[j + 1]);
      out.value += contrib[k];
    }
  }
  if (E.size() >= 2 && out.value != 0.0) {
    out.edge_share = std::max(std::abs(contrib.front()), std::abs(contrib.back())) / std::abs(out.value);
    out.truncated = out.edge_share > 0.1;
  }
  return out;
}

double akhiezer_integral(const ExtremalWitness& w) {
  // x = tan(theta); dx / (1 + x^2) = d theta.
  auto f = [&](double th) {
    const long double x = std::tan(static_cast<long double>(th));
    return std::max(log_abs_witness(w, x), 0.0);
  };
  const double edge = std::numbers::pi / 2 - 1e-12;
  std::vector<double> cuts{-edge, std::atan(w.lo), std::atan(w.hi), edge};
  double total = 0.0;
  for (std::size_t j = 0; j + 1 < cuts.size(); ++j) {
    if (!(cuts[j + 1] > cuts[j])) continue;
    total += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, cuts[j], cuts[j + 1], 12,
                                                                           1e-10);
  }
  return total;
}

// ---------------------------------------------------------------------------

DeBrangesSums debranges_sum(const Weight& W, const KreinFunction& F, long K) {
  F.validate();
  const std::size_t n = K <= 0 ? F.zeros.size()
                               : std::min(F.zeros.size(), static_cast<std::size_t>(K));
  DeBrangesSums out;
  double acc = -INFINITY;
  for (std::size_t i = 0; i < n; ++i) {
    const double lam = F.zeros[i];
    const double lw = W.log_weight(lam);
    if (!std::isfinite(lw))
      throw std::invalid_argument("zero " + fmt_short(lam) + " lies outside the support of W");
    const double ld = F.log_abs_derivs.empty() ? std::log(std::abs(F.derivs[i])) : F.log_abs_derivs[i];
    const double lt = lw - ld;
    acc = log_add(acc, lt);
    out.zeros.push_back(lam);
    out.log_terms.push_back(lt);
    out.log_partial.push_back(acc);
    out.partial.push_back(std::exp(acc));
  }
  if (n > 0) {
    auto seg = [&](std::size_t a, std::size_t b) {
      double s = -INFINITY;
      for (std::size_t i = a; i < b; ++i) s = log_add(s, out.log_terms[i]);
      return s;
    };
    const std::size_t d1 = std::max<std::size_t>(n / 10, 1), d2 = n / 100;
    const double prev = seg(d2, d1), last = seg(d1, n);
    if (prev == -INFINITY) out.last_decade_ratio = last == -INFINITY ? 0.0 : INFINITY;
    else out.last_decade_ratio = std::exp(last - prev);
  }
  out.summable = out.last_decade_ratio < 0.9;
  return out;
}

// ---------------------------------------------------------------------------

DensityDiagnostics density_diagnostics(const Weight& W, const DensityConfig& cfg,
                                       const std::vector<HitSample>& samples,
                                       std::optional<DeBrangesSums> debranges) {
  if (cfg.degrees.empty()) throw std::invalid_argument("no degrees");
  if (!std::is_sorted(cfg.degrees.begin(), cfg.degrees.end()) || cfg.degrees.front() < 1 ||
      std::adjacent_find(cfg.degrees.begin(), cfg.degrees.end()) != cfg.degrees.end())
    throw std::invalid_argument("degrees must be increasing and positive");
  const IntervalSet& E = W.support();
  const std::vector<double> nodes = profile_nodes(E, cfg.nodes_per_component);
  DensityDiagnostics d;
  d.omega_samples = static_cast<long>(samples.size());
  double sup = 0.0;
  for (int n : cfg.degrees) {
    DensityRow row;
    row.degree = n;
    const auto prof = hall_profile(W, n, nodes, {}, cfg.policy);
    if (!samples.empty()) {
      row.omega = mergelyan_integral_n(E, prof, MergelyanMeasure::omega(samples));
    } else {
      row.omega.value = NAN;
    }
    row.poisson = mergelyan_integral_n(E, prof, MergelyanMeasure::poisson());
    row.benedicks = mergelyan_integral_n(E, prof, MergelyanMeasure::benedicks(cfg.benedicks_p));
    const ExtremalWitness w = hall_majorant_n(W, cfg.probe, n, {}, cfg.policy);
    row.probe_log_value = w.log_value;
    row.ab = akhiezer_integral(w);
    row.probe_witness = w;
    sup = std::max(sup, row.ab);
    row.ab_sup = sup;
    if (debranges && !debranges->partial.empty()) {
      const std::size_t j = std::min(static_cast<std::size_t>(n), debranges->partial.size());
      row.db_partial = debranges->partial[j - 1];
    }
    d.rows.push_back(row);
  }
  d.debranges = std::move(debranges);
  return d;
}

std::string diagnostics_csv(const DensityDiagnostics& d) {
  std::ostringstream os;
  os << "degree,integral_omega,integral_poisson,integral_benedicks,ab_sup,db_partial\n";
  for (const DensityRow& r : d.rows)
    os << r.degree << ',' << fmt_real(r.omega.value) << ',' << fmt_real(r.poisson.value) << ','
       << fmt_real(r.benedicks.value) << ',' << fmt_real(r.ab_sup) << ',' << fmt_real(r.db_partial)
       << '\n';
  return os.str();
}

std::string verdict_label(Verdict v) {
  switch (v) {
    case Verdict::dense_suggested: return "dense-suggested";
    case Verdict::not_dense_suggested: return "not-dense-suggested";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

VerdictRecord density_verdict(const DensityDiagnostics& d) {
  if (d.rows.size() < 5) throw std::invalid_argument("the verdict needs at least 5 degrees");
  std::vector<int> deg;
  std::vector<double> poisson, omega, probe;
  for (const DensityRow& r : d.rows) {
    deg.push_back(r.degree);
    poisson.push_back(r.poisson.value);
    omega.push_back(r.omega.value);
    probe.push_back(r.probe_log_value);
  }
  VerdictRecord v;
  v.poisson_increment_ratio = increment_ratio(deg, poisson);
  v.mergelyan_growing = v.poisson_increment_ratio >= 0.9;
  v.mergelyan_plateau = !v.mergelyan_growing;
  if (std::isfinite(omega.back())) {
    v.omega_increment_ratio = increment_ratio(deg, omega);
    v.omega_plateau = v.omega_increment_ratio < 0.9;
  } else {
    v.omega_increment_ratio = NAN;
  }
  const std::size_t m = probe.size();
  const double s1 = (probe[m - 1] - probe[m - 2]) / (deg[m - 1] - deg[m - 2]);
  const double s0 = (probe[m - 2] - probe[m - 3]) / (deg[m - 2] - deg[m - 3]);
  v.probe_last_slope = s1;
  v.probe_slope_ratio = s0 > 0.0 ? s1 / s0 : (s1 > 0.0 ? INFINITY : 0.0);
  v.probe_geometric = s1 > 1e-9 && v.probe_slope_ratio >= 0.9;
  const bool have_db = d.debranges && !d.debranges->zeros.empty();
  v.debranges_summable = have_db && d.debranges->summable;
  v.debranges_divergent = have_db && d.debranges->last_decade_ratio >= 1.0;

  std::ostringstream ev;
  ev << "heuristic on degrees " << deg.front() << ".." << deg.back()
     << ": poisson increment ratio " << fmt_short(v.poisson_increment_ratio)
     << ", omega increment ratio " << fmt_short(v.omega_increment_ratio)
     << ", probe slope " << fmt_short(s1) << " (ratio " << fmt_short(v.probe_slope_ratio) << ")";
  if (d.debranges && !d.debranges->zeros.empty())
    ev << ", de Branges last-decade ratio " << fmt_short(d.debranges->last_decade_ratio) << " over "
       << d.debranges->zeros.size() << " zeros";
  else
    ev << ", no de Branges data";
  if (v.debranges_summable && v.mergelyan_plateau)
    v.verdict = Verdict::not_dense_suggested;
  else if (v.mergelyan_growing || v.probe_geometric || v.debranges_divergent)
    v.verdict = Verdict::dense_suggested;
  else
    v.verdict = Verdict::inconclusive;
  v.evidence = ev.str();
  return v;
}

// ---------------------------------------------------------------------------

PropASet build_prop_a(const PropASpec& spec) {
  if (spec.n_max < 2) throw std::invalid_argument("n_max must be at least 2");
  if (spec.samples < 100) throw std::invalid_argument("need at least 100 walks per estimate");
  if (!(spec.length_floor > 0.0 && spec.length_floor < 1.0))
    throw std::invalid_argument("length floor must lie in (0, 1)");
  const double e = std::numbers::e;
  const Interval I1{e - 0.5, e + 0.5};
  std::vector<PropAComponent> comps;
  comps.push_back({1, I1, 0.0, {}, 0.0, true, 0});
  for (int n = 2; n <= spec.n_max; ++n) {
    const double c = std::exp(static_cast<double>(n));
    PropAComponent pc;
    pc.n = n;
    pc.target = std::exp(-static_cast<double>(n)) / (static_cast<double>(n) * n);
    double L = 1.0;
    for (;;) {
      pc.interval = {c - 0.5 * L, c + 0.5 * L};
      const IntervalSet two({I1, pc.interval});
      RandomWalkConfig cfg = spec.walk;
      if (cfg.eps_shell == 0.0) cfg.eps_shell = 1e-3 * L;
      SamplingOptions opt;
      opt.stream = static_cast<std::uint64_t>(n) * 1024 + static_cast<std::uint64_t>(pc.halvings);
      const auto est = estimate_harmonic_measure(two, {0.0, 1.0}, spec.samples, cfg, opt);
      pc.omega = {est.masses[1], est.stderrs[1]};
      pc.omega_upper = est.counts[1] == 0 ? 3.0 / static_cast<double>(spec.samples)
                                          : pc.omega.value + 3.0 * pc.omega.stderr_;
      pc.target_met = pc.omega_upper < pc.target;
      if (pc.target_met || 0.5 * L < spec.length_floor) break;
      L *= 0.5;
      ++pc.halvings;
    }
    comps.push_back(pc);
  }
  std::vector<Interval> ivs;
  for (const auto& pc : comps) ivs.push_back(pc.interval);
  IntervalSet E(ivs);
  Weight W = Weight::double_exponential(E);
  return {E, std::move(comps), std::move(W), CanonicalProductSpec::geometric(e, e)};
}

PropBSet build_prop_b(const PropBSpec& spec) {
  if (!(spec.rho > 0.0 && spec.rho < 0.5)) throw std::invalid_argument("rho must lie in (0, 1/2)");
  if (spec.n_max < 1) throw std::invalid_argument("n_max must be positive");
  if (!(spec.lambda_halfwidth > 0.0 && spec.lambda_halfwidth < 0.5))
    throw std::invalid_argument("zero half-width must lie in (0, 1/2)");
  if (spec.debranges_pairs < 1) throw std::invalid_argument("need at least one zero pair");
  const double X = std::exp(static_cast<double>(spec.n_max)) + 0.5;
  const double hw = spec.lambda_halfwidth;
  auto lambda = [&](long k) { return std::pow(static_cast<double>(k), 1.0 / (2.0 * spec.rho)); };
  std::vector<Interval> window, db;
  for (int n = 1; n <= spec.n_max; ++n) {
    const double c = std::exp(static_cast<double>(n));
    window.push_back({c - 0.5, c + 0.5});
    window.push_back({-c - 0.5, -c + 0.5});
  }
  for (long k = 1; k <= spec.debranges_pairs; ++k) {
    const double l = lambda(k);
    if (l + hw <= X) {
      window.push_back({l - hw, l + hw});
      window.push_back({-l - hw, -l + hw});
    }
    db.push_back({l - hw, l + hw});
    db.push_back({-l - hw, -l + hw});
  }
  IntervalSet E = IntervalSet::merged(window);
  IntervalSet E_db = IntervalSet::merged(db);
  Weight W = Weight::power_law(E, spec.rho);
  Weight W_db = Weight::power_law(E_db, spec.rho).shifted(spec.shift);
  return {E, W, E_db, W_db, CanonicalProductSpec::symmetric_square(spec.rho, spec.product_N, 2)};
}

}  // namespace slitpot

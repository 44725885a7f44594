#include <cmath>
#include <numbers>

#include "doctest.h"
#include "slitpot/density.hpp"

using namespace slitpot;

namespace {

std::vector<ProfilePoint> flat_profile(const IntervalSet& E, double v) {
  std::vector<ProfilePoint> p;
  for (double x : profile_nodes(E, 3)) p.push_back({x, v, v});
  return p;
}

DensityRow row(int n, double poisson, double probe) {
  DensityRow r;
  r.degree = n;
  r.poisson.value = poisson;
  r.omega.value = poisson;
  r.probe_log_value = probe;
  return r;
}

DeBrangesSums db_with_ratio(double r) {
  DeBrangesSums s;
  s.zeros = {1.0};
  s.last_decade_ratio = r;
  s.summable = r < 0.9;
  return s;
}

}  // namespace

TEST_CASE("profile nodes include the endpoints") {
  const IntervalSet E({{-2.0, -1.0}, {1.0, 3.0}});
  const auto x = profile_nodes(E, 4);
  REQUIRE(x.size() == 8);
  CHECK(x.front() == -2.0);
  CHECK(x.back() == 3.0);
  CHECK(std::is_sorted(x.begin(), x.end()));
}

TEST_CASE("Mergelyan integrals of a constant profile") {
  const IntervalSet E({{-1.0, 1.0}});
  const auto prof = flat_profile(E, 2.0);
  const MergelyanValue p = mergelyan_integral_n(E, prof, MergelyanMeasure::poisson());
  CHECK(p.value == doctest::Approx(2.0 * std::numbers::pi / 2.0).epsilon(1e-10));
  // dx / (1 + |x|^(3/2)) on [-1, 1] by a fine midpoint rule.
  double ref = 0.0;
  const int K = 200000;
  for (int k = 0; k < K; ++k) {
    const double x = -1.0 + (k + 0.5) * 2.0 / K;
    ref += 2.0 / K / (1.0 + std::pow(std::abs(x), 1.5));
  }
  const MergelyanValue b = mergelyan_integral_n(E, prof, MergelyanMeasure::benedicks(2.0));
  CHECK(b.value == doctest::Approx(2.0 * ref).epsilon(1e-6));

  std::vector<HitSample> s(4);
  for (auto& h : s) {
    h.outcome = Outcome::hit_set;
    h.component = 0;
    h.hit_point = 0.25;
  }
  s[3].outcome = Outcome::hit_outer;
  const MergelyanValue o = mergelyan_integral_n(E, prof, MergelyanMeasure::omega(s));
  CHECK(o.value == doctest::Approx(1.5));
}

TEST_CASE("Mergelyan integral interpolates linearly") {
  const IntervalSet E({{0.0, 1.0}});
  const std::vector<ProfilePoint> prof{{0.0, 0.0, 1.0}, {1.0, 2.0, 3.0}};
  std::vector<HitSample> s(1);
  s[0].outcome = Outcome::hit_set;
  s[0].component = 0;
  s[0].hit_point = 0.75;
  CHECK(mergelyan_integral_n(E, prof, MergelyanMeasure::omega(s)).value == doctest::Approx(1.5));
  CHECK_THROWS(mergelyan_integral_n(IntervalSet({{0.0, 1.0}, {2.0, 3.0}}), prof,
                                    MergelyanMeasure::poisson()));
}

TEST_CASE("de Branges partial sums") {
  const auto spec = CanonicalProductSpec::geometric(2.0, 2.0);
  const KreinFunction F = krein_from_product(spec, 20);
  std::vector<Interval> around;
  for (double z : F.zeros) around.push_back({z - 0.25, z + 0.25});
  const Weight W = Weight::constant(IntervalSet(around), 1.0);
  const DeBrangesSums s = debranges_sum(W, F);
  double direct = 0.0;
  for (std::size_t k = 0; k < F.zeros.size(); ++k) {
    direct += std::exp(1.0) / std::abs(F.derivs[k]);
    CHECK(s.partial[k] == doctest::Approx(direct).epsilon(1e-12));
  }
  CHECK(s.summable);
  CHECK_THROWS_AS(debranges_sum(Weight::constant(IntervalSet({{0.0, 1.0}}), 1.0), F), std::invalid_argument);
}

TEST_CASE("verdict rules on synthetic diagnostics") {
  DensityDiagnostics grow;
  for (int n : {4, 8, 12, 16, 24}) grow.rows.push_back(row(n, std::log(n), 0.01 * n));
  CHECK(density_verdict(grow).verdict == Verdict::dense_suggested);

  DensityDiagnostics flat;
  for (int n : {4, 8, 12, 16, 24}) flat.rows.push_back(row(n, 1.0 - 1.0 / (n * n), 0.0));
  CHECK(density_verdict(flat).verdict == Verdict::inconclusive);
  flat.debranges = db_with_ratio(0.1);
  CHECK(density_verdict(flat).verdict == Verdict::not_dense_suggested);
  flat.debranges = db_with_ratio(5.0);
  const VerdictRecord v = density_verdict(flat);
  CHECK(v.verdict == Verdict::dense_suggested);
  CHECK(v.debranges_divergent);

  // Geometric probe growth alone suggests density.
  DensityDiagnostics geo;
  for (int n : {4, 8, 12, 16, 24}) geo.rows.push_back(row(n, 1.0, 0.5 * n));
  CHECK(density_verdict(geo).probe_geometric);
  CHECK(density_verdict(geo).verdict == Verdict::dense_suggested);

  geo.rows.pop_back();
  CHECK_THROWS(density_verdict(geo));
  CHECK(verdict_label(Verdict::not_dense_suggested) == "not-dense-suggested");
}

TEST_CASE("constant weight on a compact interval") {
  const IntervalSet E({{-1.0, 1.0}});
  const Weight W = Weight::constant(E, 1.0);
  RandomWalkConfig c;
  c.seed = 4;
  std::vector<HitSample> hits;
  SamplingOptions o;
  o.keep = &hits;
  estimate_harmonic_measure(E, cplx{0.0, 1.0}, 2000, c, o);
  DensityConfig dc;
  const DensityDiagnostics d = density_diagnostics(W, dc, hits);
  REQUIRE(d.rows.size() == 5);
  for (const DensityRow& r : d.rows) {
    CHECK(r.omega.value <= 1.0 + 1e-9);
    CHECK(r.poisson.value <= std::numbers::pi / 2.0 + 1e-9);
  }
  CHECK(density_verdict(d).verdict == Verdict::dense_suggested);
  const std::string csv = diagnostics_csv(d);
  CHECK(csv.rfind("degree,integral_omega,integral_poisson,integral_benedicks,ab_sup,db_partial", 0) == 0);
}

TEST_CASE("Akhiezer integral of the constant witness") {
  const Weight W = Weight::constant(IntervalSet({{-1.0, 1.0}}), 0.0);
  const ExtremalWitness w = hall_majorant_n(W, cplx{0.0, 1.0}, 0);
  CHECK(akhiezer_integral(w) == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("constructions") {
  PropBSpec b;
  b.debranges_pairs = 50;
  const PropBSet S = build_prop_b(b);
  CHECK(S.E.size() >= 2 * static_cast<std::size_t>(b.n_max));
  for (const Interval& I : S.E.components()) CHECK(I.length() > 0.0);
  CHECK(std::isfinite(S.W.log_weight(std::exp(2.0))));
  CHECK(S.W_db.shift() == -3.0);

  PropASpec a;
  a.n_max = 2;
  a.samples = 2000;
  a.walk.seed = 3;
  const PropASet P = build_prop_a(a);
  REQUIRE(P.components.size() == 2);
  CHECK(P.components[1].interval.contains(std::exp(2.0)));
  CHECK(P.W.log_weight(std::exp(2.0)) == doctest::Approx(std::exp(2.0)));
  CHECK_THROWS(build_prop_a(PropASpec{1}));
}

#include <cmath>
#include <numbers>

#include "doctest.h"
#include "slitpot/harmonic.hpp"
#include "slitpot/slit_oracle.hpp"

using namespace slitpot;

namespace {
const cplx I{0.0, 1.0};
RandomWalkConfig seeded(std::uint64_t s) {
  RandomWalkConfig c;
  c.seed = s;
  return c;
}
}  // namespace

TEST_CASE("single-slit oracle identities") {
  const auto m = single_slit_bin_masses(-1.0, 1.0, I, 32);
  double s = 0.0;
  for (double v : m) s += v;
  CHECK(s == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(m[3] == doctest::Approx(m[28]).epsilon(1e-12));
  // From infinity the measure is the arcsine law: equal theta bins carry equal mass.
  const auto far = single_slit_bin_masses(-1.0, 1.0, cplx{0.0, 1e7}, 8);
  for (double v : far) CHECK(v == doctest::Approx(0.125).epsilon(1e-6));
  // Green function: symmetric in its arguments and log|zeta| at infinity.
  const cplx z{0.3, 0.7}, p{-1.5, 0.4};
  CHECK(single_slit_green(-1.0, 1.0, z, p) == doctest::Approx(single_slit_green(-1.0, 1.0, p, z)));
  CHECK(single_slit_green_infinity(-1.0, 1.0, cplx{0.0, 1.0}) ==
        doctest::Approx(std::log(1.0 + std::sqrt(2.0))));
  CHECK(std::abs(slit_to_disk_exterior(-1.0, 1.0, z)) > 1.0);
}

TEST_CASE("mass conservation and nontermination") {
  const IntervalSet E({{-1.0, 1.0}});
  const auto h = estimate_harmonic_measure(E, I, 20000, seeded(11));
  CHECK(h.nonterminated == 0);
  CHECK(h.total_mass() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("symmetric two-component set splits evenly") {
  const IntervalSet E({{-3.0, -1.0}, {1.0, 3.0}});
  const auto h = estimate_harmonic_measure(E, I, 40000, seeded(5));
  CHECK(std::abs(h.masses[0] - 0.5) <= 3.0 * h.stderrs[0]);
}

TEST_CASE("estimates do not depend on the worker count") {
  const IntervalSet E({{-1.0, 0.0}, {0.5, 2.0}});
  RandomWalkConfig a = seeded(9), b = seeded(9);
  a.workers = 1;
  b.workers = 3;
  const auto ha = estimate_harmonic_measure(E, I, 9000, a);
  const auto hb = estimate_harmonic_measure(E, I, 9000, b);
  CHECK(ha.counts == hb.counts);
  CHECK(ha.bin_counts == hb.bin_counts);
  CHECK(ha.mean_steps == hb.mean_steps);
  const auto hc = estimate_harmonic_measure(E, I, 9000, seeded(10));
  CHECK(ha.counts != hc.counts);
}

TEST_CASE("binned density matches the single-slit oracle") {
  const IntervalSet E({{-1.0, 1.0}});
  const long N = 100000;
  const auto h = estimate_harmonic_measure(E, I, N, seeded(2));
  const auto ref = single_slit_bin_masses(-1.0, 1.0, I, 32);
  for (int j = 0; j < 32; ++j) {
    const double m = h.bin_mass(0, j);
    const double se = std::sqrt(ref[j] * (1.0 - ref[j]) / N);
    CHECK(std::abs(m - ref[j]) <= 4.0 * se);
  }
}

TEST_CASE("sample_hit rejects sources on E and invalid configs") {
  const IntervalSet E({{-1.0, 1.0}});
  SplitMix64 rng(1);
  CHECK_THROWS_AS(sample_hit(E, cplx{0.5, 0.0}, {}, rng), std::invalid_argument);
  RandomWalkConfig bad;
  bad.max_steps = 0;
  CHECK_THROWS_AS(sample_hit(E, I, bad, rng), std::invalid_argument);
  RandomWalkConfig few;
  few.max_steps = 10;
  CHECK_THROWS_AS(estimate_harmonic_measure(E, I, 100, few), std::invalid_argument);
  CHECK_THROWS(estimate_harmonic_measure(IntervalSet(), I, 100, {}));
}

TEST_CASE("step budget exhaustion raises SamplerFailure") {
  const IntervalSet E({{-1.0, 1.0}});
  RandomWalkConfig c = seeded(3);
  c.max_steps = 1000;
  c.eps_shell = 1e-300;
  c.step_cap = 1e-3;
  CHECK_THROWS_AS(estimate_harmonic_measure(E, cplx{0.0, 50.0}, 1000, c), SamplerFailure);
}

TEST_CASE("Green functions against the slit closed forms") {
  const IntervalSet E({{-1.0, 1.0}});
  const cplx z{0.4, 0.8}, p{-0.5, 1.5};
  const Estimate g = green_at(E, z, p, 40000, seeded(4));
  CHECK(std::abs(g.value - single_slit_green(-1.0, 1.0, z, p)) <= 4.0 * g.stderr_ + 1e-3);
  const Estimate gi = green_infinity_at(E, z, 40000, seeded(4));
  CHECK(std::abs(gi.value - single_slit_green_infinity(-1.0, 1.0, z)) <= 4.0 * gi.stderr_ + 1e-3);
}

TEST_CASE("Martin function of the slit complement") {
  const IntervalSet E({{-1.0, 1.0}});
  const std::vector<cplx> q{{0.0, 2.0}, {1.5, 0.5}};
  const MartinEstimate M = martin_ratio(E, q, 60.0, 40000, seeded(6));
  auto oracle = [](cplx z) {
    return std::abs(std::log(std::abs(z + std::sqrt(z - 1.0) * std::sqrt(z + 1.0))));
  };
  const double base = oracle(I);
  for (std::size_t k = 0; k < q.size(); ++k)
    CHECK(M.values[k].value == doctest::Approx(oracle(q[k]) / base).epsilon(0.05));
  CHECK_THROWS_AS(martin_ratio(E, q, 5.0, 1000, seeded(6)), std::invalid_argument);
}

TEST_CASE("beta is one when the square misses E") {
  const IntervalSet E = make_benedicks_set({2.0, 0.25, -3, 3});
  const BetaSample far = beta_at(E, 2.5, 2000, seeded(1));
  CHECK(far.beta_hat == 1.0);
  const BetaSample near = beta_at(E, 3.5, 20000, seeded(1));
  CHECK(near.beta_hat < 1.0);
  CHECK(near.beta_hat > 0.0);
}

TEST_CASE("square lemma: symmetry without slits, inequality with a slit") {
  const RandomWalkConfig c = seeded(8);
  const auto diag = square_lemma_check(IntervalSet(), 0.0, 1.0, {cplx{0.4, 0.4}, cplx{-0.3, 0.3}}, 40000, c);
  for (const auto& r : diag) {
    CHECK(std::abs(r.omega_H.value - r.omega_V.value) <=
          3.0 * std::hypot(r.omega_H.stderr_, r.omega_V.stderr_));
  }
  const IntervalSet slit({{-0.6, 0.6}});
  const auto res = square_lemma_check(slit, 0.0, 1.0, {cplx{0.0, 0.3}, cplx{0.0, -0.7}}, 20000, c);
  for (const auto& r : res) CHECK(r.holds);
  CHECK_THROWS(square_lemma_check(slit, 0.0, 1.0, {cplx{2.0, 0.0}}, 100, c));
}

TEST_CASE("harmonic moment of small order is close to the total mass") {
  const IntervalSet E({{-1.0, 1.0}});
  const Estimate m = harmonic_moment(E, 0.0, 1e-6, 20000, seeded(12));
  CHECK(m.value == doctest::Approx(1.0).epsilon(1e-4));
  CHECK_THROWS(harmonic_moment(E, 0.0, 1.0, 20000, seeded(12)));
  const Estimate a = harmonic_moment(E, 0.0, 0.5, 20000, seeded(12));
  CHECK(a.value > 1.0);
}

#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "lp_oracle.hpp"
#include "slitpot/extremal.hpp"

using namespace slitpot;
using cplx = std::complex<double>;

TEST_CASE("exchange solver agrees with a dense-grid linear program") {
  std::mt19937_64 gen(7);
  for (int trial = 0; trial < 6; ++trial) {
    const testing::OracleCase c = testing::random_case(gen);
    CAPTURE(trial);
    CAPTURE(c.n);
    CAPTURE(c.z0);
    const ExtremalWitness w = hall_majorant_n(c.W, cplx{c.z0, 0.0}, c.n);
    const double ref = testing::oracle_value(c);
    CHECK(std::abs(w.value - ref) <= 5e-3 * ref);
    CHECK(w.grid_violation <= 1e-8);
    CHECK(w.value >= 1.0 - 1e-12);
  }
}

TEST_CASE("Hall majorant is monotone in degree and at least one") {
  const IntervalSet E({{-1.0, -0.2}, {0.3, 1.0}});
  const Weight W = Weight::per_interval(E, {0.5, 2.0});
  double prev = 0.0;
  for (int n : {0, 1, 2, 4, 8, 12, 16}) {
    const ExtremalWitness w = hall_majorant_n(W, cplx{0.05, 0.0}, n);
    CHECK(w.value >= prev * (1.0 - 1e-9));
    CHECK(w.value >= 1.0 - 1e-12);
    prev = w.value;
  }
  // Constant weight 1: only constants of modulus 1 at degree zero.
  const ExtremalWitness c = hall_majorant_n(Weight::constant(E, 0.0), cplx{0.05, 0.0}, 0);
  CHECK(c.value == doctest::Approx(1.0));
}

TEST_CASE("witness is feasible off the grid") {
  const Weight W = Weight::power_law(IntervalSet({{-3.0, 3.0}}), 0.3);
  const ExtremalWitness w = hall_majorant_n(W, cplx{0.0, 1.0}, 10);
  CHECK(w.lower_bound);
  double worst = 0.0;
  for (int k = 0; k <= 6000; ++k) {
    const double x = -3.0 + 6.0 * k / 6000.0;
    worst = std::max(worst, std::log(std::abs(w.eval(x))) - W.log_weight(x));
  }
  CHECK(worst <= 1e-6);
  CHECK(w.coeffs.size() == 11);
  CHECK(w.to_json().find("\"degree\"") != std::string::npos);
}

TEST_CASE("growth ratio on the power-law window") {
  // Values from an independent LP solve (HiGHS) on a fine grid over [-e^4, e^4].
  const double L = std::exp(4.0);
  const Weight W = Weight::power_law(IntervalSet({{-L, L}}), 0.3);
  const GrowthTable t = growth_ratio_check(W, {2, 4, 6}, {std::exp(2.0), std::exp(3.0)});
  REQUIRE(t.rows.size() == 6);
  CHECK(t.rows[0].ratio == doctest::Approx(0.80618).epsilon(1e-3));  // n = 2, x = e^2
  CHECK(t.rows[4].ratio == doctest::Approx(0.85499).epsilon(1e-3));  // n = 4, x = e^3
  CHECK(t.rows[5].ratio == doctest::Approx(0.98429).epsilon(1e-3));  // n = 6, x = e^3
  CHECK(t.bounded);
  CHECK(t.nondecreasing);
  CHECK_THROWS(growth_ratio_check(Weight::constant(IntervalSet({{-1.0, 1.0}}), 1.0), {2}, {0.5}));
}

TEST_CASE("weight models") {
  const IntervalSet E({{-2.0, -1.0}, {1.0, 3.0}});
  const Weight d = Weight::double_exponential(E);
  CHECK(d.log_weight(-1.5) == doctest::Approx(std::exp(1.0)));
  CHECK(d.log_weight(2.0) == doctest::Approx(std::exp(2.0)));
  CHECK(std::isinf(d.log_weight(0.0)));
  const Weight p = Weight::power_law(E, 0.3);
  const double x = 2.5;
  CHECK(p.log_weight(x) ==
        doctest::Approx(std::numbers::pi / std::tan(0.3 * std::numbers::pi) * std::pow(x, 0.6)));
  const Weight s = p.shifted(-3.0);
  CHECK(s.log_weight(x) == doctest::Approx(p.log_weight(x) - 3.0 * std::log1p(x)));
  CHECK_THROWS(Weight::per_interval(E, {1.0}));
  CHECK_THROWS(Weight::per_interval(E, {-1.0, 0.0}));
  const Weight back = parse_weight(format_weight(p), E);
  CHECK(back.log_weight(x) == p.log_weight(x));
  const Weight g = Weight::grid(E, {-2.0, -1.0, 1.0, 3.0}, {0.0, 1.0, 2.0, 4.0});
  CHECK(g.log_weight(2.0) == doctest::Approx(3.0));
}

#include <cmath>
#include <random>

#include "doctest.h"
#include "slitpot/interval_set.hpp"
#include "slitpot/text.hpp"

using namespace slitpot;

TEST_CASE("interval set validation") {
  CHECK_NOTHROW(IntervalSet({{-1.0, 0.0}, {1.0, 2.0}}));
  CHECK_THROWS_AS(IntervalSet({{1.0, 2.0}, {-1.0, 0.0}}), std::invalid_argument);
  CHECK_THROWS_AS(IntervalSet({{0.0, 0.0}}), std::invalid_argument);
  CHECK_THROWS_AS(IntervalSet({{0.0, 1.0}, {0.5, 2.0}}), std::invalid_argument);
  CHECK_THROWS_AS(IntervalSet({{0.0, 1.0}, {1.0, 2.0}}), std::invalid_argument);
  CHECK_THROWS_AS(IntervalSet({{0.0, NAN}}), std::invalid_argument);
  const IntervalSet m = IntervalSet::merged({{1.0, 2.0}, {-1.0, 0.5}, {0.5, 1.2}});
  REQUIRE(m.size() == 1);
  CHECK(m[0].a == -1.0);
  CHECK(m[0].b == 2.0);
}

TEST_CASE("length floor is enforced") {
  CHECK_NOTHROW(IntervalSet({{10.0, 10.5}}, LengthFloor{1.0, 1.0}));
  CHECK_THROWS_AS(IntervalSet({{10.0, 10.05}}, LengthFloor{1.0, 1.0}), std::invalid_argument);
}

TEST_CASE("locate classifies points exactly") {
  const IntervalSet E({{-3.0, -2.0}, {0.0, 1.0}, {4.0, 5.0}});
  CHECK(locate(E, -4.0).kind == Location::Kind::below_hull);
  CHECK(locate(E, 6.0).kind == Location::Kind::above_hull);
  CHECK(locate(E, -2.0).kind == Location::Kind::component);
  CHECK(locate(E, -2.0).index == 0);
  CHECK(locate(E, 0.0).index == 1);
  const Location g = locate(E, 2.0);
  CHECK(g.kind == Location::Kind::gap);
  CHECK(g.index == 1);
}

TEST_CASE("nearest agrees with a linear scan") {
  const IntervalSet E({{-3.0, -2.0}, {0.0, 1.0}, {4.0, 5.0}});
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> u(-7.0, 7.0);
  for (int k = 0; k < 2000; ++k) {
    const std::complex<double> z(u(gen), u(gen) * 0.5);
    double best = INFINITY;
    for (const Interval& I : E.components()) {
      const double x = std::clamp(z.real(), I.a, I.b);
      best = std::min(best, std::abs(z - std::complex<double>(x, 0.0)));
    }
    CHECK(E.distance(z) == doctest::Approx(best).epsilon(1e-14));
  }
}

TEST_CASE("measure_within") {
  const IntervalSet E({{-3.0, -2.0}, {0.0, 1.0}, {4.0, 5.0}});
  CHECK(E.measure_within(-10.0, 10.0) == doctest::Approx(3.0));
  CHECK(E.measure_within(0.5, 4.5) == doctest::Approx(1.0));
  CHECK(E.measure_within(1.5, 3.5) == 0.0);
}

TEST_CASE("power-gap set") {
  const IntervalSet E = make_benedicks_set({2.0, 0.25, -3, 3});
  REQUIRE(E.size() == 7);
  CHECK(E[0].mid() == doctest::Approx(-9.0));
  CHECK(E[3].mid() == doctest::Approx(0.0));
  CHECK(E[6].mid() == doctest::Approx(9.0));
  for (const Interval& I : E.components()) CHECK(I.length() == doctest::Approx(0.5));
  CHECK(benedicks_center(1.5, -4) == doctest::Approx(-8.0));
  CHECK_THROWS(make_benedicks_set({1.0, 0.25, -3, 3}));
  CHECK_THROWS(make_benedicks_set({2.0, 0.5, -3, 3}));
}

TEST_CASE("metric tests on the whole line and on a sparse set") {
  const IntervalSet R({{-100.0, 100.0}});
  const MetricReport r = metric_tests(R, 50.0);
  CHECK(r.gap_integral == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(r.dist_integral == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(r.relatively_dense);

  const IntervalSet E = make_benedicks_set({2.0, 0.25, -12, 12});
  const MetricReport m = metric_tests(E, 100.0);
  CHECK_FALSE(m.relatively_dense);
  CHECK(m.largest_gap.length() > 15.0);
  CHECK(m.gap_integral > 0.0);
}

TEST_CASE("interval set text round trip is exact") {
  const IntervalSet E({{-0.1, 1.0 / 3.0}, {2.0, std::exp(1.0)}}, LengthFloor{0.2, 1.0});
  const std::string s = format_interval_set(E);
  const IntervalSet back = parse_interval_set(s);
  CHECK(back == E);
  REQUIRE(back.length_floor().has_value());
  CHECK(back.length_floor()->c == 0.2);
  CHECK(format_interval_set(back) == s);
  CHECK_THROWS(parse_interval_set("0 1\n0.5 2\n"));
  CHECK_THROWS(parse_interval_set("0 x\n"));

  const BenedicksSetSpec b{1.5, 0.2, -4, 7};
  const BenedicksSetSpec b2 = parse_benedicks_spec(format_benedicks_spec(b));
  CHECK(b2.p == b.p);
  CHECK(b2.delta == b.delta);
  CHECK(b2.n_min == -4);
  CHECK(b2.n_max == 7);
}

TEST_CASE("text helpers") {
  CHECK(parse_real(fmt_real(0.1)) == 0.1);
  CHECK(parse_real(fmt_real(std::exp(-30.0))) == std::exp(-30.0));
  CHECK_THROWS(parse_real("1.5x"));
  CHECK(parse_int("-12") == -12);
  CHECK_THROWS(parse_int("1.5"));
  CHECK(fnv1a64("a") != fnv1a64("b"));
  CHECK(hex64(255).size() == 16);
}

#include <cmath>
#include <numbers>

#include "doctest.h"
#include "slitpot/entire.hpp"

using namespace slitpot;
using cplx = std::complex<double>;

TEST_CASE("explicit zero list evaluates as a polynomial") {
  const auto spec = CanonicalProductSpec::explicit_zeros({1.0, 2.0, -3.0});
  const cplx z{0.7, 1.3};
  const cplx direct = (1.0 - z / 1.0) * (1.0 - z / 2.0) * (1.0 + z / 3.0);
  const LogValue v = eval_canonical_product(spec, z);
  CHECK(v.log_modulus == doctest::Approx(std::log(std::abs(direct))).epsilon(1e-13));
  CHECK(std::abs(v.phase - direct / std::abs(direct)) < 1e-12);
  CHECK_THROWS_AS(eval_canonical_product(spec, cplx{2.0, 0.0}), std::domain_error);
  const DerivativeValue d = derivative_at_zero(spec, 2);  // f'(2) = -(1/2)(1 - 2)(1 + 2/3)
  CHECK(d.value() == doctest::Approx(-0.5 * (1.0 - 2.0) * (1.0 + 2.0 / 3.0)));
}

TEST_CASE("rho = 1/2 reproduces sin(pi sqrt z) / (pi sqrt z)") {
  const auto spec = CanonicalProductSpec::power(0.5, 10000, 2);
  for (cplx z : {cplx{2.3, 0.0}, cplx{-4.0, 1.0}, cplx{10.5, 3.0}}) {
    const cplx s = std::sqrt(z);
    const cplx ref = std::sin(std::numbers::pi * s) / (std::numbers::pi * s);
    const LogValue v = eval_canonical_product(spec, z);
    CHECK(v.log_modulus == doctest::Approx(std::log(std::abs(ref))).epsilon(1e-7));
    CHECK(v.error_bound < 1e-6);
  }
  for (long n : {1L, 2L, 7L}) {
    const DerivativeValue d = derivative_at_zero(spec, n);
    const double ref = (n % 2 ? -1.0 : 1.0) / (2.0 * n * n);
    CHECK(d.value() == doctest::Approx(ref).epsilon(1e-7));
  }
}

TEST_CASE("tail correction order improves a truncated power product") {
  const auto ref = eval_canonical_product(CanonicalProductSpec::power(0.3, 200000, 2), cplx{-50.0, 0.0});
  double prev = INFINITY;
  for (int tail : {0, 1, 2}) {
    const auto v = eval_canonical_product(CanonicalProductSpec::power(0.3, 2000, tail), cplx{-50.0, 0.0});
    const double err = std::abs(v.log_modulus - ref.log_modulus);
    CHECK(err < prev);
    CHECK(err <= v.error_bound + 1e-9);
    prev = err;
  }
}

TEST_CASE("Krein partial fractions for sparse zeros") {
  const auto spec = CanonicalProductSpec::geometric(2.0, 2.0);
  const KreinFunction F = krein_from_product(spec, 30);
  CHECK_NOTHROW(F.validate());
  REQUIRE(F.zeros.size() == 30);
  CHECK(F.zeros[3] == 16.0);
  for (cplx z : {cplx{-1.0, 0.0}, cplx{3.0, 5.0}, cplx{100.0, -2.0}, cplx{20.0, 30.0}})
    CHECK(krein_identity_residual(spec, F, z) < 1e-8);
  CHECK_THROWS_AS(krein_sum(F, cplx{4.0, 0.0}), std::domain_error);
  KreinFunction bad = F;
  bad.zeros[1] = bad.zeros[0];
  CHECK_THROWS(bad.validate());
}

TEST_CASE("Hardy ratio closed form at rho = 1/2") {
  for (const HardyRow& r : hardy_ratio(0.5, {1, 10, 100, 1000}))
    CHECK(r.ratio == doctest::Approx(0.5).epsilon(1e-10));
  const auto rows = hardy_ratio(0.3, {100, 200});
  CHECK(rows[1].ratio / rows[0].ratio == doctest::Approx(1.0).epsilon(0.05));
  CHECK_THROWS(hardy_ratio(0.6, {10}));
}

TEST_CASE("Cartwright integral of exp") {
  // log+|e^x| = max(x, 0); the integral over [0, T] of x / (1 + x^2) is log(1 + T^2) / 2.
  const double T = 1000.0;
  const double v = cartwright_log_integral([](double x) { return x; }, T);
  CHECK(v == doctest::Approx(0.5 * std::log1p(T * T)).epsilon(1e-8));
  CHECK_THROWS(cartwright_log_integral([](double) { return 0.0; }, -1.0));
}

TEST_CASE("bounded-type certificate of a constant") {
  const IntervalSet E({{-1.0, 1.0}});
  std::vector<HitSample> s(200);
  for (std::size_t k = 0; k < s.size(); ++k) {
    s[k].outcome = Outcome::hit_set;
    s[k].component = 0;
    s[k].hit_point = -0.99 + 0.01 * static_cast<double>(k % 199);
  }
  const auto c = bounded_type_certificate([](double) { return 2.0; }, E, s);
  CHECK(c.value == doctest::Approx(2.0));
  CHECK(c.stable);
  CHECK(c.n_used == 200);
}

TEST_CASE("g+/g- splitting") {
  const IntervalSet E({{0.5, 1.5}, {3.5, 4.5}}, LengthFloor{0.5, 0.0});
  KreinFunction F;
  F.zeros = {0.8, 4.2};
  F.coeffs = {0.25, 0.5};
  F.derivs = {4.0, 2.0};
  F.log_abs_derivs = {std::log(4.0), std::log(2.0)};
  const SplitTerms t = split_pm(F, E);
  CHECK(t.sign == 1);
  REQUIRE(t.plus_zeros.size() == 1);   // 4.2 in the right half of [3.5, 4.5]
  REQUIRE(t.minus_zeros.size() == 1);  // 0.8 in the left half of [0.5, 1.5]
  const cplx z{2.0, 1.0};
  const cplx total = 0.25 / (z - 0.8) + 0.5 / (z - 4.2);
  CHECK(std::abs(t.g_plus(z) + t.g_minus(z) - total) < 1e-14);
  CHECK_THROWS(split_pm(F, IntervalSet({{0.5, 1.5}, {3.5, 4.5}})));
}

TEST_CASE("product spec text round trip") {
  for (const auto& s : {CanonicalProductSpec::power(0.3, 5000, 1), CanonicalProductSpec::geometric(3.0, 2.5, 40),
                        CanonicalProductSpec::explicit_zeros({1.5, -2.0}),
                        CanonicalProductSpec::symmetric_square(0.25, 800, 2)}) {
    const CanonicalProductSpec b = parse_product_spec(format_product_spec(s));
    CHECK(format_product_spec(b) == format_product_spec(s));
    CHECK(b.zero(2) == s.zero(2));
  }
  CHECK_THROWS(parse_product_spec("model=power rho=0.7 N=10"));
  CHECK_THROWS(parse_product_spec("model=geometric x1=2 q=1.5 N=10"));
}

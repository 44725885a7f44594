#include "slitpot/entire.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <sstream>

#include "slitpot/text.hpp"

namespace slitpot {

using cplx = std::complex<double>;

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Neumaier's compensated summation.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = s_ + x;
    if (std::abs(s_) >= std::abs(x))
      c_ += (s_ - t) + x;
    else
      c_ += (x - t) + s_;
    s_ = t;
    abs_ += std::abs(x);
  }
  double value() const { return s_ + c_; }
  double abs_total() const { return abs_; }

 private:
  double s_ = 0.0, c_ = 0.0, abs_ = 0.0;
};

struct ComplexSum {
  CompensatedSum re, im;
  void add(cplx z) {
    re.add(z.real());
    im.add(z.imag());
  }
  cplx value() const { return {re.value(), im.value()}; }
};

// Sum over n > N of log(1 - z n^-alpha) by Euler-Maclaurin, with the first
// omitted term (doubled) as the error bound.
struct Tail {
  cplx value{0.0, 0.0};
  double bound = 0.0;
};

Tail power_tail(double alpha, long N, int order, cplx z) {
  Tail t;
  if (z == cplx(0.0, 0.0)) return t;
  const double Nd = static_cast<double>(N);
  const double lamN = std::pow(Nd, alpha);
  if (std::abs(z) > 0.5 * lamN) {
    const long need = static_cast<long>(std::ceil(std::pow(2.0 * std::abs(z), 1.0 / alpha))) + 1;
    throw TruncationError("|z| = " + fmt_short(std::abs(z)) +
                              " is too large for the truncation N = " + std::to_string(N),
                          need);
  }
  const cplx w = z / lamN;
  cplx integral{0.0, 0.0}, g3{0.0, 0.0};
  cplx wk = w;
  for (int k = 1; k <= 200; ++k) {
    const double ka = k * alpha;
    integral -= wk / (k * (ka - 1.0));
    g3 += wk / static_cast<double>(k) * (ka * (ka + 1.0) * (ka + 2.0));
    if (std::abs(wk) < 1e-20) break;
    wk *= w;
  }
  integral *= Nd;
  g3 /= Nd * Nd * Nd;
  const cplx g0 = std::log(1.0 - w);
  const cplx g1 = alpha * w / (Nd * (1.0 - w));
  switch (order) {
    case 0:
      t.value = 0.0;
      t.bound = 2.0 * std::abs(integral - 0.5 * g0);
      break;
    case 1:
      t.value = integral - 0.5 * g0;
      t.bound = 2.0 * std::abs(g1) / 12.0;
      break;
    default:
      t.value = integral - 0.5 * g0 - g1 / 12.0;
      t.bound = 2.0 * std::abs(g3) / 720.0;
      break;
  }
  return t;
}

// Exact tail of the geometric product beyond x_N:
// -sum_j (z / x_N)^j / (j (q^j - 1)).
Tail geometric_tail(double xN, double q, cplx z) {
  Tail t;
  if (z == cplx(0.0, 0.0)) return t;
  const cplx w = z / xN;
  if (std::abs(w) > 0.5)
    throw TruncationError("|z| = " + fmt_short(std::abs(z)) +
                              " is too large for the geometric truncation",
                          -1);
  cplx wj = w;
  double qj = q;
  for (int j = 1; j <= 200; ++j) {
    const cplx term = wj / (j * (qj - 1.0));
    t.value -= term;
    if (std::abs(term) < 1e-22) break;
    wj *= w;
    qj *= q;
  }
  t.bound = 1e-20;
  return t;
}

double alpha_of(const CanonicalProductSpec& s) { return 1.0 / s.rho; }

// log f(z) over the explicit factors, with zero detection.
template <class ZeroFn>
void explicit_factors(long count, ZeroFn zero, cplx z, ComplexSum& acc) {
  for (long n = 1; n <= count; ++n) {
    const double lam = zero(n);
    if (z == cplx(lam, 0.0))
      throw std::domain_error("evaluation point is a zero of the product (pole of 1/f)");
    acc.add(std::log(1.0 - z / lam));
  }
}

LogValue finish(const ComplexSum& acc, const Tail& tail) {
  const cplx s = acc.value() + tail.value;
  LogValue v;
  v.log_modulus = s.real();
  v.phase = std::polar(1.0, s.imag());
  v.error_bound = tail.bound + 8.0 * kEps * (acc.re.abs_total() + 1.0);
  return v;
}

LogValue eval_power_model(double alpha, long N, int tail_order, cplx z) {
  if (z == cplx(0.0, 0.0)) return {};
  if (z.imag() == 0.0) {
    // Real axis: real logarithms and an exact sign count.
    const double x = z.real();
    CompensatedSum acc;
    int sign = 1;
    for (long n = 1; n <= N; ++n) {
      const double lam = std::pow(static_cast<double>(n), alpha);
      if (x == lam) throw std::domain_error("evaluation point is a zero of the product (pole of 1/f)");
      const double f = 1.0 - x / lam;
      if (f < 0.0) sign = -sign;
      acc.add(std::log(std::abs(f)));
    }
    const Tail t = power_tail(alpha, N, tail_order, z);
    LogValue v;
    v.log_modulus = acc.value() + t.value.real();
    v.phase = {static_cast<double>(sign), 0.0};
    v.error_bound = t.bound + 8.0 * kEps * (acc.abs_total() + 1.0);
    return v;
  }
  ComplexSum acc;
  explicit_factors(N, [&](long n) { return std::pow(static_cast<double>(n), alpha); }, z, acc);
  return finish(acc, power_tail(alpha, N, tail_order, z));
}

}  // namespace

CanonicalProductSpec CanonicalProductSpec::power(double rho, long N, int tail) {
  CanonicalProductSpec s;
  s.model = Model::power;
  s.rho = rho;
  s.N = N;
  s.tail_order = tail;
  return s;
}

CanonicalProductSpec CanonicalProductSpec::symmetric_square(double rho, long N, int tail) {
  CanonicalProductSpec s = power(rho, N, tail);
  s.model = Model::symmetric_square;
  return s;
}

CanonicalProductSpec CanonicalProductSpec::geometric(double x1, double q, long N) {
  CanonicalProductSpec s;
  s.model = Model::geometric;
  s.x1 = x1;
  s.q = q;
  s.N = N;
  return s;
}

CanonicalProductSpec CanonicalProductSpec::explicit_zeros(std::vector<double> zeros) {
  CanonicalProductSpec s;
  s.model = Model::explicit_list;
  s.zeros = std::move(zeros);
  s.N = static_cast<long>(s.zeros.size());
  s.tail_order = 0;
  return s;
}

void CanonicalProductSpec::validate() const {
  switch (model) {
    case Model::power:
    case Model::symmetric_square:
      if (!(rho > 0.0 && rho <= 0.5))
        throw std::invalid_argument("lattice exponent rho must lie in (0, 1/2]");
      if (N < 1) throw std::invalid_argument("truncation N must be positive");
      if (tail_order < 0 || tail_order > 2)
        throw std::invalid_argument("tail order must be 0, 1 or 2");
      break;
    case Model::geometric:
      if (!(x1 > 0.0)) throw std::invalid_argument("first zero must be positive");
      if (!(q >= 2.0)) throw std::invalid_argument("geometric ratio q must be at least 2");
      if (N < 1) throw std::invalid_argument("truncation N must be positive");
      break;
    case Model::explicit_list: {
      std::vector<double> z = zeros;
      for (double v : z)
        if (!std::isfinite(v) || v == 0.0)
          throw std::invalid_argument("zeros must be finite and nonzero");
      std::sort(z.begin(), z.end());
      if (std::adjacent_find(z.begin(), z.end()) != z.end())
        throw std::invalid_argument("zeros must be simple");
      break;
    }
  }
}

double CanonicalProductSpec::zero(long k) const {
  switch (model) {
    case Model::power:
      if (k < 1) throw std::out_of_range("zero index starts at 1");
      return std::pow(static_cast<double>(k), 1.0 / rho);
    case Model::symmetric_square: {
      if (k == 0) throw std::out_of_range("zero index must be nonzero");
      const double m = std::pow(static_cast<double>(std::labs(k)), 0.5 / rho);
      return k > 0 ? m : -m;
    }
    case Model::geometric:
      if (k < 1) throw std::out_of_range("zero index starts at 1");
      return x1 * std::pow(q, static_cast<double>(k - 1));
    case Model::explicit_list:
      if (k < 1 || k > static_cast<long>(zeros.size())) throw std::out_of_range("zero index");
      return zeros[static_cast<std::size_t>(k - 1)];
  }
  return NAN;
}

LogValue eval_canonical_product(const CanonicalProductSpec& spec, cplx z) {
  spec.validate();
  switch (spec.model) {
    case CanonicalProductSpec::Model::power:
      return eval_power_model(alpha_of(spec), spec.N, spec.tail_order, z);
    case CanonicalProductSpec::Model::symmetric_square:
      return eval_power_model(alpha_of(spec), spec.N, spec.tail_order, z * z);
    case CanonicalProductSpec::Model::geometric: {
      if (z == cplx(0.0, 0.0)) return {};
      ComplexSum acc;
      explicit_factors(spec.N, [&](long k) { return spec.zero(k); }, z, acc);
      return finish(acc, geometric_tail(spec.zero(spec.N), spec.q, z));
    }
    case CanonicalProductSpec::Model::explicit_list: {
      ComplexSum acc;
      explicit_factors(spec.N, [&](long k) { return spec.zero(k); }, z, acc);
      return finish(acc, Tail{});
    }
  }
  return {};
}

namespace {

// log|B'(lambda_k)| and its sign for the power lattice, with the factors
// 1 - lambda_k / lambda_n = -expm1(alpha log(k / n)) kept accurate near n = k.
DerivativeValue power_derivative(double alpha, long N, int tail_order, long k) {
  if (k < 1 || k > N) throw std::out_of_range("zero index outside the truncation");
  const double kd = static_cast<double>(k);
  const double lam = std::pow(kd, alpha);
  CompensatedSum acc;
  acc.add(-std::log(lam));
  int sign = -1;
  for (long n = 1; n <= N; ++n) {
    if (n == k) continue;
    const double e = std::expm1(alpha * std::log1p((kd - static_cast<double>(n)) / static_cast<double>(n)));
    acc.add(std::log(std::abs(e)));
    if (n < k) sign = -sign;  // 1 - lambda_k/lambda_n < 0
  }
  const Tail t = power_tail(alpha, N, tail_order, cplx(lam, 0.0));
  DerivativeValue d;
  d.log_abs = acc.value() + t.value.real();
  d.sign = sign;
  d.error_bound = t.bound + 8.0 * kEps * (acc.abs_total() + 1.0);
  return d;
}

DerivativeValue list_derivative(const CanonicalProductSpec& spec, long k, const Tail* tail) {
  const double lam = spec.zero(k);
  CompensatedSum acc;
  acc.add(-std::log(std::abs(lam)));
  int sign = lam > 0 ? -1 : 1;
  for (long n = 1; n <= spec.N; ++n) {
    if (n == k) continue;
    const double f = 1.0 - lam / spec.zero(n);
    acc.add(std::log(std::abs(f)));
    if (f < 0) sign = -sign;
  }
  DerivativeValue d;
  d.log_abs = acc.value() + (tail ? tail->value.real() : 0.0);
  d.sign = sign;
  d.error_bound = (tail ? tail->bound : 0.0) + 8.0 * kEps * (acc.abs_total() + 1.0);
  return d;
}

}  // namespace

DerivativeValue derivative_at_zero(const CanonicalProductSpec& spec, long k) {
  spec.validate();
  switch (spec.model) {
    case CanonicalProductSpec::Model::power:
      return power_derivative(alpha_of(spec), spec.N, spec.tail_order, k);
    case CanonicalProductSpec::Model::symmetric_square: {
      // F(z) = B(z^2), so F'(lambda) = 2 lambda B'(lambda^2).
      if (k == 0) throw std::out_of_range("zero index must be nonzero");
      DerivativeValue d = power_derivative(alpha_of(spec), spec.N, spec.tail_order, std::labs(k));
      const double lam = spec.zero(k);
      d.log_abs += std::log(2.0 * std::abs(lam));
      if (lam < 0) d.sign = -d.sign;
      return d;
    }
    case CanonicalProductSpec::Model::geometric: {
      if (k < 1 || k > spec.N) throw std::out_of_range("zero index outside the truncation");
      const Tail t = geometric_tail(spec.zero(spec.N), spec.q, cplx(spec.zero(k), 0.0));
      return list_derivative(spec, k, &t);
    }
    case CanonicalProductSpec::Model::explicit_list:
      return list_derivative(spec, k, nullptr);
  }
  return {};
}

// ---------------------------------------------------------------------------

namespace {

// Partial sums S_1..S_K; returns (S_K - S_{K/10}) / (S_{K/10} - S_{K/100})
// with S_0 = 0.
double decade_ratio(const std::vector<double>& partial) {
  const std::size_t K = partial.size();
  if (K == 0) return 0.0;
  auto S = [&](std::size_t j) { return j == 0 ? 0.0 : partial[j - 1]; };
  const std::size_t d1 = std::max<std::size_t>(K / 10, 1), d2 = K / 100;
  const double prev = S(d1) - S(d2);
  const double last = S(K) - S(d1);
  if (prev <= 0.0) return last > 0.0 ? INFINITY : 0.0;
  return last / prev;
}

}  // namespace

void KreinFunction::validate() const {
  if (zeros.size() != derivs.size() || zeros.size() != coeffs.size())
    throw std::invalid_argument("zeros, derivatives and coefficients differ in length");
  if (!log_abs_derivs.empty() && log_abs_derivs.size() != zeros.size())
    throw std::invalid_argument("log-derivative list differs in length");
  std::vector<double> z = zeros;
  for (std::size_t i = 0; i < zeros.size(); ++i) {
    if (!std::isfinite(zeros[i]) || !std::isfinite(coeffs[i]) || derivs[i] == 0.0)
      throw std::invalid_argument("non-finite Krein data");
  }
  std::sort(z.begin(), z.end());
  if (std::adjacent_find(z.begin(), z.end()) != z.end())
    throw std::invalid_argument("zeros must be simple");
  if (moment_order) {
    std::vector<double> partial;
    double s = 0.0;
    for (std::size_t i = 0; i < zeros.size(); ++i) {
      s += (1.0 + std::pow(std::abs(zeros[i]), *moment_order)) * std::abs(coeffs[i]);
      partial.push_back(s);
    }
    if (decade_ratio(partial) >= 0.9)
      throw std::invalid_argument("weighted coefficient sums do not appear to converge");
  }
}

KreinFunction krein_from_product(const CanonicalProductSpec& spec, long K) {
  spec.validate();
  KreinFunction F;
  auto push = [&](long k) {
    const DerivativeValue d = derivative_at_zero(spec, k);
    F.zeros.push_back(spec.zero(k));
    F.derivs.push_back(d.value());
    F.coeffs.push_back(1.0 / d.value());
    F.log_abs_derivs.push_back(d.log_abs);
  };
  if (spec.model == CanonicalProductSpec::Model::symmetric_square) {
    for (long k = 1; k <= K; ++k) {
      push(-k);
      push(k);
    }
  } else {
    for (long k = 1; k <= K; ++k) push(k);
  }
  return F;
}

KreinSum krein_sum(const KreinFunction& F, cplx z) {
  std::vector<std::size_t> order(F.zeros.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::abs(F.zeros[a]) < std::abs(F.zeros[b]);
  });
  ComplexSum acc;
  double prev = 0.0, last = 0.0;
  for (std::size_t i : order) {
    if (z == cplx(F.zeros[i], 0.0)) throw std::domain_error("evaluation point is a zero (pole)");
    const cplx term = F.coeffs[i] / (z - F.zeros[i]);
    acc.add(term);
    prev = last;
    last = std::abs(term);
  }
  KreinSum out;
  out.value = acc.value();
  if (prev > 0.0) {
    const double r = last / prev;
    out.tail_bound = r < 1.0 ? last * r / (1.0 - r) : INFINITY;
  }
  return out;
}

double krein_identity_residual(const CanonicalProductSpec& spec, const KreinFunction& F, cplx z) {
  const LogValue lf = eval_canonical_product(spec, z);
  const cplx inv_f = std::exp(-lf.log_modulus) * std::conj(lf.phase);
  const cplx s = krein_sum(F, z).value;
  return std::abs(inv_f - s) / std::abs(inv_f);
}

cplx SplitTerms::g_plus(cplx z) const {
  ComplexSum acc;
  for (std::size_t i = 0; i < plus_zeros.size(); ++i) acc.add(plus_coeffs[i] / (z - plus_zeros[i]));
  return acc.value();
}

cplx SplitTerms::g_minus(cplx z) const {
  ComplexSum acc;
  for (std::size_t i = 0; i < minus_zeros.size(); ++i)
    acc.add(minus_coeffs[i] / (z - minus_zeros[i]));
  return acc.value();
}

SplitTerms split_pm(const KreinFunction& F, const IntervalSet& E) {
  if (!E.length_floor()) throw std::invalid_argument("split needs a set with a length floor");
  const LengthFloor fl = *E.length_floor();
  SplitTerms out;
  bool pos = false, neg = false;
  for (double c : F.coeffs) {
    pos |= c > 0.0;
    neg |= c < 0.0;
  }
  if (pos && neg) throw std::invalid_argument("coefficients of mixed sign; split by sign first");
  out.sign = neg ? -1 : 1;
  std::vector<std::size_t> order(F.zeros.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::abs(F.zeros[a]) < std::abs(F.zeros[b]);
  });
  CompensatedSum weight;
  for (std::size_t i : order) {
    const double lam = F.zeros[i];
    const Location loc = locate(E, lam);
    if (loc.kind != Location::Kind::component)
      throw std::invalid_argument("zero " + fmt_short(lam) + " lies outside E");
    const Interval& I = E[loc.index];
    if (lam < I.mid()) {
      out.minus_zeros.push_back(lam);
      out.minus_coeffs.push_back(F.coeffs[i]);
    } else {
      out.plus_zeros.push_back(lam);
      out.plus_coeffs.push_back(F.coeffs[i]);
    }
    weight.add(std::abs(F.coeffs[i]) * (1.0 + std::pow(std::abs(lam), fl.M)));
  }
  out.tau = -(2.0 / fl.c) * weight.value();
  return out;
}

// ---------------------------------------------------------------------------

double cartwright_log_integral(const LogAbsFn& log_abs_f, double T,
                               const std::vector<double>& breakpoints) {
  if (!(T > 0.0)) throw std::invalid_argument("truncation T must be positive");
  std::vector<double> cuts{-T, 0.0, T};
  for (double p = 1.0; p < T; p *= 2.0) {
    cuts.push_back(p);
    cuts.push_back(-p);
  }
  for (double b : breakpoints)
    if (b > -T && b < T) cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  auto integrand = [&](double x) {
    const double l = log_abs_f(x);
    if (std::isnan(l) || l == INFINITY)
      throw std::invalid_argument("non-finite value of log|f| at x = " + fmt_short(x));
    return std::max(l, 0.0) / (1.0 + x * x);
  };
  CompensatedSum total;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double v = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
        integrand, cuts[i], cuts[i + 1], 20, 1e-11);
    total.add(v);
  }
  return std::max(total.value(), 0.0);
}

BoundedTypeCertificate bounded_type_certificate(const LogAbsFn& log_abs_f, const IntervalSet& E,
                                                const std::vector<HitSample>& samples) {
  BoundedTypeCertificate out;
  CompensatedSum s, s2, h;
  long n = 0, nh = 0;
  const std::size_t half = samples.size() / 2;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const HitSample& hs = samples[i];
    if (hs.outcome != Outcome::hit_set) continue;
    if (!E.contains(hs.hit_point)) throw std::invalid_argument("sample does not lie on E");
    const double l = log_abs_f(hs.hit_point);
    if (std::isnan(l) || l == INFINITY)
      throw std::invalid_argument("non-finite value of log|f| at a hit point");
    const double v = std::max(l, 0.0);
    s.add(v);
    s2.add(v * v);
    ++n;
    if (i < half) {
      h.add(v);
      ++nh;
    }
  }
  if (n < 2) throw std::invalid_argument("too few terminated samples");
  const double nd = static_cast<double>(n);
  out.n_used = n;
  out.value = s.value() / nd;
  const double var = std::max(0.0, s2.value() / nd - out.value * out.value);
  out.stderr_ = std::sqrt(var / nd);
  out.half_value = nh > 0 ? h.value() / static_cast<double>(nh) : NAN;
  out.stable = nh > 0 && std::abs(out.half_value - out.value) <= 3.0 * std::sqrt(2.0) * out.stderr_ + 1e-15;
  out.note =
      "finite and stable under sample doubling; consistent with, not a proof of, bounded type";
  if (!out.stable) out.note = "unstable under sample doubling";
  return out;
}

std::vector<HardyRow> hardy_ratio(double rho, const std::vector<long>& n_values, long N,
                                  int tail_order) {
  if (!(rho > 0.0 && rho <= 0.5)) throw std::invalid_argument("rho must lie in (0, 1/2]");
  const CanonicalProductSpec spec = CanonicalProductSpec::power(rho, N, tail_order);
  const double k = rho == 0.5 ? 0.0 : std::numbers::pi / std::tan(std::numbers::pi * rho);
  std::vector<HardyRow> out;
  for (long n : n_values) {
    HardyRow r;
    r.n = n;
    r.lambda = spec.zero(n);
    r.deriv = derivative_at_zero(spec, n);
    // lambda^rho = n exactly, and log lambda = log(n) / rho.
    const double logn = std::log(static_cast<double>(n));
    r.log_ratio = r.deriv.log_abs - (rho - 1.5) * logn / rho - k * static_cast<double>(n);
    r.ratio = std::exp(r.log_ratio);
    out.push_back(r);
  }
  return out;
}

// ---------------------------------------------------------------------------

std::string format_product_spec(const CanonicalProductSpec& s) {
  std::ostringstream os;
  switch (s.model) {
    case CanonicalProductSpec::Model::power:
    case CanonicalProductSpec::Model::symmetric_square:
      os << "model=" << (s.model == CanonicalProductSpec::Model::power ? "power" : "square")
         << " rho=" << fmt_real(s.rho) << " N=" << s.N << " tail=" << s.tail_order;
      break;
    case CanonicalProductSpec::Model::geometric:
      os << "model=geometric x1=" << fmt_real(s.x1) << " q=" << fmt_real(s.q) << " N=" << s.N;
      break;
    case CanonicalProductSpec::Model::explicit_list:
      os << "model=list zeros=";
      for (std::size_t i = 0; i < s.zeros.size(); ++i)
        os << (i ? "," : "") << fmt_real(s.zeros[i]);
      break;
  }
  return os.str();
}

CanonicalProductSpec parse_product_spec(const std::string& text) {
  const auto kv = parse_key_values(text);
  const std::string& model = require_key(kv, "model");
  auto get = [&](const char* key, const std::string& dflt) {
    auto it = kv.find(key);
    return it == kv.end() ? dflt : it->second;
  };
  CanonicalProductSpec s;
  if (model == "power" || model == "square") {
    s = model == "power" ? CanonicalProductSpec::power(parse_real(require_key(kv, "rho")))
                         : CanonicalProductSpec::symmetric_square(parse_real(require_key(kv, "rho")));
    s.N = parse_int(get("N", "10000"));
    s.tail_order = static_cast<int>(parse_int(get("tail", "2")));
  } else if (model == "geometric") {
    s = CanonicalProductSpec::geometric(parse_real(get("x1", "2")), parse_real(get("q", "2")),
                                        parse_int(get("N", "60")));
  } else if (model == "list") {
    std::vector<double> z;
    std::stringstream ss(require_key(kv, "zeros"));
    std::string tok;
    while (std::getline(ss, tok, ',')) z.push_back(parse_real(trim(tok)));
    s = CanonicalProductSpec::explicit_zeros(std::move(z));
  } else {
    throw std::invalid_argument("unknown product model '" + model + "'");
  }
  s.validate();
  return s;
}

}  // namespace slitpot

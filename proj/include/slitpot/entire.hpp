#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "slitpot/interval_set.hpp"
#include "slitpot/walk.hpp"

namespace slitpot {

/// Zero sets of genus-zero canonical products prod (1 - z / lambda).
struct CanonicalProductSpec {
  enum class Model {
    explicit_list,     // the listed zeros; a polynomial, no tail
    power,             // lambda_n = n^(1/rho), n >= 1
    symmetric_square,  // F(z) = B_rho(z^2), zeros +-n^(1/(2 rho))
    geometric          // x_k = x1 * q^(k-1), k >= 1
  };
  Model model = Model::power;
  std::vector<double> zeros;  // explicit_list only
  double rho = 0.3;
  double x1 = 2.0;
  double q = 2.0;
  long N = 10000;      // number of explicit factors
  int tail_order = 2;  // 0, 1 or 2 Euler-Maclaurin terms (power models)

  static CanonicalProductSpec power(double rho, long N = 10000, int tail = 2);
  static CanonicalProductSpec symmetric_square(double rho, long N = 10000, int tail = 2);
  static CanonicalProductSpec geometric(double x1, double q, long N = 60);
  static CanonicalProductSpec explicit_zeros(std::vector<double> zeros);

  /// Throws std::invalid_argument on a malformed spec.
  void validate() const;
  /// k-th zero; k >= 1 (for symmetric_square, k may be negative).
  double zero(long k) const;
};

/// Raised when a point is too far out for the truncation to control the tail.
class TruncationError : public std::runtime_error {
 public:
  TruncationError(const std::string& what, long suggested_N)
      : std::runtime_error(what), suggested_N(suggested_N) {}
  long suggested_N;
};

/// log f(z) split as log|f|, a unit phase, and an absolute bound on the
/// error of the log (tail remainder plus rounding).
struct LogValue {
  double log_modulus = 0.0;
  std::complex<double> phase{1.0, 0.0};
  double error_bound = 0.0;
};

struct DerivativeValue {
  double log_abs = 0.0;
  int sign = 1;
  double error_bound = 0.0;  // on log_abs
  double value() const { return sign * std::exp(log_abs); }
};

/// Throws std::domain_error when z is one of the truncated zeros and
/// TruncationError when |z| is too large for the tail expansion.
LogValue eval_canonical_product(const CanonicalProductSpec& spec, std::complex<double> z);

/// f'(lambda_k) = (-1 / lambda_k) prod_{n != k} (1 - lambda_k / lambda_n).
DerivativeValue derivative_at_zero(const CanonicalProductSpec& spec, long k);

// ---------------------------------------------------------------------------
// Krein-class data

struct KreinFunction {
  std::vector<double> zeros;   // strictly increasing in |lambda| order of use
  std::vector<double> derivs;  // f'(lambda_n)
  std::vector<double> coeffs;  // 1 / f'(lambda_n)
  /// log|f'(lambda_n)| when known; derivs may overflow where this does not.
  std::vector<double> log_abs_derivs;
  std::optional<double> moment_order;

  /// Checks finiteness, distinct zeros, and (when moment_order is set) the
  /// last-decade ratio of the weighted coefficient sums.
  void validate() const;
};

/// The first K zeros of a product with their derivatives.
KreinFunction krein_from_product(const CanonicalProductSpec& spec, long K);

struct KreinSum {
  std::complex<double> value;
  /// Geometric extrapolation of the omitted terms.
  double tail_bound = 0.0;
};

/// Sum c_n / (z - lambda_n), accumulated by increasing |lambda| with
/// error-compensated addition. std::domain_error at a zero.
KreinSum krein_sum(const KreinFunction& F, std::complex<double> z);

/// Relative residual |1/f(z) - sum| * |f(z)| between the product and the
/// partial-fraction sides. Meaningless in double precision once |1/f(z)| is
/// many orders below the largest term, i.e. far out past the first zeros.
double krein_identity_residual(const CanonicalProductSpec& spec, const KreinFunction& F,
                               std::complex<double> z);

/// Terms of one sign class split by the half of their component.
struct SplitTerms {
  std::vector<double> minus_zeros, minus_coeffs;  // left halves [a, mid)
  std::vector<double> plus_zeros, plus_coeffs;    // right halves [mid, b]
  /// -(2/c) * sum |c_n| (1 + |lambda_n|^M).
  double tau = 0.0;
  int sign = 1;  // common sign of the coefficients

  std::complex<double> g_plus(std::complex<double> z) const;
  std::complex<double> g_minus(std::complex<double> z) const;
};

/// Requires E.length_floor(), every zero inside E and coefficients of one sign.
SplitTerms split_pm(const KreinFunction& F, const IntervalSet& E);

// ---------------------------------------------------------------------------
// Logarithmic integrals

/// Evaluator of log|f(x)| on the real line (-inf at zeros is allowed).
using LogAbsFn = std::function<double(double)>;

/// Integral over [-T, T] of max(log|f|, 0) / (1 + x^2) by adaptive
/// Gauss-Kronrod on panels split at 0, +-2^k and the given breakpoints.
double cartwright_log_integral(const LogAbsFn& log_abs_f, double T,
                               const std::vector<double>& breakpoints = {});

struct BoundedTypeCertificate {
  double value = 0.0;       // mean of log+|f| over the hit points
  double stderr_ = 0.0;
  double half_value = 0.0;  // the same over the first half of the samples
  bool stable = false;      // halves agree within 3 standard errors
  long n_used = 0;
  std::string note;
};

/// Average of log+|f| against the sampled harmonic measure. A finite and
/// stable value is necessary for bounded type, not sufficient.
BoundedTypeCertificate bounded_type_certificate(const LogAbsFn& log_abs_f, const IntervalSet& E,
                                                const std::vector<HitSample>& samples);

struct HardyRow {
  long n = 0;
  double lambda = 0.0;
  DerivativeValue deriv;
  double log_ratio = 0.0;
  double ratio = 0.0;
};

/// r(n) = |B_rho'(lambda)| / (lambda^(rho - 3/2) exp(pi cot(pi rho) lambda^rho)),
/// lambda = n^(1/rho), computed in log space. rho = 1/2 is accepted as the
/// closed-form boundary case.
std::vector<HardyRow> hardy_ratio(double rho, const std::vector<long>& n_values, long N = 10000,
                                  int tail_order = 2);

// ---------------------------------------------------------------------------
// Text format: `model=power rho=0.3 N=10000 tail=2`, `model=square ...`,
// `model=geometric x1=2 q=2 N=60`, `model=list zeros=1,2,3`.

std::string format_product_spec(const CanonicalProductSpec& spec);
CanonicalProductSpec parse_product_spec(const std::string& text);

}  // namespace slitpot

#include "slitpot/slit_oracle.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace slitpot {

using cplx = std::complex<double>;

namespace {

cplx normalize(double a, double b, cplx z) {
  if (!(a < b)) throw std::invalid_argument("slit needs a < b");
  return (2.0 * z - (a + b)) / (b - a);
}

// Exterior Poisson kernel of the unit disk, unnormalized by 2 pi.
double exterior_poisson(cplx zeta0, double phi) {
  const cplx e{std::cos(phi), std::sin(phi)};
  return (std::norm(zeta0) - 1.0) / std::norm(zeta0 - e);
}

// Density in theta of the measure on [0, pi]; t = cos(theta) after
// normalization. Both sides of the slit (phi = +-theta) contribute.
double theta_density(cplx zeta0, double theta) {
  return (exterior_poisson(zeta0, theta) + exterior_poisson(zeta0, -theta)) /
         (2.0 * std::numbers::pi);
}

}  // namespace

cplx slit_to_disk_exterior(double a, double b, cplx z) {
  const cplx w = normalize(a, b, z);
  const cplx zeta = w + std::sqrt(w - 1.0) * std::sqrt(w + 1.0);
  // The product of principal roots already picks |zeta| >= 1 except on the
  // slit itself; guard against rounding there.
  return std::abs(zeta) >= 1.0 ? zeta : 1.0 / zeta;
}

double single_slit_density(double a, double b, cplx z0, double t) {
  if (!(a < t && t < b)) throw std::invalid_argument("t must lie inside the slit");
  if (z0.imag() == 0.0 && a <= z0.real() && z0.real() <= b)
    throw std::invalid_argument("source lies on the slit");
  const cplx zeta0 = slit_to_disk_exterior(a, b, z0);
  const double s = (2.0 * t - (a + b)) / (b - a);
  const double theta = std::acos(s);
  // d theta / dt = 2 / ((b - a) sqrt(1 - s^2)).
  return theta_density(zeta0, theta) * 2.0 / ((b - a) * std::sqrt(1.0 - s * s));
}

std::vector<double> single_slit_bin_masses(double a, double b, cplx z0, int bins) {
  if (bins <= 0) throw std::invalid_argument("bins must be positive");
  if (z0.imag() == 0.0 && a <= z0.real() && z0.real() <= b)
    throw std::invalid_argument("source lies on the slit");
  const cplx zeta0 = slit_to_disk_exterior(a, b, z0);
  std::vector<double> out(static_cast<std::size_t>(bins));
  const double h = std::numbers::pi / bins;
  for (int k = 0; k < bins; ++k) {
    const double lo = k * h;
    // Split each bin so sources close to the slit stay resolved.
    double m = 0.0;
    constexpr int kSub = 8;
    for (int j = 0; j < kSub; ++j) {
      const double u = lo + j * h / kSub, v = u + h / kSub;
      m += boost::math::quadrature::gauss<double, 20>::integrate(
          [&](double th) { return theta_density(zeta0, th); }, u, v);
    }
    out[static_cast<std::size_t>(k)] = m;
  }
  return out;
}

double single_slit_green(double a, double b, cplx z, cplx p) {
  const cplx zw = slit_to_disk_exterior(a, b, z);
  const cplx zp = slit_to_disk_exterior(a, b, p);
  // In xi = 1/zeta the domain is the unit disk and the Green function is
  // log |(1 - conj(xi_p) xi) / (xi - xi_p)|.
  const cplx xi = 1.0 / zw, xp = 1.0 / zp;
  return std::log(std::abs((1.0 - std::conj(xp) * xi) / (xi - xp)));
}

double single_slit_green_infinity(double a, double b, cplx z) {
  return std::log(std::abs(slit_to_disk_exterior(a, b, z)));
}

}  // namespace slitpot

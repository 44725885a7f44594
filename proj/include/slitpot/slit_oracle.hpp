#pragma once

#include <complex>
#include <vector>

namespace slitpot {

/// Closed forms for the complement of one slit [a, b], obtained from the map
/// w = (2z - a - b) / (b - a) onto C \ [-1, 1] followed by the inverse
/// Joukowski map zeta = w + sqrt(w - 1) sqrt(w + 1) onto |zeta| > 1.

/// Exterior-disk coordinate of z (|result| >= 1).
std::complex<double> slit_to_disk_exterior(double a, double b, std::complex<double> z);

/// Density of the harmonic measure of C \ [a, b] at t in (a, b) seen from z0.
double single_slit_density(double a, double b, std::complex<double> z0, double t);

/// Masses of the same measure in `bins` equal bins of theta, where
/// t = mid + half * cos(theta), theta in [0, pi]. Bin 0 touches b.
std::vector<double> single_slit_bin_masses(double a, double b, std::complex<double> z0,
                                           int bins);

/// Green function of C \ [a, b] with pole at p, evaluated at z.
double single_slit_green(double a, double b, std::complex<double> z, std::complex<double> p);

/// Green function with pole at infinity, log |zeta(z)|.
double single_slit_green_infinity(double a, double b, std::complex<double> z);

}  // namespace slitpot

#pragma once
// Bessel/Hankel kernels of order zero and the analytic remainder F1 of the
// log split (i/4) H0(z) = -(1/2pi) ln(z) J0(z) + F1(z^2).
//
// Accuracy target: relative error <= 1e-12 for 0 <= z <= 50. Ascending series
// are summed in double-double up to z = 18 (cancellation-safe), the Hankel
// asymptotic expansion takes over beyond.

#include <complex>

namespace arcbie {

double bessel_J0(double z);            // z >= 0
double bessel_Y0(double z);            // z > 0
std::complex<double> hankel_H0(double z);  // J0 + i Y0, z > 0

// F1 is entire in w = z^2; series for |w| <= 16, direct formula for real
// w in (16, 2500]. F1(0) = i/4 + (ln 2 - gamma)/(2 pi).
std::complex<double> F1(std::complex<double> w);

// k = 0: -ln(z)/(2 pi); k > 0: (i/4) H0(k z). Requires z > 0.
std::complex<double> green_G(double k, double z);

namespace detail {
// First-order companions, used by the Wronskian consistency checks.
double bessel_J1(double z);
double bessel_Y1(double z);
}  // namespace detail

}  // namespace arcbie

#include "arcbie/bessel.hpp"

#include <cmath>
#include <stdexcept>

namespace arcbie {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kEulerGamma = 0.577215664901532860606512090082402431;
constexpr double kLn2 = 0.693147180559945309417232121458176568;
constexpr double kSeriesCut = 18.0;

// Minimal double-double arithmetic. The ascending series for J0/Y0 alternate
// with terms up to ~1e8 times larger than the sum near z = 18, so plain
// doubles lose ~8 digits there; double-double keeps the result at ~1e-24
// before rounding to double.
struct DD {
  double h, l;
};

DD dd(double x) { return {x, 0.0}; }

DD dd_norm(double s, double e) {
  double h = s + e;
  return {h, e - (h - s)};
}

DD dd_add(DD a, DD b) {
  double s = a.h + b.h;
  double v = s - a.h;
  double e = (a.h - (s - v)) + (b.h - v);
  return dd_norm(s, e + a.l + b.l);
}

DD dd_mul(DD a, DD b) {
  double p = a.h * b.h;
  double e = std::fma(a.h, b.h, -p);
  return dd_norm(p, e + a.h * b.l + a.l * b.h);
}

DD dd_div_d(DD a, double b) {
  double q0 = a.h / b;
  double r = std::fma(-q0, b, a.h) + a.l;
  return dd_norm(q0, r / b);
}

DD dd_mul_d(DD a, double b) {
  double p = a.h * b;
  double e = std::fma(a.h, b, -p);
  return dd_norm(p, e + a.l * b);
}

double dd_val(DD a) { return a.h + a.l; }

// q = z^2/4 held exactly in double-double.
DD quarter_square(double z) {
  double p = z * z;
  double e = std::fma(z, z, -p);
  return dd_norm(p * 0.25, e * 0.25);
}

double j0_series(double z) {
  DD q = quarter_square(z);
  DD term = dd(1.0);
  DD acc = term;
  for (int m = 1; m <= 120; ++m) {
    term = dd_div_d(dd_mul(term, q), -double(m) * double(m));
    acc = dd_add(acc, term);
    if (std::abs(term.h) < 1e-40 * (std::abs(acc.h) + 1.0)) break;
  }
  return dd_val(acc);
}

// Harmonic-weighted companion sum S(z) = sum_{m>=1} (-1)^{m+1} H_m q^m/(m!)^2,
// so that Y0 = (2/pi)[(ln(z/2)+gamma) J0 + S].
double y0_companion(double z) {
  DD q = quarter_square(z);
  DD fac = dd(1.0);   // (-1)^m q^m / (m!)^2
  DD harm = dd(0.0);  // H_m
  DD acc = dd(0.0);
  for (int m = 1; m <= 120; ++m) {
    fac = dd_div_d(dd_mul(fac, q), -double(m) * double(m));
    harm = dd_add(harm, dd_div_d(dd(1.0), double(m)));
    DD term = dd_mul(fac, harm);
    acc = dd_add(acc, dd_mul_d(term, -1.0));
    if (std::abs(term.h) < 1e-40 * (std::abs(acc.h) + 1.0)) break;
  }
  return dd_val(acc);
}

double j1_series(double z) {
  DD q = quarter_square(z);
  DD term = dd(1.0);
  DD acc = term;
  for (int m = 1; m <= 120; ++m) {
    term = dd_div_d(dd_mul(term, q), -double(m) * double(m + 1));
    acc = dd_add(acc, term);
    if (std::abs(term.h) < 1e-40 * (std::abs(acc.h) + 1.0)) break;
  }
  return 0.5 * z * dd_val(acc);
}

double y1_series(double z) {
  // Y1 = (2/pi) ln(z/2) J1 - 2/(pi z)
  //      - (z/(2 pi)) sum_{m>=0} (psi(m+1)+psi(m+2)) (-q)^m / (m! (m+1)!)
  // with psi(1) = -gamma, psi(m+1) = -gamma + H_m.
  DD q = quarter_square(z);
  DD fac = dd(1.0);  // (-q)^m / (m! (m+1)!)
  DD hm = dd(0.0);   // H_m
  DD acc = dd(0.0);
  for (int m = 0; m <= 120; ++m) {
    if (m > 0) {
      fac = dd_div_d(dd_mul(fac, q), -double(m) * double(m + 1));
      hm = dd_add(hm, dd_div_d(dd(1.0), double(m)));
    }
    DD hm1 = dd_add(hm, dd_div_d(dd(1.0), double(m + 1)));
    DD psi_sum = dd_add(dd_add(hm, hm1), dd(-2.0 * kEulerGamma));
    DD term = dd_mul(fac, psi_sum);
    acc = dd_add(acc, term);
    if (std::abs(term.h) < 1e-40 * (std::abs(acc.h) + 1.0)) break;
  }
  return (2.0 / kPi) * std::log(0.5 * z) * j1_series(z) - 2.0 / (kPi * z) -
         z / (2.0 * kPi) * dd_val(acc);
}

// Hankel asymptotic sum: H_nu(z) = sqrt(2/(pi z)) e^{i(z - nu pi/2 - pi/4)} S,
// S = sum_m i^m (nu,m) / (2z)^m, summed to the smallest term.
std::complex<double> hankel_asym(int nu, double z) {
  std::complex<double> term(1.0, 0.0);
  std::complex<double> acc = term;
  double prev = 1.0;
  for (int m = 0; m < 40; ++m) {
    double ratio = (nu == 0)
                       ? -double(2 * m + 1) * double(2 * m + 1) /
                             (8.0 * z * double(m + 1))
                       : double(2 * m + 3) * double(1 - 2 * m) /
                             (8.0 * z * double(m + 1));
    double mag = std::abs(prev * ratio);
    if (mag >= prev) break;  // divergent tail reached
    term *= std::complex<double>(0.0, 1.0) * ratio;
    acc += term;
    prev = mag;
    if (mag < 1e-18) break;
  }
  double phase = z - (nu * 0.5 + 0.25) * kPi;
  return std::sqrt(2.0 / (kPi * z)) *
         std::complex<double>(std::cos(phase), std::sin(phase)) * acc;
}

}  // namespace

double bessel_J0(double z) {
  if (!(z >= 0.0)) throw std::domain_error("bessel_J0: z must be >= 0");
  if (z <= kSeriesCut) return j0_series(z);
  return hankel_asym(0, z).real();
}

double bessel_Y0(double z) {
  if (!(z > 0.0)) throw std::domain_error("bessel_Y0: z must be > 0");
  if (z <= kSeriesCut) {
    return (2.0 / kPi) *
           ((std::log(0.5 * z) + kEulerGamma) * j0_series(z) + y0_companion(z));
  }
  return hankel_asym(0, z).imag();
}

std::complex<double> hankel_H0(double z) {
  if (!(z > 0.0)) throw std::domain_error("hankel_H0: z must be > 0");
  if (z <= kSeriesCut) return {bessel_J0(z), bessel_Y0(z)};
  return hankel_asym(0, z);
}

std::complex<double> F1(std::complex<double> w) {
  double aw = std::abs(w);
  if (aw <= 16.0) {
    // F1(w) = [i/4 + (ln2 - gamma)/(2pi)] j0(w) - (1/2pi) s(w), where
    // j0(w) = sum (-1)^m (w/4)^m/(m!)^2 and
    // s(w)  = sum_{m>=1} (-1)^{m+1} H_m (w/4)^m/(m!)^2.
    std::complex<double> p = w * 0.25;
    std::complex<double> fac(1.0, 0.0);
    std::complex<double> j0c = fac;
    std::complex<double> sc(0.0, 0.0);
    double hm = 0.0;
    for (int m = 1; m <= 60; ++m) {
      fac *= -p / (double(m) * double(m));
      hm += 1.0 / double(m);
      j0c += fac;
      sc -= fac * hm;
    }
    std::complex<double> c0(( kLn2 - kEulerGamma) / (2.0 * kPi), 0.25);
    return c0 * j0c - sc / (2.0 * kPi);
  }
  if (w.imag() != 0.0 || w.real() < 0.0 || w.real() > 2500.0) {
    throw std::domain_error("F1: |w| > 16 supported only for real w <= 2500");
  }
  double z = std::sqrt(w.real());
  std::complex<double> h = hankel_H0(z);
  return std::complex<double>(0.0, 0.25) * h +
         std::log(z) * bessel_J0(z) / (2.0 * kPi);
}

std::complex<double> green_G(double k, double z) {
  if (!(z > 0.0)) throw std::domain_error("green_G: z must be > 0");
  if (k < 0.0) throw std::domain_error("green_G: k must be >= 0");
  if (k == 0.0) return {-std::log(z) / (2.0 * kPi), 0.0};
  return std::complex<double>(0.0, 0.25) * hankel_H0(k * z);
}

namespace detail {

double bessel_J1(double z) {
  if (!(z >= 0.0)) throw std::domain_error("bessel_J1: z must be >= 0");
  if (z <= kSeriesCut) return j1_series(z);
  return hankel_asym(1, z).real();
}

double bessel_Y1(double z) {
  if (!(z > 0.0)) throw std::domain_error("bessel_Y1: z must be > 0");
  if (z <= kSeriesCut) return y1_series(z);
  return hankel_asym(1, z).imag();
}

}  // namespace detail

}  // namespace arcbie

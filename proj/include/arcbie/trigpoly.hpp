#pragma once

// Exact arithmetic on trigonometric polynomials in theta with rational
// coefficients.  Atoms: s = sin(theta), c = cos(theta), the wavenumber k, the
// arc length L, and curvature jets kap_j = (d/dx)^j kappa evaluated at
// x = cos(theta).  Normal form keeps the sin-degree at most one by rewriting
// s^2 -> 1 - c^2, which makes equality a coefficient comparison.

#include <array>
#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace arcbie {

using Rat = boost::multiprecision::cpp_rational;

struct CRat {
  Rat re{0};
  Rat im{0};
  bool is_zero() const { return re == 0 && im == 0; }
};

CRat operator+(const CRat& a, const CRat& b);
CRat operator-(const CRat& a, const CRat& b);
CRat operator*(const CRat& a, const CRat& b);
CRat operator-(const CRat& a);
bool operator==(const CRat& a, const CRat& b);

// exponent slots: [0] sin, [1] cos, [2] k, [3] L, [4..] curvature jets
constexpr int kNumKappa = 24;
constexpr int kNumAtoms = 4 + kNumKappa;

struct Monomial {
  std::array<std::uint8_t, kNumAtoms> e{};
  bool operator<(const Monomial& o) const { return e < o.e; }
  bool operator==(const Monomial& o) const { return e == o.e; }
};

class TrigPoly {
 public:
  std::map<Monomial, CRat> terms;

  static TrigPoly constant(const Rat& re, const Rat& im = Rat(0));
  static TrigPoly atom_s();
  static TrigPoly atom_c();
  static TrigPoly atom_k();
  static TrigPoly atom_L();
  static TrigPoly atom_kappa(int j);

  bool is_zero() const { return terms.empty(); }
  // inserts with the s^2 -> 1 - c^2 rewrite; drops cancelled terms
  void add_term(Monomial m, const CRat& q);
};

TrigPoly operator+(const TrigPoly& a, const TrigPoly& b);
TrigPoly operator-(const TrigPoly& a, const TrigPoly& b);
TrigPoly operator*(const TrigPoly& a, const TrigPoly& b);
TrigPoly operator*(const CRat& q, const TrigPoly& a);
TrigPoly operator-(const TrigPoly& a);
bool operator==(const TrigPoly& a, const TrigPoly& b);

// d/dtheta; curvature jets pick up the chain factor -s * kap_{j+1}
TrigPoly dtheta(const TrigPoly& a);
// d/dx on polynomials free of s and c (throws otherwise)
TrigPoly dx(const TrigPoly& a);
// substitute kappa_j = 0 for all j (flat curve)
TrigPoly kappa_zero(const TrigPoly& a);

// numeric evaluation; kappa_jets[j] supplies kap_j, missing entries are an error
std::complex<double> poly_eval(const TrigPoly& a, double theta, double k,
                               double L, const std::vector<double>& kappa_jets);

// canonical machine form: "re/den,im/den:e0,e1,...,e27" terms joined by ';',
// sorted by exponent vector; the zero polynomial is "0"
std::string poly_canonical(const TrigPoly& a);
// human form; xland = true prints c as x (for coefficient pairs in x and n)
std::string poly_text(const TrigPoly& a, bool xland = false);

}  // namespace arcbie

#include "arcbie/trigpoly.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace arcbie {

CRat operator+(const CRat& a, const CRat& b) { return {a.re + b.re, a.im + b.im}; }
CRat operator-(const CRat& a, const CRat& b) { return {a.re - b.re, a.im - b.im}; }
CRat operator*(const CRat& a, const CRat& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
CRat operator-(const CRat& a) { return {-a.re, -a.im}; }
bool operator==(const CRat& a, const CRat& b) { return a.re == b.re && a.im == b.im; }

namespace {
Monomial single(int slot, int p = 1) {
  Monomial m;
  m.e[slot] = std::uint8_t(p);
  return m;
}

Rat binom(int n, int k) {
  Rat r = 1;
  for (int i = 0; i < k; ++i) r *= Rat(n - i, i + 1);
  return r;
}
}  // namespace

TrigPoly TrigPoly::constant(const Rat& re, const Rat& im) {
  TrigPoly p;
  p.add_term(Monomial{}, CRat{re, im});
  return p;
}
TrigPoly TrigPoly::atom_s() {
  TrigPoly p;
  p.add_term(single(0), CRat{1, 0});
  return p;
}
TrigPoly TrigPoly::atom_c() {
  TrigPoly p;
  p.add_term(single(1), CRat{1, 0});
  return p;
}
TrigPoly TrigPoly::atom_k() {
  TrigPoly p;
  p.add_term(single(2), CRat{1, 0});
  return p;
}
TrigPoly TrigPoly::atom_L() {
  TrigPoly p;
  p.add_term(single(3), CRat{1, 0});
  return p;
}
TrigPoly TrigPoly::atom_kappa(int j) {
  if (j < 0 || j >= kNumKappa) throw std::out_of_range("atom_kappa: jet index");
  TrigPoly p;
  p.add_term(single(4 + j), CRat{1, 0});
  return p;
}

void TrigPoly::add_term(Monomial m, const CRat& q) {
  if (q.is_zero()) return;
  int se = m.e[0];
  if (se >= 2) {
    // s^(2t+r) = s^r (1 - c^2)^t
    int t = se / 2, r = se % 2;
    for (int i = 0; i <= t; ++i) {
      Monomial m2 = m;
      m2.e[0] = std::uint8_t(r);
      int ce = m.e[1] + 2 * i;
      if (ce > 255) throw std::overflow_error("trigpoly: exponent overflow");
      m2.e[1] = std::uint8_t(ce);
      Rat sign = (i % 2 == 0) ? Rat(1) : Rat(-1);
      add_term(m2, CRat{sign * binom(t, i), Rat(0)} * q);
    }
    return;
  }
  auto it = terms.find(m);
  if (it == terms.end()) {
    terms.emplace(m, q);
  } else {
    it->second = it->second + q;
    if (it->second.is_zero()) terms.erase(it);
  }
}

TrigPoly operator+(const TrigPoly& a, const TrigPoly& b) {
  TrigPoly r = a;
  for (const auto& [m, q] : b.terms) r.add_term(m, q);
  return r;
}
TrigPoly operator-(const TrigPoly& a, const TrigPoly& b) {
  TrigPoly r = a;
  for (const auto& [m, q] : b.terms) r.add_term(m, -q);
  return r;
}
TrigPoly operator-(const TrigPoly& a) {
  TrigPoly r;
  for (const auto& [m, q] : a.terms) r.terms.emplace(m, -q);
  return r;
}
TrigPoly operator*(const TrigPoly& a, const TrigPoly& b) {
  TrigPoly r;
  for (const auto& [ma, qa] : a.terms) {
    for (const auto& [mb, qb] : b.terms) {
      Monomial m;
      for (int i = 0; i < kNumAtoms; ++i) {
        int e = int(ma.e[i]) + int(mb.e[i]);
        if (e > 255) throw std::overflow_error("trigpoly: exponent overflow");
        m.e[i] = std::uint8_t(e);
      }
      r.add_term(m, qa * qb);
    }
  }
  return r;
}
TrigPoly operator*(const CRat& q, const TrigPoly& a) {
  TrigPoly r;
  if (q.is_zero()) return r;
  for (const auto& [m, c] : a.terms) r.add_term(m, q * c);
  return r;
}
bool operator==(const TrigPoly& a, const TrigPoly& b) { return a.terms == b.terms; }

TrigPoly dtheta(const TrigPoly& a) {
  TrigPoly r;
  for (const auto& [m, q] : a.terms) {
    if (m.e[0] > 0) {  // d(s^a) = a s^(a-1) c
      Monomial m2 = m;
      m2.e[0] -= 1;
      m2.e[1] += 1;
      r.add_term(m2, CRat{Rat(m.e[0]), 0} * q);
    }
    if (m.e[1] > 0) {  // d(c^b) = -b c^(b-1) s
      Monomial m2 = m;
      m2.e[1] -= 1;
      m2.e[0] += 1;
      r.add_term(m2, CRat{Rat(-int(m.e[1])), 0} * q);
    }
    for (int j = 0; j < kNumKappa; ++j) {  // d(kap_j) = -s kap_{j+1}
      if (m.e[4 + j] == 0) continue;
      if (j + 1 >= kNumKappa)
        throw std::overflow_error("trigpoly: curvature jet depth exceeded");
      Monomial m2 = m;
      m2.e[4 + j] -= 1;
      m2.e[4 + j + 1] += 1;
      m2.e[0] += 1;
      r.add_term(m2, CRat{Rat(-int(m.e[4 + j])), 0} * q);
    }
  }
  return r;
}

TrigPoly dx(const TrigPoly& a) {
  TrigPoly r;
  for (const auto& [m, q] : a.terms) {
    if (m.e[0] != 0 || m.e[1] != 0)
      throw std::logic_error("dx: polynomial depends on theta");
    for (int j = 0; j < kNumKappa; ++j) {
      if (m.e[4 + j] == 0) continue;
      if (j + 1 >= kNumKappa)
        throw std::overflow_error("trigpoly: curvature jet depth exceeded");
      Monomial m2 = m;
      m2.e[4 + j] -= 1;
      m2.e[4 + j + 1] += 1;
      r.add_term(m2, CRat{Rat(m.e[4 + j]), 0} * q);
    }
  }
  return r;
}

TrigPoly kappa_zero(const TrigPoly& a) {
  TrigPoly r;
  for (const auto& [m, q] : a.terms) {
    bool has = false;
    for (int j = 0; j < kNumKappa; ++j) has = has || m.e[4 + j] > 0;
    if (!has) r.add_term(m, q);
  }
  return r;
}

std::complex<double> poly_eval(const TrigPoly& a, double theta, double k,
                               double L, const std::vector<double>& kappa_jets) {
  std::complex<double> tot = 0;
  double s = std::sin(theta), c = std::cos(theta);
  for (const auto& [m, q] : a.terms) {
    double v = std::pow(s, m.e[0]) * std::pow(c, m.e[1]) * std::pow(k, m.e[2]) *
               std::pow(L, m.e[3]);
    for (int j = 0; j < kNumKappa; ++j) {
      if (m.e[4 + j] == 0) continue;
      if (j >= int(kappa_jets.size()))
        throw std::out_of_range("poly_eval: missing curvature jet");
      v *= std::pow(kappa_jets[j], m.e[4 + j]);
    }
    tot += v * std::complex<double>(double(q.re), double(q.im));
  }
  return tot;
}

namespace {
std::string rat_str(const Rat& r) {
  return numerator(r).str() + "/" + denominator(r).str();
}

void append_pow(std::ostringstream& o, const char* name, int e, bool& first) {
  if (e == 0) return;
  if (!first) o << " ";
  first = false;
  o << name;
  if (e > 1) o << "^" << e;
}
}  // namespace

std::string poly_canonical(const TrigPoly& a) {
  if (a.terms.empty()) return "0";
  std::ostringstream o;
  bool firstterm = true;
  for (const auto& [m, q] : a.terms) {
    if (!firstterm) o << ";";
    firstterm = false;
    o << rat_str(q.re) << "," << rat_str(q.im) << ":";
    for (int i = 0; i < kNumAtoms; ++i) {
      if (i) o << ",";
      o << int(m.e[i]);
    }
  }
  return o.str();
}

std::string poly_text(const TrigPoly& a, bool xland) {
  if (a.terms.empty()) return "0";
  std::ostringstream o;
  bool firstterm = true;
  for (const auto& [m, q] : a.terms) {
    std::string coeff;
    if (q.im == 0) {
      coeff = rat_str(q.re);
    } else if (q.re == 0) {
      coeff = (q.im == 1 ? "i" : (q.im == -1 ? "-i" : "i*" + rat_str(q.im)));
    } else {
      coeff = "(" + rat_str(q.re) + " + i*" + rat_str(q.im) + ")";
    }
    if (!firstterm) o << " + ";
    firstterm = false;
    o << coeff;
    std::ostringstream mono;
    bool first = true;
    append_pow(mono, "s", m.e[0], first);
    append_pow(mono, xland ? "x" : "c", m.e[1], first);
    append_pow(mono, "k", m.e[2], first);
    append_pow(mono, "L", m.e[3], first);
    for (int j = 0; j < kNumKappa; ++j) {
      std::string nm = "kap" + std::to_string(j);
      append_pow(mono, nm.c_str(), m.e[4 + j], first);
    }
    if (!mono.str().empty()) o << " " << mono.str();
  }
  return o.str();
}

}  // namespace arcbie

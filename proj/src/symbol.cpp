#include "arcbie/symbol.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace arcbie {

namespace {

int sat_add(int a, int b) {
  if (a == kExact || b == kExact) return kExact;
  long s = long(a) + long(b);
  if (s < long(kExact) + 1) return kExact + 1;
  return int(s);
}

void normalize(PSymbol& a) {
  for (auto it = a.terms.begin(); it != a.terms.end();) {
    if (it->second.is_zero() || (a.rem != kExact && it->first <= a.rem))
      it = a.terms.erase(it);
    else
      ++it;
  }
}

CRat i_pow_neg(int j) {  // (-i)^j
  switch (j & 3) {
    case 0: return {1, 0};
    case 1: return {0, -1};
    case 2: return {-1, 0};
    default: return {0, 1};
  }
}

Rat rat_factorial(int n) {
  Rat r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

Rat rat_sqrt(const Rat& r) {
  using boost::multiprecision::cpp_int;
  cpp_int n = numerator(r), d = denominator(r);
  cpp_int sn = sqrt(n), sd = sqrt(d);
  if (sn * sn != n || sd * sd != d)
    throw std::domain_error("sym_sqrt: leading coefficient is not a rational square");
  return Rat(sn, sd);
}

void accum(PSymbol& out, int p, const TrigPoly& t) {
  auto it = out.terms.find(p);
  if (it == out.terms.end())
    out.terms.emplace(p, t);
  else
    it->second = it->second + t;
}

}  // namespace

PSymbol xi_power(int p, const TrigPoly& coeff) {
  PSymbol r;
  if (!coeff.is_zero()) r.terms.emplace(p, coeff);
  return r;
}

int sym_hi(const PSymbol& a) {
  return a.terms.empty() ? kExact : a.terms.rbegin()->first;
}

PSymbol sym_add(const PSymbol& a, const PSymbol& b) {
  PSymbol r = a;
  for (const auto& [p, t] : b.terms) accum(r, p, t);
  r.rem = std::max(a.rem, b.rem);
  normalize(r);
  return r;
}

PSymbol sym_sub(const PSymbol& a, const PSymbol& b) { return sym_add(a, sym_neg(b)); }

PSymbol sym_neg(const PSymbol& a) {
  PSymbol r;
  r.rem = a.rem;
  for (const auto& [p, t] : a.terms) r.terms.emplace(p, -t);
  return r;
}

PSymbol sym_scale(const TrigPoly& f, const PSymbol& a) {
  PSymbol r;
  r.rem = a.rem;
  for (const auto& [p, t] : a.terms) {
    TrigPoly ft = f * t;
    if (!ft.is_zero()) r.terms.emplace(p, ft);
  }
  return r;
}

PSymbol sym_dtheta(const PSymbol& a) {
  PSymbol r;
  r.rem = a.rem;
  for (const auto& [p, t] : a.terms) {
    TrigPoly dt = dtheta(t);
    if (!dt.is_zero()) r.terms.emplace(p, dt);
  }
  return r;
}

PSymbol sym_dxi(const PSymbol& a) {
  PSymbol r;
  for (const auto& [p, t] : a.terms) {
    if (p == 0) continue;
    r.terms.emplace(p - 1, CRat{Rat(p), 0} * t);
  }
  r.rem = (a.rem == kExact) ? kExact : a.rem - 1;
  normalize(r);
  return r;
}

bool sym_equal_stored(const PSymbol& a, const PSymbol& b) {
  return a.terms == b.terms;
}

PSymbol sym_compose(const PSymbol& a, const PSymbol& b, int J) {
  if (J < 0) throw std::invalid_argument("sym_compose: negative truncation depth");
  int ha = sym_hi(a), hb = sym_hi(b);
  int rem_prop = std::max(sat_add(a.rem, hb), sat_add(ha, b.rem));
  int cutoff = std::max(rem_prop, -(J + 1));
  PSymbol out;
  out.rem = rem_prop;
  if (a.terms.empty() || b.terms.empty()) return out;

  PSymbol Aj = a, Bj = b;
  Rat fact = 1;
  bool dropped = false, terminated = false;
  int jmax = ha + hb - cutoff - 1;
  for (int j = 0; j <= jmax; ++j) {
    if (j > 0) {
      Aj = sym_dxi(Aj);
      Bj = sym_dtheta(Bj);
      fact *= j;
    }
    if (Aj.terms.empty() || Bj.terms.empty()) {
      terminated = true;
      break;
    }
    CRat scale = i_pow_neg(j);
    scale.re /= fact;
    scale.im /= fact;
    for (const auto& [pa, ca] : Aj.terms) {
      for (const auto& [pb, cb] : Bj.terms) {
        int p = pa + pb;
        if (p <= cutoff) {
          dropped = true;
          continue;
        }
        accum(out, p, scale * (ca * cb));
      }
    }
  }
  out.rem = (terminated && !dropped) ? rem_prop : cutoff;
  normalize(out);
  return out;
}

PSymbol integral_symbol(const PSymbol& multiplier,
                        const std::vector<TrigPoly>& taylor, int J) {
  if (multiplier.rem != kExact)
    throw std::invalid_argument("integral_symbol: multiplier must be exact");
  int used = std::min<int>(int(taylor.size()), J + 1);
  PSymbol out;
  PSymbol Hj = multiplier;
  for (int j = 0; j < used; ++j) {
    if (j > 0) Hj = sym_dxi(Hj);
    if (Hj.terms.empty()) break;
    if (taylor[j].is_zero()) continue;
    CRat sc = i_pow_neg(j);
    for (const auto& [p, cp] : Hj.terms) accum(out, p, sc * (cp * taylor[j]));
  }
  out.rem = sym_hi(multiplier) == kExact ? kExact : sym_hi(multiplier) - used;
  normalize(out);
  return out;
}

PSymbol sym_sqrt(const PSymbol& a, int steps) {
  if (steps < 1) throw std::invalid_argument("sym_sqrt: steps must be positive");
  if (sym_hi(a) != 2) throw std::domain_error("sym_sqrt: leading order must be 2");
  const TrigPoly& lead = a.terms.at(2);
  if (lead.terms.size() != 1 || !(lead.terms.begin()->first == Monomial{}))
    throw std::domain_error("sym_sqrt: leading coefficient must be constant");
  CRat alpha = lead.terms.begin()->second;
  if (!(alpha.im == 0) || alpha.re <= 0)
    throw std::domain_error("sym_sqrt: leading coefficient must be positive");
  Rat r0 = rat_sqrt(alpha.re);
  PSymbol tau = xi_power(1, TrigPoly::constant(r0));
  Rat inv = Rat(1) / (2 * r0);
  for (int m = 1; m <= steps; ++m) {
    PSymbol diff = sym_sub(a, sym_compose(tau, tau, steps));
    auto it = diff.terms.find(2 - m);
    if (it == diff.terms.end()) continue;
    TrigPoly t = CRat{inv, 0} * it->second;
    if (!t.is_zero()) tau.terms[1 - m] = t;
  }
  tau.rem = -steps;
  if (a.rem != kExact) tau.rem = std::max(tau.rem, a.rem - 1);
  normalize(tau);
  return tau;
}

// --- geometry series ----------------------------------------------------

namespace {

using USeries = std::vector<TrigPoly>;  // index m holds the u^m coefficient

USeries u_zero(int J) { return USeries(J + 1); }

USeries u_mul(const USeries& a, const USeries& b, int J) {
  USeries r = u_zero(J);
  for (int i = 0; i <= J; ++i) {
    if (a[i].is_zero()) continue;
    for (int j = 0; i + j <= J; ++j) {
      if (b[j].is_zero()) continue;
      r[i + j] = r[i + j] + a[i] * b[j];
    }
  }
  return r;
}

// cos(theta + u) - cos(theta) as a series in u
USeries delta_series(int J) {
  USeries d = u_zero(J);
  for (int m = 1; m <= J; ++m) {
    Rat f = rat_factorial(m);
    if (m % 2 == 0) {
      Rat sign = (m / 2) % 2 == 0 ? 1 : -1;
      d[m] = CRat{sign / f, 0} * TrigPoly::atom_c();
    } else {
      Rat sign = ((m - 1) / 2) % 2 == 0 ? 1 : -1;
      d[m] = CRat{-sign / f, 0} * TrigPoly::atom_s();
    }
  }
  return d;
}

std::vector<USeries> delta_powers(int J) {
  USeries d = delta_series(J);
  std::vector<USeries> dpow(J + 1);
  dpow[0] = u_zero(J);
  dpow[0][0] = TrigPoly::constant(1);
  for (int q = 1; q <= J; ++q) dpow[q] = u_mul(dpow[q - 1], d, J);
  return dpow;
}

// components of successive x-derivatives in the local (tangent, normal)
// frame; the frame turns with speed (L/2) kappa(x)
void jet_table(int P, const TrigPoly& a0, const TrigPoly& b0,
               std::vector<TrigPoly>& A, std::vector<TrigPoly>& B) {
  TrigPoly rot = CRat{Rat(1, 2), 0} * (TrigPoly::atom_L() * TrigPoly::atom_kappa(0));
  A.assign(P + 1, TrigPoly{});
  B.assign(P + 1, TrigPoly{});
  A[0] = a0;
  B[0] = b0;
  for (int p = 0; p < P; ++p) {
    A[p + 1] = dx(A[p]) - rot * B[p];
    B[p + 1] = dx(B[p]) + rot * A[p];
  }
}

}  // namespace

std::vector<TrigPoly> squared_distance_series(int J) {
  if (J < 0) throw std::invalid_argument("squared_distance_series: negative order");
  auto dpow = delta_powers(J);
  // Ar[i], Br[i] are the frame components of the (i+1)-th derivative of r
  std::vector<TrigPoly> Ar, Br;
  TrigPoly halfL = CRat{Rat(1, 2), 0} * TrigPoly::atom_L();
  jet_table(std::max(J, 1), halfL, TrigPoly{}, Ar, Br);
  USeries Q = u_zero(J);
  for (int p = 1; p <= J; ++p) {
    for (int q = p; p + q <= J; ++q) {
      TrigPoly dot = Ar[p - 1] * Ar[q - 1] + Br[p - 1] * Br[q - 1];
      Rat w = (p == q ? Rat(1) : Rat(2)) / (rat_factorial(p) * rat_factorial(q));
      TrigPoly wdot = CRat{w, 0} * dot;
      for (int m = p + q; m <= J; ++m)
        if (!dpow[p + q][m].is_zero()) Q[m] = Q[m] + wdot * dpow[p + q][m];
    }
  }
  return Q;
}

std::vector<TrigPoly> kernel_taylor(int J, bool with_normal_dot) {
  USeries Q = squared_distance_series(J);
  TrigPoly k2q = CRat{Rat(1, 4), 0} * (TrigPoly::atom_k() * TrigPoly::atom_k());
  USeries G = u_zero(J);
  for (int m = 0; m <= J; ++m)
    if (!Q[m].is_zero()) G[m] = k2q * Q[m];
  USeries amp = u_zero(J);
  amp[0] = TrigPoly::constant(1);
  USeries Gm = u_zero(J);
  Gm[0] = TrigPoly::constant(1);
  for (int m = 1; 2 * m <= J; ++m) {
    Gm = u_mul(Gm, G, J);
    Rat f = rat_factorial(m);
    Rat coef = Rat(1) / (f * f);
    if (m % 2 == 1) coef = -coef;
    for (int i = 0; i <= J; ++i)
      if (!Gm[i].is_zero()) amp[i] = amp[i] + CRat{coef, 0} * Gm[i];
  }
  if (with_normal_dot) {
    std::vector<TrigPoly> C, D;
    jet_table(J, TrigPoly{}, TrigPoly::constant(1), C, D);
    auto dpow = delta_powers(J);
    USeries nn = u_zero(J);
    for (int p = 0; p <= J; ++p) {
      if (D[p].is_zero()) continue;
      TrigPoly w = CRat{Rat(1) / rat_factorial(p), 0} * D[p];
      for (int m = p; m <= J; ++m)
        if (!dpow[p][m].is_zero()) nn[m] = nn[m] + w * dpow[p][m];
    }
    amp = u_mul(nn, amp, J);
  }
  return amp;
}

// --- operator symbols ----------------------------------------------------

PSymbol sigma_S(int J) {
  PSymbol h = xi_power(-1, TrigPoly::constant(Rat(1, 2)));
  return integral_symbol(h, kernel_taylor(J, false), J);
}

PSymbol sigma_V(int J) {
  PSymbol h = xi_power(-1, TrigPoly::constant(Rat(1, 2)));
  return integral_symbol(h, kernel_taylor(J, true), J);
}

PSymbol sigma_D() {
  TrigPoly w = CRat{Rat(1, 4), 0} *
               (TrigPoly::atom_k() * TrigPoly::atom_k() * TrigPoly::atom_L() *
                TrigPoly::atom_L() * TrigPoly::atom_s() * TrigPoly::atom_s());
  return sym_sub(xi_power(2), xi_power(0, w));
}

PSymbol sym_N1(const PSymbol& sS, int J) {
  PSymbol ixi = xi_power(1, TrigPoly::constant(0, 1));
  return sym_neg(sym_compose(ixi, sym_compose(sS, ixi, J), J));
}

PSymbol sym_N2(const PSymbol& sV, int J) {
  PSymbol ms = xi_power(0, TrigPoly::atom_s());
  return sym_compose(ms, sym_compose(sV, ms, J), J);
}

PSymbol sigma_N(int J) {
  PSymbol n1 = sym_N1(sigma_S(J + 2), J + 2);
  PSymbol n2 = sym_N2(sigma_V(J + 2), J + 2);
  TrigPoly ke2 = CRat{Rat(1, 4), 0} *
                 (TrigPoly::atom_k() * TrigPoly::atom_k() * TrigPoly::atom_L() *
                  TrigPoly::atom_L());
  return sym_sub(n1, sym_scale(ke2, n2));
}

SymbolPair extract_pair(const PSymbol& a) {
  SymbolPair out;
  out.a1.rem = out.a2.rem = a.rem;
  for (const auto& [p, poly] : a.terms) {
    TrigPoly even, odd;
    for (const auto& [m, q] : poly.terms) {
      if (m.e[0] == 0) {
        even.add_term(m, q);
      } else {
        Monomial m2 = m;
        m2.e[0] = 0;
        odd.add_term(m2, CRat{q.im, -q.re});  // strip s, divide by i
      }
    }
    if (!even.is_zero()) out.a1.terms.emplace(p, even);
    if (!odd.is_zero()) out.a2.terms.emplace(p, odd);
  }
  return out;
}

PSymbol rebuild_from_pair(const SymbolPair& pr) {
  PSymbol out;
  out.rem = std::max(pr.a1.rem, pr.a2.rem);
  for (const auto& [p, poly] : pr.a1.terms) accum(out, p, poly);
  for (const auto& [p, poly] : pr.a2.terms) {
    TrigPoly sp;
    for (const auto& [m, q] : poly.terms) {
      if (m.e[0] != 0) throw std::logic_error("rebuild_from_pair: pair carries sin");
      Monomial m2 = m;
      m2.e[0] = 1;
      sp.add_term(m2, CRat{-q.im, q.re});  // multiply by i s
    }
    accum(out, p, sp);
  }
  normalize(out);
  return out;
}

std::vector<OrderCheck> symbolic_order_checks(int J) {
  std::vector<OrderCheck> out;
  PSymbol sS = sigma_S(J + 2);
  PSymbol sD = sigma_D();
  PSymbol SS = sym_compose(sS, sS, J + 2);
  PSymbol quarter = xi_power(0, TrigPoly::constant(Rat(1, 4)));
  PSymbol half = xi_power(0, TrigPoly::constant(Rat(1, 2)));

  auto record = [&out](const std::string& name, const PSymbol& diff, int required,
                       bool exact_order) {
    OrderCheck c;
    c.name = name;
    c.required = required;
    if (diff.terms.empty()) {
      c.computed = diff.rem;
      c.leading = "0 down to the trust horizon";
    } else {
      auto it = diff.terms.rbegin();
      c.computed = it->first;
      c.leading = "xi^" + std::to_string(it->first) + " * (" +
                  poly_text(it->second) + ")";
    }
    c.pass = exact_order ? (c.computed == required) : (c.computed <= required);
    out.push_back(c);
  };

  record("dirichlet-composition", sym_sub(sym_compose(sD, SS, J + 2), quarter), -4,
         false);
  PSymbol tau = sym_sqrt(sD, J + 1);
  record("dirichlet-sqrt-composition", sym_sub(sym_compose(tau, sS, J), half), -4,
         false);
  PSymbol sN = sigma_N(J);
  record("neumann-composition",
         sym_sub(sym_compose(sN, sN, J),
                 sym_scale(TrigPoly::constant(Rat(1, 4)), sD)),
         -2, false);
  record("neumann-sqrt-difference",
         sym_sub(sN, sym_scale(TrigPoly::constant(Rat(1, 2)), tau)), -3, false);
  record("dirichlet-unweighted-reference",
         sym_sub(sym_compose(xi_power(2), SS, J + 2), quarter), -2, true);
  return out;
}

std::complex<double> sym_eval(const PSymbol& a, double theta, double xi,
                              double k, double L,
                              const std::vector<double>& kappa_jets) {
  std::complex<double> tot = 0;
  for (const auto& [p, t] : a.terms)
    tot += poly_eval(t, theta, k, L, kappa_jets) * std::pow(xi, p);
  return tot;
}

std::string sym_text(const PSymbol& a, bool xland) {
  std::ostringstream o;
  const char* var = xland ? "n" : "xi";
  bool first = true;
  for (auto it = a.terms.rbegin(); it != a.terms.rend(); ++it) {
    if (!first) o << " + ";
    first = false;
    if (it->first == 0) {
      o << "(" << poly_text(it->second, xland) << ")";
    } else {
      o << var;
      if (it->first != 1) o << "^" << it->first;
      o << "*(" << poly_text(it->second, xland) << ")";
    }
  }
  if (first) o << "0";
  if (a.rem != kExact) o << " + O(" << var << "^" << a.rem << ")";
  return o.str();
}

std::vector<std::pair<int, std::string>> sym_term_list(const PSymbol& a,
                                                       bool xland) {
  std::vector<std::pair<int, std::string>> out;
  for (auto it = a.terms.rbegin(); it != a.terms.rend(); ++it)
    out.push_back({it->first, poly_text(it->second, xland)});
  return out;
}

}  // namespace arcbie

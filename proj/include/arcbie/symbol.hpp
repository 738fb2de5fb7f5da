#pragma once

// Asymptotic symbol calculus for periodic pseudodifferential operators on the
// positive-frequency branch.  A symbol is a finite sum of terms
// coeff(theta) * xi^p stored by power p, plus an unresolved remainder: `rem`
// is the largest power whose coefficient is unknown (kExact if none).  All
// coefficient arithmetic is exact rational via TrigPoly.

#include <complex>
#include <limits>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "arcbie/trigpoly.hpp"

namespace arcbie {

constexpr int kExact = std::numeric_limits<int>::min();

struct PSymbol {
  std::map<int, TrigPoly> terms;  // xi power -> coefficient
  int rem = kExact;
};

PSymbol xi_power(int p, const TrigPoly& coeff = TrigPoly::constant(1));
// largest stored power; kExact when nothing is stored
int sym_hi(const PSymbol& a);
PSymbol sym_add(const PSymbol& a, const PSymbol& b);
PSymbol sym_sub(const PSymbol& a, const PSymbol& b);
PSymbol sym_neg(const PSymbol& a);
PSymbol sym_scale(const TrigPoly& f, const PSymbol& a);
PSymbol sym_dtheta(const PSymbol& a);
PSymbol sym_dxi(const PSymbol& a);
bool sym_equal_stored(const PSymbol& a, const PSymbol& b);

// composition sum_j (1/j!) (d/dxi)^j a * (-i d/dtheta)^j b, truncated so that
// powers below -J are dropped; tracks exactness of the result
PSymbol sym_compose(const PSymbol& a, const PSymbol& b, int J);

// symbol of u -> integral of h(theta - t) a(t, theta) u(t) dt, given the
// multiplier symbol of the convolution h and the Taylor coefficients of
// a(theta + u, theta) in u
PSymbol integral_symbol(const PSymbol& multiplier,
                        const std::vector<TrigPoly>& taylor, int J);

// square root under composition: tau with tau # tau = a + O(xi^(2-steps));
// requires leading term alpha * xi^2 with alpha a positive rational square
PSymbol sym_sqrt(const PSymbol& a, int steps);

// Taylor coefficients in u of |r(cos(theta+u)) - r(cos theta)|^2 for a
// constant-speed curve of length L with curvature jets kap_j
std::vector<TrigPoly> squared_distance_series(int J);
// kernel Taylor data:  J0(k d)  and, with the normal factor, n.n' J0(k d)
std::vector<TrigPoly> kernel_taylor(int J, bool with_normal_dot);

PSymbol sigma_S(int J);   // weighted single layer
PSymbol sigma_V(int J);   // single layer with normal-dot amplitude
PSymbol sigma_D();        // xi^2 - (k L / 2)^2 s^2
PSymbol sym_N1(const PSymbol& sS, int J);  // -(i xi) # sS # (i xi)
PSymbol sym_N2(const PSymbol& sV, int J);  // s # sV # s
PSymbol sigma_N(int J);   // sym_N1 - (k L / 2)^2 sym_N2

// parity split on the positive branch: sigma = a1(c,xi) + s * i * a2(c,xi);
// a1 acts diagonally, a2 carries the basis-mixing part
struct SymbolPair {
  PSymbol a1;
  PSymbol a2;
};
SymbolPair extract_pair(const PSymbol& a);
PSymbol rebuild_from_pair(const SymbolPair& p);

struct OrderCheck {
  std::string name;
  int required;   // remainder must sit at or below this power
  int computed;   // highest nonzero remainder power found (or its bound)
  bool pass;
  std::string leading;  // text of the leading remainder term
};
// remainder-order verification of the parametrix identities on a curve with
// generic curvature, plus the reference run with the flat weight dropped
std::vector<OrderCheck> symbolic_order_checks(int J);

std::complex<double> sym_eval(const PSymbol& a, double theta, double xi,
                              double k, double L,
                              const std::vector<double>& kappa_jets);
std::string sym_text(const PSymbol& a, bool xland = false);
std::vector<std::pair<int, std::string>> sym_term_list(const PSymbol& a,
                                                       bool xland = false);

}  // namespace arcbie

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <random>

#include "arcbie/curve.hpp"
#include "arcbie/symbol.hpp"
#include "arcbie/trigpoly.hpp"
#include "data/symbol_ref.hpp"

using namespace arcbie;

namespace {
TrigPoly C(long num, long den = 1) { return TrigPoly::constant(Rat(num, den)); }
TrigPoly Ci(long num, long den = 1) { return TrigPoly::constant(Rat(0), Rat(num, den)); }
TrigPoly S() { return TrigPoly::atom_s(); }
TrigPoly X() { return TrigPoly::atom_c(); }
TrigPoly K() { return TrigPoly::atom_k(); }
TrigPoly Len() { return TrigPoly::atom_L(); }
TrigPoly Kap(int j) { return TrigPoly::atom_kappa(j); }

std::string canon_at(const PSymbol& a, int p) {
  auto it = a.terms.find(p);
  return it == a.terms.end() ? "0" : poly_canonical(it->second);
}

PSymbol trim_below(const PSymbol& a, int floor_power) {
  PSymbol r;
  r.rem = floor_power;
  for (const auto& [p, t] : a.terms)
    if (p > floor_power) r.terms.emplace(p, t);
  return r;
}
}  // namespace

TEST_CASE("ring normal form and derivations") {
  CHECK(S() * S() == C(1) - X() * X());
  CHECK(dtheta(S()) == X());
  CHECK(dtheta(X()) == -S());
  CHECK(dtheta(Kap(0)) == -(S() * Kap(1)));
  CHECK(dtheta(Kap(2) * Kap(2)) == C(-2) * S() * Kap(2) * Kap(3));

  TrigPoly f = S() * X() + Kap(0) * X() + C(3, 7);
  TrigPoly g = X() * X() - Ci(2) * S() * Kap(1);
  CHECK(dtheta(f * g) == dtheta(f) * g + f * dtheta(g));

  CHECK(dx(Kap(0) * Kap(0) * Len()) == C(2) * Kap(0) * Kap(1) * Len());
  CHECK_THROWS_AS(dx(S()), std::logic_error);

  CHECK(kappa_zero(f) == S() * X() + C(3, 7));
  CHECK(poly_canonical(TrigPoly{}) == "0");

  // numeric evaluation agrees with the reduction
  double th = 0.7;
  auto v = poly_eval(S() * S(), th, 2.0, 3.0, {});
  CHECK(std::abs(v - std::sin(th) * std::sin(th)) < 1e-15);
}

TEST_CASE("single layer symbol matches the independent expansion") {
  PSymbol sS = sigma_S(8);
  CHECK(canon_at(sS, -1) == arcbie_test::kSigmaSm1);
  CHECK(canon_at(sS, -2) == arcbie_test::kSigmaSm2);
  CHECK(canon_at(sS, -3) == arcbie_test::kSigmaSm3);
  CHECK(canon_at(sS, -4) == arcbie_test::kSigmaSm4);
  CHECK(canon_at(sS, -5) == arcbie_test::kSigmaSm5);

  // the two published correction terms, rebuilt directly
  TrigPoly third = C(1, 16) * K() * K() * Len() * Len() * S() * S();
  TrigPoly fourth = Ci(3, 16) * K() * K() * Len() * Len() * S() * X();
  CHECK(sS.terms.at(-3) == third);
  CHECK(sS.terms.at(-4) == fourth);

  PSymbol sV = sigma_V(8);
  CHECK(canon_at(sV, -1) == arcbie_test::kSigmaVm1);
  CHECK(canon_at(sV, -2) == arcbie_test::kSigmaVm2);
  CHECK(canon_at(sV, -3) == arcbie_test::kSigmaVm3);
}

TEST_CASE("published fifth-order coefficient: compare and report") {
  PSymbol sS = sigma_S(8);
  TrigPoly printed = C(1, 128) * K() * K() * Len() * Len() *
                     (C(-768) * Kap(0) * Kap(0) * Len() * Len() * S() * S() * S() * S() +
                      C(112) * S() * S() + C(3) * K() * K() * Len() * Len() * S() * S() * S() * S() +
                      C(-48));
  // transcription agrees with the one frozen by the oracle
  CHECK(poly_canonical(printed) == arcbie_test::kPublishedXim5);

  TrigPoly computed = sS.terms.at(-5);
  bool match = printed == computed;
  bool twice = printed == C(2) * computed;
  CHECK_FALSE(match);
  CHECK_FALSE(twice);
  // the curvature-free parts differ by exactly a factor of two
  CHECK(kappa_zero(printed) == C(2) * kappa_zero(computed));
  MESSAGE("fifth-order comparison: " << arcbie_test::kPublishedXim5Verdict);
  MESSAGE("computed: " << poly_text(computed));
}

TEST_CASE("composition: exact cases") {
  PSymbol xi = xi_power(1);
  PSymbol xi2 = sym_compose(xi, xi, 4);
  CHECK(xi2.rem == kExact);
  CHECK(xi2.terms.size() == 1);
  CHECK(xi2.terms.at(2) == C(1));

  // multiplication operator conjugated by a second derivative
  PSymbol m = xi_power(0, X() + Kap(0));
  PSymbol r = sym_compose(xi_power(2), m, 8);
  CHECK(r.rem == kExact);
  CHECK(r.terms.at(2) == X() + Kap(0));
  CHECK(r.terms.at(1) == Ci(2) * (S() + S() * Kap(1)));
  CHECK(r.terms.at(0) == X() + X() * Kap(1) - Kap(2) + X() * X() * Kap(2));

  CHECK_THROWS_AS(sym_compose(xi, xi, -1), std::invalid_argument);
}

TEST_CASE("composition: associativity and order bounds on random symbols") {
  std::mt19937 rng(2026);
  std::uniform_int_distribution<int> coef(-3, 3);
  auto rand_poly = [&]() {
    TrigPoly atoms[4] = {C(1), S(), X(), Kap(0)};
    TrigPoly p;
    for (int i = 0; i < 4; ++i) p = p + C(coef(rng)) * atoms[i];
    return p;
  };
  auto rand_sym = [&](int hi, int lo) {
    PSymbol a;
    for (int p = hi; p >= lo; --p) {
      TrigPoly t = rand_poly();
      if (!t.is_zero()) a.terms.emplace(p, t);
    }
    return a;
  };
  for (int trial = 0; trial < 4; ++trial) {
    PSymbol a = rand_sym(1, -1), b = rand_sym(0, -1), c = rand_sym(2, 0);
    int J = 6;
    PSymbol lhs = sym_compose(sym_compose(a, b, J), c, J);
    PSymbol rhs = sym_compose(a, sym_compose(b, c, J), J);
    CHECK(sym_hi(lhs) <= sym_hi(a) + sym_hi(b) + sym_hi(c));
    int floor_power = std::max(lhs.rem, rhs.rem);
    CHECK(sym_equal_stored(trim_below(lhs, floor_power), trim_below(rhs, floor_power)));

    PSymbol comm = sym_sub(sym_compose(a, c, J), sym_compose(c, a, J));
    CHECK(sym_hi(comm) <= sym_hi(a) + sym_hi(c) - 1);
  }
}

TEST_CASE("normal-derivative symbols match the independent expansion") {
  PSymbol n1 = sym_N1(sigma_S(8), 6);
  CHECK(canon_at(n1, 1) == arcbie_test::kSigmaN1p1);
  CHECK(canon_at(n1, 0) == arcbie_test::kSigmaN1p0);
  CHECK(canon_at(n1, -1) == arcbie_test::kSigmaN1m1);
  CHECK(canon_at(n1, -2) == arcbie_test::kSigmaN1m2);
  CHECK(n1.terms.at(1) == C(1, 2));
  CHECK(n1.terms.at(-2) == Ci(1, 16) * K() * K() * Len() * Len() * S() * X());

  PSymbol n2 = sym_N2(sigma_V(8), 6);
  CHECK(canon_at(n2, -1) == arcbie_test::kSigmaN2m1);
  CHECK(canon_at(n2, -2) == arcbie_test::kSigmaN2m2);
  CHECK(canon_at(n2, -3) == arcbie_test::kSigmaN2m3);
  CHECK(n2.terms.at(-1) == C(1, 2) * S() * S());
  CHECK(n2.terms.at(-2) == Ci(1, 2) * S() * X());
}

TEST_CASE("square roots under composition") {
  PSymbol t1 = sym_sqrt(xi_power(2), 5);
  CHECK(t1.terms.size() == 1);
  CHECK(t1.terms.at(1) == C(1));

  PSymbol t4 = sym_sqrt(xi_power(2, C(4)), 5);
  CHECK(t4.terms.at(1) == C(2));
  PSymbol t94 = sym_sqrt(xi_power(2, C(9, 4)), 5);
  CHECK(t94.terms.at(1) == C(3, 2));

  PSymbol a = sym_sub(xi_power(2), xi_power(0, K() * K() * S() * S()));
  PSymbol tau = sym_sqrt(a, 6);
  CHECK(tau.terms.at(1) == C(1));
  CHECK(tau.terms.find(0) == tau.terms.end());
  CHECK(tau.terms.at(-1) == C(-1, 2) * K() * K() * S() * S());
  CHECK(tau.terms.at(-2) == Ci(-1, 2) * K() * K() * S() * X());
  PSymbol defect = sym_sub(sym_compose(tau, tau, 6), a);
  CHECK(defect.terms.empty());

  CHECK_THROWS_AS(sym_sqrt(xi_power(1), 3), std::domain_error);
  CHECK_THROWS_AS(sym_sqrt(xi_power(2, C(2)), 3), std::domain_error);
  CHECK_THROWS_AS(sym_sqrt(xi_power(2, C(-1)), 3), std::domain_error);
  CHECK_THROWS_AS(sym_sqrt(xi_power(2, S()), 3), std::domain_error);
}

TEST_CASE("parity extraction and rebuild") {
  PSymbol sS = sigma_S(8);
  SymbolPair pr = extract_pair(sS);
  CHECK(pr.a1.terms.at(-1) == C(1, 2));
  CHECK(pr.a1.terms.at(-3) == C(1, 16) * K() * K() * Len() * Len() * (C(1) - X() * X()));
  CHECK(pr.a2.terms.at(-4) == C(3, 16) * K() * K() * Len() * Len() * X());
  CHECK(pr.a1.terms.find(-4) == pr.a1.terms.end());
  CHECK(pr.a2.terms.find(-3) == pr.a2.terms.end());
  for (const auto& [p, t] : pr.a1.terms) {
    for (const auto& [m, q] : t.terms) CHECK(m.e[0] == 0);
  }
  CHECK(sym_equal_stored(rebuild_from_pair(pr), sS));

  PSymbol n = sigma_N(6);
  CHECK(sym_equal_stored(rebuild_from_pair(extract_pair(n)), n));
  CHECK(extract_pair(n).a1.terms.at(1) == C(1, 2));
}

TEST_CASE("remainder-order verification of the parametrix identities") {
  auto checks = symbolic_order_checks(6);
  REQUIRE(checks.size() == 5);
  for (const auto& c : checks) {
    INFO(c.name << ": required " << c.required << ", computed " << c.computed
                << ", leading " << c.leading);
    CHECK(c.pass);
  }
  CHECK(checks[0].name == "dirichlet-composition");
  CHECK(checks[0].computed <= -4);
  CHECK(checks[1].computed <= -4);
  CHECK(checks[2].computed <= -2);
  CHECK(checks[3].computed <= -3);
  CHECK(checks[4].computed == -2);

  // dropping the weight from the reference operator leaves a second-order
  // defect with the expected leading coefficient
  PSymbol sS = sigma_S(8);
  PSymbol SS = sym_compose(sS, sS, 8);
  PSymbol diff = sym_sub(sym_compose(xi_power(2), SS, 8),
                         xi_power(0, TrigPoly::constant(Rat(1, 4))));
  CHECK(sym_hi(diff) == -2);
  CHECK(diff.terms.at(-2) == C(1, 16) * K() * K() * Len() * Len() * S() * S());
}

TEST_CASE("symbolic geometry matches the numeric curve expansion") {
  Curve pc = make_perturbed(2.2, 0.12, 3.0);
  double th = 0.9, x = std::cos(th), s = std::sin(th);
  GeoTaylor gt = geo_taylor(pc, th, 6);

  double d[7] = {0, -s, -x / 2, s / 6, x / 24, -s / 120, -x / 720};
  // powers of the increment series, numerically
  std::vector<std::vector<double>> dp(7, std::vector<double>(7, 0.0));
  dp[0][0] = 1.0;
  for (int q = 1; q <= 6; ++q)
    for (int i = 0; i <= 6; ++i)
      for (int j = 1; i + j <= 6; ++j) dp[q][i + j] += dp[q - 1][i] * d[j];

  std::vector<double> jets;
  for (int j = 0; j <= 4; ++j) jets.push_back(pc.kappa_jet(x, j));

  auto qs = squared_distance_series(6);
  for (int m = 2; m <= 6; ++m) {
    double qnum = 0;
    for (int j = 2; j <= m; ++j) qnum += gt.c[j] * dp[j][m];
    std::complex<double> qsym = poly_eval(qs[m], th, 0.0, pc.L, jets);
    CHECK(std::abs(qsym.imag()) < 1e-14);
    CHECK(std::abs(qsym.real() - qnum) < 1e-9 * std::max(1.0, std::abs(qnum)));
  }
}

TEST_CASE("printers") {
  PSymbol sS = sigma_S(4);
  std::string txt = sym_text(sS);
  CHECK(txt.find("xi^-1") != std::string::npos);
  CHECK(txt.find("xi^-3") != std::string::npos);
  CHECK(txt.find("k^2 L^2") != std::string::npos);
  CHECK(txt.find("O(xi^") != std::string::npos);

  auto lst = sym_term_list(sS);
  REQUIRE(!lst.empty());
  CHECK(lst.front().first == -1);
  CHECK(lst.front().second == "1/2");

  SymbolPair pr = extract_pair(sS);
  std::string a1 = sym_text(pr.a1, true);
  CHECK(a1.find("n^-1") != std::string::npos);
  CHECK(a1.find("x") != std::string::npos);
}

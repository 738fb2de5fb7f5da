#include "arcbie/curve.hpp"

#include <cmath>
#include <stdexcept>

namespace arcbie {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

struct GaussRule {
  std::vector<double> x, w;
};

// Gauss-Legendre nodes/weights by Newton iteration on the recurrence.
GaussRule gauss_legendre(int n) {
  GaussRule g;
  g.x.resize(n);
  g.w.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0;
    for (int it = 0; it < 64; ++it) {
      double p0 = 1.0, p1 = x;
      for (int j = 2; j <= n; ++j) {
        double p2 = ((2 * j - 1) * x * p1 - (j - 1) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    g.x[i] = -x;
    g.x[n - 1 - i] = x;
    double w = 2.0 / ((1.0 - x * x) * dp * dp);
    g.w[i] = w;
    g.w[n - 1 - i] = w;
  }
  return g;
}

const GaussRule& rule16() {
  static const GaussRule g = gauss_legendre(16);
  return g;
}

void check_opening(double opening) {
  if (!(opening > 0.0) || !(opening < 2.0 * kPi)) {
    throw std::invalid_argument("opening must lie in (0, 2*pi)");
  }
}

void check_jet_order(int j) {
  if (j < 0 || j > 4) throw std::invalid_argument("kappa_jet: j must be in 0..4");
}

double binom(int n, int k) {
  double b = 1.0;
  for (int j = 1; j <= k; ++j) b = b * (n - k + j) / j;
  return b;
}

}  // namespace

Curve make_segment() {
  Curve c;
  c.id = "segment";
  c.L = 2.0;
  c.r = [](double x) { return Vec2{x, 0.0}; };
  c.dr = [](double) { return Vec2{1.0, 0.0}; };
  c.d2r = c.d3r = c.d4r = [](double) { return Vec2{0.0, 0.0}; };
  c.kappa_jet = [](double, int j) {
    check_jet_order(j);
    return 0.0;
  };
  return c;
}

Curve make_arc(double opening) {
  check_opening(opening);
  const double a = 0.5 * opening;
  Curve c;
  c.id = "arc";
  c.L = opening;
  c.r = [a](double x) { return Vec2{std::sin(a * x), 1.0 - std::cos(a * x)}; };
  c.dr = [a](double x) { return Vec2{std::cos(a * x), std::sin(a * x)} * a; };
  c.d2r = [a](double x) {
    return Vec2{-std::sin(a * x), std::cos(a * x)} * (a * a);
  };
  c.d3r = [a](double x) {
    return Vec2{-std::cos(a * x), -std::sin(a * x)} * (a * a * a);
  };
  c.d4r = [a](double x) {
    return Vec2{std::sin(a * x), -std::cos(a * x)} * (a * a * a * a);
  };
  c.kappa_jet = [](double, int j) {
    check_jet_order(j);
    return j == 0 ? 1.0 : 0.0;
  };
  return c;
}

Curve make_perturbed(double opening, double eps, double freq) {
  check_opening(opening);
  const double L = opening;
  const double half = 0.5 * L;
  auto phi = [=](double x) { return 0.5 * opening * x + eps * std::sin(freq * x); };
  auto dphi = [=](double x) { return 0.5 * opening + eps * freq * std::cos(freq * x); };
  auto d2phi = [=](double x) { return -eps * freq * freq * std::sin(freq * x); };
  auto d3phi = [=](double x) { return -eps * freq * freq * freq * std::cos(freq * x); };
  auto tang = [=](double x) {
    double p = phi(x);
    return Vec2{std::cos(p), std::sin(p)};
  };
  auto norm = [=](double x) {
    double p = phi(x);
    return Vec2{-std::sin(p), std::cos(p)};
  };

  Curve c;
  c.id = "perturbed";
  c.L = L;
  // r(x) = (L/2) * integral of (cos phi, sin phi) from 0 to x, by composite
  // 16-point Gauss panels of width <= 1/8 (machine precision for these
  // entire integrands at the frequencies we use).
  c.r = [=](double x) {
    const auto& g = rule16();
    int panels = std::max(1, int(std::ceil(std::abs(x) / 0.125)));
    Vec2 acc{0.0, 0.0};
    for (int p = 0; p < panels; ++p) {
      double a = x * double(p) / panels, b = x * double(p + 1) / panels;
      double mid = 0.5 * (a + b), hw = 0.5 * (b - a);
      for (int i = 0; i < 16; ++i) {
        acc = acc + tang(mid + hw * g.x[i]) * (hw * g.w[i]);
      }
    }
    return acc * half;
  };
  c.dr = [=](double x) { return tang(x) * half; };
  c.d2r = [=](double x) { return norm(x) * (half * dphi(x)); };
  c.d3r = [=](double x) {
    double p1 = dphi(x);
    return (norm(x) * d2phi(x) - tang(x) * (p1 * p1)) * half;
  };
  c.d4r = [=](double x) {
    double p1 = dphi(x), p2 = d2phi(x), p3 = d3phi(x);
    return (norm(x) * (p3 - p1 * p1 * p1) - tang(x) * (3.0 * p1 * p2)) * half;
  };
  // kappa = (2/L) phi'(x); parameter derivatives of cos(freq x) rotate the
  // phase by j*pi/2.
  c.kappa_jet = [=](double x, int j) {
    check_jet_order(j);
    if (j == 0) return (2.0 / L) * dphi(x);
    return (2.0 / L) * eps * std::pow(freq, j + 1) *
           std::cos(freq * x + 0.5 * kPi * j);
  };
  return c;
}

double curvature(const Curve& c, double x) {
  Vec2 d1 = c.dr(x), d2 = c.d2r(x);
  double det = d1.x * d2.y - d1.y * d2.x;
  double s = d1.norm();
  return det / (s * s * s);
}

Vec2 divided_diff(const Curve& c, double x, double y) {
  double d = x - y;
  if (std::abs(d) >= 1e-4) return (c.r(x) - c.r(y)) * (1.0 / d);
  double m = 0.5 * (x + y), h = 0.5 * d;
  return c.dr(m) + c.d3r(m) * (h * h / 6.0);
}

GeoTaylor geo_taylor(const Curve& c, double theta, int order) {
  if (order < 2 || order > 6) {
    throw std::invalid_argument("geo_taylor: order must be in 2..6");
  }
  const double x = std::cos(theta);
  const double half = 0.5 * c.L;
  // Jets of the tangent-frame components (A, B) of dr(x+u):
  // A' = -half kappa B, B' = half kappa A, A(0) = half, B(0) = 0, so that
  // r(x+u) - r(x) = sum_p R_p u^p/p! with R_p = (A^{(p-1)}, B^{(p-1)})(0).
  const int P = order - 1;
  std::vector<double> A(P, 0.0), B(P, 0.0);
  A[0] = half;
  for (int p = 1; p < P; ++p) {
    double sa = 0, sb = 0;
    for (int j = 0; j <= p - 1; ++j) {
      double kj = c.kappa_jet(x, j);
      double bc = binom(p - 1, j);
      sa += bc * kj * B[p - 1 - j];
      sb += bc * kj * A[p - 1 - j];
    }
    A[p] = -half * sa;
    B[p] = half * sb;
  }
  std::vector<double> fact(order + 1, 1.0);
  for (int p = 1; p <= order; ++p) fact[p] = fact[p - 1] * p;
  GeoTaylor g;
  g.x = x;
  g.c.assign(order + 1, 0.0);
  for (int p = 1; p <= P; ++p) {
    for (int q = p; p + q <= order; ++q) {
      double dot = A[p - 1] * A[q - 1] + B[p - 1] * B[q - 1];
      g.c[p + q] += (p == q ? 1.0 : 2.0) * dot / (fact[p] * fact[q]);
    }
  }
  return g;
}

}  // namespace arcbie

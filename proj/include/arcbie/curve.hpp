#pragma once
// Constant-speed parametrizations r: [-1,1] -> R^2 of smooth open arcs,
// |r'(x)| = L/2 everywhere, plus the local geometry data consumed by the
// kernel assembler and the symbol engine: signed curvature with parameter
// derivatives, stable divided differences of r, and the Taylor coefficients
// of |r(x) - r(y)|^2 about the diagonal.

#include <cmath>
#include <functional>
#include <string>
#include <vector>

namespace arcbie {

struct Vec2 {
  double x = 0, y = 0;
  Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double s) const { return {x * s, y * s}; }
  double dot(Vec2 o) const { return x * o.x + y * o.y; }
  double norm() const { return std::hypot(x, y); }
};

struct Curve {
  std::string id;
  double L = 0;  // total arc length
  std::function<Vec2(double)> r, dr, d2r, d3r, d4r;
  // d^j kappa / dx^j (parameter derivative of the signed curvature), j <= 4
  std::function<double(double, int)> kappa_jet;

  Vec2 tangent(double x) const {
    Vec2 d = dr(x);
    return d * (1.0 / d.norm());
  }
  Vec2 normal(double x) const {  // tangent rotated by +90 degrees
    Vec2 t = tangent(x);
    return {-t.y, t.x};
  }
};

Curve make_segment();                // r(x) = (x, 0), L = 2
Curve make_arc(double opening);      // unit-radius circular arc, L = opening
// Unit-ish arc with tangent angle (opening/2) x + eps sin(freq x); L = opening.
Curve make_perturbed(double opening, double eps, double freq);

double curvature(const Curve& c, double x);  // det(dr, d2r)/|dr|^3

// q(x, y) with r(x) - r(y) = (x - y) q; direct quotient for |x-y| >= 1e-4,
// midpoint Taylor below (even-order terms cancel at the midpoint, leaving
// q = dr(m) + d3r(m) h^2/6 + O(h^4), h = (x-y)/2). Symmetric in (x, y);
// |q| -> L/2 on the diagonal.
Vec2 divided_diff(const Curve& c, double x, double y);

// Coefficients of |r(x) - r(y)|^2 = sum_m c[m] (y - x)^m at x = cos(theta),
// m = 0..order (order <= 6). c[2] = L^2/4 exactly, c[3] = 0, and
// c[4] = -L^4 kappa(x)^2 / 192.
struct GeoTaylor {
  double x = 0;
  std::vector<double> c;
};
GeoTaylor geo_taylor(const Curve& c, double theta, int order);

}  // namespace arcbie

#include "arcbie/fit.hpp"

#include <cmath>
#include <stdexcept>

namespace arcbie {

SlopeFit fit_slope(const std::vector<std::pair<double, double>>& pts) {
  if (pts.size() < 4) {
    throw std::invalid_argument("fit_slope: need at least 4 points");
  }
  double sx = 0, sy = 0;
  for (const auto& [n, v] : pts) {
    if (!(n > 0.0) || !(v > 0.0)) {
      throw std::invalid_argument("fit_slope: points must be positive");
    }
    sx += std::log(n);
    sy += std::log(v);
  }
  const double m = double(pts.size());
  const double mx = sx / m, my = sy / m;
  double sxx = 0, sxy = 0, syy = 0;
  for (const auto& [n, v] : pts) {
    double dx = std::log(n) - mx, dy = std::log(v) - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (sxx == 0.0) throw std::invalid_argument("fit_slope: degenerate abscissae");
  double slope = sxy / sxx;
  double ss_res = syy - slope * sxy;
  double r2 = (syy > 0.0) ? 1.0 - ss_res / syy : 1.0;
  return {slope, r2};
}

}  // namespace arcbie

#pragma once
// Log-log least-squares slope estimation for order probes.

#include <utility>
#include <vector>

namespace arcbie {

struct SlopeFit {
  double slope;
  double r2;
};

// Least squares on (log n, log value). Requires >= 4 points with n > 0 and
// value > 0; throws std::invalid_argument otherwise. R^2 below 0.9 marks an
// unreliable fit (callers decide what to do with it). Constant data fits
// slope 0 with R^2 = 1.
SlopeFit fit_slope(const std::vector<std::pair<double, double>>& pts);

}  // namespace arcbie

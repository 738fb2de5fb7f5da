#pragma once
// Full (non-restarted) left-preconditioned GMRES on complex vectors.

#include <functional>
#include <vector>

#include "arcbie/cheb.hpp"

namespace arcbie {

struct SolveReport {
  VecC x;
  int iterations = 0;
  std::vector<double> residual_history;  // ||P(A x_m - b)|| / ||P b||
  bool converged = false;
  bool stagnated = false;
  double wall_time = 0;  // seconds
};

using ApplyFn = std::function<VecC(const VecC&)>;

// Returns when ||P(Ax - b)||/||Pb|| <= tol or after maxit steps (capped at
// the dimension; full GMRES is exact there). apply_P may be null for the
// unpreconditioned solve. Modified Gram-Schmidt with one reorthogonalization
// pass; happy breakdown counts as convergence; residuals are monotone
// non-increasing.
SolveReport gmres(const ApplyFn& apply_A, const ApplyFn& apply_P,
                  const VecC& rhs, double tol, int maxit);

}  // namespace arcbie

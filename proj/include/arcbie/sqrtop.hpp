#pragma once
// Principal square roots of the tangential operators via weighted
// eigendecomposition, and the parametrix preconditioners P1 = sqrt(D1),
// P2 = D2^{-1/2}.

#include <string>

#include "arcbie/assembly.hpp"
#include "arcbie/fit.hpp"

namespace arcbie {

struct EigFactorization {
  VecR eigenvalues;  // ascending
  MatR vectors;      // columns orthonormal in the weighted inner product
  MatR vinv;         // inverse of vectors (= Q^T W^{1/2} by construction)
  Basis weight = Basis::T;
  double k = 0;
  std::string curve_id;
};

// Real weighted-self-adjoint input (tolerance 1e-8, else throws). Weights:
// (1, 1/2, 1/2, ...) in the T basis, uniform 1/2 in the U basis.
EigFactorization weighted_eig(const OperatorMat& A);

// lambda >= 0 -> sqrt(lambda); lambda < 0 -> i sqrt(|lambda|).
OperatorMat principal_sqrt(const EigFactorization& F);

// Built from D1/D2 at truncation 2N, cropped to N. P2 inverts the square
// root; eigenvalues of D2 within 1e-8 of zero are shifted by 1e-6 ||D2||
// with a warning on stderr.
OperatorMat build_P1(const Curve& c, double k, int N);
OperatorMat build_P2(const Curve& c, double k, int N);

// Decay of ||A phi_n|| (phi_n = T_n or U_{n-1} by A's input basis) in the
// s-indexed output norm, over dyadic n in [n_min, n_max]; needs >= 4 points.
SlopeFit order_probe(const OperatorMat& A, int n_min, int n_max, double s);

}  // namespace arcbie

#pragma once
// Spectral Galerkin assembly of the weighted layer potentials on an open arc
// and of the tangential comparison operators, as dense matrices acting on
// Chebyshev coefficients.
//
// The single-layer kernel is split, exactly, as
//   G_k(d) = [g(th - th') + g(th + th')] J0(k d) + b(th, th'),
//   g(v) = -(1/2pi) ln|sqrt(2) sin(v/2)|,
//   b    = -(1/2pi) ln(k d / |x - x'|) J0(k d) + F1(k^2 d^2),
// with d = |r(x) - r(x')|, x = cos th. The log-convolution part is applied
// exactly on trigonometric polynomials through its Fourier multipliers
// (log_multiplier); b is smooth and integrated by the trapezoid rule on the
// uniform torus grid. For k = 0 the split is a identically 1 and
// b = -(1/2pi) ln(d/|x - x'|).

#include <string>
#include <vector>

#include "arcbie/cheb.hpp"
#include "arcbie/curve.hpp"

namespace arcbie {

enum class Basis { T, U };

struct OperatorMat {
  MatC entries;
  Basis basis_in = Basis::T, basis_out = Basis::T;
  double k = 0;
  std::string curve_id;
  int M = 0;  // torus quadrature size used for assembly (0 if exact)
};

// Fourier multiplier of g: ln2/2 at n = 0, 1/(2n) for n >= 1.
double log_multiplier(int n);

// Weighted single layer S_{k,omega}: T-coeffs -> T-coeffs. Requires N >= 8,
// M >= 4N, M even.
OperatorMat assemble_S(const Curve& c, double k, int N, int M);

// Same kernel multiplied by n(x).n(x') (unit normals): T -> T. On a segment
// the normals are constant, so assemble_V == assemble_S exactly.
OperatorMat assemble_V(const Curve& c, double k, int N, int M);

// Weighted hypersingular operator via the identity
//   N_{k,omega} = -d_tau S_{k,omega} (omega_G d_tau omega_G .) - k^2 V (omega_G^2 .),
// composed from assemble_S/assemble_V and the exact coefficient maps; the
// parametrization prefactors (2/L per tangential derivative, L/2 per weight)
// cancel in the first term and contribute (k L/2)^2 in the second. U -> U.
OperatorMat assemble_N(const Curve& c, double k, int N, int M);

// Tangential comparison operators, kappa_eff = k L / 2:
//   D1 = diag(n^2)      - kappa_eff^2 * M_{omega^2, T}   (T -> T)
//   D2 = diag((n+1)^2)  - kappa_eff^2 * M_{omega^2, U}   (U -> U)
OperatorMat build_D1(const Curve& c, double k, int N);
OperatorMat build_D2(const Curve& c, double k, int N);

// Plane-wave traces: coefficients of -exp(i k d.r(x)) in the T basis and of
// -i k (d.n(x)) exp(i k d.r(x)) in the U basis. dir must be a unit vector.
VecC rhs_dirichlet(const Curve& c, double k, Vec2 dir, int N);
VecC rhs_neumann(const Curve& c, double k, Vec2 dir, int N);

// Single-layer potential of the weighted density with T-coefficients alpha:
// u(z) = (1/2) int_{-pi}^{pi} G_k(|z - r(cos th')|) (C alpha)(th') dth',
// trapezoid with Mq nodes. Points must keep distance >= 1e-3 from the arc.
std::vector<cplx> field_eval(const Curve& c, double k, const VecC& alpha,
                             const std::vector<Vec2>& points, int Mq = 2048);

// Dumps: CSV has one row per matrix row, entries "re,im,re,im,..."; binary is
// two int64 dims followed by row-major (re, im) doubles.
void write_matrix_csv(const MatC& m, const std::string& path);
void write_matrix_bin(const MatC& m, const std::string& path);

}  // namespace arcbie

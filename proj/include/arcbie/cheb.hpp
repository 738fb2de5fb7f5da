#pragma once
// Chebyshev coefficient spaces: transforms, norms, pairings, and the exact
// coefficient-level maps between first-kind (T) and second-kind (U) bases.
//
// Conventions:
//   T-coefficients u: polynomial sum u_n T_n(x), stored u[0..N].
//   U-coefficients v: polynomial sum v_n U_n(x), stored v[0..N].
//   omega(x) = sqrt(1-x^2).
//   ||u||_{T^s}^2 = |u_0|^2 + (1/2) sum_{n>=1} (1+n^2)^s |u_n|^2
//   ||v||_{U^s}^2 = (1/2) sum_{n>=0} (1+n^2)^s |v_n|^2
//   <u,phi>_{1/omega} = u_0 phi_0 + (1/2) sum_{n>=1} u_n phi_n   (bilinear)
//   <v,psi>_{omega}   = (1/2) sum_{n>=0} v_n psi_n               (bilinear)

#include <complex>
#include <functional>
#include <Eigen/Dense>

namespace arcbie {

using cplx = std::complex<double>;
using VecC = Eigen::VectorXcd;
using VecR = Eigen::VectorXd;
using MatC = Eigen::MatrixXcd;
using MatR = Eigen::MatrixXd;

// Cosine grid x_j = cos(pi j / M), j = 0..M (M+1 points).
VecR cheb_nodes(int M);

// Values at the cosine grid (size M+1) -> T-coefficients (size M+1); inverse.
VecC cheb_transform_T(const VecC& samples);
VecC cheb_inverse_T(const VecC& coeffs);

// Values at the interior nodes x_1..x_{M-1} (size M-1) -> U-coefficients
// (size M-1, degrees 0..M-2); inverse. Uses sin(theta_j) v(x_j) = DST data.
VecC cheb_transform_U(const VecC& samples, int M);
VecC cheb_inverse_U(const VecC& coeffs, int M);

double norm_Ts(const VecC& u, double s);
double norm_Us(const VecC& v, double s);

cplx pair_T(const VecC& u, const VecC& phi);  // <.,.>_{1/omega}
cplx pair_U(const VecC& v, const VecC& psi);  // <.,.>_{omega}

// Identification maps C: T_n -> cos(n th), S: U_n -> sin((n+1) th).
// Coefficientwise these are identities; the evaluators realize the functions.
VecC map_C(const VecC& u);
VecC map_S(const VecC& v);
cplx eval_C(const VecC& u, double theta);
cplx eval_S(const VecC& v, double theta);

// Same polynomial re-expanded in the other basis.
VecC embed_I(const VecC& u);  // T -> U
VecC embed_J(const VecC& v);  // U -> T

VecC diff_T_to_U(const VecC& u);  // d/dx,            T_n -> n U_{n-1}
VecC wdw_U_to_T(const VecC& v);   // omega d/dx omega, U_n -> -(n+1) T_{n+1}

VecC mul_x_T(const VecC& u);             // x T_n = (T_{n+1}+T_{n-1})/2, x T_0 = T_1
VecC mul_omega2_U_to_T(const VecC& v);   // omega^2 U_n = (T_n - T_{n+2})/2
VecC mul_omega2_U_to_U(const VecC& v);   // omega^2 U_n = U_n/2 - (U_{n+2}+U_{n-2})/4, U_{-2} = -U_0

// Multiplication by a smooth real function via oversampled grid round trip.
VecC mul_smooth_T(const VecC& u, const std::function<double(double)>& f, int oversample = 2);
VecC mul_smooth_U(const VecC& v, const std::function<double(double)>& f, int oversample = 2);

// Clenshaw evaluation of the polynomial at a point x in [-1,1].
cplx eval_T(const VecC& u, double x);
cplx eval_U(const VecC& v, double x);

// Dense matrices of the coefficient maps at square truncation N x N
// (input degrees 0..N-1, output degrees 0..N-1; entries beyond are dropped).
MatR mat_embed_I(int N);
MatR mat_embed_J(int N);
MatR mat_diff(int N);
MatR mat_wdw(int N);
MatR mat_mul_x_T(int N);
MatR mat_mul_omega2_U_to_T(int N);
MatR mat_mul_omega2_U_to_U(int N);
MatR mat_mul_omega2_T(int N);  // (1 - x^2) on the T basis, = I - mat_mul_x_T^2

// Diagonal weights of the T/U inner products: (1, 1/2, 1/2, ...) and (1/2, ...).
VecR weights_T(int N);
VecR weights_U(int N);

}  // namespace arcbie

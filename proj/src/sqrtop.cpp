#include "arcbie/sqrtop.hpp"

#include <cmath>
#include <complex>
#include <cstdio>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace arcbie {

namespace {

VecR basis_weights(Basis b, int n) {
  return b == Basis::T ? weights_T(n) : weights_U(n);
}

EigFactorization eig_of(const MatR& A, Basis weight) {
  const int n = int(A.rows());
  VecR w = basis_weights(weight, n);
  VecR wh = w.cwiseSqrt();
  // W A = (W A)^T makes B = W^{1/2} A W^{-1/2} symmetric.
  MatR wa = w.asDiagonal() * A;
  double asym = (wa - wa.transpose()).norm();
  if (asym > 1e-8 * std::max(1.0, wa.norm())) {
    throw std::invalid_argument("weighted_eig: input is not self-adjoint");
  }
  MatR B = wh.asDiagonal() * A * wh.cwiseInverse().asDiagonal();
  B = 0.5 * (B + B.transpose()).eval();
  Eigen::SelfAdjointEigenSolver<MatR> es(B);
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("weighted_eig: eigensolver failed");
  }
  EigFactorization f;
  f.eigenvalues = es.eigenvalues();
  f.vectors = wh.cwiseInverse().asDiagonal() * es.eigenvectors();
  f.vinv = es.eigenvectors().transpose() * wh.asDiagonal().toDenseMatrix();
  f.weight = weight;
  return f;
}

}  // namespace

EigFactorization weighted_eig(const OperatorMat& A) {
  if (A.entries.imag().norm() > 1e-12 * std::max(1.0, A.entries.norm())) {
    throw std::invalid_argument("weighted_eig: input must be real");
  }
  EigFactorization f = eig_of(A.entries.real(), A.basis_in);
  f.k = A.k;
  f.curve_id = A.curve_id;
  return f;
}

OperatorMat principal_sqrt(const EigFactorization& F) {
  const int n = int(F.eigenvalues.size());
  VecC root(n);
  for (int i = 0; i < n; ++i) {
    double lam = F.eigenvalues[i];
    root[i] = lam >= 0.0 ? cplx(std::sqrt(lam), 0.0)
                         : cplx(0.0, std::sqrt(-lam));
  }
  OperatorMat out;
  out.entries = F.vectors.cast<cplx>() * root.asDiagonal() *
                F.vinv.cast<cplx>();
  out.basis_in = out.basis_out = F.weight;
  out.k = F.k;
  out.curve_id = F.curve_id;
  return out;
}

namespace {

OperatorMat crop(const OperatorMat& big, int N) {
  OperatorMat out = big;
  out.entries = big.entries.topLeftCorner(N, N).eval();
  return out;
}

}  // namespace

OperatorMat build_P1(const Curve& c, double k, int N) {
  OperatorMat d1 = build_D1(c, k, 2 * N);
  return crop(principal_sqrt(weighted_eig(d1)), N);
}

OperatorMat build_P2(const Curve& c, double k, int N) {
  OperatorMat d2 = build_D2(c, k, 2 * N);
  EigFactorization f = weighted_eig(d2);
  double scale = d2.entries.norm();
  double worst = f.eigenvalues.cwiseAbs().minCoeff();
  if (worst <= 1e-8) {
    std::fprintf(stderr,
                 "build_P2: eigenvalue %.3e within 1e-8 of zero; "
                 "shifting spectrum by %.3e\n",
                 worst, 1e-6 * scale);
    f.eigenvalues.array() += 1e-6 * scale;
  }
  const int n = int(f.eigenvalues.size());
  VecC invroot(n);
  for (int i = 0; i < n; ++i) {
    double lam = f.eigenvalues[i];
    cplx r = lam >= 0.0 ? cplx(std::sqrt(lam), 0.0)
                        : cplx(0.0, std::sqrt(-lam));
    invroot[i] = 1.0 / r;
  }
  OperatorMat out;
  out.entries = (f.vectors.cast<cplx>() * invroot.asDiagonal() *
                 f.vinv.cast<cplx>())
                    .topLeftCorner(N, N)
                    .eval();
  out.basis_in = out.basis_out = Basis::U;
  out.k = k;
  out.curve_id = c.id;
  return out;
}

SlopeFit order_probe(const OperatorMat& A, int n_min, int n_max, double s) {
  std::vector<std::pair<double, double>> pts;
  for (int n = n_min; n <= n_max; n *= 2) {
    int col = A.basis_in == Basis::T ? n : n - 1;
    if (col < 0 || col >= int(A.entries.cols())) {
      throw std::invalid_argument("order_probe: probe index out of range");
    }
    VecC v = A.entries.col(col);
    double val = A.basis_out == Basis::T ? norm_Ts(v, s) : norm_Us(v, s);
    pts.push_back({double(n), val});
  }
  if (pts.size() < 4) {
    throw std::invalid_argument("order_probe: need at least 4 probe points");
  }
  return fit_slope(pts);
}

}  // namespace arcbie

#include "arcbie/gmres.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

namespace arcbie {

SolveReport gmres(const ApplyFn& apply_A, const ApplyFn& apply_P,
                  const VecC& rhs, double tol, int maxit) {
  if (!(tol > 0.0) || !(tol < 1.0)) {
    throw std::invalid_argument("gmres: tol must lie in (0, 1)");
  }
  auto t0 = std::chrono::steady_clock::now();
  auto prec = [&](const VecC& v) { return apply_P ? apply_P(v) : v; };

  const int n = int(rhs.size());
  const int m_max = std::min(maxit, n);
  SolveReport rep;
  rep.x = VecC::Zero(n);

  VecC r0 = prec(rhs);
  const double beta = r0.norm();
  if (beta == 0.0) {
    rep.converged = true;
    return rep;
  }

  std::vector<VecC> V;
  V.push_back(r0 / beta);
  MatC H = MatC::Zero(m_max + 1, m_max);
  VecC g = VecC::Zero(m_max + 1);
  g[0] = beta;
  std::vector<cplx> cs(m_max), sn(m_max);

  int m = 0;
  bool happy = false;
  for (int j = 0; j < m_max; ++j) {
    VecC w = prec(apply_A(V[j]));
    double wnorm = w.norm();
    for (int i = 0; i <= j; ++i) {
      cplx h = V[i].dot(w);  // conjugated on the left
      H(i, j) = h;
      w -= h * V[i];
    }
    for (int i = 0; i <= j; ++i) {  // one reorthogonalization pass
      cplx corr = V[i].dot(w);
      H(i, j) += corr;
      w -= corr * V[i];
    }
    double h1 = w.norm();
    H(j + 1, j) = h1;

    // apply accumulated Givens rotations, then form the new one
    for (int i = 0; i < j; ++i) {
      cplx t = cs[i] * H(i, j) + sn[i] * H(i + 1, j);
      H(i + 1, j) = -std::conj(sn[i]) * H(i, j) + std::conj(cs[i]) * H(i + 1, j);
      H(i, j) = t;
    }
    double denom = std::sqrt(std::norm(H(j, j)) + h1 * h1);
    if (denom == 0.0) {
      m = j;  // exact zero column: the space stopped growing
      happy = true;
      break;
    }
    cs[j] = std::conj(H(j, j)) / denom;
    sn[j] = h1 / denom;
    H(j, j) = cs[j] * H(j, j) + sn[j] * H(j + 1, j);
    H(j + 1, j) = 0.0;
    g[j + 1] = -std::conj(sn[j]) * g[j];
    g[j] = cs[j] * g[j];

    m = j + 1;
    double rel = std::abs(g[j + 1]) / beta;
    rep.residual_history.push_back(rel);
    if (rel <= tol) {
      rep.converged = true;
      break;
    }
    if (h1 <= 1e-14 * std::max(1.0, wnorm)) {
      rep.converged = true;  // happy breakdown: subspace is invariant
      happy = true;
      break;
    }
    V.push_back(w / h1);
  }

  // back-substitute the m x m triangular system and assemble x
  if (m > 0) {
    VecC y = VecC::Zero(m);
    for (int i = m - 1; i >= 0; --i) {
      cplx acc = g[i];
      for (int l = i + 1; l < m; ++l) acc -= H(i, l) * y[l];
      y[i] = acc / H(i, i);
    }
    for (int i = 0; i < m; ++i) rep.x += y[i] * V[i];
  }
  rep.iterations = m;
  if (!rep.converged && !happy) {
    size_t hlen = rep.residual_history.size();
    if (hlen >= 6) {
      double last = rep.residual_history[hlen - 1];
      double before = rep.residual_history[hlen - 6];
      rep.stagnated = last > 0.99 * before;
    }
  }
  rep.wall_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return rep;
}

}  // namespace arcbie

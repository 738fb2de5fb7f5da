#include "arcbie/assembly.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <stdexcept>
#include <thread>
#include <vector>

#include "arcbie/bessel.hpp"

namespace arcbie {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

int num_threads() {
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("ARCBIE_THREADS")) {
    long v = std::strtol(env, nullptr, 10);
    if (v >= 1) hw = std::min<unsigned>(hw, unsigned(v));
  }
  return int(hw);
}

// Runs fn(i) for i in [0, n) over a pool of threads, contiguous blocks. Each
// index is computed independently, so the result is schedule-independent.
template <class F>
void parallel_rows(int n, F fn) {
  int nt = std::min(num_threads(), n);
  if (nt <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  int chunk = (n + nt - 1) / nt;
  for (int t = 0; t < nt; ++t) {
    int lo = t * chunk, hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([=] {
      for (int i = lo; i < hi; ++i) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

struct Nodes {
  std::vector<double> theta, x;
  std::vector<Vec2> r, nrm;
};

Nodes torus_nodes(const Curve& c, int M, bool need_normals) {
  Nodes nd;
  nd.theta.resize(M);
  nd.x.resize(M);
  nd.r.resize(M);
  if (need_normals) nd.nrm.resize(M);
  for (int j = 0; j < M; ++j) {
    nd.theta[j] = 2.0 * kPi * j / M;
    nd.x[j] = std::cos(nd.theta[j]);
    nd.r[j] = c.r(nd.x[j]);
    if (need_normals) nd.nrm[j] = c.normal(nd.x[j]);
  }
  return nd;
}

// R[d] = (g * e_d)(0): exact circular convolution table of the log kernel on
// the M-point grid, R[d] = (1/M)[m(0) + 2 sum_{n<M/2} m(n) cos(2pi n d/M)
// + m(M/2) cos(pi d)].
std::vector<double> log_conv_table(int M) {
  std::vector<double> R(M);
  for (int d = 0; d <= M / 2; ++d) {
    double acc = log_multiplier(0);
    for (int n = 1; n < M / 2; ++n) {
      acc += 2.0 * log_multiplier(n) * std::cos(2.0 * kPi * n * d / M);
    }
    acc += log_multiplier(M / 2) * ((d % 2 == 0) ? 1.0 : -1.0);
    R[d] = acc / M;
    if (d > 0 && d < M) R[M - d] = R[d];
  }
  return R;
}

// |q| with r(x) - r(y) = (x - y) q, from cached endpoint values on the far
// branch and the midpoint Taylor rule near the diagonal.
double chord_ratio(const Curve& c, double xi, double xj, const Vec2& ri,
                   const Vec2& rj) {
  double dx = xi - xj;
  if (std::abs(dx) >= 1e-4) return (ri - rj).norm() / std::abs(dx);
  double m = 0.5 * (xi + xj), h = 0.5 * dx;
  return (c.dr(m) + c.d3r(m) * (h * h / 6.0)).norm();
}

void check_sizes(int N, int M) {
  if (N < 8) throw std::invalid_argument("assemble: N must be >= 8");
  if (M % 2 != 0) throw std::invalid_argument("assemble: M must be even");
  if (M < 4 * N) throw std::invalid_argument("assemble: M must be >= 4N");
}

// Shared core of assemble_S / assemble_V; with_normals switches on the
// n(x).n(x') kernel factor. Size pre-conditions are enforced by the public
// wrappers (assemble_N widens N by 2 internally under the caller's M).
OperatorMat assemble_single_layer(const Curve& c, double k, int N, int M,
                                  bool with_normals) {
  if (N > M / 2) throw std::invalid_argument("assemble: need N <= M/2");
  Nodes nd = torus_nodes(c, M, with_normals);
  std::vector<double> R = log_conv_table(M);

  MatC shat(M, M);
  parallel_rows(M, [&](int i) {
    for (int j = 0; j < M; ++j) {
      double qn = chord_ratio(c, nd.x[i], nd.x[j], nd.r[i], nd.r[j]);
      double a;
      cplx b;
      if (k == 0.0) {
        a = 1.0;
        b = cplx(-std::log(qn) / (2.0 * kPi), 0.0);
      } else {
        double dist = (nd.r[i] - nd.r[j]).norm();
        double z = k * dist;
        a = bessel_J0(z);
        b = -std::log(k * qn) / (2.0 * kPi) * a + F1(cplx(z * z, 0.0));
      }
      double nu = with_normals ? nd.nrm[i].dot(nd.nrm[j]) : 1.0;
      shat(i, j) = nu * (a * R[(i - j + M) % M] + (kPi / M) * b);
    }
  });

  // Project to cosine coefficients: columns = transforms of the action on
  // cos(m th), rows scaled by (eps_n / M), eps_0 = 1, eps_n = 2.
  MatC cosmat(M, N);
  for (int j = 0; j < M; ++j) {
    for (int m = 0; m < N; ++m) {
      cosmat(j, m) = cplx(std::cos(m * nd.theta[j]), 0.0);
    }
  }
  MatC applied = shat * cosmat;
  MatC coef = (cosmat.transpose() * applied) / double(M);
  for (int n = 1; n < N; ++n) coef.row(n) *= 2.0;

  OperatorMat out;
  out.entries = std::move(coef);
  out.basis_in = Basis::T;
  out.basis_out = Basis::T;
  out.k = k;
  out.curve_id = c.id;
  out.M = M;
  return out;
}

}  // namespace

double log_multiplier(int n) {
  if (n < 0) throw std::invalid_argument("log_multiplier: n must be >= 0");
  return n == 0 ? 0.5 * std::log(2.0) : 0.5 / double(n);
}

OperatorMat assemble_S(const Curve& c, double k, int N, int M) {
  check_sizes(N, M);
  return assemble_single_layer(c, k, N, M, false);
}

OperatorMat assemble_V(const Curve& c, double k, int N, int M) {
  check_sizes(N, M);
  return assemble_single_layer(c, k, N, M, true);
}

OperatorMat assemble_N(const Curve& c, double k, int N, int M) {
  check_sizes(N, M);
  // Work two indices wide of the target truncation so the index shifts of
  // the coefficient maps do not clip the last columns, then crop.
  const int Nb = N + 2;
  MatC s_big = assemble_single_layer(c, k, Nb, M, false).entries;
  MatC term = -(mat_diff(Nb) * s_big * mat_wdw(Nb)).eval();
  if (k != 0.0) {
    MatC v_big = assemble_single_layer(c, k, Nb, M, true).entries;
    const double keff = k * 0.5 * c.L;  // (L/2) from each omega pullback
    term -= (keff * keff) *
            (mat_embed_I(Nb) * v_big * mat_mul_omega2_U_to_T(Nb));
  }
  OperatorMat out;
  out.entries = term.topLeftCorner(N, N);
  out.basis_in = Basis::U;
  out.basis_out = Basis::U;
  out.k = k;
  out.curve_id = c.id;
  out.M = M;
  return out;
}

OperatorMat build_D1(const Curve& c, double k, int N) {
  const double keff = k * 0.5 * c.L;
  MatR d = -keff * keff * mat_mul_omega2_T(N);
  for (int n = 0; n < N; ++n) d(n, n) += double(n) * double(n);
  OperatorMat out;
  out.entries = d.cast<cplx>();
  out.basis_in = Basis::T;
  out.basis_out = Basis::T;
  out.k = k;
  out.curve_id = c.id;
  return out;
}

OperatorMat build_D2(const Curve& c, double k, int N) {
  const double keff = k * 0.5 * c.L;
  MatR d = -keff * keff * mat_mul_omega2_U_to_U(N);
  for (int n = 0; n < N; ++n) d(n, n) += double(n + 1) * double(n + 1);
  OperatorMat out;
  out.entries = d.cast<cplx>();
  out.basis_in = Basis::U;
  out.basis_out = Basis::U;
  out.k = k;
  out.curve_id = c.id;
  return out;
}

namespace {

void check_unit(Vec2 dir) {
  if (std::abs(dir.norm() - 1.0) > 1e-12) {
    throw std::invalid_argument("rhs: dir must be a unit vector");
  }
}

}  // namespace

VecC rhs_dirichlet(const Curve& c, double k, Vec2 dir, int N) {
  check_unit(dir);
  const int Ms = std::max(64, 4 * N);
  VecC samples(Ms + 1);
  for (int j = 0; j <= Ms; ++j) {
    double x = std::cos(kPi * j / Ms);
    double phase = k * dir.dot(c.r(x));
    samples[j] = -std::exp(cplx(0.0, phase));
  }
  VecC full = cheb_transform_T(samples);
  return full.head(N);
}

VecC rhs_neumann(const Curve& c, double k, Vec2 dir, int N) {
  check_unit(dir);
  const int Ms = std::max(64, 4 * N);
  VecC samples(Ms - 1);
  for (int j = 1; j < Ms; ++j) {
    double x = std::cos(kPi * j / Ms);
    double phase = k * dir.dot(c.r(x));
    samples[j - 1] = cplx(0.0, -k) * dir.dot(c.normal(x)) *
                     std::exp(cplx(0.0, phase));
  }
  VecC full = cheb_transform_U(samples, Ms);
  return full.head(N);
}

namespace {

double dist_to_chain(const Vec2& z, const std::vector<Vec2>& pts) {
  double best = 1e300;
  for (size_t i = 0; i + 1 < pts.size(); ++i) {
    Vec2 a = pts[i], d = pts[i + 1] - pts[i];
    double len2 = d.dot(d);
    double t = len2 > 0 ? std::clamp((z - a).dot(d) / len2, 0.0, 1.0) : 0.0;
    best = std::min(best, (z - (a + d * t)).norm());
  }
  return best;
}

}  // namespace

std::vector<cplx> field_eval(const Curve& c, double k, const VecC& alpha,
                             const std::vector<Vec2>& points, int Mq) {
  std::vector<double> theta(Mq);
  std::vector<Vec2> rq(Mq);
  std::vector<cplx> dens(Mq);
  for (int j = 0; j < Mq; ++j) {
    theta[j] = 2.0 * kPi * j / Mq;
    rq[j] = c.r(std::cos(theta[j]));
    dens[j] = eval_C(alpha, theta[j]);
  }
  // polyline through the arc samples x = cos(th), th in [0, pi]
  std::vector<Vec2> chain;
  for (int j = 0; j <= Mq / 2; ++j) chain.push_back(rq[j]);
  std::vector<cplx> out;
  out.reserve(points.size());
  for (const Vec2& z : points) {
    if (dist_to_chain(z, chain) < 1e-3) {
      throw std::invalid_argument("field_eval: point too close to the arc");
    }
    cplx acc(0.0, 0.0);
    for (int j = 0; j < Mq; ++j) acc += green_G(k, (z - rq[j]).norm()) * dens[j];
    out.push_back(acc * (kPi / Mq));
  }
  return out;
}

void write_matrix_csv(const MatC& m, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path);
  f.precision(17);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) f << ',';
      f << m(i, j).real() << ',' << m(i, j).imag();
    }
    f << '\n';
  }
}

void write_matrix_bin(const MatC& m, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path);
  std::int64_t dims[2] = {m.rows(), m.cols()};
  f.write(reinterpret_cast<const char*>(dims), sizeof dims);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      double re_im[2] = {m(i, j).real(), m(i, j).imag()};
      f.write(reinterpret_cast<const char*>(re_im), sizeof re_im);
    }
  }
}

}  // namespace arcbie

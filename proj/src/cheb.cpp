#include "arcbie/cheb.hpp"

#include <cmath>
#include <cstdio>
#include <mutex>
#include <stdexcept>
#include <vector>

#include <fftw3.h>

namespace arcbie {

namespace {

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

// REDFT00 of a real vector, in place semantics (out may alias in).
void dct1(const std::vector<double>& in, std::vector<double>& out) {
  int n = (int)in.size();
  out.resize(n);
  std::vector<double> buf(in);
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    plan = fftw_plan_r2r_1d(n, buf.data(), out.data(), FFTW_REDFT00, FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(plan);
  }
}

void dst1(const std::vector<double>& in, std::vector<double>& out) {
  int n = (int)in.size();
  out.resize(n);
  std::vector<double> buf(in);
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    plan = fftw_plan_r2r_1d(n, buf.data(), out.data(), FFTW_RODFT00, FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(plan);
  }
}

VecC apply_real_transform(const VecC& z, void (*tr)(const std::vector<double>&, std::vector<double>&)) {
  int n = (int)z.size();
  std::vector<double> re(n), im(n), ore_(n), oim(n);
  for (int i = 0; i < n; ++i) { re[i] = z[i].real(); im[i] = z[i].imag(); }
  tr(re, ore_);
  tr(im, oim);
  VecC out(n);
  for (int i = 0; i < n; ++i) out[i] = cplx(ore_[i], oim[i]);
  return out;
}

}  // namespace

VecR cheb_nodes(int M) {
  VecR x(M + 1);
  for (int j = 0; j <= M; ++j) x[j] = std::cos(M_PI * j / M);
  return x;
}

VecC cheb_transform_T(const VecC& samples) {
  if (samples.size() < 2) throw std::invalid_argument("cheb_transform_T: need at least 2 samples");
  int M = (int)samples.size() - 1;
  VecC y = apply_real_transform(samples, dct1);
  VecC u(M + 1);
  for (int n = 0; n <= M; ++n) {
    double c = (n == 0 || n == M) ? 2.0 : 1.0;
    u[n] = y[n] / (c * M);
  }
  return u;
}

VecC cheb_inverse_T(const VecC& coeffs) {
  int M = (int)coeffs.size() - 1;
  VecC x(M + 1);
  x[0] = coeffs[0];
  x[M] = coeffs[M];
  for (int n = 1; n < M; ++n) x[n] = coeffs[n] * 0.5;
  return apply_real_transform(x, dct1);
}

VecC cheb_transform_U(const VecC& samples, int M) {
  if ((int)samples.size() != M - 1) throw std::invalid_argument("cheb_transform_U: expected M-1 interior samples");
  VecC g(M - 1);
  for (int j = 1; j <= M - 1; ++j) g[j - 1] = std::sin(M_PI * j / M) * samples[j - 1];
  VecC y = apply_real_transform(g, dst1);
  return y / (double)M;
}

VecC cheb_inverse_U(const VecC& coeffs, int M) {
  if ((int)coeffs.size() != M - 1) throw std::invalid_argument("cheb_inverse_U: expected M-1 coefficients");
  VecC x = coeffs * 0.5;
  VecC g = apply_real_transform(x, dst1);
  VecC v(M - 1);
  for (int j = 1; j <= M - 1; ++j) v[j - 1] = g[j - 1] / std::sin(M_PI * j / M);
  return v;
}

double norm_Ts(const VecC& u, double s) {
  double acc = 0.0;
  for (int n = 0; n < u.size(); ++n) {
    double w = (n == 0) ? 1.0 : 0.5;
    acc += w * std::pow(1.0 + double(n) * n, s) * std::norm(u[n]);
  }
  return std::sqrt(acc);
}

double norm_Us(const VecC& v, double s) {
  double acc = 0.0;
  for (int n = 0; n < v.size(); ++n)
    acc += 0.5 * std::pow(1.0 + double(n) * n, s) * std::norm(v[n]);
  return std::sqrt(acc);
}

cplx pair_T(const VecC& u, const VecC& phi) {
  cplx acc = 0.0;
  int n = (int)std::min(u.size(), phi.size());
  for (int i = 0; i < n; ++i) acc += (i == 0 ? 1.0 : 0.5) * u[i] * phi[i];
  return acc;
}

cplx pair_U(const VecC& v, const VecC& psi) {
  cplx acc = 0.0;
  int n = (int)std::min(v.size(), psi.size());
  for (int i = 0; i < n; ++i) acc += 0.5 * v[i] * psi[i];
  return acc;
}

VecC map_C(const VecC& u) { return u; }
VecC map_S(const VecC& v) { return v; }

cplx eval_C(const VecC& u, double theta) {
  cplx acc = 0.0;
  for (int n = 0; n < u.size(); ++n) acc += u[n] * std::cos(n * theta);
  return acc;
}

cplx eval_S(const VecC& v, double theta) {
  cplx acc = 0.0;
  for (int n = 0; n < v.size(); ++n) acc += v[n] * std::sin((n + 1) * theta);
  return acc;
}

VecC embed_I(const VecC& u) {
  int N = (int)u.size();
  VecC out = VecC::Zero(N);
  auto at = [&](int j) -> cplx { return j < N ? u[j] : cplx(0.0); };
  out[0] = at(0) - 0.5 * at(2);
  for (int j = 1; j < N; ++j) out[j] = 0.5 * (at(j) - at(j + 2));
  return out;
}

VecC embed_J(const VecC& v) {
  int N = (int)v.size();
  VecC out = VecC::Zero(N);
  // tail sums: out[j] = 2 sum_{n>=0} v[j+2n], halved at j = 0
  for (int j = N - 1; j >= 0; --j) {
    cplx tail = v[j] + (j + 2 < N ? out[j + 2] * 0.5 : cplx(0.0));
    out[j] = 2.0 * tail;
  }
  out[0] *= 0.5;
  return out;
}

VecC diff_T_to_U(const VecC& u) {
  int N = (int)u.size();
  VecC out = VecC::Zero(std::max(N - 1, 1));
  for (int n = 1; n < N; ++n) out[n - 1] = double(n) * u[n];
  return out;
}

VecC wdw_U_to_T(const VecC& v) {
  int N = (int)v.size();
  VecC out = VecC::Zero(N + 1);
  for (int n = 0; n < N; ++n) out[n + 1] = -double(n + 1) * v[n];
  return out;
}

VecC mul_x_T(const VecC& u) {
  int N = (int)u.size();
  VecC out = VecC::Zero(N + 1);
  if (N > 0) out[1] += u[0];
  for (int n = 1; n < N; ++n) {
    out[n + 1] += 0.5 * u[n];
    out[n - 1] += 0.5 * u[n];
  }
  return out;
}

VecC mul_omega2_U_to_T(const VecC& v) {
  int N = (int)v.size();
  VecC out = VecC::Zero(N + 2);
  for (int n = 0; n < N; ++n) {
    out[n] += 0.5 * v[n];
    out[n + 2] -= 0.5 * v[n];
  }
  return out;
}

VecC mul_omega2_U_to_U(const VecC& v) {
  int N = (int)v.size();
  VecC out = VecC::Zero(N + 2);
  for (int n = 0; n < N; ++n) {
    out[n] += 0.5 * v[n];
    out[n + 2] -= 0.25 * v[n];
    if (n >= 2) out[n - 2] -= 0.25 * v[n];
    // U_{-1} = 0 and U_{-2} = -U_0, so the n = 0 column picks up +1/4 U_0
    if (n == 0) out[0] += 0.25 * v[0];
  }
  return out;
}

namespace {

VecC mul_smooth_grid_T(const VecC& u, const std::function<double(double)>& f, int M) {
  VecC padded = VecC::Zero(M + 1);
  padded.head(u.size()) = u;
  VecC samples = cheb_inverse_T(padded);
  VecR x = cheb_nodes(M);
  for (int j = 0; j <= M; ++j) samples[j] *= f(x[j]);
  return cheb_transform_T(samples);
}

void aliasing_check(const VecC& c, const char* who) {
  int n = (int)c.size();
  double mx = 0.0;
  for (int i = 0; i < n; ++i) mx = std::max(mx, std::abs(c[i]));
  double tail = 0.0;
  for (int i = n - std::max(1, n / 10); i < n; ++i) tail = std::max(tail, std::abs(c[i]));
  if (mx > 0 && tail > 1e-10 * mx)
    std::fprintf(stderr, "%s: possible aliasing, tail/max = %.2e\n", who, tail / mx);
}

}  // namespace

VecC mul_smooth_T(const VecC& u, const std::function<double(double)>& f, int oversample) {
  int deg = (int)u.size() - 1;
  int M = std::max(8, oversample * (deg + 1));
  VecC out = mul_smooth_grid_T(u, f, M);
  aliasing_check(out, "mul_smooth_T");
  return out;
}

VecC mul_smooth_U(const VecC& v, const std::function<double(double)>& f, int oversample) {
  int deg = (int)v.size() - 1;
  int M = std::max(8, oversample * (deg + 2));
  VecC padded = VecC::Zero(M - 1);
  padded.head(v.size()) = v;
  VecC samples = cheb_inverse_U(padded, M);
  for (int j = 1; j <= M - 1; ++j) samples[j - 1] *= f(std::cos(M_PI * j / M));
  VecC out = cheb_transform_U(samples, M);
  aliasing_check(out, "mul_smooth_U");
  return out;
}

cplx eval_T(const VecC& u, double x) {
  // Clenshaw for T_n
  cplx b1 = 0.0, b2 = 0.0;
  for (int n = (int)u.size() - 1; n >= 1; --n) {
    cplx b0 = u[n] + 2.0 * x * b1 - b2;
    b2 = b1;
    b1 = b0;
  }
  return (u.size() ? u[0] : cplx(0.0)) + x * b1 - b2;
}

cplx eval_U(const VecC& v, double x) {
  cplx b1 = 0.0, b2 = 0.0;
  for (int n = (int)v.size() - 1; n >= 0; --n) {
    cplx b0 = v[n] + 2.0 * x * b1 - b2;
    b2 = b1;
    b1 = b0;
  }
  return b1;  // sum v_n U_n = b1 since U_{n+1} = 2x U_n - U_{n-1}, U_0 = 1
}

MatR mat_embed_I(int N) {
  MatR A = MatR::Zero(N, N);
  for (int j = 0; j < N; ++j) {
    double d = (j == 0) ? 1.0 : 0.5;
    A(j, j) += d;
    if (j + 2 < N) A(j, j + 2) -= 0.5;
  }
  return A;
}

MatR mat_embed_J(int N) {
  MatR A = MatR::Zero(N, N);
  for (int j = 0; j < N; ++j)
    for (int m = j; m < N; m += 2) A(j, m) = (j == 0) ? 1.0 : 2.0;
  return A;
}

MatR mat_diff(int N) {
  MatR A = MatR::Zero(N, N);
  for (int j = 0; j + 1 < N; ++j) A(j, j + 1) = j + 1;
  return A;
}

MatR mat_wdw(int N) {
  MatR A = MatR::Zero(N, N);
  for (int n = 0; n + 1 < N; ++n) A(n + 1, n) = -double(n + 1);
  return A;
}

MatR mat_mul_x_T(int N) {
  MatR A = MatR::Zero(N, N);
  if (N > 1) A(1, 0) = 1.0;
  for (int n = 1; n < N; ++n) {
    if (n + 1 < N) A(n + 1, n) = 0.5;
    A(n - 1, n) = 0.5;
  }
  return A;
}

MatR mat_mul_omega2_U_to_T(int N) {
  MatR A = MatR::Zero(N, N);
  for (int n = 0; n < N; ++n) {
    A(n, n) = 0.5;
    if (n + 2 < N) A(n + 2, n) = -0.5;
  }
  return A;
}

MatR mat_mul_omega2_U_to_U(int N) {
  MatR A = MatR::Zero(N, N);
  for (int n = 0; n < N; ++n) {
    A(n, n) = 0.5;
    if (n == 0) A(0, 0) += 0.25;  // U_{-2} = -U_0 reflection
    if (n + 2 < N) A(n + 2, n) = -0.25;
    if (n >= 2) A(n - 2, n) = -0.25;
  }
  return A;
}

MatR mat_mul_omega2_T(int N) {
  // band of the infinite matrix I - (x-multiplication)^2 on the T basis
  MatR A = MatR::Zero(N, N);
  for (int n = 0; n < N; ++n) {
    if (n == 0) {
      A(0, 0) = 0.5;
      if (N > 2) A(2, 0) = -0.5;
    } else if (n == 1) {
      A(1, 1) = 0.25;
      if (N > 3) A(3, 1) = -0.25;
    } else {
      A(n, n) = 0.5;
      A(n - 2, n) = -0.25;
      if (n + 2 < N) A(n + 2, n) = -0.25;
    }
  }
  return A;
}

VecR weights_T(int N) {
  VecR w = VecR::Constant(N, 0.5);
  w[0] = 1.0;
  return w;
}

VecR weights_U(int N) { return VecR::Constant(N, 0.5); }

}  // namespace arcbie

#include "arcbie/experiments.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <stdexcept>

#include "arcbie/sqrtop.hpp"
#include "arcbie/symbol.hpp"

namespace arcbie {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

int def_N(const RunConfig& cfg, int dflt) {
  int N = cfg.N > 0 ? cfg.N : dflt;
  if (N < 16) throw std::invalid_argument("config: N must be >= 16");
  return N;
}

int def_M(const RunConfig& cfg, int N) {
  int M = cfg.M > 0 ? cfg.M : 4 * N;
  if (M < 4 * N || M % 2) throw std::invalid_argument("config: M must be even and >= 4N");
  return M;
}

double def_tol(const RunConfig& cfg, double dflt) {
  return cfg.tolerance > 0 ? cfg.tolerance : dflt;
}

}  // namespace

int probe_start(double k, double L, int N) {
  int n0 = 8;
  double wave = k * L;  // 2 kappa_eff
  while (n0 <= wave && 8 * n0 <= N / 4) n0 *= 2;
  return n0;
}

namespace {

OperatorMat wrap(MatC m, Basis b, double k, const std::string& id) {
  OperatorMat op;
  op.entries = std::move(m);
  op.basis_in = op.basis_out = b;
  op.k = k;
  op.curve_id = id;
  return op;
}

// sqrt(D2) through the same 2N-truncate-then-crop route as the parametrices
MatC sqrt_D2_cropped(const Curve& c, double k, int N) {
  OperatorMat big = build_D2(c, k, 2 * N);
  OperatorMat root = principal_sqrt(weighted_eig(big));
  return root.entries.topLeftCorner(N, N);
}

MatC laplace_diag_inverse(const std::string& bc, int N) {
  VecC d(N);
  if (bc == "dirichlet") {
    d[0] = 2.0 / std::log(2.0);
    for (int n = 1; n < N; ++n) d[n] = 2.0 * n;
  } else {
    for (int m = 0; m < N; ++m) d[m] = 2.0 / (m + 1);
  }
  return MatC(d.asDiagonal());
}

struct SlopeRows {
  SlopeFit fit;
  ReportRow slope_row, r2_row;
};

SlopeRows probe_rows(const std::string& experiment, const std::string& curve,
                     double k, int N, const std::string& name, int n_min,
                     const OperatorMat& defect, double target, double window) {
  SlopeRows out;
  out.fit = order_probe(defect, n_min, N / 4, 0.0);
  bool ok = out.fit.r2 >= 0.9 && std::abs(out.fit.slope - target) <= window;
  out.slope_row = {experiment, curve, k, N, name + "-slope", out.fit.slope, target, ok};
  out.r2_row = {experiment, curve, k, N, name + "-r2", out.fit.r2, 0.9, out.fit.r2 >= 0.9};
  return out;
}

std::string fmt_g(double v) {
  char b[48];
  std::snprintf(b, sizeof b, "%.6g", v);
  return b;
}

std::string fmt_e(double v) {
  char b[48];
  std::snprintf(b, sizeof b, "%.12e", v);
  return b;
}

}  // namespace

Curve config_curve(const RunConfig& cfg) {
  if (cfg.curve_name == "segment") return make_segment();
  if (cfg.curve_name == "arc") return make_arc(cfg.opening);
  if (cfg.curve_name == "perturbed") return make_perturbed(cfg.opening, cfg.eps, cfg.freq);
  throw std::invalid_argument("config: unknown curve '" + cfg.curve_name + "'");
}

RunResult run_verify_laplace(const RunConfig& cfg) {
  auto t0 = Clock::now();
  RunResult res;
  Curve c = config_curve(cfg);
  int N = def_N(cfg, 256), M = def_M(cfg, N);
  double tol = def_tol(cfg, 1e-10), off_tol = tol / 10;

  OperatorMat S = assemble_S(c, 0.0, N, M);
  OperatorMat Nm = assemble_N(c, 0.0, N, M);

  int top = std::min(64, N - 1);
  double s_diag = 0, s_off = 0, n_diag = 0, n_off = 0;
  for (int n = 0; n <= top; ++n)
    s_diag = std::max(s_diag, std::abs(S.entries(n, n) - log_multiplier(n)) / log_multiplier(n));
  for (int m = 0; m + 1 <= std::min(64, N); ++m) {
    double ev = (m + 1) / 2.0;
    n_diag = std::max(n_diag, std::abs(Nm.entries(m, m) - ev) / ev);
  }
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) {
      if (i == j) continue;
      s_off = std::max(s_off, std::abs(S.entries(i, j)));
      n_off = std::max(n_off, std::abs(Nm.entries(i, j)));
    }

  const std::string ex = "verify-laplace";
  res.rows.push_back({ex, cfg.curve_name, 0, N, "single-layer-diag-rel-error", s_diag, tol, s_diag <= tol});
  res.rows.push_back({ex, cfg.curve_name, 0, N, "single-layer-offdiag-max", s_off, off_tol, s_off <= off_tol});
  res.rows.push_back({ex, cfg.curve_name, 0, N, "hypersingular-diag-rel-error", n_diag, tol, n_diag <= tol});
  res.rows.push_back({ex, cfg.curve_name, 0, N, "hypersingular-offdiag-max", n_off, off_tol, n_off <= off_tol});
  res.wall_time = seconds_since(t0);
  return res;
}

RunResult run_verify_orders(const RunConfig& cfg) {
  auto t0 = Clock::now();
  RunResult res;
  Curve c = config_curve(cfg);
  if (cfg.k < 0) throw std::invalid_argument("config: k must be >= 0");
  int N = def_N(cfg, 512), M = def_M(cfg, N);
  double k = cfg.k;

  OperatorMat S = assemble_S(c, k, N, M);
  OperatorMat Nm = assemble_N(c, k, N, M);
  OperatorMat D1 = build_D1(c, k, N);
  OperatorMat D2 = build_D2(c, k, N);
  OperatorMat P1 = build_P1(c, k, N);  // sqrt(D1), built at 2N and cropped
  MatC R2 = sqrt_D2_cropped(c, k, N);
  MatC I = MatC::Identity(N, N);

  const std::string ex = "verify-orders";
  int n_min = probe_start(k, c.L, N);
  auto add = [&](const std::string& name, MatC defect, Basis b, double target) {
    SlopeRows sr = probe_rows(ex, cfg.curve_name, k, N, name, n_min,
                              wrap(std::move(defect), b, k, c.id), target, 0.5);
    res.rows.push_back(sr.slope_row);
    res.rows.push_back(sr.r2_row);
  };
  add("dirichlet-composition", D1.entries * (S.entries * S.entries) - 0.25 * I, Basis::T, -4);
  add("dirichlet-sqrt", P1.entries * S.entries - 0.5 * I, Basis::T, -4);
  add("neumann-composition", Nm.entries * Nm.entries - 0.25 * D2.entries, Basis::U, -2);
  add("neumann-sqrt", Nm.entries - 0.5 * R2, Basis::U, -3);
  res.wall_time = seconds_since(t0);
  return res;
}

RunResult run_verify_symbols(const RunConfig& cfg) {
  auto t0 = Clock::now();
  RunResult res;
  const std::string ex = "verify-symbols";
  const std::string cv = "generic";

  auto C = [](long n, long d = 1) { return TrigPoly::constant(Rat(n, d)); };
  auto Ci = [](long n, long d = 1) { return TrigPoly::constant(Rat(0), Rat(n, d)); };
  TrigPoly s = TrigPoly::atom_s(), x = TrigPoly::atom_c();
  TrigPoly kk = TrigPoly::atom_k(), LL = TrigPoly::atom_L();
  TrigPoly k2L2 = kk * kk * LL * LL;

  PSymbol sS = sigma_S(8);
  PSymbol sV = sigma_V(8);
  PSymbol n1 = sym_N1(sS, 6);
  PSymbol n2 = sym_N2(sV, 6);

  auto coeff = [](const PSymbol& a, int p) {
    auto it = a.terms.find(p);
    return it == a.terms.end() ? TrigPoly{} : it->second;
  };
  auto pin = [&](const std::string& name, const PSymbol& a, int p, const TrigPoly& want) {
    bool ok = coeff(a, p) == want;
    res.rows.push_back({ex, cv, 0, 0, name, ok ? 1.0 : 0.0, 1.0, ok});
  };

  pin("single-layer-leading-term", sS, -1, C(1, 2));
  pin("single-layer-second-order-vanishes", sS, -2, TrigPoly{});
  pin("single-layer-third-order", sS, -3, C(1, 16) * k2L2 * s * s);
  pin("single-layer-fourth-order", sS, -4, Ci(3, 16) * k2L2 * s * x);
  pin("normal-dot-leading-term", sV, -1, C(1, 2));
  pin("normal-leading-term", n1, 1, C(1, 2));
  pin("normal-zeroth-order-vanishes", n1, 0, TrigPoly{});
  pin("normal-first-correction", n1, -1, C(1, 16) * k2L2 * s * s);
  pin("normal-second-correction", n1, -2, Ci(1, 16) * k2L2 * s * x);
  pin("second-kind-first-term", n2, -1, C(1, 2) * s * s);
  pin("second-kind-second-term", n2, -2, Ci(1, 2) * s * x);

  // published fifth-order coefficient: compared, never asserted
  TrigPoly kap = TrigPoly::atom_kappa(0);
  TrigPoly printed = C(1, 128) * k2L2 *
                     (C(-768) * kap * kap * LL * LL * s * s * s * s + C(112) * s * s +
                      C(3) * k2L2 * s * s * s * s + C(-48));
  TrigPoly computed = coeff(sS, -5);
  bool match = printed == computed;
  res.rows.push_back({ex, cv, 0, 0, "single-layer-fifth-order-match", match ? 1.0 : 0.0, 0.0, true});
  if (!match) {
    bool half = kappa_zero(printed) == C(2) * kappa_zero(computed);
    res.notes.push_back(std::string("fifth-order coefficient differs from the published one") +
                        (half ? "; curvature-free parts are in the exact ratio 2:1" : ""));
    res.notes.push_back("  published: " + poly_text(printed));
    res.notes.push_back("  computed:  " + poly_text(computed));
  }

  for (const auto& chk : symbolic_order_checks(6)) {
    res.rows.push_back({ex, cv, 0, 0, "order-" + chk.name, double(chk.computed),
                        double(chk.required), chk.pass});
    res.notes.push_back("order-" + chk.name + ": leading " + chk.leading);
  }
  res.wall_time = seconds_since(t0);
  return res;
}

namespace {

struct SolveSetup {
  OperatorMat A;
  VecC rhs;
  MatC P;
  bool have_P = false;
};

SolveSetup solve_setup(const Curve& c, const RunConfig& cfg, double k, int N, int M,
                       const std::string& bc, const std::string& pc,
                       const OperatorMat* pre_A, const OperatorMat* pre_P) {
  if (bc != "dirichlet" && bc != "neumann")
    throw std::invalid_argument("config: bc must be dirichlet or neumann");
  double dn = std::hypot(cfg.direction.x, cfg.direction.y);
  if (dn == 0) throw std::invalid_argument("config: direction must be nonzero");
  Vec2 dir{cfg.direction.x / dn, cfg.direction.y / dn};

  SolveSetup st;
  if (bc == "dirichlet") {
    st.A = pre_A ? *pre_A : assemble_S(c, k, N, M);
    st.rhs = rhs_dirichlet(c, k, dir, N);
  } else {
    st.A = pre_A ? *pre_A : assemble_N(c, k, N, M);
    st.rhs = rhs_neumann(c, k, dir, N);
  }
  if (pc == "none") {
  } else if (pc == "laplace-diag") {
    st.P = laplace_diag_inverse(bc, N);
    st.have_P = true;
  } else if (pc == "parametrix") {
    if (pre_P) {
      st.P = pre_P->entries;
    } else {
      st.P = bc == "dirichlet" ? build_P1(c, k, N).entries : build_P2(c, k, N).entries;
    }
    st.have_P = true;
  } else {
    throw std::invalid_argument("config: unknown preconditioner '" + pc + "'");
  }
  return st;
}

SolveReport run_gmres(const SolveSetup& st, double tol, int maxit) {
  ApplyFn apply_A = [&](const VecC& v) { return VecC(st.A.entries * v); };
  ApplyFn apply_P;
  if (st.have_P) apply_P = [&](const VecC& v) { return VecC(st.P * v); };
  return gmres(apply_A, apply_P, st.rhs, tol, maxit);
}

}  // namespace

RunResult run_solve(const RunConfig& cfg) {
  auto t0 = Clock::now();
  RunResult res;
  Curve c = config_curve(cfg);
  if (cfg.k < 0) throw std::invalid_argument("config: k must be >= 0");
  int N = def_N(cfg, 256), M = def_M(cfg, N);
  int maxit = cfg.maxit > 0 ? cfg.maxit : N;
  if (cfg.gmres_tol <= 0 || cfg.gmres_tol >= 1)
    throw std::invalid_argument("config: gmres_tol must lie in (0, 1)");

  SolveSetup st = solve_setup(c, cfg, cfg.k, N, M, cfg.bc, cfg.preconditioner, nullptr, nullptr);
  SolveReport rep = run_gmres(st, cfg.gmres_tol, maxit);

  const std::string ex = "solve";
  std::string q = cfg.bc + "-" + cfg.preconditioner;
  res.rows.push_back({ex, cfg.curve_name, cfg.k, N, q + "-iterations", double(rep.iterations),
                      double(maxit), rep.converged});
  double final_res = rep.residual_history.empty() ? 1.0 : rep.residual_history.back();
  res.rows.push_back({ex, cfg.curve_name, cfg.k, N, q + "-final-residual", final_res,
                      cfg.gmres_tol, rep.converged});
  res.notes.push_back(q + ": " + std::to_string(rep.iterations) + " iterations, " +
                      (rep.converged ? "converged" : "NOT converged") +
                      (rep.stagnated ? " (stagnation flagged)" : ""));

  if (!cfg.field_points.empty()) {
    auto u = field_eval(c, cfg.k, rep.x, cfg.field_points);
    for (size_t i = 0; i < u.size(); ++i) {
      res.rows.push_back({ex, cfg.curve_name, cfg.k, N, "field-re-" + std::to_string(i),
                          u[i].real(), 0.0, true});
      res.rows.push_back({ex, cfg.curve_name, cfg.k, N, "field-im-" + std::to_string(i),
                          u[i].imag(), 0.0, true});
    }
  }

  res.series.emplace_back("residual-history", rep.residual_history);
  std::vector<double> dre(N), dim(N);
  for (int n = 0; n < N; ++n) dre[n] = rep.x[n].real(), dim[n] = rep.x[n].imag();
  res.series.emplace_back("density-re", dre);
  res.series.emplace_back("density-im", dim);

  if (cfg.dump_matrices) {
    std::filesystem::create_directories(cfg.out_dir);
    write_matrix_csv(st.A.entries, cfg.out_dir + "/operator.csv");
    write_matrix_bin(st.A.entries, cfg.out_dir + "/operator.bin");
    if (st.have_P) {
      write_matrix_csv(st.P, cfg.out_dir + "/preconditioner.csv");
      write_matrix_bin(st.P, cfg.out_dir + "/preconditioner.bin");
    }
  }
  res.wall_time = seconds_since(t0);
  return res;
}

RunResult run_bench(const RunConfig& cfg) {
  auto t0 = Clock::now();
  RunResult res;
  Curve c = config_curve(cfg);
  if (cfg.gmres_tol <= 0 || cfg.gmres_tol >= 1)
    throw std::invalid_argument("config: gmres_tol must lie in (0, 1)");
  const double ks[] = {1, 2, 4, 8, 16};
  const int Ns[] = {128, 256, 512};
  const char* pcs[] = {"none", "laplace-diag", "parametrix"};
  const char* bcs[] = {"dirichlet", "neumann"};

  for (double k : ks) {
    for (int N : Ns) {
      int M = 4 * N;
      OperatorMat S = assemble_S(c, k, N, M);
      OperatorMat Nm = assemble_N(c, k, N, M);
      OperatorMat P1 = build_P1(c, k, N);
      OperatorMat P2 = build_P2(c, k, N);
      for (const char* bc : bcs) {
        const OperatorMat& A = bc == std::string("dirichlet") ? S : Nm;
        const OperatorMat& Pp = bc == std::string("dirichlet") ? P1 : P2;
        for (const char* pc : pcs) {
          SolveSetup st = solve_setup(c, cfg, k, N, M, bc, pc, &A, &Pp);
          SolveReport rep = run_gmres(st, cfg.gmres_tol, N);
          res.rows.push_back({"bench", cfg.curve_name, k, N,
                              std::string(bc) + "-" + pc + "-iterations",
                              double(rep.iterations), double(N), rep.converged});
        }
      }
    }
  }
  res.wall_time = seconds_since(t0);
  return res;
}

RunResult run_print_symbol(const RunConfig& cfg) {
  auto t0 = Clock::now();
  RunResult res;
  int J = std::max(cfg.order, 1);
  PSymbol sym;
  if (cfg.symbol == "S") sym = sigma_S(J);
  else if (cfg.symbol == "V") sym = sigma_V(J);
  else if (cfg.symbol == "N") sym = sigma_N(J);
  else if (cfg.symbol == "D") sym = sigma_D();
  else if (cfg.symbol == "N1") sym = sym_N1(sigma_S(J + 2), J);
  else if (cfg.symbol == "N2") sym = sym_N2(sigma_V(J + 2), J);
  else if (cfg.symbol == "sqrtD") sym = sym_sqrt(sigma_D(), J);
  else throw std::invalid_argument("config: unknown symbol '" + cfg.symbol + "'");

  res.notes.push_back("sigma_" + cfg.symbol + " = " + sym_text(sym, cfg.xland));
  SymbolPair pr = extract_pair(sym);
  res.notes.push_back("  a1 = " + sym_text(pr.a1, cfg.xland));
  res.notes.push_back("  a2 = " + sym_text(pr.a2, cfg.xland));
  res.rows.push_back({"print-symbol", "generic", 0, 0, "term-count",
                      double(sym.terms.size()), 0.0, true});
  res.wall_time = seconds_since(t0);
  return res;
}

std::string report_csv(const std::vector<ReportRow>& rows) {
  std::string out = "experiment,curve,k,N,quantity,value,threshold,pass\n";
  for (const auto& r : rows) {
    out += r.experiment + "," + r.curve + "," + fmt_g(r.k) + "," + std::to_string(r.N) +
           "," + r.quantity + "," + fmt_e(r.value) + "," + fmt_e(r.threshold) + "," +
           (r.pass ? "1" : "0") + "\n";
  }
  return out;
}

bool all_pass(const std::vector<ReportRow>& rows) {
  for (const auto& r : rows)
    if (!r.pass) return false;
  return true;
}

}  // namespace arcbie

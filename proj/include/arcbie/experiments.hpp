#pragma once
// Experiment orchestration shared by the command-line tool and the acceptance
// suite. Each run_* builds the operators for one configuration, evaluates its
// assertions, and returns uniform report rows; the CSV rendering is fixed so
// identical configurations produce byte-identical reports.

#include <string>
#include <utility>
#include <vector>

#include "arcbie/assembly.hpp"
#include "arcbie/gmres.hpp"

namespace arcbie {

struct RunConfig {
  std::string curve_name = "segment";
  double opening = 1.5707963267948966;  // arc, perturbed
  double eps = 0.1, freq = 3.0;         // perturbed
  double k = 1.0;
  int N = 0;              // 0 -> per-experiment default
  int M = 0;              // 0 -> 4N
  double tolerance = 0;   // 0 -> per-experiment default
  double gmres_tol = 1e-8;
  int maxit = 0;          // 0 -> N
  std::string bc = "dirichlet";
  Vec2 direction{1.0, 1.0};  // normalized before use
  std::string preconditioner = "parametrix";
  bool dump_matrices = false;
  std::vector<Vec2> field_points;
  std::string symbol = "S";  // print-symbol: S V N D N1 N2 sqrtD
  int order = 4;
  bool xland = false;
  std::string out_dir = "out";
};

// Builds the configured curve; throws std::invalid_argument on unknown names.
Curve config_curve(const RunConfig& cfg);

struct ReportRow {
  std::string experiment, curve;
  double k = 0;
  int N = 0;
  std::string quantity;
  double value = 0, threshold = 0;
  bool pass = true;
};

struct RunResult {
  std::vector<ReportRow> rows;
  std::vector<std::string> notes;  // human-readable lines for stdout
  std::vector<std::pair<std::string, std::vector<double>>> series;  // json only
  double wall_time = 0;  // seconds, json only
};

// First dyadic probe index: the smallest power of two that is >= 8 and
// clears the wave zone n <= 2 kappa_eff (kappa_eff = k L / 2), where the
// operators are not yet in their elliptic regime and norm decay is still
// transient. Capped so [start, N/4] keeps at least four dyadic points.
int probe_start(double k, double L, int N);

RunResult run_verify_laplace(const RunConfig& cfg);
RunResult run_verify_orders(const RunConfig& cfg);
RunResult run_verify_symbols(const RunConfig& cfg);
RunResult run_solve(const RunConfig& cfg);
RunResult run_bench(const RunConfig& cfg);
RunResult run_print_symbol(const RunConfig& cfg);

std::string report_csv(const std::vector<ReportRow>& rows);
bool all_pass(const std::vector<ReportRow>& rows);

}  // namespace arcbie

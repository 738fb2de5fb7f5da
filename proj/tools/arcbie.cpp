// arcbie: spectral boundary-integral experiments on open arcs.
//
//   arcbie <subcommand> --config <file.json> [--out <dir>]
//
// Subcommands: verify-laplace, verify-orders, verify-symbols, solve, bench,
// print-symbol. Writes <out>/report.csv (deterministic bytes) and
// <out>/report.json (adds wall time and per-run series). Exit codes:
// 0 all assertions pass, 1 some assertion failed, 2 usage or config error.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "arcbie/experiments.hpp"

using nlohmann::json;

namespace {

arcbie::Vec2 parse_vec2(const json& j, const char* what) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw std::invalid_argument(std::string("config: ") + what + " must be [x, y]");
  return {j[0].get<double>(), j[1].get<double>()};
}

arcbie::RunConfig load_config(const std::string& path, const std::string& experiment) {
  arcbie::RunConfig cfg;
  if (path.empty()) return cfg;
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("config: cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw std::invalid_argument("config: " + std::string(e.what()));
  }

  if (j.contains("experiment") && j["experiment"].get<std::string>() != experiment)
    throw std::invalid_argument("config: experiment field '" +
                                j["experiment"].get<std::string>() +
                                "' does not match subcommand '" + experiment + "'");
  if (j.contains("curve")) {
    const json& c = j["curve"];
    cfg.curve_name = c.value("name", cfg.curve_name);
    if (c.contains("params")) {
      const json& p = c["params"];
      cfg.opening = p.value("opening", cfg.opening);
      cfg.eps = p.value("eps", cfg.eps);
      cfg.freq = p.value("freq", cfg.freq);
    }
  }
  cfg.k = j.value("k", cfg.k);
  cfg.N = j.value("N", cfg.N);
  cfg.M = j.value("M", cfg.M);
  cfg.tolerance = j.value("tolerance", cfg.tolerance);
  cfg.gmres_tol = j.value("gmres_tol", cfg.gmres_tol);
  cfg.maxit = j.value("maxit", cfg.maxit);
  cfg.bc = j.value("bc", cfg.bc);
  if (j.contains("direction")) cfg.direction = parse_vec2(j["direction"], "direction");
  cfg.preconditioner = j.value("preconditioner", cfg.preconditioner);
  cfg.dump_matrices = j.value("dump_matrices", cfg.dump_matrices);
  if (j.contains("field_points")) {
    for (const auto& p : j["field_points"]) cfg.field_points.push_back(parse_vec2(p, "field point"));
  }
  cfg.symbol = j.value("symbol", cfg.symbol);
  cfg.order = j.value("order", cfg.order);
  cfg.xland = j.value("xland", cfg.xland);
  cfg.out_dir = j.value("output", cfg.out_dir);
  return cfg;
}

json config_echo(const arcbie::RunConfig& cfg) {
  json j;
  j["curve"] = {{"name", cfg.curve_name},
                {"params", {{"opening", cfg.opening}, {"eps", cfg.eps}, {"freq", cfg.freq}}}};
  j["k"] = cfg.k;
  j["N"] = cfg.N;
  j["M"] = cfg.M;
  j["tolerance"] = cfg.tolerance;
  j["gmres_tol"] = cfg.gmres_tol;
  j["maxit"] = cfg.maxit;
  j["bc"] = cfg.bc;
  j["direction"] = {cfg.direction.x, cfg.direction.y};
  j["preconditioner"] = cfg.preconditioner;
  j["symbol"] = cfg.symbol;
  j["order"] = cfg.order;
  j["output"] = cfg.out_dir;
  return j;
}

int emit(const std::string& experiment, const arcbie::RunConfig& cfg,
         const arcbie::RunResult& res) {
  std::filesystem::create_directories(cfg.out_dir);

  std::ofstream csv(cfg.out_dir + "/report.csv", std::ios::binary);
  csv << arcbie::report_csv(res.rows);
  csv.close();

  json out;
  out["experiment"] = experiment;
  out["config"] = config_echo(cfg);
  out["wall_time"] = res.wall_time;
  out["rows"] = json::array();
  for (const auto& r : res.rows) {
    out["rows"].push_back({{"experiment", r.experiment}, {"curve", r.curve}, {"k", r.k},
                           {"N", r.N}, {"quantity", r.quantity}, {"value", r.value},
                           {"threshold", r.threshold}, {"pass", r.pass}});
  }
  for (const auto& [name, data] : res.series) out["series"][name] = data;
  out["notes"] = res.notes;
  std::ofstream js(cfg.out_dir + "/report.json", std::ios::binary);
  js << out.dump(2) << "\n";
  js.close();

  for (const auto& n : res.notes) std::cout << n << "\n";
  int failed = 0;
  for (const auto& r : res.rows) {
    if (!r.pass) {
      ++failed;
      std::cout << "FAIL " << r.quantity << ": value " << r.value << " vs threshold "
                << r.threshold << "\n";
    }
  }
  std::cout << res.rows.size() << " rows, " << failed << " failed; reports in "
            << cfg.out_dir << "\n";
  return failed ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral boundary-integral experiments on open arcs"};
  app.require_subcommand(1);

  const char* names[] = {"verify-laplace", "verify-orders", "verify-symbols",
                         "solve",          "bench",         "print-symbol"};
  const char* blurbs[] = {
      "flat-arc diagonalization of the assembled operators",
      "numerical remainder-order probes for the parametrix identities",
      "exact symbol expansions and symbolic remainder orders",
      "plane-wave scattering solve with a chosen preconditioner",
      "iteration-count sweep over k, truncation, and preconditioners",
      "print a symbol expansion and its coefficient pair"};
  std::string config_path, out_override;
  std::string chosen;
  for (int i = 0; i < 6; ++i) {
    auto* sub = app.add_subcommand(names[i], blurbs[i]);
    sub->add_option("--config", config_path, "JSON configuration file");
    sub->add_option("--out", out_override, "output directory (overrides config)");
    sub->callback([&chosen, name = names[i]]() { chosen = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    arcbie::RunConfig cfg = load_config(config_path, chosen);
    if (!out_override.empty()) cfg.out_dir = out_override;
    arcbie::RunResult res;
    if (chosen == "verify-laplace") res = arcbie::run_verify_laplace(cfg);
    else if (chosen == "verify-orders") res = arcbie::run_verify_orders(cfg);
    else if (chosen == "verify-symbols") res = arcbie::run_verify_symbols(cfg);
    else if (chosen == "solve") res = arcbie::run_solve(cfg);
    else if (chosen == "bench") res = arcbie::run_bench(cfg);
    else res = arcbie::run_print_symbol(cfg);
    return emit(chosen, cfg, res);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

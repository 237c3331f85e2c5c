// Batch front end: evaluate fixed measurements, optimize over them, scan the
// tradeoff curves, reproduce the headline table, and run the Monte Carlo
// check. Every command emits a JSON run record; scans can additionally write
// CSV for external plotting.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "qlab/cli.hpp"

namespace {

void write_output(const nlohmann::json& doc, const std::string& out_path) {
  const std::string text = doc.dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot write output to '" + out_path + "'");
    out << text;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fidelity measures for finite pure-state ensembles"};
  app.require_subcommand(1);

  std::string out_path;
  std::uint64_t seed = 0;
  app.add_option("--out", out_path, "write the JSON run record here (default stdout)");
  app.add_option("--seed", seed, "seed for every random choice")
      ->envname("QLAB_SEED");

  qlab::OptimizerConfig cfg;
  const auto add_cfg = [&cfg](CLI::App* sub) {
    sub->add_option("--restarts", cfg.restarts, "random restarts");
    sub->add_option("--max-iters", cfg.max_iters, "iteration cap per restart");
    sub->add_option("--max-outcomes", cfg.max_outcomes, "outcome budget (0 = d^2)");
    sub->add_option("--rel-tol", cfg.rel_tol, "relative stall tolerance");
  };

  std::string ensemble_spec;
  std::string povm_spec = "vn";
  std::string states_spec;
  std::string quantity;
  std::string csv_path;
  double lo = 0.0;
  double hi = 1.0;
  int steps = 201;
  int mc_dim = 2;
  int mc_n = 50000;

  CLI::App* eval = app.add_subcommand("eval", "fidelity of a fixed measurement");
  eval->add_option("--ensemble", ensemble_spec, "ensemble spec or JSON path")->required();
  eval->add_option("--povm", povm_spec, "povm spec or JSON path")->required();

  CLI::App* optimize = app.add_subcommand("optimize", "accessible fidelity");
  optimize->add_option("--ensemble", ensemble_spec, "ensemble spec or JSON path")
      ->required();
  add_cfg(optimize);

  CLI::App* quant = app.add_subcommand("quantumness", "worst-prior accessible fidelity");
  quant->add_option("--states", states_spec, "state set spec (priors ignored)")->required();
  quant->add_option("--prior-grid", cfg.prior_min_grid, "coarse prior grid resolution");
  add_cfg(quant);

  CLI::App* scan = app.add_subcommand("scan", "tabulate a closed-form curve");
  scan->add_option("--quantity", quantity,
                   "t_two_state | t_trine | srm_trine | q_two_state")
      ->required();
  scan->add_option("--lo", lo, "grid start");
  scan->add_option("--hi", hi, "grid end");
  scan->add_option("--steps", steps, "grid size");
  scan->add_option("--csv", csv_path, "also write the grid as CSV here");

  app.add_subcommand("table", "recompute the headline values live");

  CLI::App* mc = app.add_subcommand("haar-mc", "Monte Carlo fidelity of a Haar sample");
  mc->add_option("--d", mc_dim, "Hilbert space dimension")->required();
  mc->add_option("--n", mc_n, "sample size");
  mc->add_option("--povm", povm_spec, "measurement spec");

  CLI11_PARSE(app, argc, argv);
  cfg.seed = seed;

  try {
    qlab::cli::RunRecord rec;
    bool checks_pass = true;
    if (app.got_subcommand("eval")) {
      rec = qlab::cli::cmd_eval(ensemble_spec, povm_spec, seed);
    } else if (app.got_subcommand("optimize")) {
      rec = qlab::cli::cmd_optimize(ensemble_spec, cfg);
    } else if (app.got_subcommand("quantumness")) {
      rec = qlab::cli::cmd_quantumness(states_spec, cfg);
    } else if (app.got_subcommand("scan")) {
      rec = qlab::cli::cmd_scan(quantity, lo, hi, steps, csv_path, seed);
    } else if (app.got_subcommand("table")) {
      rec = qlab::cli::cmd_table(seed);
      checks_pass = rec.results.at("all_pass").get<bool>();
    } else {
      rec = qlab::cli::cmd_haar_mc(mc_dim, mc_n, seed, povm_spec);
      checks_pass = rec.results.at("within_three_sigma").get<bool>();
    }
    write_output(rec.to_json(), out_path);
    return checks_pass ? 0 : 1;
  } catch (const qlab::PovmError& err) {
    write_output({{"error",
                   {{"message", err.what()},
                    {"min_eigenvalue", err.diagnostics().min_eigenvalue},
                    {"completeness_residual", err.diagnostics().completeness_residual}}}},
                 out_path);
    return 1;
  } catch (const std::exception& err) {
    write_output({{"error", {{"message", err.what()}}}}, out_path);
    return 1;
  }
}

#include <CLI11.hpp>

#include <iostream>
#include <string>

#include "curvetrends/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"common stochastic trends in large panels of curve time series"};
  app.require_subcommand(1);

  curvetrends::SimulateOptions sim;
  std::string sim_out, fit_out = ".", reg_out = ".";
  std::uint64_t seed = 0;
  int threads = 0;

  CLI::App* simulate = app.add_subcommand("simulate", "run a Monte Carlo campaign");
  simulate->add_option("--config", sim.config_path, "campaign config file")->required();
  auto* sim_out_opt = simulate->add_option("--out-dir", sim_out, "output directory");
  auto* sim_seed_opt = simulate->add_option("--seed", seed, "master seed");
  auto* sim_threads_opt = simulate->add_option("--threads", threads, "worker threads");

  curvetrends::FitOptions fit;
  CLI::App* fit_cmd = app.add_subcommand("fit", "fit estimators to a curve panel CSV");
  fit_cmd->add_option("--input", fit.input_path, "panel CSV (raw or coefficient layout)")
      ->required();
  fit_cmd->add_option("--out-dir", fit_out, "output directory");
  fit_cmd->add_option("--mode", fit.mode, "fpca | panic")->default_val("fpca");
  fit_cmd->add_option("--q", fit.q, "auto or a fixed trend count")->default_val("auto");
  fit_cmd->add_option("--basis", fit.basis_dimension, "basis dimension for raw input")
      ->default_val(51);
  fit_cmd->add_option("--min-obs", fit.min_observations,
                      "minimum observed points per period (raw input)")
      ->default_val(200);
  fit_cmd->add_option("--rank-criterion", fit.rank_criterion, "bic | hq (panic mode)")
      ->default_val("bic");
  auto* fit_seed_opt = fit_cmd->add_option("--seed", seed, "unused, accepted for uniformity");
  auto* fit_threads_opt = fit_cmd->add_option("--threads", threads, "worker threads");

  curvetrends::RegressOptions reg;
  bool no_diff = false;
  CLI::App* regress = app.add_subcommand("regress", "regress trend increments on factors");
  regress->add_option("--trends", reg.trends_path, "trend CSV from the fit command")->required();
  regress->add_option("--factors", reg.factors_path, "factor CSV aligned on period")->required();
  regress->add_option("--out-dir", reg_out, "output directory");
  regress->add_flag("--no-diff", no_diff, "regress trend levels instead of increments");
  regress->add_option("--seed", seed, "unused, accepted for uniformity");
  regress->add_option("--threads", threads, "unused, accepted for uniformity");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  if (simulate->parsed()) {
    if (*sim_out_opt) sim.out_dir = sim_out;
    if (*sim_seed_opt) sim.seed = seed;
    if (*sim_threads_opt) sim.threads = threads;
    return curvetrends::run_simulate_command(sim, std::cout);
  }
  if (fit_cmd->parsed()) {
    fit.out_dir = fit_out;
    if (*fit_seed_opt) fit.seed = seed;
    if (*fit_threads_opt) fit.threads = threads;
    return curvetrends::run_fit_command(fit, std::cout);
  }
  reg.out_dir = reg_out;
  reg.difference_trends = !no_diff;
  return curvetrends::run_regress_command(reg, std::cout);
}

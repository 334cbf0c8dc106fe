#include <iostream>

#include <CLI11.hpp>

#include "tvs/error.hpp"
#include "tvs_cli/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Regression under stochastic, Poisson-distributed time delays"};
  app.set_version_flag("--version", TVS_VERSION);
  app.require_subcommand(1);

  tvs::cli::SimulateArgs sim;
  std::uint64_t sim_seed = 0;
  auto* simulate = app.add_subcommand("simulate", "Generate a synthetic dataset");
  simulate->add_option("--config", sim.config, "Simulation config (JSON)")->required();
  simulate->add_option("--out", sim.out, "Output directory")->required();
  auto* sim_seed_opt = simulate->add_option("--seed", sim_seed, "Override the config seed");

  tvs::cli::FitArgs fit;
  std::uint64_t fit_seed = 0;
  auto* fit_cmd = app.add_subcommand("fit", "Fit the delay model and the OLS baseline");
  fit_cmd->add_option("--data", fit.data, "data.csv with header t,x,y[,shifted_effect]")->required();
  fit_cmd->add_option("--config", fit.config, "Fit config (JSON)")->required();
  fit_cmd->add_option("--out", fit.out, "Output directory")->required();
  auto* fit_seed_opt = fit_cmd->add_option("--seed", fit_seed, "Override the config seed");

  tvs::cli::CompareArgs cmp;
  auto* compare = app.add_subcommand("compare", "Score a fit against simulation truth");
  compare->add_option("--result", cmp.result, "result.json from fit")->required();
  compare->add_option("--truth", cmp.truth, "truth.json from simulate")->required();
  compare->add_option("--out", cmp.out, "Output directory")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*simulate) {
      if (*sim_seed_opt) sim.seed = sim_seed;
      tvs::cli::cmd_simulate(sim);
    } else if (*fit_cmd) {
      if (*fit_seed_opt) fit.seed = fit_seed;
      tvs::cli::cmd_fit(fit);
    } else if (*compare) {
      std::cout << tvs::cli::cmd_compare(cmp).dump(2) << "\n";
    }
  } catch (const std::exception& e) {
    std::cerr << "tvs: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

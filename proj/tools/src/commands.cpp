#include "tvs_cli/commands.hpp"

#include <chrono>
#include <cmath>
#include <iostream>

#include "tvs_cli/io.hpp"

namespace tvs::cli {
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

json manifest(const std::string& command, const json& config, const json& seeds,
              const OutputDir& dir, std::chrono::steady_clock::time_point started) {
  json artifacts = json::array();
  for (const fs::path& f : dir.files()) artifacts.push_back(f.string());
  artifacts.push_back((dir.path() / "manifest.json").string());
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return {{"command", command}, {"config", config},           {"seeds", seeds},
          {"artifacts", artifacts}, {"duration_seconds", secs}, {"version", TVS_VERSION}};
}

std::vector<int> shifts_from_json(const json& v, const char* what) {
  try {
    return v.get<std::vector<int>>();
  } catch (const json::exception& e) {
    throw Error(ErrorKind::kParse, std::string("bad shift vector in ") + what + ": " + e.what());
  }
}

}  // namespace

void cmd_simulate(const SimulateArgs& args) {
  const auto started = std::chrono::steady_clock::now();
  const json config_doc = read_json(args.config);
  SimConfig cfg = sim_config_from_json(config_doc);
  if (args.seed) cfg.rng_seed = *args.seed;

  const SimOutput sim = simulate(cfg);

  OutputDir dir(args.out);
  DataTable table;
  table.x.assign(sim.x.begin(), sim.x.end());
  table.y.assign(sim.y.begin(), sim.y.end());
  table.shifted_effect.emplace(sim.shifted_effect.begin(), sim.shifted_effect.end());
  write_data_csv(dir.file("data.csv"), table);

  const ImpulseSet imp = decompose(sim.x);
  json positions = json::array();
  for (const Impulse& i : imp) positions.push_back(i.position);
  const json truth = {{"params", to_json(sim.true_params)},
                      {"shifts", std::vector<int>(sim.true_shifts.begin(), sim.true_shifts.end())},
                      {"realized_shift_mean", sim.realized_shift_mean()},
                      {"impulse_positions", positions},
                      {"seed", cfg.rng_seed}};
  write_json(dir.file("truth.json"), truth);

  const json m = manifest("simulate", to_json(cfg), {{"simulation", cfg.rng_seed}}, dir, started);
  write_json(dir.path() / "manifest.json", m);
  dir.commit();
}

void cmd_fit(const FitArgs& args) {
  const auto started = std::chrono::steady_clock::now();
  const DataTable table = read_data_csv(args.data);
  FitSettings settings = fit_settings_from_json(read_json(args.config));
  if (args.seed) settings.fit.rng_seed = *args.seed;

  const TimeSeries x(table.x);
  const TimeSeries y(table.y);
  const ImpulseSet imp = decompose(x);
  if (imp.empty()) {
    throw Error(ErrorKind::kDegenerateInput, "x has no nonzero entries; nothing to fit");
  }
  const SparsityReport sparsity = sparsity_check(imp, settings.sparsity_threshold);
  if (sparsity.warning) {
    std::cerr << "warning: impulse density " << sparsity.density << " exceeds "
              << sparsity.threshold << "; the shift search may not reach the optimum\n";
  }

  const FitResult res = fit(x, y, settings.fit);
  const OlsResult ols = ols_fit(x, y);

  OutputDir dir(args.out);

  json tvs_doc = to_json(res.params);
  tvs_doc["shifts"] = std::vector<int>(res.shifts.begin(), res.shifts.end());
  tvs_doc["loglik"] = to_json(res.loglik);
  tvs_doc["scaled_params"] = to_json(res.scaled_params);
  const json result = {{"tvs", tvs_doc},
                       {"ols", to_json(ols)},
                       {"scaling", to_json(res.scaling)},
                       {"sparsity", to_json(sparsity)},
                       {"optimizer",
                        {{"generations", res.generations},
                         {"evaluations", res.evaluations},
                         {"converged", res.converged}}},
                       {"config", to_json(settings)}};
  write_json(dir.file("result.json"), result);

  std::string trace = "generation,best_objective\n";
  for (const TracePoint& p : res.trace) {
    trace += std::to_string(p.generation) + ',' + format_double(p.best) + '\n';
  }
  write_text(dir.file("trace.csv"), trace);

  const TimeSeries yhat = apply_shifts(imp, res.shifts, res.params);
  std::string residuals = "t,y,yhat,residual\n";
  for (std::size_t t = 0; t < y.size(); ++t) {
    residuals += std::to_string(t) + ',' + format_double(y[t]) + ',' + format_double(yhat[t]) +
                 ',' + format_double(y[t] - yhat[t]) + '\n';
  }
  write_text(dir.file("residuals.csv"), residuals);

  const json m = manifest("fit", to_json(settings),
                          {{"fit", settings.fit.rng_seed},
                           {"inner", inner_seed_for(settings.fit.rng_seed)}},
                          dir, started);
  write_json(dir.path() / "manifest.json", m);
  dir.commit();
}

double shift_recovery_rate(std::span<const int> truth, std::span<const int> estimate) {
  if (truth.size() != estimate.size()) {
    throw Error(ErrorKind::kInvalidInput, "impulse counts differ: " + std::to_string(truth.size()) +
                                              " true vs " + std::to_string(estimate.size()) +
                                              " estimated shifts");
  }
  if (truth.empty()) return 1.0;
  std::size_t hits = 0;
  for (std::size_t j = 0; j < truth.size(); ++j) hits += truth[j] == estimate[j] ? 1 : 0;
  return static_cast<double>(hits) / static_cast<double>(truth.size());
}

double beta_error_ratio(double tvs_beta, double ols_beta, double true_beta) {
  return std::abs(tvs_beta - true_beta) / std::abs(ols_beta - true_beta);
}

json compare_documents(const json& result, const json& truth) {
  ModelParams fitted;
  ModelParams actual;
  std::vector<int> est;
  std::vector<int> tru;
  double ols_beta = 0.0;
  double ols_sigma = 0.0;
  double realized_mean = 0.0;
  try {
    fitted = params_from_json(result.at("tvs"));
    actual = params_from_json(truth.at("params"));
    est = shifts_from_json(result.at("tvs").at("shifts"), "result");
    tru = shifts_from_json(truth.at("shifts"), "truth");
    ols_beta = result.at("ols").at("beta").get<double>();
    ols_sigma = result.at("ols").at("sigma").get<double>();
    realized_mean = truth.at("realized_shift_mean").get<double>();
  } catch (const json::exception& e) {
    throw Error(ErrorKind::kParse, std::string("missing field: ") + e.what());
  }

  const double rate = shift_recovery_rate(tru, est);
  std::size_t matched = 0;
  for (std::size_t j = 0; j < tru.size(); ++j) matched += tru[j] == est[j] ? 1 : 0;

  return {{"abs_error",
           {{"beta", std::abs(fitted.beta - actual.beta)},
            {"intercept", std::abs(fitted.intercept - actual.intercept)},
            {"sigma_eps", std::abs(fitted.sigma_eps - actual.sigma_eps)},
            {"lambda_tau", std::abs(fitted.lambda_tau - realized_mean)},
            {"lambda_tau_vs_generating", std::abs(fitted.lambda_tau - actual.lambda_tau)}}},
          {"ols_abs_error",
           {{"beta", std::abs(ols_beta - actual.beta)},
            {"sigma_eps", std::abs(ols_sigma - actual.sigma_eps)}}},
          {"shift_recovery_rate", rate},
          {"shifts_matched", matched},
          {"impulse_count", tru.size()},
          {"beta_error_ratio", beta_error_ratio(fitted.beta, ols_beta, actual.beta)}};
}

json cmd_compare(const CompareArgs& args) {
  const json report = compare_documents(read_json(args.result), read_json(args.truth));
  OutputDir dir(args.out);
  write_json(dir.file("compare.json"), report);
  dir.commit();
  return report;
}

}  // namespace tvs::cli

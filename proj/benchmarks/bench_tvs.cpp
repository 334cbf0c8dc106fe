#include <benchmark/benchmark.h>

#include <vector>

#include "tvs/tvs.hpp"

namespace {
using namespace tvs;

SimOutput sample(std::size_t n, std::size_t k) {
  SimConfig sc;
  sc.n = n;
  sc.k = k;
  sc.rng_seed = 42;
  return simulate(sc);
}

void BM_JointLoglik(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const SimOutput sim = sample(n, n / 20);
  const ImpulseSet imp = decompose(sim.x);
  for (auto _ : state) {
    benchmark::DoNotOptimize(joint_loglik(sim.y, imp, sim.true_shifts, sim.true_params));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_JointLoglik)->RangeMultiplier(4)->Range(100, 6400)->Complexity();

void BM_SearchShifts(benchmark::State& state) {
  const auto k = static_cast<std::size_t>(state.range(0));
  const SimOutput sim = sample(20 * k, k);
  const PreparedData data = prepare(sim.x, sim.y);
  const ModelParams p = standardize_params(sim.true_params, data.scaling);
  SearchConfig cfg = FitConfig{}.inner;
  for (auto _ : state) {
    benchmark::DoNotOptimize(search_shifts(data.y, data.impulses, p, cfg));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SearchShifts)->RangeMultiplier(2)->Range(5, 80)->Unit(benchmark::kMillisecond)->Complexity();

void BM_Objective(benchmark::State& state) {
  const SimOutput sim = sample(400, 20);
  const PreparedData data = prepare(sim.x, sim.y);
  const FitConfig cfg;
  const ModelParams p = standardize_params(sim.true_params, data.scaling);
  for (auto _ : state) benchmark::DoNotOptimize(objective(p, data, cfg));
}
BENCHMARK(BM_Objective)->Unit(benchmark::kMillisecond);

void BM_Fit(benchmark::State& state) {
  const SimOutput sim = sample(400, 20);
  FitConfig cfg;
  cfg.max_generations = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(fit(sim.x, sim.y, cfg));
}
BENCHMARK(BM_Fit)->Arg(10)->Unit(benchmark::kSecond)->Iterations(1);

}  // namespace

BENCHMARK_MAIN();

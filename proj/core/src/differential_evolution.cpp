#include "tvs/differential_evolution.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "tvs/error.hpp"

namespace tvs {

void DeSettings::validate() const {
  if (population_size < 4) {
    throw Error(ErrorKind::kConfig, "differential evolution needs a population of at least 4");
  }
  if (max_generations < 1) {
    throw Error(ErrorKind::kConfig, "max_generations must be positive");
  }
  if (!(mutation > 0.0 && mutation < 2.0)) {
    throw Error(ErrorKind::kConfig, "mutation must lie in (0, 2)");
  }
  if (!(crossover > 0.0 && crossover < 1.0)) {
    throw Error(ErrorKind::kConfig, "crossover must lie in (0, 1)");
  }
  if (!(tolerance >= 0.0)) {
    throw Error(ErrorKind::kConfig, "tolerance must be nonnegative");
  }
}

DeResult maximize_de(std::span<const Interval> bounds, const BatchObjective& objective,
                     const DeSettings& settings) {
  settings.validate();
  const std::size_t dims = bounds.size();
  const std::size_t pop = settings.population_size;
  for (const Interval& b : bounds) {
    if (!(std::isfinite(b.lower) && std::isfinite(b.upper) && b.lower < b.upper)) {
      throw Error(ErrorKind::kConfig, "bounds must be finite with lower < upper");
    }
  }

  std::mt19937_64 engine(settings.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  // Latin hypercube start: each dimension is cut into `pop` strata and every
  // stratum holds exactly one member.
  std::vector<std::vector<double>> population(pop, std::vector<double>(dims));
  for (std::size_t d = 0; d < dims; ++d) {
    std::vector<std::size_t> strata(pop);
    std::iota(strata.begin(), strata.end(), std::size_t{0});
    std::shuffle(strata.begin(), strata.end(), engine);
    for (std::size_t i = 0; i < pop; ++i) {
      const double u = (static_cast<double>(strata[i]) + unit(engine)) / static_cast<double>(pop);
      population[i][d] = std::clamp(bounds[d].lower + u * bounds[d].width(), bounds[d].lower,
                                    bounds[d].upper);
    }
  }

  DeResult result;
  std::vector<double> fitness(pop);
  objective(population, fitness);
  result.evaluations += pop;

  auto best_index = [&] {
    return static_cast<std::size_t>(std::max_element(fitness.begin(), fitness.end()) - fitness.begin());
  };
  auto converged = [&] {
    const auto [lo, hi] = std::minmax_element(fitness.begin(), fitness.end());
    const double mean = std::accumulate(fitness.begin(), fitness.end(), 0.0) / static_cast<double>(pop);
    return *hi - *lo <= settings.tolerance * std::abs(mean);
  };

  result.trace.push_back({0, fitness[best_index()]});

  std::vector<std::vector<double>> trials(pop, std::vector<double>(dims));
  std::vector<double> trial_fitness(pop);
  std::uniform_int_distribution<std::size_t> pick_member(0, pop - 1);
  std::uniform_int_distribution<std::size_t> pick_dim(0, dims - 1);

  for (int gen = 1; gen <= settings.max_generations; ++gen) {
    for (std::size_t i = 0; i < pop; ++i) {
      std::size_t r1, r2, r3;
      do { r1 = pick_member(engine); } while (r1 == i);
      do { r2 = pick_member(engine); } while (r2 == i || r2 == r1);
      do { r3 = pick_member(engine); } while (r3 == i || r3 == r1 || r3 == r2);

      const std::size_t forced = pick_dim(engine);
      for (std::size_t d = 0; d < dims; ++d) {
        if (d == forced || unit(engine) < settings.crossover) {
          double v = population[r1][d] + settings.mutation * (population[r2][d] - population[r3][d]);
          if (!bounds[d].contains(v)) v = bounds[d].lower + unit(engine) * bounds[d].width();
          trials[i][d] = v;
        } else {
          trials[i][d] = population[i][d];
        }
      }
    }

    objective(trials, trial_fitness);
    result.evaluations += pop;

    for (std::size_t i = 0; i < pop; ++i) {
      if (trial_fitness[i] >= fitness[i]) {
        population[i] = trials[i];
        fitness[i] = trial_fitness[i];
      }
    }
    result.generations = gen;
    result.trace.push_back({gen, fitness[best_index()]});
    if (converged()) {
      result.converged = true;
      break;
    }
  }

  const std::size_t best = best_index();
  result.best = population[best];
  result.best_value = fitness[best];
  return result;
}

}  // namespace tvs

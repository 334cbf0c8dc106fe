#pragma once

// Box-constrained differential evolution (rand/1/bin), maximizing.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace tvs {

struct Interval {
  double lower = 0.0;
  double upper = 1.0;

  bool contains(double v) const noexcept { return v >= lower && v <= upper; }
  double width() const noexcept { return upper - lower; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

struct DeSettings {
  std::size_t population_size = 60;
  int max_generations = 200;
  double mutation = 0.8;
  double crossover = 0.9;
  // Stop once (best - worst) <= tolerance * |mean| over the population.
  double tolerance = 1e-8;
  std::uint64_t seed = 0;

  void validate() const;
};

struct TracePoint {
  int generation = 0;
  double best = 0.0;
};

struct DeResult {
  std::vector<double> best;
  double best_value = 0.0;
  std::vector<TracePoint> trace;  // generation 0 is the initial population
  int generations = 0;
  std::size_t evaluations = 0;
  bool converged = false;
};

// Evaluates a batch of candidates; values[i] belongs to candidates[i]. Every
// candidate handed over lies inside the bounds.
using BatchObjective =
    std::function<void(std::span<const std::vector<double>> candidates, std::span<double> values)>;

// All random draws for a generation happen before its batch is evaluated, so
// the result depends only on the seed and the objective values.
DeResult maximize_de(std::span<const Interval> bounds, const BatchObjective& objective,
                     const DeSettings& settings);

}  // namespace tvs

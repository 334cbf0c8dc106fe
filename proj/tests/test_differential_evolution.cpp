#include <gtest/gtest.h>

#include <cmath>

#include "tvs/differential_evolution.hpp"
#include "tvs/error.hpp"

namespace tvs {
namespace {

BatchObjective negated_sphere(std::vector<double> centre, bool* out_of_bounds,
                              std::span<const Interval> bounds) {
  return [centre = std::move(centre), out_of_bounds, bounds](
             std::span<const std::vector<double>> cands, std::span<double> values) {
    for (std::size_t i = 0; i < cands.size(); ++i) {
      double s = 0.0;
      for (std::size_t d = 0; d < centre.size(); ++d) {
        if (!bounds[d].contains(cands[i][d])) *out_of_bounds = true;
        const double diff = cands[i][d] - centre[d];
        s += diff * diff;
      }
      values[i] = -s;
    }
  };
}

TEST(DifferentialEvolution, FindsSphereMaximum) {
  const std::vector<Interval> bounds{{-5, 5}, {-5, 5}, {0, 10}, {-1, 1}};
  bool escaped = false;
  DeSettings s;
  s.seed = 3;
  s.tolerance = 0.0;
  s.max_generations = 300;
  const DeResult r = maximize_de(bounds, negated_sphere({1.0, -2.0, 7.5, 0.25}, &escaped, bounds), s);
  EXPECT_FALSE(escaped);
  EXPECT_NEAR(r.best[0], 1.0, 1e-4);
  EXPECT_NEAR(r.best[1], -2.0, 1e-4);
  EXPECT_NEAR(r.best[2], 7.5, 1e-4);
  EXPECT_NEAR(r.best[3], 0.25, 1e-4);
  EXPECT_EQ(r.evaluations, s.population_size * static_cast<std::size_t>(r.generations + 1));
}

TEST(DifferentialEvolution, TraceIsNondecreasingAndSeeded) {
  const std::vector<Interval> bounds{{-3, 3}, {-3, 3}};
  bool escaped = false;
  // Rastrigin-like, many local optima.
  const BatchObjective f = [](std::span<const std::vector<double>> c, std::span<double> v) {
    for (std::size_t i = 0; i < c.size(); ++i) {
      double s = 20.0;
      for (double x : c[i]) s += x * x - 10.0 * std::cos(2.0 * 3.141592653589793 * x);
      v[i] = -s;
    }
  };
  DeSettings s;
  s.seed = 9;
  s.max_generations = 80;
  const DeResult a = maximize_de(bounds, f, s);
  const DeResult b = maximize_de(bounds, f, s);
  ASSERT_EQ(a.trace.size(), static_cast<std::size_t>(a.generations + 1));
  for (std::size_t i = 1; i < a.trace.size(); ++i) {
    EXPECT_GE(a.trace[i].best, a.trace[i - 1].best);
    EXPECT_EQ(a.trace[i].generation, static_cast<int>(i));
  }
  EXPECT_EQ(a.best, b.best);
  EXPECT_EQ(a.best_value, b.best_value);
  EXPECT_FALSE(escaped);
}

TEST(DifferentialEvolution, StopsWhenPopulationAgrees) {
  const std::vector<Interval> bounds{{0, 1}};
  const BatchObjective flat = [](std::span<const std::vector<double>>, std::span<double> v) {
    for (double& x : v) x = -4.0;
  };
  const DeResult r = maximize_de(bounds, flat, DeSettings{});
  EXPECT_TRUE(r.converged);
  EXPECT_EQ(r.generations, 1);
}

TEST(DifferentialEvolution, RejectsBadSettings) {
  const std::vector<Interval> bounds{{0, 1}};
  const BatchObjective f = [](std::span<const std::vector<double>>, std::span<double> v) {
    for (double& x : v) x = 0.0;
  };
  DeSettings s;
  s.population_size = 3;
  EXPECT_THROW(maximize_de(bounds, f, s), Error);
  s = DeSettings{};
  s.mutation = 2.0;
  EXPECT_THROW(maximize_de(bounds, f, s), Error);
  s = DeSettings{};
  s.crossover = 1.0;
  EXPECT_THROW(maximize_de(bounds, f, s), Error);
  const std::vector<Interval> inverted{{1, 0}};
  EXPECT_THROW(maximize_de(inverted, f, DeSettings{}), Error);
}

}  // namespace
}  // namespace tvs

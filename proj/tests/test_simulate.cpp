#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "tvs/error.hpp"
#include "tvs/simulate.hpp"

namespace tvs {
namespace {

TEST(Simulate, StructuralInvariants) {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    SimConfig cfg;
    cfg.rng_seed = seed;
    const SimOutput sim = simulate(cfg);
    const ImpulseSet imp = decompose(sim.x);
    ASSERT_EQ(imp.size(), cfg.k);
    for (std::size_t j = 1; j < imp.size(); ++j) {
      EXPECT_GE(imp[j].position - imp[j - 1].position, cfg.min_gap);
    }
    EXPECT_NO_THROW(validate_shifts(imp, sim.true_shifts));
    EXPECT_EQ(apply_shifts(imp, sim.true_shifts, sim.true_params), sim.shifted_effect);
    EXPECT_EQ(sim.x.size(), cfg.n);
    EXPECT_EQ(sim.y.size(), cfg.n);
  }
}

TEST(Simulate, NoDelayNoNoise) {
  SimConfig cfg;
  cfg.lambda = 0.0;
  cfg.sigma_eps = 0.0;
  cfg.rng_seed = 3;
  const SimOutput sim = simulate(cfg);
  for (std::size_t t = 0; t < cfg.n; ++t) {
    EXPECT_EQ(sim.y[t], sim.x[t] != 0.0 ? cfg.beta * sim.x[t] + cfg.intercept : cfg.intercept);
  }
  for (int s : sim.true_shifts) EXPECT_EQ(s, 0);
}

TEST(Simulate, DeterministicUnderSeed) {
  SimConfig cfg;
  cfg.rng_seed = 99;
  const SimOutput a = simulate(cfg);
  const SimOutput b = simulate(cfg);
  EXPECT_EQ(a.x, b.x);
  EXPECT_EQ(a.y, b.y);
  EXPECT_EQ(a.true_shifts, b.true_shifts);
  cfg.rng_seed = 100;
  EXPECT_NE(simulate(cfg).x, a.x);
}

TEST(Simulate, ShiftMomentsMatchPoisson) {
  // 5000 sparse impulses far from the boundary give 10^5 draws over 20 seeds.
  double sum = 0.0;
  std::size_t count = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    SimConfig cfg;
    cfg.n = 100000;
    cfg.k = 5000;
    cfg.min_gap = 20;
    cfg.rng_seed = seed;
    const SimOutput sim = simulate(cfg);
    for (int s : sim.true_shifts) sum += s;
    count += sim.true_shifts.size();
  }
  ASSERT_EQ(count, 100000u);
  EXPECT_NEAR(sum / static_cast<double>(count), 2.0, 0.02);
}

TEST(Simulate, NoiseScaleConcentrates) {
  SimConfig cfg;
  cfg.n = 20000;
  cfg.k = 0;
  cfg.sigma_eps = 0.2;
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    cfg.rng_seed = seed;
    const SimOutput sim = simulate(cfg);
    double ss = 0.0;
    for (std::size_t t = 0; t < cfg.n; ++t) {
      const double r = sim.y[t] - sim.shifted_effect[t];
      ss += r * r;
    }
    EXPECT_NEAR(std::sqrt(ss / static_cast<double>(cfg.n)), 0.2, 0.01);
  }
}

TEST(Simulate, BoundaryShiftsStayInside) {
  // Dense placement pushes impulses against the end of the series.
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    SimConfig cfg;
    cfg.n = 30;
    cfg.k = 10;
    cfg.min_gap = 3;
    cfg.lambda = 6.0;
    cfg.rng_seed = seed;
    const SimOutput sim = simulate(cfg);
    EXPECT_NO_THROW(validate_shifts(decompose(sim.x), sim.true_shifts));
  }
}

TEST(Simulate, EmptyAndInfeasibleConfigs) {
  SimConfig cfg;
  cfg.k = 0;
  const SimOutput sim = simulate(cfg);
  EXPECT_TRUE(decompose(sim.x).empty());
  EXPECT_EQ(sim.realized_shift_mean(), 0.0);

  cfg.k = 41;
  cfg.min_gap = 10;
  try {
    simulate(cfg);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kConfig);
  }
  cfg = SimConfig{};
  cfg.lambda = -1.0;
  EXPECT_THROW(simulate(cfg), Error);
}

}  // namespace
}  // namespace tvs

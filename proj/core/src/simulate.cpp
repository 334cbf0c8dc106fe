#include "tvs/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "tvs/error.hpp"

namespace tvs {

void SimConfig::validate() const {
  if (n == 0) throw Error(ErrorKind::kConfig, "n must be positive");
  if (min_gap < 1) throw Error(ErrorKind::kConfig, "min_gap must be at least 1");
  if (k * min_gap > n) {
    throw Error(ErrorKind::kConfig, "cannot place " + std::to_string(k) + " impulses " +
                                        std::to_string(min_gap) + " apart in " +
                                        std::to_string(n) + " samples");
  }
  if (!std::isfinite(beta) || !std::isfinite(intercept)) {
    throw Error(ErrorKind::kConfig, "beta and intercept must be finite");
  }
  if (!(sigma_eps >= 0.0) || !std::isfinite(sigma_eps)) {
    throw Error(ErrorKind::kConfig, "sigma_eps must be nonnegative");
  }
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
    throw Error(ErrorKind::kConfig, "lambda must be nonnegative");
  }
}

double SimOutput::realized_shift_mean() const {
  if (true_shifts.empty()) return 0.0;
  const double sum = std::accumulate(true_shifts.begin(), true_shifts.end(), 0.0);
  return sum / static_cast<double>(true_shifts.size());
}

SimOutput simulate(const SimConfig& cfg) {
  cfg.validate();
  std::mt19937_64 engine(cfg.rng_seed);

  // Uniform placement with gaps >= min_gap: pick k distinct slots in a
  // compressed axis, then spread them back out by (min_gap - 1) per rank.
  const std::size_t slack = cfg.k > 0 ? (cfg.k - 1) * (cfg.min_gap - 1) : 0;
  const std::size_t slots = cfg.n - slack;
  std::vector<std::size_t> axis(slots);
  std::iota(axis.begin(), axis.end(), std::size_t{0});
  std::vector<std::size_t> picked;
  picked.reserve(cfg.k);
  std::sample(axis.begin(), axis.end(), std::back_inserter(picked), cfg.k, engine);
  std::sort(picked.begin(), picked.end());

  std::normal_distribution<double> standard_normal(0.0, 1.0);
  std::vector<Impulse> impulses(cfg.k);
  for (std::size_t j = 0; j < cfg.k; ++j) {
    impulses[j].position = picked[j] + j * (cfg.min_gap - 1);
    double a = 0.0;
    do {
      a = standard_normal(engine);
    } while (std::abs(a) < 1e-9);
    impulses[j].amplitude = a;
  }
  const ImpulseSet imp(std::move(impulses), cfg.n);

  std::vector<int> shifts(cfg.k, 0);
  if (cfg.lambda > 0.0) {
    std::poisson_distribution<int> poisson(cfg.lambda);
    for (std::size_t j = 0; j < cfg.k; ++j) {
      const int cap = static_cast<int>(imp.max_shift(j));
      int s = 0;
      if (cap > 0) {
        do {
          s = poisson(engine);
        } while (s > cap);
      }
      shifts[j] = s;
    }
  }
  ShiftVector tau(std::move(shifts));

  const ModelParams truth{cfg.beta, cfg.intercept, cfg.sigma_eps, cfg.lambda};
  TimeSeries effect = apply_shifts(imp, tau, truth);

  std::vector<double> y(effect.begin(), effect.end());
  if (cfg.sigma_eps > 0.0) {
    std::normal_distribution<double> noise(0.0, cfg.sigma_eps);
    for (double& v : y) v += noise(engine);
  }

  return {imp.reconstruct(), TimeSeries(std::move(y)), std::move(tau), truth, std::move(effect)};
}

}  // namespace tvs

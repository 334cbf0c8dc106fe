#pragma once

// Synthetic datasets: sparse standard-normal impulses, Poisson delays,
// linear effect plus Gaussian noise.

#include <cstddef>
#include <cstdint>

#include "tvs/model.hpp"

namespace tvs {

struct SimConfig {
  std::size_t n = 400;
  std::size_t k = 20;
  double beta = 2.0;
  double intercept = 6.5;
  double sigma_eps = 0.2;  // 0 gives noise-free output
  double lambda = 2.0;
  std::size_t min_gap = 10;
  std::uint64_t rng_seed = 0;

  void validate() const;
};

struct SimOutput {
  TimeSeries x;
  TimeSeries y;
  ShiftVector true_shifts;
  // sigma_eps may be 0 here when the config asked for noise-free output.
  ModelParams true_params;
  TimeSeries shifted_effect;

  double realized_shift_mean() const;
};

SimOutput simulate(const SimConfig& cfg);

}  // namespace tvs

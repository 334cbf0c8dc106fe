#pragma once

// Maximum-likelihood fit of (beta, intercept, sigma_eps, lambda_tau) by
// differential evolution, with the delays profiled out by the inner search.

#include <array>
#include <cstdint>
#include <vector>

#include "tvs/differential_evolution.hpp"
#include "tvs/inner_search.hpp"
#include "tvs/likelihood.hpp"
#include "tvs/model.hpp"

namespace tvs {

// Constants of the affine map into the standardized space:
//   x_s = x / x_scale,  y_s = (y - y_min) / y_range.
struct ScalingRecord {
  double x_scale = 1.0;
  double y_min = 0.0;
  double y_range = 1.0;

  friend bool operator==(const ScalingRecord&, const ScalingRecord&) = default;
};

struct Standardized {
  TimeSeries x;
  TimeSeries y;
  ScalingRecord scaling;
};

// y is min-max mapped onto [0, 1]; x is divided by its largest absolute
// amplitude so zeros stay exact zeros and the impulse support is unchanged.
Standardized standardize(const TimeSeries& x, const TimeSeries& y);

struct Destandardized {
  TimeSeries x;
  TimeSeries y;
};
Destandardized destandardize(const TimeSeries& x_scaled, const TimeSeries& y_scaled,
                             const ScalingRecord& scaling);

ModelParams destandardize_params(const ModelParams& scaled, const ScalingRecord& scaling);
ModelParams standardize_params(const ModelParams& original, const ScalingRecord& scaling);

// Bounds live in the standardized space.
struct ParamBounds {
  Interval beta{-10.0, 10.0};
  Interval intercept{-1.0, 2.0};
  Interval sigma_eps{1e-4, 1.0};
  Interval lambda_tau{0.0, 10.0};

  std::array<Interval, 4> as_array() const { return {beta, intercept, sigma_eps, lambda_tau}; }
  bool contains(const ModelParams& p) const;
  void validate() const;
};

struct FitConfig {
  ParamBounds bounds;
  std::size_t population_size = 15 * 4;
  int max_generations = 200;
  double mutation = 0.8;
  double crossover = 0.9;
  double tolerance = 1e-8;
  SearchConfig inner = default_inner();
  std::uint64_t rng_seed = 0;
  // 0 means default_thread_count().
  unsigned threads = 0;

  // Inner settings with tau_max taken from the default lambda upper bound.
  static SearchConfig default_inner();
  void validate() const;
};

// Standardized data shared by every objective evaluation of one fit.
struct PreparedData {
  TimeSeries y;
  ImpulseSet impulses;
  ScalingRecord scaling;
};

PreparedData prepare(const TimeSeries& x, const TimeSeries& y);

// Inner-search seed used by every evaluation of a fit (common random numbers).
std::uint64_t inner_seed_for(std::uint64_t fit_seed);

ModelParams params_from_vector(std::span<const double> theta);
std::array<double, 4> params_to_vector(const ModelParams& p);

// Profiled joint log-likelihood at theta (standardized space). Deterministic
// in theta for a fixed cfg.rng_seed. Throws if theta lies outside the bounds.
double objective(const ModelParams& theta, const PreparedData& data, const FitConfig& cfg);

struct FitResult {
  ModelParams params;         // original scale
  ModelParams scaled_params;  // as found by the optimizer
  ShiftVector shifts;
  JointLogLik loglik;         // original scale, at params and shifts
  std::vector<TracePoint> trace;  // best standardized objective per generation
  ScalingRecord scaling;
  int generations = 0;
  std::size_t evaluations = 0;
  bool converged = false;
};

FitResult fit(const TimeSeries& x, const TimeSeries& y, const FitConfig& cfg);

}  // namespace tvs

#include "tvs/outer_fit.hpp"

#include <algorithm>
#include <cmath>

#include "tvs/error.hpp"
#include "tvs/parallel.hpp"

namespace tvs {
namespace {

std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

void check_interval(const Interval& iv, const char* name) {
  if (!(std::isfinite(iv.lower) && std::isfinite(iv.upper) && iv.lower < iv.upper)) {
    throw Error(ErrorKind::kConfig, std::string(name) + " bounds must be finite with lower < upper");
  }
}

}  // namespace

Standardized standardize(const TimeSeries& x, const TimeSeries& y) {
  if (x.size() != y.size()) {
    throw Error(ErrorKind::kInvalidInput, "x and y differ in length");
  }
  const auto [ylo, yhi] = std::minmax_element(y.begin(), y.end());
  if (!(*yhi > *ylo)) {
    throw Error(ErrorKind::kDegenerateInput, "y is constant");
  }
  double peak = 0.0;
  for (double v : x) peak = std::max(peak, std::abs(v));
  if (peak == 0.0) {
    throw Error(ErrorKind::kDegenerateInput, "x has no nonzero entries");
  }

  ScalingRecord rec{peak, *ylo, *yhi - *ylo};
  std::vector<double> xs(x.size());
  std::vector<double> ys(y.size());
  for (std::size_t t = 0; t < x.size(); ++t) {
    xs[t] = x[t] / rec.x_scale;
    ys[t] = (y[t] - rec.y_min) / rec.y_range;
  }
  return {TimeSeries(std::move(xs)), TimeSeries(std::move(ys)), rec};
}

Destandardized destandardize(const TimeSeries& x_scaled, const TimeSeries& y_scaled,
                             const ScalingRecord& scaling) {
  std::vector<double> xs(x_scaled.size());
  std::vector<double> ys(y_scaled.size());
  for (std::size_t t = 0; t < xs.size(); ++t) xs[t] = x_scaled[t] * scaling.x_scale;
  for (std::size_t t = 0; t < ys.size(); ++t) ys[t] = y_scaled[t] * scaling.y_range + scaling.y_min;
  return {TimeSeries(std::move(xs)), TimeSeries(std::move(ys))};
}

ModelParams destandardize_params(const ModelParams& scaled, const ScalingRecord& s) {
  return {scaled.beta * s.y_range / s.x_scale, scaled.intercept * s.y_range + s.y_min,
          scaled.sigma_eps * s.y_range, scaled.lambda_tau};
}

ModelParams standardize_params(const ModelParams& original, const ScalingRecord& s) {
  return {original.beta * s.x_scale / s.y_range, (original.intercept - s.y_min) / s.y_range,
          original.sigma_eps / s.y_range, original.lambda_tau};
}

bool ParamBounds::contains(const ModelParams& p) const {
  return beta.contains(p.beta) && intercept.contains(p.intercept) &&
         sigma_eps.contains(p.sigma_eps) && lambda_tau.contains(p.lambda_tau);
}

void ParamBounds::validate() const {
  check_interval(beta, "beta");
  check_interval(intercept, "intercept");
  check_interval(sigma_eps, "sigma_eps");
  check_interval(lambda_tau, "lambda_tau");
  if (!(sigma_eps.lower > 0.0)) {
    throw Error(ErrorKind::kConfig, "sigma_eps lower bound must be positive");
  }
  if (!(lambda_tau.lower >= 0.0)) {
    throw Error(ErrorKind::kConfig, "lambda_tau lower bound must be nonnegative");
  }
}

SearchConfig FitConfig::default_inner() {
  SearchConfig inner;
  inner.tau_max = default_tau_max(ParamBounds{}.lambda_tau.upper);
  return inner;
}

void FitConfig::validate() const {
  bounds.validate();
  inner.validate();
  DeSettings{population_size, max_generations, mutation, crossover, tolerance, rng_seed}.validate();
}

PreparedData prepare(const TimeSeries& x, const TimeSeries& y) {
  Standardized s = standardize(x, y);
  ImpulseSet imp = decompose(s.x);
  return {std::move(s.y), std::move(imp), s.scaling};
}

std::uint64_t inner_seed_for(std::uint64_t fit_seed) { return splitmix64(fit_seed ^ 0x5eedULL); }

ModelParams params_from_vector(std::span<const double> theta) {
  return {theta[0], theta[1], theta[2], theta[3]};
}

std::array<double, 4> params_to_vector(const ModelParams& p) {
  return {p.beta, p.intercept, p.sigma_eps, p.lambda_tau};
}

double objective(const ModelParams& theta, const PreparedData& data, const FitConfig& cfg) {
  if (!cfg.bounds.contains(theta)) {
    throw Error(ErrorKind::kInvalidParameter, "candidate parameters lie outside the search bounds");
  }
  SearchConfig inner = cfg.inner;
  inner.rng_seed = inner_seed_for(cfg.rng_seed);
  inner.record_trace = false;
  return search_shifts(data.y, data.impulses, theta, inner).loglik.total;
}

FitResult fit(const TimeSeries& x, const TimeSeries& y, const FitConfig& cfg) {
  cfg.validate();
  if (x.size() != y.size()) {
    throw Error(ErrorKind::kInvalidInput, "x and y differ in length");
  }
  const PreparedData data = prepare(x, y);
  const unsigned threads = cfg.threads > 0 ? cfg.threads : default_thread_count();

  const std::array<Interval, 4> bounds = cfg.bounds.as_array();
  const BatchObjective batch = [&](std::span<const std::vector<double>> candidates,
                                   std::span<double> values) {
    parallel_for(candidates.size(), threads, [&](std::size_t i) {
      values[i] = objective(params_from_vector(candidates[i]), data, cfg);
    });
  };

  DeSettings de{cfg.population_size, cfg.max_generations, cfg.mutation, cfg.crossover,
                cfg.tolerance, splitmix64(cfg.rng_seed)};
  DeResult de_result = maximize_de(bounds, batch, de);

  FitResult result;
  result.scaled_params = params_from_vector(de_result.best);
  result.params = destandardize_params(result.scaled_params, data.scaling);
  result.scaling = data.scaling;
  result.trace = std::move(de_result.trace);
  result.generations = de_result.generations;
  result.evaluations = de_result.evaluations;
  result.converged = de_result.converged;

  // Report shifts from a longer search on the same random stream, so it can
  // only improve on what the optimizer saw at this point.
  SearchConfig final_inner = cfg.inner;
  final_inner.rng_seed = inner_seed_for(cfg.rng_seed);
  final_inner.record_trace = false;
  if (final_inner.n_iters) {
    final_inner.n_iters = *final_inner.n_iters * 2;
  } else {
    final_inner.iters_per_impulse *= 2;
  }
  result.shifts = search_shifts(data.y, data.impulses, result.scaled_params, final_inner, threads).shifts;
  result.loglik = joint_loglik(y, decompose(x), result.shifts, result.params);
  return result;
}

}  // namespace tvs

#include "tvs/likelihood.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "tvs/error.hpp"

namespace tvs {

double log_add_terms(double a, double b) noexcept {
  if (a == kLogZero || b == kLogZero) return kLogZero;
  const double s = a + b;
  return s < kLogZero ? kLogZero : s;
}

double gaussian_loglik(std::span<const double> y, std::span<const double> yhat, double sigma_eps) {
  if (y.size() != yhat.size()) {
    throw Error(ErrorKind::kInvalidInput, "observed and predicted series differ in length");
  }
  if (!(sigma_eps > 0.0) || !std::isfinite(sigma_eps)) {
    throw Error(ErrorKind::kInvalidParameter, "sigma_eps must be positive");
  }
  double sse = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double r = y[i] - yhat[i];
    sse += r * r;
  }
  const double n = static_cast<double>(y.size());
  const double var = sigma_eps * sigma_eps;
  return -0.5 * n * std::log(2.0 * std::numbers::pi * var) - sse / (2.0 * var);
}

double gaussian_loglik(const TimeSeries& y, const TimeSeries& yhat, double sigma_eps) {
  return gaussian_loglik(y.values(), yhat.values(), sigma_eps);
}

double poisson_log_pmf(int tau, double lambda) {
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
    throw Error(ErrorKind::kInvalidParameter, "lambda_tau must be nonnegative");
  }
  if (tau < 0) return kLogZero;
  if (lambda == 0.0) return tau == 0 ? 0.0 : kLogZero;
  const double k = static_cast<double>(tau);
  return k * std::log(lambda) - lambda - std::lgamma(k + 1.0);
}

double poisson_loglik(const ShiftVector& tau, double lambda_tau) {
  if (!(lambda_tau >= 0.0) || !std::isfinite(lambda_tau)) {
    throw Error(ErrorKind::kInvalidParameter, "lambda_tau must be nonnegative");
  }
  double total = 0.0;
  for (int t : tau) {
    total = log_add_terms(total, poisson_log_pmf(t, lambda_tau));
    if (total == kLogZero) break;
  }
  return total;
}

std::vector<double> poisson_log_pmf_table(double lambda, int tau_max) {
  std::vector<double> table(static_cast<std::size_t>(tau_max) + 1);
  for (int t = 0; t <= tau_max; ++t) table[static_cast<std::size_t>(t)] = poisson_log_pmf(t, lambda);
  return table;
}

JointLogLik joint_loglik(const TimeSeries& y, const ImpulseSet& imp, const ShiftVector& tau,
                         const ModelParams& params) {
  params.validate();
  if (y.size() != imp.source_length()) {
    throw Error(ErrorKind::kInvalidInput, "output length does not match the input series");
  }
  const TimeSeries yhat = apply_shifts(imp, tau, params);
  return JointLogLik::from_terms(gaussian_loglik(y, yhat, params.sigma_eps),
                                 poisson_loglik(tau, params.lambda_tau));
}

}  // namespace tvs

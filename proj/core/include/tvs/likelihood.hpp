#pragma once

#include <limits>
#include <span>
#include <vector>

#include "tvs/model.hpp"

namespace tvs {

// Stand-in for log(0). Finite so that comparisons stay total and sums stay
// ordered; any sum involving it is clamped back to it.
inline constexpr double kLogZero = std::numeric_limits<double>::lowest();

// a + b with kLogZero absorbing.
double log_add_terms(double a, double b) noexcept;

struct JointLogLik {
  double l1 = 0.0;  // residual term
  double l2 = 0.0;  // shift term
  double total = 0.0;

  static JointLogLik from_terms(double residual_term, double shift_term) noexcept {
    return {residual_term, shift_term, log_add_terms(residual_term, shift_term)};
  }
};

double gaussian_loglik(std::span<const double> y, std::span<const double> yhat, double sigma_eps);
double gaussian_loglik(const TimeSeries& y, const TimeSeries& yhat, double sigma_eps);

// log P(tau | lambda) for a single delay.
double poisson_log_pmf(int tau, double lambda);

double poisson_loglik(const ShiftVector& tau, double lambda_tau);

// log-pmf values for tau = 0..tau_max.
std::vector<double> poisson_log_pmf_table(double lambda, int tau_max);

JointLogLik joint_loglik(const TimeSeries& y, const ImpulseSet& imp, const ShiftVector& tau,
                         const ModelParams& params);

}  // namespace tvs

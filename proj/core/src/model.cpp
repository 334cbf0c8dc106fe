#include "tvs/model.hpp"

#include <cmath>
#include <string>

#include "tvs/error.hpp"

namespace tvs {

TimeSeries::TimeSeries(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) {
    throw Error(ErrorKind::kInvalidInput, "time series must have at least one sample");
  }
  for (std::size_t t = 0; t < values_.size(); ++t) {
    if (!std::isfinite(values_[t])) {
      throw Error(ErrorKind::kInvalidInput,
                  "non-finite value at t=" + std::to_string(t));
    }
  }
}

TimeSeries::TimeSeries(std::initializer_list<double> values)
    : TimeSeries(std::vector<double>(values)) {}

ImpulseSet::ImpulseSet(std::vector<Impulse> impulses, std::size_t source_length)
    : impulses_(std::move(impulses)), source_length_(source_length) {
  if (source_length_ == 0) {
    throw Error(ErrorKind::kInvalidInput, "impulse set needs a nonempty source series");
  }
  for (std::size_t j = 0; j < impulses_.size(); ++j) {
    const Impulse& imp = impulses_[j];
    if (imp.position >= source_length_) {
      throw Error(ErrorKind::kInvalidInput,
                  "impulse " + std::to_string(j) + " lies outside the series");
    }
    if (j > 0 && imp.position <= impulses_[j - 1].position) {
      throw Error(ErrorKind::kInvalidInput, "impulse positions must be strictly increasing");
    }
    if (imp.amplitude == 0.0 || !std::isfinite(imp.amplitude)) {
      throw Error(ErrorKind::kInvalidInput,
                  "impulse " + std::to_string(j) + " needs a finite nonzero amplitude");
    }
  }
}

TimeSeries ImpulseSet::reconstruct() const {
  std::vector<double> out(source_length_, 0.0);
  for (const Impulse& imp : impulses_) out[imp.position] = imp.amplitude;
  return TimeSeries(std::move(out));
}

ShiftVector::ShiftVector(std::vector<int> shifts) : shifts_(std::move(shifts)) {
  for (std::size_t j = 0; j < shifts_.size(); ++j) {
    if (shifts_[j] < 0) {
      throw Error(ErrorKind::kShiftOutOfRange,
                  "negative shift for impulse " + std::to_string(j));
    }
  }
}

ShiftVector::ShiftVector(std::initializer_list<int> shifts)
    : ShiftVector(std::vector<int>(shifts)) {}

void validate_shifts(const ImpulseSet& imp, const ShiftVector& tau) {
  if (tau.size() != imp.size()) {
    throw Error(ErrorKind::kShiftOutOfRange,
                "expected " + std::to_string(imp.size()) + " shifts, got " +
                    std::to_string(tau.size()));
  }
  for (std::size_t j = 0; j < imp.size(); ++j) {
    if (static_cast<std::size_t>(tau[j]) > imp.max_shift(j)) {
      throw Error(ErrorKind::kShiftOutOfRange,
                  "shift " + std::to_string(tau[j]) + " moves impulse " + std::to_string(j) +
                      " past the end of the series");
    }
  }
}

void ModelParams::validate() const {
  if (!std::isfinite(beta) || !std::isfinite(intercept)) {
    throw Error(ErrorKind::kInvalidParameter, "beta and intercept must be finite");
  }
  if (!(sigma_eps > 0.0) || !std::isfinite(sigma_eps)) {
    throw Error(ErrorKind::kInvalidParameter, "sigma_eps must be positive and finite");
  }
  if (!(lambda_tau >= 0.0) || !std::isfinite(lambda_tau)) {
    throw Error(ErrorKind::kInvalidParameter, "lambda_tau must be nonnegative and finite");
  }
}

ImpulseSet decompose(const TimeSeries& x) {
  std::vector<Impulse> impulses;
  for (std::size_t t = 0; t < x.size(); ++t) {
    if (x[t] != 0.0) impulses.push_back({t, x[t]});
  }
  return ImpulseSet(std::move(impulses), x.size());
}

std::vector<double> shifted_superposition(const ImpulseSet& imp, const ShiftVector& tau) {
  validate_shifts(imp, tau);
  std::vector<double> u(imp.source_length(), 0.0);
  for (std::size_t j = 0; j < imp.size(); ++j) {
    u[imp[j].position + static_cast<std::size_t>(tau[j])] += imp[j].amplitude;
  }
  return u;
}

TimeSeries apply_shifts(const ImpulseSet& imp, const ShiftVector& tau, const ModelParams& params) {
  std::vector<double> u = shifted_superposition(imp, tau);
  for (double& v : u) v = params.beta * v + params.intercept;
  return TimeSeries(std::move(u));
}

SparsityReport sparsity_check(const ImpulseSet& imp, double threshold) {
  SparsityReport report;
  report.impulse_count = imp.size();
  report.length = imp.source_length();
  report.density = static_cast<double>(imp.size()) / static_cast<double>(imp.source_length());
  report.threshold = threshold;
  report.warning = report.density > threshold;
  return report;
}

}  // namespace tvs

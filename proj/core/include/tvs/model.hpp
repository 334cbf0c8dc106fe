#pragma once

// Domain types and the shift-and-sum forward model.

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace tvs {

// Uniformly sampled real-valued sequence indexed t = 0..n-1. Never empty,
// never holds a non-finite value.
class TimeSeries {
 public:
  explicit TimeSeries(std::vector<double> values);
  TimeSeries(std::initializer_list<double> values);

  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t t) const noexcept { return values_[t]; }
  std::span<const double> values() const noexcept { return values_; }
  auto begin() const noexcept { return values_.begin(); }
  auto end() const noexcept { return values_.end(); }

  friend bool operator==(const TimeSeries&, const TimeSeries&) = default;

 private:
  std::vector<double> values_;
};

struct Impulse {
  std::size_t position = 0;
  double amplitude = 0.0;

  friend bool operator==(const Impulse&, const Impulse&) = default;
};

// Nonzero support of an input series: one row of X(t) per impulse.
// Positions are strictly increasing and lie in [0, source_length).
class ImpulseSet {
 public:
  ImpulseSet(std::vector<Impulse> impulses, std::size_t source_length);

  std::size_t size() const noexcept { return impulses_.size(); }
  bool empty() const noexcept { return impulses_.empty(); }
  std::size_t source_length() const noexcept { return source_length_; }
  const Impulse& operator[](std::size_t j) const noexcept { return impulses_[j]; }
  std::span<const Impulse> impulses() const noexcept { return impulses_; }
  auto begin() const noexcept { return impulses_.begin(); }
  auto end() const noexcept { return impulses_.end(); }

  // Largest shift impulse j may take without leaving the series.
  std::size_t max_shift(std::size_t j) const noexcept {
    return source_length_ - 1 - impulses_[j].position;
  }

  // Places the amplitudes back at their positions, zeros elsewhere.
  TimeSeries reconstruct() const;

  friend bool operator==(const ImpulseSet&, const ImpulseSet&) = default;

 private:
  std::vector<Impulse> impulses_;
  std::size_t source_length_;
};

// One nonnegative delay per impulse, in ImpulseSet order.
class ShiftVector {
 public:
  ShiftVector() = default;
  explicit ShiftVector(std::vector<int> shifts);
  ShiftVector(std::initializer_list<int> shifts);

  std::size_t size() const noexcept { return shifts_.size(); }
  bool empty() const noexcept { return shifts_.empty(); }
  int operator[](std::size_t j) const noexcept { return shifts_[j]; }
  std::span<const int> values() const noexcept { return shifts_; }
  auto begin() const noexcept { return shifts_.begin(); }
  auto end() const noexcept { return shifts_.end(); }

  friend bool operator==(const ShiftVector&, const ShiftVector&) = default;
  friend auto operator<=>(const ShiftVector&, const ShiftVector&) = default;

 private:
  std::vector<int> shifts_;
};

// Throws Error(kShiftOutOfRange) unless tau has one entry per impulse and
// every shifted position stays inside the series.
void validate_shifts(const ImpulseSet& imp, const ShiftVector& tau);

// Linear-Gaussian model with Poisson delays: f(u) = beta * u + intercept,
// residuals N(0, sigma_eps), delays Poisson(lambda_tau).
struct ModelParams {
  double beta = 0.0;
  double intercept = 0.0;
  double sigma_eps = 1.0;
  double lambda_tau = 0.0;

  // Throws Error(kInvalidParameter) when sigma_eps <= 0, lambda_tau < 0 or
  // any field is non-finite.
  void validate() const;

  friend bool operator==(const ModelParams&, const ModelParams&) = default;
};

ImpulseSet decompose(const TimeSeries& x);

// u(t) = sum_j amplitude_j * [t == position_j + tau_j], i.e. 1^T X(t + T).
std::vector<double> shifted_superposition(const ImpulseSet& imp, const ShiftVector& tau);

// yhat(t) = beta * u(t) + intercept. Colliding impulses add before f applies.
TimeSeries apply_shifts(const ImpulseSet& imp, const ShiftVector& tau, const ModelParams& params);

inline constexpr double kDefaultSparsityThreshold = 0.2;

struct SparsityReport {
  std::size_t impulse_count = 0;
  std::size_t length = 0;
  double density = 0.0;
  double threshold = kDefaultSparsityThreshold;
  bool warning = false;
};

SparsityReport sparsity_check(const ImpulseSet& imp,
                              double threshold = kDefaultSparsityThreshold);

}  // namespace tvs

#include "tvs/baseline_ols.hpp"

#include <algorithm>
#include <cmath>

#include "tvs/error.hpp"

namespace tvs {

OlsResult ols_fit(const TimeSeries& x, const TimeSeries& y) {
  const std::size_t n = x.size();
  if (y.size() != n) {
    throw Error(ErrorKind::kInvalidInput, "x and y differ in length");
  }
  if (n < 2) {
    throw Error(ErrorKind::kInvalidInput, "regression needs at least two points");
  }

  double x_mean = 0.0;
  double y_mean = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    x_mean += x[i];
    y_mean += y[i];
  }
  x_mean /= static_cast<double>(n);
  y_mean /= static_cast<double>(n);

  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = x[i] - x_mean;
    const double dy = y[i] - y_mean;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (sxx == 0.0) {
    throw Error(ErrorKind::kDegenerateInput, "x is constant");
  }

  OlsResult out;
  out.beta = sxy / sxx;
  out.intercept = y_mean - out.beta * x_mean;

  double sse = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = y[i] - (out.intercept + out.beta * x[i]);
    sse += r * r;
  }
  out.sigma = n > 2 ? std::sqrt(sse / static_cast<double>(n - 2)) : 0.0;
  out.r_squared = syy > 0.0 ? std::clamp(1.0 - sse / syy, 0.0, 1.0) : 0.0;
  return out;
}

}  // namespace tvs

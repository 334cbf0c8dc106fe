#pragma once

#include "tvs/model.hpp"

namespace tvs {

struct OlsResult {
  double beta = 0.0;
  double intercept = 0.0;
  double sigma = 0.0;  // residual std, n - 2 denominator
  double r_squared = 0.0;
};

// Simple regression of y on the observed, unshifted x.
OlsResult ols_fit(const TimeSeries& x, const TimeSeries& y);

}  // namespace tvs

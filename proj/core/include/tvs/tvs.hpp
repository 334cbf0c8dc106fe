#pragma once

#include "tvs/baseline_ols.hpp"
#include "tvs/differential_evolution.hpp"
#include "tvs/error.hpp"
#include "tvs/inner_search.hpp"
#include "tvs/likelihood.hpp"
#include "tvs/model.hpp"
#include "tvs/outer_fit.hpp"
#include "tvs/parallel.hpp"
#include "tvs/simulate.hpp"

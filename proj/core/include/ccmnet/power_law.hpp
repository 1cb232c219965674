#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "ccmnet/histogram.hpp"

namespace ccmnet {

// Least-squares straight line y = slope * x + intercept.
struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_stderr = 0.0;
  double r_squared = 0.0;
  std::size_t n_points = 0;
};

LinearFit linear_fit(const std::vector<double>& xs, const std::vector<double>& ys);

struct PowerLawFit {
  double exponent = 0.0;  // negated log-log slope
  double stderr_ = 0.0;
  double fit_low = 0.0;
  double fit_high = 0.0;
  double r_squared = 0.0;
  std::size_t n_bins = 0;
};

// Straight-line fit on (log bin-center, log density) over occupied bins whose
// centers lie in [low, high]. Needs at least 4 occupied bins.
PowerLawFit fit_power_law(const Histogram& hist, double low, double high);

// Default window: drop the lowest half-decade of support and the top
// half-decade below the maximum sample (the cutoff hump).
std::pair<double, double> default_fit_range(const Histogram& hist);

}  // namespace ccmnet

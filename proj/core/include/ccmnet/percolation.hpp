#pragma once

#include <map>
#include <utility>
#include <vector>

namespace ccmnet {

struct PercolationCurve {
  std::vector<std::pair<double, double>> points;  // (rho, mean giant fraction)
};

// Link density of the first upward crossing of mean giant fraction 1/2,
// linearly interpolated between the bracketing points.
double percolation_threshold(const std::vector<std::pair<double, double>>& points);

struct ThetaFit {
  double theta = 0.0;
  double stderr_ = 0.0;
};

// Negated log-log slope of rho_c versus N; needs >= 3 sizes.
ThetaFit fit_theta(const std::map<int, double>& thresholds_by_n);

}  // namespace ccmnet

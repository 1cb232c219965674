#include "ccmnet/percolation.hpp"

#include <cmath>

#include "ccmnet/errors.hpp"
#include "ccmnet/power_law.hpp"

namespace ccmnet {

double percolation_threshold(
    const std::vector<std::pair<double, double>>& points) {
  const double half = 0.5;
  // Already percolated at the first recorded density: the crossing happened
  // before the first checkpoint, so that checkpoint is the best estimate.
  if (!points.empty() && points.front().second >= half)
    return points.front().first;
  for (std::size_t k = 0; k < points.size(); ++k) {
    if (points[k].second == half) return points[k].first;
    if (k > 0 && points[k - 1].second < half && points[k].second > half) {
      auto [r0, s0] = points[k - 1];
      auto [r1, s1] = points[k];
      return r0 + (r1 - r0) * (half - s0) / (s1 - s0);
    }
  }
  throw NotBracketedError("giant-component curve never crosses 1/2");
}

ThetaFit fit_theta(const std::map<int, double>& thresholds_by_n) {
  if (thresholds_by_n.size() < 3)
    throw InsufficientDataError("theta fit needs >= 3 system sizes");
  std::vector<double> xs, ys;
  for (const auto& [n, rho_c] : thresholds_by_n) {
    xs.push_back(std::log10(static_cast<double>(n)));
    ys.push_back(std::log10(rho_c));
  }
  LinearFit line = linear_fit(xs, ys);
  return ThetaFit{-line.slope, line.slope_stderr};
}

}  // namespace ccmnet

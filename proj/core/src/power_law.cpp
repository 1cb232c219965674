#include "ccmnet/power_law.hpp"

#include <cmath>
#include <stdexcept>

#include "ccmnet/errors.hpp"

namespace ccmnet {

LinearFit linear_fit(const std::vector<double>& xs,
                     const std::vector<double>& ys) {
  std::size_t n = xs.size();
  if (n != ys.size()) throw std::invalid_argument("mismatched fit inputs");
  // Three points minimum so the residual-based slope error is defined.
  if (n < 3) throw InsufficientDataError("linear fit needs >= 3 points");
  double sx = 0, sy = 0;
  for (std::size_t k = 0; k < n; ++k) {
    sx += xs[k];
    sy += ys[k];
  }
  double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t k = 0; k < n; ++k) {
    double dx = xs[k] - mx, dy = ys[k] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (sxx == 0.0) throw InsufficientDataError("degenerate abscissa in fit");
  LinearFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.n_points = n;
  double ss_res = syy - fit.slope * sxy;
  if (ss_res < 0.0) ss_res = 0.0;
  fit.r_squared = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
  if (n > 2) fit.slope_stderr = std::sqrt(ss_res / ((n - 2) * sxx));
  return fit;
}

PowerLawFit fit_power_law(const Histogram& hist, double low, double high) {
  std::vector<double> xs, ys;
  for (std::size_t b = 0; b < hist.n_bins(); ++b) {
    if (hist.counts[b] == 0) continue;
    double c = hist.center(b);
    if (c < low || c > high) continue;
    xs.push_back(std::log10(c));
    ys.push_back(std::log10(hist.density[b]));
  }
  if (xs.size() < 4)
    throw InsufficientDataError("power-law fit needs >= 4 occupied bins in range");
  LinearFit line = linear_fit(xs, ys);
  PowerLawFit fit;
  fit.exponent = -line.slope;
  fit.stderr_ = line.slope_stderr;
  fit.fit_low = low;
  fit.fit_high = high;
  fit.r_squared = line.r_squared;
  fit.n_bins = xs.size();
  return fit;
}

std::pair<double, double> default_fit_range(const Histogram& hist) {
  double lo = hist.edges.front();
  double hi = hist.edges.back();
  const double half_decade = std::sqrt(10.0);
  return {lo * half_decade, hi / half_decade};
}

}  // namespace ccmnet

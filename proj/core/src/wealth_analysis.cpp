#include "ccmnet/wealth_analysis.hpp"

#include <cmath>
#include <stdexcept>

#include "ccmnet/errors.hpp"
#include "ccmnet/power_law.hpp"

namespace ccmnet {

LambdaWealthCurve lambda_wealth_curve(const std::vector<double>& lambdas,
                                      const std::vector<double>& mean_wealth,
                                      int bins, double fit_low) {
  if (lambdas.size() != mean_wealth.size())
    throw std::invalid_argument("mismatched lambda/wealth inputs");
  if (lambdas.empty()) throw InsufficientDataError("no traders");
  if (bins < 2) throw std::invalid_argument("need >= 2 lambda bins");
  double lambda_max = 0.0;
  for (double l : lambdas) lambda_max = std::max(lambda_max, l);
  if (!(lambda_max > 0.0)) throw InsufficientDataError("all lambdas are zero");

  LambdaWealthCurve curve;
  double width = lambda_max / bins;
  curve.lambda_centers.resize(bins);
  for (int b = 0; b < bins; ++b) curve.lambda_centers[b] = (b + 0.5) * width;
  std::vector<double> sum_x(bins, 0.0), sum_p(bins, 0.0);
  curve.bin_counts.assign(bins, 0);
  for (std::size_t t = 0; t < lambdas.size(); ++t) {
    int b = std::min(bins - 1, static_cast<int>(lambdas[t] / width));
    sum_x[b] += mean_wealth[t];
    sum_p[b] += mean_wealth[t] * (1.0 - lambdas[t]);
    ++curve.bin_counts[b];
  }
  curve.mean_wealth.assign(bins, 0.0);
  curve.mean_product.assign(bins, 0.0);
  std::vector<double> xs, ys;
  for (int b = 0; b < bins; ++b) {
    if (curve.bin_counts[b] == 0) continue;  // reported empty, excluded
    curve.mean_wealth[b] = sum_x[b] / curve.bin_counts[b];
    curve.mean_product[b] = sum_p[b] / curve.bin_counts[b];
    if (curve.lambda_centers[b] >= fit_low && curve.mean_product[b] > 0.0) {
      xs.push_back(std::log10(curve.lambda_centers[b]));
      ys.push_back(std::log10(curve.mean_product[b]));
    }
  }
  if (xs.size() < 2)
    throw InsufficientDataError("too few populated bins in the chi fit window");
  LinearFit line = linear_fit(xs, ys);
  curve.chi = line.slope;
  curve.chi_stderr = line.slope_stderr;
  return curve;
}

TheoreticalDensity eq6_density(double chi, int grid_size) {
  if (!(chi >= 0.0)) throw std::invalid_argument("chi must be >= 0");
  if (grid_size < 8) throw std::invalid_argument("grid too small");
  TheoreticalDensity out;
  out.chi = chi;
  out.x.resize(grid_size);
  out.density.resize(grid_size);
  std::vector<double> lambda(grid_size), x_raw(grid_size);
  double mean_raw = 0.0;
  for (int m = 0; m < grid_size; ++m) {
    lambda[m] = (m + 0.5) / grid_size;
    x_raw[m] = std::pow(lambda[m], chi) / (1.0 - lambda[m]);
    mean_raw += x_raw[m];
  }
  mean_raw /= grid_size;
  double k_scale = 1.0 / mean_raw;  // fixes <x> = 1 over the grid
  std::vector<double> p_raw(grid_size);
  for (int m = 0; m < grid_size; ++m) {
    out.x[m] = k_scale * x_raw[m];
    double bracket = std::pow(lambda[m], -chi) +
                     (1.0 - lambda[m]) * chi * std::pow(lambda[m], -chi - 1.0);
    p_raw[m] = 1.0 / (out.x[m] * out.x[m] * bracket);
  }
  // Trapezoid normalization over the tabulated support.
  double integral = 0.0;
  for (int m = 1; m < grid_size; ++m)
    integral += 0.5 * (p_raw[m] + p_raw[m - 1]) * (out.x[m] - out.x[m - 1]);
  out.normalization = 1.0 / integral;
  for (int m = 0; m < grid_size; ++m)
    out.density[m] = out.normalization * p_raw[m];
  return out;
}

void DegreeConditional::add(int degree, double strength, double wealth) {
  if (degree <= 0) return;  // isolated nodes carry no strength-degree signal
  Acc& acc = by_degree_[degree];
  ++acc.count;
  acc.sum_strength += strength;
  acc.sum_wealth += wealth;
}

void DegreeConditional::merge(const DegreeConditional& other) {
  for (const auto& [k, acc] : other.by_degree_) {
    Acc& mine = by_degree_[k];
    mine.count += acc.count;
    mine.sum_strength += acc.sum_strength;
    mine.sum_wealth += acc.sum_wealth;
  }
}

ConditionalMeanFit DegreeConditional::fit(std::uint64_t min_bin_count) const {
  if (by_degree_.empty()) throw InsufficientDataError("no degree samples");
  // Exact bins up to k=16, 8 log-spaced bins per decade above.
  constexpr int kExactMax = 16;
  constexpr int kBinsPerDecade = 8;
  auto bin_of = [&](int k) {
    if (k <= kExactMax) return k;
    double l = std::log10(static_cast<double>(k) / kExactMax) * kBinsPerDecade;
    return kExactMax + 1 + static_cast<int>(l);
  };
  struct Bin {
    std::uint64_t count = 0;
    double sum_k = 0, sum_s = 0, sum_x = 0;
  };
  std::map<int, Bin> bins;
  for (const auto& [k, acc] : by_degree_) {
    Bin& b = bins[bin_of(k)];
    b.count += acc.count;
    b.sum_k += static_cast<double>(k) * static_cast<double>(acc.count);
    b.sum_s += acc.sum_strength;
    b.sum_x += acc.sum_wealth;
  }
  ConditionalMeanFit out;
  std::vector<double> lk, ls, lx;
  for (const auto& [id, b] : bins) {
    if (b.count < min_bin_count) continue;
    double kc = b.sum_k / static_cast<double>(b.count);
    double ms = b.sum_s / static_cast<double>(b.count);
    double mx = b.sum_x / static_cast<double>(b.count);
    out.k_centers.push_back(kc);
    out.mean_strength.push_back(ms);
    out.mean_wealth.push_back(mx);
    out.bin_counts.push_back(b.count);
    if (ms > 0.0 && mx > 0.0) {
      lk.push_back(std::log10(kc));
      ls.push_back(std::log10(ms));
      lx.push_back(std::log10(mx));
    }
  }
  if (lk.size() < 3)
    throw InsufficientDataError("too few populated degree bins for fits");
  LinearFit sfit = linear_fit(lk, ls);
  LinearFit xfit = linear_fit(lk, lx);
  out.phi = sfit.slope;
  out.phi_stderr = sfit.slope_stderr;
  out.mu = xfit.slope;
  out.mu_stderr = xfit.slope_stderr;
  return out;
}

ConditionalMeanFit conditional_means(const TradeGraph& graph,
                                     const std::vector<double>& wealth,
                                     std::uint64_t min_bin_count) {
  if (static_cast<int>(wealth.size()) != graph.n_nodes())
    throw std::invalid_argument("wealth snapshot does not match graph size");
  DegreeConditional acc;
  std::vector<double> strengths = graph.strength_sequence();
  for (int v = 0; v < graph.n_nodes(); ++v)
    acc.add(graph.degree(v), strengths[v], wealth[v]);
  return acc.fit(min_bin_count);
}

}  // namespace ccmnet

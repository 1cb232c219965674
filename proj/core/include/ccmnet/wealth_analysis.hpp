#pragma once

#include <map>
#include <vector>

#include "ccmnet/trade_graph.hpp"

namespace ccmnet {

struct LambdaWealthCurve {
  std::vector<double> lambda_centers;
  std::vector<double> mean_wealth;      // <x(lambda)> per bin
  std::vector<double> mean_product;     // <x * (1 - lambda)> per bin
  std::vector<std::uint64_t> bin_counts;
  double chi = 0.0;
  double chi_stderr = 0.0;
};

// Bins traders by saving propensity and fits chi as the log-log slope of
// <x(lambda)>(1 - lambda) over lambda in [fit_low, lambda_max]. `lambdas` and
// `mean_wealth` are parallel, pooled over snapshots and disorder sets.
LambdaWealthCurve lambda_wealth_curve(const std::vector<double>& lambdas,
                                      const std::vector<double>& mean_wealth,
                                      int bins, double fit_low = 0.3);

struct TheoreticalDensity {
  double chi = 0.0;
  double normalization = 0.0;  // C
  std::vector<double> x;
  std::vector<double> density;
};

// Parametric evaluation of the saving-propensity-induced wealth density:
// x(lambda) = K lambda^chi / (1 - lambda) with K fixed by <x> = 1, density
// C x^-2 [lambda^-chi + (1-lambda) chi lambda^(-chi-1)]^-1 normalized
// numerically over the tabulated support.
TheoreticalDensity eq6_density(double chi, int grid_size);

struct ConditionalMeanFit {
  std::vector<double> k_centers;
  std::vector<double> mean_strength;  // <s(k)>
  std::vector<double> mean_wealth;    // <x(k)>
  std::vector<std::uint64_t> bin_counts;
  double phi = 0.0;  // <s(k)> ~ k^phi
  double phi_stderr = 0.0;
  double mu = 0.0;  // <x(k)> ~ k^mu
  double mu_stderr = 0.0;
};

// Per-degree accumulator; exact degrees, binned log-spaced above k=16 at fit
// time. Mergeable across realizations.
class DegreeConditional {
 public:
  void add(int degree, double strength, double wealth);
  void merge(const DegreeConditional& other);
  bool empty() const { return by_degree_.empty(); }

  ConditionalMeanFit fit(std::uint64_t min_bin_count = 10) const;

 private:
  struct Acc {
    std::uint64_t count = 0;
    double sum_strength = 0.0;
    double sum_wealth = 0.0;
  };
  std::map<int, Acc> by_degree_;
};

// One-shot evaluation from a grown graph plus the matching wealth snapshot.
ConditionalMeanFit conditional_means(const TradeGraph& graph,
                                     const std::vector<double>& wealth,
                                     std::uint64_t min_bin_count = 10);

}  // namespace ccmnet

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "ccmnet/exchange.hpp"
#include "ccmnet/histogram.hpp"
#include "ccmnet/model.hpp"
#include "ccmnet/percolation.hpp"
#include "ccmnet/power_law.hpp"
#include "ccmnet/trade_graph.hpp"
#include "ccmnet/wealth_analysis.hpp"

namespace ccmnet {

enum class SavingMode { Quenched, Constant };

enum class StopRuleKind { MeanDegree, SingleComponent, Clique, TradeBudget };

struct StopRule {
  StopRuleKind kind = StopRuleKind::MeanDegree;
  double mean_degree_target = 1.0;
  std::uint64_t trade_budget = 0;
};

enum class SnapshotUnit { Density, MeanDegree };

struct ExperimentConfig {
  ModelParams model;
  SavingMode saving_mode = SavingMode::Quenched;
  double saving_lambda = 0.0;  // Constant mode only
  QssConfig qss;
  int n_lambda_sets = 1;
  int networks_per_set = 1;
  StopRule stop_rule;
  SnapshotUnit snapshot_unit = SnapshotUnit::Density;
  std::vector<double> snapshot_schedule;  // strictly increasing checkpoints
  std::uint64_t master_seed = 0;
  int bins_per_decade = 8;
  int lambda_bins = 32;
  double fit_low = 0.0;   // 0 -> histogram default range
  double fit_high = 0.0;  // 0 -> histogram default range
  std::uint64_t growth_max_trades = 0;     // 0 -> unlimited
  std::uint64_t inter_network_gap = 0;     // extra trades between networks
  std::uint64_t wealth_sample_stride = 0;  // 0 -> 10 * N

  // Sweep-driver inputs consumed by the CLI subcommands.
  std::vector<int> sweep_sizes;
  std::string sweep_param;
  std::vector<std::string> sweep_values;

  void validate() const;
  // Effective QSS budget: explicit max_trades, or 4000 sampling strides.
  std::uint64_t qss_budget() const;
  std::uint64_t sample_stride() const;
};

// One grown network plus the wealth snapshot at its stop time.
struct RealizationOutput {
  int set_index = 0;
  int net_index = 0;
  bool converged = false;
  std::uint64_t growth_trades = 0;
  std::vector<int> degrees;
  std::vector<double> strengths;
  std::vector<double> link_weights;
  std::vector<std::tuple<int, int, double>> edges;  // (i, j, w), i < j
  std::vector<double> wealth;
  std::vector<std::pair<double, double>> snapshots;  // (checkpoint, s_m)
  GrowthTimes growth_times;
};

// Mergeable per-disorder-set accumulation; reduced in set order so the
// ensemble output is independent of scheduling.
struct SetSummary {
  int set_index = 0;
  bool qss_converged = false;
  std::uint64_t qss_trades = 0;
  int networks_done = 0;
  LogBinAccumulator wealth_acc{8}, degree_acc{8}, weight_acc{8}, strength_acc{8};
  std::map<int, std::uint64_t> degree_counts;
  std::vector<double> snapshot_sum;
  std::vector<std::uint64_t> snapshot_n;
  std::vector<double> lambda_values;
  std::vector<double> mean_wealth_by_trader;
  DegreeConditional conditional;
  std::vector<std::uint64_t> t1_list, t2_list;
  std::vector<std::uint64_t> links_per_net;
  std::vector<int> max_degree_per_net;
  double max_wealth_drift = 0.0;
};

struct EnsembleFits {
  std::optional<PowerLawFit> wealth;
  std::optional<PowerLawFit> degree;
  std::optional<PowerLawFit> weight;
  std::optional<PowerLawFit> strength;
  std::optional<double> chi;
  std::optional<double> chi_stderr;
};

struct EnsembleOutput {
  std::optional<Histogram> wealth_hist;
  std::optional<Histogram> degree_hist;
  std::optional<Histogram> weight_hist;
  std::optional<Histogram> strength_hist;
  std::map<int, std::uint64_t> degree_counts;
  PercolationCurve percolation;
  std::vector<std::uint64_t> percolation_n;  // contributing realizations
  std::optional<LambdaWealthCurve> lambda_wealth;
  std::optional<ConditionalMeanFit> conditional;
  EnsembleFits fits;
  int n_realizations = 0;
  int n_converged = 0;
  int n_excluded = 0;
  std::vector<std::uint64_t> t1_list, t2_list;
  std::vector<std::uint64_t> links_per_net;
  std::vector<int> max_degree_per_net;
  double max_wealth_drift = 0.0;
};

// Runs one disorder set: profile generation, one QSS equilibration, then
// `up_to_networks` sequential network growths (wealth keeps evolving across
// networks; only the links are refreshed).
struct SetResult {
  SavingProfile profile;
  QssReport qss;
  std::vector<RealizationOutput> realizations;
  std::vector<double> mean_wealth_by_trader;
  double max_wealth_drift = 0.0;
};

SetResult run_set(const ExperimentConfig& config, int set_index,
                  int up_to_networks = -1);

// Deterministic single-realization view: replays the set through net_index.
RealizationOutput run_realization(const ExperimentConfig& config, int set_index,
                                  int net_index);

SetSummary summarize_set(const ExperimentConfig& config, const SetResult& set,
                         int set_index);

EnsembleOutput run_ensemble(const ExperimentConfig& config, int n_threads = 1);

}  // namespace ccmnet

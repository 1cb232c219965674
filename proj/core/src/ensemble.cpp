#include "ccmnet/ensemble.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "ccmnet/errors.hpp"

namespace ccmnet {

void ExperimentConfig::validate() const {
  model.validate();
  qss.validate();
  if (n_lambda_sets < 1) throw std::invalid_argument("n_lambda_sets must be >= 1");
  if (networks_per_set < 1)
    throw std::invalid_argument("networks_per_set must be >= 1");
  if (stop_rule.kind == StopRuleKind::MeanDegree &&
      !(stop_rule.mean_degree_target > 0.0))
    throw std::invalid_argument("mean_degree target must be > 0");
  for (std::size_t i = 1; i < snapshot_schedule.size(); ++i)
    if (!(snapshot_schedule[i] > snapshot_schedule[i - 1]))
      throw std::invalid_argument("snapshot_schedule must be strictly increasing");
  if (bins_per_decade < 1)
    throw std::invalid_argument("bins_per_decade must be >= 1");
  if (lambda_bins < 2) throw std::invalid_argument("lambda_bins must be >= 2");
  if (saving_mode == SavingMode::Constant &&
      !(saving_lambda >= 0.0 && saving_lambda < 1.0))
    throw std::invalid_argument("saving_lambda must be in [0,1)");
}

std::uint64_t ExperimentConfig::sample_stride() const {
  return wealth_sample_stride != 0
             ? wealth_sample_stride
             : 10ULL * static_cast<std::uint64_t>(model.n_traders);
}

std::uint64_t ExperimentConfig::qss_budget() const {
  if (qss.max_trades != 0) return qss.max_trades;
  std::uint64_t stride =
      qss.sample_stride != 0
          ? qss.sample_stride
          : 10ULL * static_cast<std::uint64_t>(model.n_traders);
  return 4000ULL * stride;
}

namespace {

SavingProfile make_profile(const ExperimentConfig& config, int set_index) {
  if (config.saving_mode == SavingMode::Constant)
    return constant_saving_profile(config.model.n_traders, config.saving_lambda);
  Rng rng(derive_seed(config.master_seed, set_index, 0, StreamPurpose::Profile));
  return generate_saving_profile(config.model.n_traders, rng);
}

bool stop_satisfied(const StopRule& rule, const TradeGraph& graph,
                    std::uint64_t trades) {
  switch (rule.kind) {
    case StopRuleKind::MeanDegree:
      return graph.mean_degree() >= rule.mean_degree_target - 1e-12;
    case StopRuleKind::SingleComponent:
      return graph.is_connected();
    case StopRuleKind::Clique:
      return graph.is_clique();
    case StopRuleKind::TradeBudget:
      return trades >= rule.trade_budget;
  }
  return true;
}

double snapshot_metric(SnapshotUnit unit, const TradeGraph& graph) {
  return unit == SnapshotUnit::Density ? graph.link_density()
                                       : graph.mean_degree();
}

}  // namespace

SetResult run_set(const ExperimentConfig& config, int set_index,
                  int up_to_networks) {
  config.validate();
  int n = config.model.n_traders;
  int n_nets = up_to_networks < 0
                   ? config.networks_per_set
                   : std::min(up_to_networks, config.networks_per_set);

  SetResult result;
  result.profile = make_profile(config, set_index);
  Rng init_rng(
      derive_seed(config.master_seed, set_index, 0, StreamPurpose::InitialWealth));
  WealthState state = initial_wealth(config.model, init_rng);
  const double initial_total = state.total();
  TradingEngine engine(config.model, result.profile, std::move(state));

  QssConfig qss = config.qss;
  qss.max_trades = config.qss_budget();
  Rng eq_rng(
      derive_seed(config.master_seed, set_index, 0, StreamPurpose::Equilibration));
  result.qss = equilibrate(engine, qss, eq_rng);
  result.mean_wealth_by_trader.assign(n, 0.0);
  if (!result.qss.converged) return result;  // realizations excluded upstream

  std::vector<double> wealth_sum(n, 0.0);
  std::uint64_t wealth_samples = 0;
  const std::uint64_t wstride = config.sample_stride();

  for (int net = 0; net < n_nets; ++net) {
    Rng rng(derive_seed(config.master_seed, set_index, net, StreamPurpose::Growth));
    if (net > 0)
      for (std::uint64_t t = 0; t < config.inter_network_gap; ++t)
        engine.step(rng);

    TradeGraph graph(n);
    GrowthTimesTracker tracker;
    RealizationOutput out;
    out.set_index = set_index;
    out.net_index = net;
    out.converged = true;
    std::uint64_t trades = 0;
    std::size_t checkpoint = 0;
    while (!stop_satisfied(config.stop_rule, graph, trades)) {
      if (config.growth_max_trades != 0 && trades >= config.growth_max_trades)
        break;
      TradeEvent ev = engine.step(rng);
      ++trades;
      LinkOutcome outcome = graph.record_trade(ev);
      tracker.observe(graph, trades);
      if (outcome == LinkOutcome::NewLink) {
        while (checkpoint < config.snapshot_schedule.size() &&
               snapshot_metric(config.snapshot_unit, graph) >=
                   config.snapshot_schedule[checkpoint] - 1e-12) {
          out.snapshots.emplace_back(config.snapshot_schedule[checkpoint],
                                     graph.giant_component_fraction());
          ++checkpoint;
        }
      }
      if (trades % wstride == 0) {
        const auto& x = engine.state().wealth;
        for (int v = 0; v < n; ++v) wealth_sum[v] += x[v];
        ++wealth_samples;
      }
    }
    out.growth_trades = trades;
    out.degrees = graph.degree_sequence();
    out.strengths = graph.strength_sequence();
    out.link_weights = graph.link_weights();
    out.edges = graph.edge_list();
    out.wealth = engine.state().wealth;
    out.growth_times = tracker.times();
    result.realizations.push_back(std::move(out));

    const auto& x = engine.state().wealth;
    for (int v = 0; v < n; ++v) wealth_sum[v] += x[v];
    ++wealth_samples;
  }

  for (int v = 0; v < n; ++v)
    result.mean_wealth_by_trader[v] =
        wealth_sum[v] / static_cast<double>(wealth_samples);
  result.max_wealth_drift =
      std::abs(engine.state().total() - initial_total) / initial_total;
  return result;
}

RealizationOutput run_realization(const ExperimentConfig& config, int set_index,
                                  int net_index) {
  if (net_index < 0 || net_index >= config.networks_per_set)
    throw std::invalid_argument("net_index out of range");
  SetResult set = run_set(config, set_index, net_index + 1);
  if (static_cast<int>(set.realizations.size()) <= net_index) {
    RealizationOutput out;
    out.set_index = set_index;
    out.net_index = net_index;
    out.converged = false;
    return out;
  }
  return std::move(set.realizations[net_index]);
}

SetSummary summarize_set(const ExperimentConfig& config, const SetResult& set,
                         int set_index) {
  SetSummary s;
  s.set_index = set_index;
  s.qss_converged = set.qss.converged;
  s.qss_trades = set.qss.trades;
  s.wealth_acc = LogBinAccumulator(config.bins_per_decade);
  s.degree_acc = LogBinAccumulator(config.bins_per_decade);
  s.weight_acc = LogBinAccumulator(config.bins_per_decade);
  s.strength_acc = LogBinAccumulator(config.bins_per_decade);
  s.snapshot_sum.assign(config.snapshot_schedule.size(), 0.0);
  s.snapshot_n.assign(config.snapshot_schedule.size(), 0);
  s.lambda_values = set.profile.lambdas;
  s.mean_wealth_by_trader = set.mean_wealth_by_trader;
  s.max_wealth_drift = set.max_wealth_drift;
  for (const RealizationOutput& r : set.realizations) {
    ++s.networks_done;
    for (double x : r.wealth) s.wealth_acc.add(x);
    std::uint64_t degree_total = 0;
    int max_degree = 0;
    for (int k : r.degrees) {
      s.degree_acc.add(static_cast<double>(k));
      ++s.degree_counts[k];
      degree_total += static_cast<std::uint64_t>(k);
      max_degree = std::max(max_degree, k);
    }
    for (double w : r.link_weights) s.weight_acc.add(w);
    for (double st : r.strengths) s.strength_acc.add(st);
    for (std::size_t v = 0; v < r.degrees.size(); ++v)
      s.conditional.add(r.degrees[v], r.strengths[v], r.wealth[v]);
    for (std::size_t c = 0; c < r.snapshots.size(); ++c) {
      s.snapshot_sum[c] += r.snapshots[c].second;
      ++s.snapshot_n[c];
    }
    if (r.growth_times.t_single_component)
      s.t1_list.push_back(*r.growth_times.t_single_component);
    if (r.growth_times.t_clique) s.t2_list.push_back(*r.growth_times.t_clique);
    s.links_per_net.push_back(degree_total / 2);
    s.max_degree_per_net.push_back(max_degree);
  }
  return s;
}

EnsembleOutput run_ensemble(const ExperimentConfig& config, int n_threads) {
  config.validate();
  const int n_sets = config.n_lambda_sets;
  std::vector<SetSummary> summaries(n_sets);

  auto compute = [&](int set_index) {
    summaries[set_index] =
        summarize_set(config, run_set(config, set_index), set_index);
  };
  int workers = std::max(1, std::min(n_threads, n_sets));
  if (workers == 1) {
    for (int s = 0; s < n_sets; ++s) compute(s);
  } else {
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (int s = next.fetch_add(1); s < n_sets; s = next.fetch_add(1))
          compute(s);
      });
    for (auto& t : pool) t.join();
  }

  // Deterministic reduction in set order.
  EnsembleOutput out;
  LogBinAccumulator wealth_acc(config.bins_per_decade),
      degree_acc(config.bins_per_decade), weight_acc(config.bins_per_decade),
      strength_acc(config.bins_per_decade);
  std::vector<double> snapshot_sum(config.snapshot_schedule.size(), 0.0);
  std::vector<std::uint64_t> snapshot_n(config.snapshot_schedule.size(), 0);
  std::vector<double> lambda_pool, mean_wealth_pool;
  DegreeConditional conditional;
  out.n_realizations = n_sets * config.networks_per_set;
  for (const SetSummary& s : summaries) {
    if (!s.qss_converged) continue;
    out.n_converged += s.networks_done;
    wealth_acc.merge(s.wealth_acc);
    degree_acc.merge(s.degree_acc);
    weight_acc.merge(s.weight_acc);
    strength_acc.merge(s.strength_acc);
    for (const auto& [k, c] : s.degree_counts) out.degree_counts[k] += c;
    for (std::size_t c = 0; c < snapshot_sum.size(); ++c) {
      snapshot_sum[c] += s.snapshot_sum[c];
      snapshot_n[c] += s.snapshot_n[c];
    }
    lambda_pool.insert(lambda_pool.end(), s.lambda_values.begin(),
                       s.lambda_values.end());
    mean_wealth_pool.insert(mean_wealth_pool.end(),
                            s.mean_wealth_by_trader.begin(),
                            s.mean_wealth_by_trader.end());
    conditional.merge(s.conditional);
    out.t1_list.insert(out.t1_list.end(), s.t1_list.begin(), s.t1_list.end());
    out.t2_list.insert(out.t2_list.end(), s.t2_list.begin(), s.t2_list.end());
    out.links_per_net.insert(out.links_per_net.end(), s.links_per_net.begin(),
                             s.links_per_net.end());
    out.max_degree_per_net.insert(out.max_degree_per_net.end(),
                                  s.max_degree_per_net.begin(),
                                  s.max_degree_per_net.end());
    out.max_wealth_drift = std::max(out.max_wealth_drift, s.max_wealth_drift);
  }
  out.n_excluded = out.n_realizations - out.n_converged;
  if (out.n_converged == 0)
    throw EnsembleError("no realization reached the quasi-stationary state");

  auto to_hist = [](const LogBinAccumulator& acc) -> std::optional<Histogram> {
    if (acc.empty()) return std::nullopt;
    return acc.histogram();
  };
  out.wealth_hist = to_hist(wealth_acc);
  out.degree_hist = to_hist(degree_acc);
  out.weight_hist = to_hist(weight_acc);
  out.strength_hist = to_hist(strength_acc);

  const double n_minus_1 = static_cast<double>(config.model.n_traders - 1);
  for (std::size_t c = 0; c < snapshot_sum.size(); ++c) {
    if (snapshot_n[c] == 0) continue;
    double value = config.snapshot_schedule[c];
    double rho =
        config.snapshot_unit == SnapshotUnit::Density ? value : value / n_minus_1;
    out.percolation.points.emplace_back(
        rho, snapshot_sum[c] / static_cast<double>(snapshot_n[c]));
    out.percolation_n.push_back(snapshot_n[c]);
  }

  if (config.saving_mode == SavingMode::Quenched && !lambda_pool.empty()) {
    try {
      out.lambda_wealth =
          lambda_wealth_curve(lambda_pool, mean_wealth_pool, config.lambda_bins);
      out.fits.chi = out.lambda_wealth->chi;
      out.fits.chi_stderr = out.lambda_wealth->chi_stderr;
    } catch (const InsufficientDataError&) {
    }
  }
  if (!conditional.empty()) {
    try {
      out.conditional = conditional.fit();
    } catch (const InsufficientDataError&) {
    }
  }

  auto fit_hist = [&](const std::optional<Histogram>& hist)
      -> std::optional<PowerLawFit> {
    if (!hist) return std::nullopt;
    double lo = config.fit_low, hi = config.fit_high;
    if (lo <= 0.0 || hi <= 0.0) {
      auto [dlo, dhi] = default_fit_range(*hist);
      if (lo <= 0.0) lo = dlo;
      if (hi <= 0.0) hi = dhi;
    }
    try {
      return fit_power_law(*hist, lo, hi);
    } catch (const InsufficientDataError&) {
      return std::nullopt;
    }
  };
  out.fits.wealth = fit_hist(out.wealth_hist);
  out.fits.degree = fit_hist(out.degree_hist);
  out.fits.weight = fit_hist(out.weight_hist);
  out.fits.strength = fit_hist(out.strength_hist);
  return out;
}

}  // namespace ccmnet

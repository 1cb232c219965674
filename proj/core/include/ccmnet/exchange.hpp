#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "ccmnet/fenwick.hpp"
#include "ccmnet/max_tree.hpp"
#include "ccmnet/model.hpp"
#include "ccmnet/rng.hpp"

namespace ccmnet {

// Rescales uniform draws so the largest value lands exactly on 1 - 1/n.
// The maximum is written by assignment, not arithmetic, to dodge rounding.
std::vector<double> rescale_saving_draws(std::vector<double> draws, int n);

// N quenched saving propensities, uniform up to the rescale rule.
SavingProfile generate_saving_profile(int n, Rng& rng);

// Homogeneous-lambda profile (the CC special case of the same code path).
SavingProfile constant_saving_profile(int n, double lambda);

WealthState initial_wealth(const ModelParams& params, Rng& rng);

// One bipartite money exchange between traders i and j; mutates `state` and
// advances the trade clock.
TradeEvent trade_step(WealthState& state, const SavingProfile& profile, int i,
                      int j, Rng& rng);

// Incremental weighted pair sampler. First pick is proportional to wealth^alpha
// over all traders, second to wealth^beta over the remaining N-1 (exclusion by
// weight removal, not rejection). Finite exponents are backed by a Fenwick
// cumulative-weight tree, infinite ones by an argmax segment tree.
class PairSelector {
 public:
  PairSelector(const WealthState& state, const ModelParams& params);

  std::pair<int, int> select(Rng& rng);

  // Must be called after every wealth change so the trees stay in sync.
  void update(int idx, double new_wealth);

 private:
  struct Side {
    enum class Kind { Uniform, Finite, Infinite } kind = Kind::Uniform;
    double exponent = 0.0;
    double log_ref = 0.0;
    FenwickTree weights;
    MaxTree maxima;
  };

  void init_side(Side& side, const Exponent& exp,
                 const std::vector<double>& wealth);
  double side_weight(const Side& side, double x) const;
  void rebuild_side(Side& side, int excluded = -1);
  int pick_first(Rng& rng);
  int pick_second(int first, Rng& rng);
  int sample_fenwick(Side& side, Rng& rng);

  int n_;
  std::vector<double> wealth_;  // shadow copy kept current via update()
  Side first_;
  Side second_;
};

// One-shot pair selection from a frozen state (builds a transient selector).
std::pair<int, int> select_pair(const WealthState& state,
                                const ModelParams& params, Rng& rng);

// True iff the means of the two most recent disjoint blocks of `window`
// samples differ relatively by less than rel_tol; false while fewer than
// 2*window samples exist.
bool qss_reached(const std::vector<double>& sum_sq_series, const QssConfig& cfg);

struct QssReport {
  std::uint64_t trades = 0;
  double final_sum_sq = 0.0;
  bool converged = false;
};

// Couples the selector to the trade dynamics of one realization.
class TradingEngine {
 public:
  TradingEngine(const ModelParams& params, SavingProfile profile,
                WealthState state);

  TradeEvent step(Rng& rng);

  const WealthState& state() const { return state_; }
  const SavingProfile& profile() const { return profile_; }
  const ModelParams& params() const { return params_; }

 private:
  ModelParams params_;
  SavingProfile profile_;
  WealthState state_;
  PairSelector selector_;
};

// Trades until the sum-of-squares criterion stabilizes or the budget runs out.
QssReport equilibrate(TradingEngine& engine, const QssConfig& cfg, Rng& rng);

struct QssResult {
  WealthState state;
  QssReport report;
};

QssResult run_to_qss(const ModelParams& params, const SavingProfile& profile,
                     const QssConfig& cfg, Rng& rng);

}  // namespace ccmnet

#include "ccmnet/exchange.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include "ccmnet/errors.hpp"

namespace ccmnet {

namespace {
// Rebuild threshold for the log-weight reference; keeps exp() far from
// overflow while rebuilds stay rare.
constexpr double kLogDriftLimit = 300.0;
}  // namespace

std::string Exponent::str() const {
  if (infinite_) return "inf";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", value_);
  return buf;
}

Exponent Exponent::parse(const std::string& token) {
  if (token == "inf") return Exponent::infinity();
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(token, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument("bad exponent token: " + token);
  }
  if (pos != token.size())
    throw std::invalid_argument("bad exponent token: " + token);
  return Exponent::finite(v);
}

std::vector<double> rescale_saving_draws(std::vector<double> draws, int n) {
  if (n < 2) throw std::invalid_argument("profile needs n >= 2");
  if (draws.empty()) throw std::invalid_argument("no draws");
  std::size_t max_at = 0;
  for (std::size_t i = 1; i < draws.size(); ++i)
    if (draws[i] > draws[max_at]) max_at = i;
  double target = 1.0 - 1.0 / n;
  double scale = target / draws[max_at];
  for (double& d : draws) d *= scale;
  draws[max_at] = target;  // exact by assignment
  return draws;
}

SavingProfile generate_saving_profile(int n, Rng& rng) {
  if (n < 2) throw std::invalid_argument("profile needs n >= 2");
  std::vector<double> draws(n);
  for (double& d : draws) {
    do {
      d = rng.uniform();
    } while (d == 0.0);
  }
  return SavingProfile{rescale_saving_draws(std::move(draws), n)};
}

SavingProfile constant_saving_profile(int n, double lambda) {
  if (n < 2) throw std::invalid_argument("profile needs n >= 2");
  if (!(lambda >= 0.0 && lambda < 1.0))
    throw std::invalid_argument("lambda must be in [0,1)");
  return SavingProfile{std::vector<double>(n, lambda)};
}

WealthState initial_wealth(const ModelParams& params, Rng& rng) {
  params.validate();
  WealthState state;
  state.wealth.resize(params.n_traders);
  double a = params.mean_initial_wealth;
  if (params.initial_wealth_mode == InitialWealthMode::Equal) {
    std::fill(state.wealth.begin(), state.wealth.end(), a);
  } else {
    double sum = 0.0;
    for (double& x : state.wealth) {
      x = rng.uniform(0.0, 2.0 * a);
      sum += x;
    }
    double scale = a * params.n_traders / sum;
    for (double& x : state.wealth) x *= scale;
  }
  state.trade_count = 0;
  return state;
}

TradeEvent trade_step(WealthState& state, const SavingProfile& profile, int i,
                      int j, Rng& rng) {
  int n = state.size();
  if (i < 0 || j < 0 || i >= n || j >= n)
    throw std::invalid_argument("trader index out of range");
  if (i == j) throw std::invalid_argument("trade requires i != j");
  double li = profile.lambdas[i];
  double lj = profile.lambdas[j];
  double xi = state.wealth[i];
  double xj = state.wealth[j];
  double invested = (1.0 - li) * xi + (1.0 - lj) * xj;
  double eps = rng.uniform();
  state.wealth[i] = li * xi + eps * invested;
  state.wealth[j] = lj * xj + (1.0 - eps) * invested;
  ++state.trade_count;
  return TradeEvent{i, j, invested, eps};
}

PairSelector::PairSelector(const WealthState& state, const ModelParams& params)
    : n_(state.size()), wealth_(state.wealth) {
  params.validate();
  if (n_ != params.n_traders)
    throw std::invalid_argument("state size does not match params");
  init_side(first_, params.alpha, wealth_);
  init_side(second_, params.beta, wealth_);
}

void PairSelector::init_side(Side& side, const Exponent& exp,
                             const std::vector<double>& wealth) {
  if (exp.is_infinite()) {
    side.kind = Side::Kind::Infinite;
    side.maxima.build(wealth);
    return;
  }
  if (exp.is_zero()) {
    side.kind = Side::Kind::Uniform;
    return;
  }
  side.kind = Side::Kind::Finite;
  side.exponent = exp.value();
  rebuild_side(side);
}

double PairSelector::side_weight(const Side& side, double x) const {
  if (x <= 0.0) return 0.0;
  if (side.exponent == 1.0) return x;
  return std::exp(side.exponent * std::log(x) - side.log_ref);
}

void PairSelector::rebuild_side(Side& side, int excluded) {
  // Reference = max log-weight, so the largest stored weight is 1. Exponent
  // exactly 1 uses the raw wealth; no overflow possible there. An excluded
  // index is left out of the reference scan and gets a zero leaf, so the
  // remaining weights stay resolvable even when the excluded trader dominates
  // by hundreds of orders of magnitude.
  if (side.exponent == 1.0) {
    side.log_ref = 0.0;
  } else {
    double max_lw = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < n_; ++i)
      if (i != excluded && wealth_[i] > 0.0)
        max_lw = std::max(max_lw, side.exponent * std::log(wealth_[i]));
    side.log_ref = std::isfinite(max_lw) ? max_lw : 0.0;
  }
  std::vector<double> w(n_);
  for (int i = 0; i < n_; ++i)
    w[i] = (i == excluded) ? 0.0 : side_weight(side, wealth_[i]);
  side.weights = FenwickTree(w);
}

void PairSelector::update(int idx, double new_wealth) {
  wealth_[idx] = new_wealth;
  for (Side* side : {&first_, &second_}) {
    switch (side->kind) {
      case Side::Kind::Uniform:
        break;
      case Side::Kind::Infinite:
        side->maxima.set(idx, new_wealth);
        break;
      case Side::Kind::Finite: {
        if (new_wealth > 0.0 && side->exponent != 1.0) {
          double lw = side->exponent * std::log(new_wealth);
          if (lw - side->log_ref > kLogDriftLimit) {
            rebuild_side(*side);
            break;
          }
        }
        side->weights.set(idx, side_weight(*side, new_wealth));
        break;
      }
    }
  }
}

// Assumes side.weights.total() > 0; never rebuilds.
int PairSelector::sample_fenwick(Side& side, Rng& rng) {
  double total = side.weights.total();
  double u = rng.uniform() * total;
  int idx = static_cast<int>(side.weights.find(u));
  if (side.weights.get(idx) <= 0.0) {
    // Boundary landing on an empty leaf; walk to a populated one.
    int k = idx - 1;
    while (k >= 0 && side.weights.get(k) <= 0.0) --k;
    if (k < 0) {
      k = idx + 1;
      while (k < n_ && side.weights.get(k) <= 0.0) ++k;
    }
    if (k < 0 || k >= n_)
      throw DegenerateStateError("total selection weight is zero");
    idx = k;
  }
  return idx;
}

int PairSelector::pick_first(Rng& rng) {
  switch (first_.kind) {
    case Side::Kind::Uniform:
      return static_cast<int>(rng.uniform_below(n_));
    case Side::Kind::Infinite: {
      std::size_t best = first_.maxima.argmax();
      if (!(first_.maxima.get(best) > 0.0))
        throw DegenerateStateError("all-zero wealth under infinite exponent");
      return static_cast<int>(best);
    }
    case Side::Kind::Finite: {
      if (!(first_.weights.total() > 0.0)) {
        // All weights may have underflown against a stale reference.
        rebuild_side(first_);
        if (!(first_.weights.total() > 0.0))
          throw DegenerateStateError("total selection weight is zero");
      }
      return sample_fenwick(first_, rng);
    }
  }
  return 0;
}

int PairSelector::pick_second(int first, Rng& rng) {
  switch (second_.kind) {
    case Side::Kind::Uniform: {
      auto r = static_cast<int>(rng.uniform_below(n_ - 1));
      return r + (r >= first ? 1 : 0);
    }
    case Side::Kind::Infinite:
      return static_cast<int>(second_.maxima.argmax_excluding(first));
    case Side::Kind::Finite: {
      second_.weights.set(first, 0.0);
      if (!(second_.weights.total() > 0.0)) {
        // Everyone else underflowed against the old reference; re-reference
        // over the remaining traders.
        rebuild_side(second_, first);
        if (!(second_.weights.total() > 0.0)) {
          rebuild_side(second_);  // restore a consistent tree before throwing
          throw DegenerateStateError(
              "no positive selection weight among remaining traders");
        }
      }
      int j = sample_fenwick(second_, rng);
      // Restoring the excluded leaf can overflow if that trader dominates the
      // refreshed reference; rebuild around it in that case.
      if (wealth_[first] > 0.0 && second_.exponent != 1.0 &&
          second_.exponent * std::log(wealth_[first]) - second_.log_ref >
              kLogDriftLimit) {
        rebuild_side(second_);
      } else {
        second_.weights.set(first, side_weight(second_, wealth_[first]));
      }
      return j;
    }
  }
  return 0;
}

std::pair<int, int> PairSelector::select(Rng& rng) {
  int i = pick_first(rng);
  int j = pick_second(i, rng);
  return {i, j};
}

std::pair<int, int> select_pair(const WealthState& state,
                                const ModelParams& params, Rng& rng) {
  PairSelector selector(state, params);
  return selector.select(rng);
}

bool qss_reached(const std::vector<double>& sum_sq_series,
                 const QssConfig& cfg) {
  cfg.validate();
  std::size_t w = static_cast<std::size_t>(cfg.window);
  if (sum_sq_series.size() < 2 * w) return false;
  auto block_mean = [&](std::size_t end) {
    double s = 0.0;
    for (std::size_t k = end - w; k < end; ++k) s += sum_sq_series[k];
    return s / static_cast<double>(w);
  };
  double recent = block_mean(sum_sq_series.size());
  double previous = block_mean(sum_sq_series.size() - w);
  double scale = std::max(std::abs(previous), 1e-300);
  return std::abs(recent - previous) / scale < cfg.rel_tol;
}

TradingEngine::TradingEngine(const ModelParams& params, SavingProfile profile,
                             WealthState state)
    : params_(params),
      profile_(std::move(profile)),
      state_(std::move(state)),
      selector_(state_, params_) {
  if (profile_.size() != params_.n_traders)
    throw std::invalid_argument("profile size does not match params");
}

TradeEvent TradingEngine::step(Rng& rng) {
  auto [i, j] = selector_.select(rng);
  TradeEvent ev = trade_step(state_, profile_, i, j, rng);
  selector_.update(i, state_.wealth[i]);
  selector_.update(j, state_.wealth[j]);
  return ev;
}

QssReport equilibrate(TradingEngine& engine, const QssConfig& cfg, Rng& rng) {
  cfg.validate();
  std::uint64_t stride =
      cfg.sample_stride != 0
          ? cfg.sample_stride
          : 10ULL * static_cast<std::uint64_t>(engine.state().size());
  QssReport report;
  std::vector<double> samples;
  std::uint64_t executed = 0;
  while (executed < cfg.max_trades) {
    std::uint64_t burst =
        std::min<std::uint64_t>(stride, cfg.max_trades - executed);
    for (std::uint64_t t = 0; t < burst; ++t) engine.step(rng);
    executed += burst;
    if (burst < stride) break;
    samples.push_back(engine.state().sum_sq());
    if (samples.size() >= 2 * static_cast<std::size_t>(cfg.window) &&
        qss_reached(samples, cfg)) {
      report.converged = true;
      break;
    }
  }
  report.trades = executed;
  report.final_sum_sq = engine.state().sum_sq();
  return report;
}

QssResult run_to_qss(const ModelParams& params, const SavingProfile& profile,
                     const QssConfig& cfg, Rng& rng) {
  TradingEngine engine(params, profile, initial_wealth(params, rng));
  QssReport report = equilibrate(engine, cfg, rng);
  return QssResult{engine.state(), report};
}

}  // namespace ccmnet

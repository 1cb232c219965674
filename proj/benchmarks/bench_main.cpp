#include <benchmark/benchmark.h>

#include "ccmnet/exchange.hpp"
#include "ccmnet/fenwick.hpp"
#include "ccmnet/histogram.hpp"

namespace {

ccmnet::ModelParams make_params(int n, double alpha, double beta) {
  ccmnet::ModelParams p;
  p.n_traders = n;
  p.alpha = ccmnet::Exponent::finite(alpha);
  p.beta = ccmnet::Exponent::finite(beta);
  return p;
}

void BM_TradeStep(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const double alpha = static_cast<double>(state.range(1));
  auto params = make_params(n, alpha, alpha);
  ccmnet::Rng rng(12345);
  auto profile = ccmnet::generate_saving_profile(n, rng);
  auto wealth = ccmnet::initial_wealth(params, rng);
  ccmnet::TradingEngine engine(params, profile, std::move(wealth));
  for (auto _ : state) {
    auto ev = engine.step(rng);
    benchmark::DoNotOptimize(ev.invested);
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_TradeStep)
    ->Args({1024, 0})
    ->Args({1024, 1})
    ->Args({1024, 2})
    ->Args({16384, 1})
    ->Args({16384, 2});

void BM_TradeStepArgmax(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  ccmnet::ModelParams params;
  params.n_traders = n;
  params.alpha = ccmnet::Exponent::infinity();
  params.beta = ccmnet::Exponent::finite(1.0);
  ccmnet::Rng rng(12345);
  auto profile = ccmnet::generate_saving_profile(n, rng);
  auto wealth = ccmnet::initial_wealth(params, rng);
  ccmnet::TradingEngine engine(params, profile, std::move(wealth));
  for (auto _ : state) {
    auto ev = engine.step(rng);
    benchmark::DoNotOptimize(ev.invested);
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_TradeStepArgmax)->Arg(1024)->Arg(16384);

void BM_FenwickSample(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::vector<double> w(n);
  ccmnet::Rng rng(7);
  for (auto& v : w) v = rng.uniform() + 1e-3;
  ccmnet::FenwickTree tree(w);
  for (auto _ : state) {
    std::size_t idx = tree.find(rng.uniform() * tree.total());
    benchmark::DoNotOptimize(idx);
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_FenwickSample)->Arg(1024)->Arg(65536)->Arg(1 << 20);

void BM_LogBinAdd(benchmark::State& state) {
  ccmnet::LogBinAccumulator acc(8);
  ccmnet::Rng rng(3);
  for (auto _ : state) {
    acc.add(rng.uniform() * 100.0 + 1e-6);
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_LogBinAdd);

}  // namespace

BENCHMARK_MAIN();

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>
#include <map>
#include <vector>

#include "ccmnet/exchange.hpp"

using namespace ccmnet;

namespace {

ModelParams params_for(int n, Exponent alpha, Exponent beta) {
  ModelParams p;
  p.n_traders = n;
  p.alpha = alpha;
  p.beta = beta;
  return p;
}

WealthState state_with(std::vector<double> wealth) {
  WealthState s;
  s.wealth = std::move(wealth);
  return s;
}

}  // namespace

TEST_CASE("saving draws rescale so the maximum is exactly 1 - 1/n") {
  auto out = rescale_saving_draws({0.2, 0.4}, 4);
  REQUIRE(out.size() == 2);
  CHECK(out[0] == doctest::Approx(0.375));
  CHECK(out[1] == 0.75);  // exact, by assignment
}

TEST_CASE("generated profiles respect the support bound") {
  Rng rng(31);
  for (int n : {2, 17, 1000}) {
    auto profile = generate_saving_profile(n, rng);
    REQUIRE(profile.size() == n);
    double cap = 1.0 - 1.0 / n;
    double mx = 0.0;
    for (double l : profile.lambdas) {
      CHECK(l >= 0.0);
      CHECK(l <= cap);
      mx = std::max(mx, l);
    }
    CHECK(mx == cap);  // exact
  }
}

TEST_CASE("rescaled profile is still close to uniform") {
  Rng rng(77);
  auto profile = generate_saving_profile(20000, rng);
  double cap = 1.0 - 1.0 / 20000.0;
  // Kolmogorov-Smirnov against U(0, cap); the rescale shifts mass by O(1/n).
  std::vector<double> v = profile.lambdas;
  std::sort(v.begin(), v.end());
  double d = 0.0;
  const double n = static_cast<double>(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    double f = v[i] / cap;
    d = std::max(d, std::abs(f - i / n));
    d = std::max(d, std::abs((i + 1) / n - f));
  }
  CHECK(d < 1.628 / std::sqrt(n));
}

TEST_CASE("constant profile repeats one value") {
  auto profile = constant_saving_profile(5, 0.4);
  for (double l : profile.lambdas) CHECK(l == 0.4);
}

TEST_CASE("equal initial wealth puts everyone at the mean") {
  Rng rng(1);
  auto p = params_for(8, Exponent::finite(0), Exponent::finite(0));
  p.mean_initial_wealth = 2.5;
  auto s = initial_wealth(p, rng);
  for (double x : s.wealth) CHECK(x == 2.5);
  CHECK(s.trade_count == 0);
}

TEST_CASE("random initial wealth has the exact requested mean") {
  Rng rng(2);
  auto p = params_for(1000, Exponent::finite(0), Exponent::finite(0));
  p.initial_wealth_mode = InitialWealthMode::UniformRandom;
  p.mean_initial_wealth = 3.0;
  auto s = initial_wealth(p, rng);
  CHECK(s.total() / 1000.0 == doctest::Approx(3.0).epsilon(1e-12));
  double lo = 1e300, hi = 0.0;
  for (double x : s.wealth) {
    CHECK(x >= 0.0);
    lo = std::min(lo, x);
    hi = std::max(hi, x);
  }
  CHECK(hi > lo);  // actually random
}

TEST_CASE("trade step obeys the exchange rule and conserves money") {
  Rng rng(55);
  SavingProfile profile;
  profile.lambdas = {0.3, 0.8};
  auto s = state_with({4.0, 1.0});
  double before = s.total();
  auto ev = trade_step(s, profile, 0, 1, rng);
  CHECK(ev.i == 0);
  CHECK(ev.j == 1);
  CHECK(ev.epsilon >= 0.0);
  CHECK(ev.epsilon < 1.0);
  double delta = (1.0 - 0.3) * 4.0 + (1.0 - 0.8) * 1.0;
  CHECK(ev.invested == doctest::Approx(delta).epsilon(1e-15));
  CHECK(s.wealth[0] ==
        doctest::Approx(0.3 * 4.0 + ev.epsilon * delta).epsilon(1e-15));
  CHECK(s.wealth[1] ==
        doctest::Approx(0.8 * 1.0 + (1.0 - ev.epsilon) * delta).epsilon(1e-15));
  CHECK(s.total() == doctest::Approx(before).epsilon(1e-15));
  CHECK(s.trade_count == 1);
}

TEST_CASE("wealth never goes negative over many trades") {
  Rng rng(999);
  auto p = params_for(50, Exponent::finite(1), Exponent::finite(1));
  auto profile = generate_saving_profile(50, rng);
  TradingEngine engine(p, profile, initial_wealth(p, rng));
  for (int t = 0; t < 200000; ++t) {
    auto ev = engine.step(rng);
    CHECK(ev.i != ev.j);
  }
  for (double x : engine.state().wealth) CHECK(x >= 0.0);
  CHECK(engine.state().total() == doctest::Approx(50.0).epsilon(1e-9));
}

TEST_CASE("uniform selection is uniform over ordered distinct pairs") {
  Rng rng(4040);
  auto p = params_for(4, Exponent::finite(0), Exponent::finite(0));
  auto s = state_with({1.0, 10.0, 0.1, 5.0});  // wealth must not matter
  std::map<std::pair<int, int>, int> counts;
  const int n = 120000;
  for (int t = 0; t < n; ++t) ++counts[select_pair(s, p, rng)];
  REQUIRE(counts.size() == 12);
  double chi2 = 0.0;
  double expect = n / 12.0;
  for (auto& [pair, c] : counts)
    chi2 += (c - expect) * (c - expect) / expect;
  CHECK(chi2 < 24.72);  // 1% critical value, 11 dof
}

TEST_CASE("finite exponents weight both picks correctly") {
  Rng rng(31337);
  auto p = params_for(4, Exponent::finite(2), Exponent::finite(1));
  std::vector<double> x{1.0, 2.0, 3.0, 4.0};
  auto s = state_with(x);
  std::map<std::pair<int, int>, int> counts;
  const int n = 300000;
  for (int t = 0; t < n; ++t) ++counts[select_pair(s, p, rng)];
  // Enumeration oracle: P(i) ~ x_i^2, P(j|i) ~ x_j over the rest.
  double norm1 = 0.0, sum = 0.0;
  for (double v : x) {
    norm1 += v * v;
    sum += v;
  }
  double chi2 = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      if (i == j) continue;
      double prob = (x[i] * x[i] / norm1) * (x[j] / (sum - x[i]));
      double expect = prob * n;
      double c = counts[{i, j}];
      chi2 += (c - expect) * (c - expect) / expect;
    }
  CHECK(chi2 < 24.72);  // 1% critical value, 11 dof
}

TEST_CASE("alpha=1 fast path matches the general-exponent distribution") {
  auto s = state_with({0.5, 1.5, 2.5, 3.5, 4.0});
  auto run = [&](double a) {
    Rng rng(606);
    auto p = params_for(5, Exponent::finite(a), Exponent::finite(0));
    std::array<int, 5> c{};
    for (int t = 0; t < 200000; ++t) ++c[select_pair(s, p, rng).first];
    return c;
  };
  auto exact = run(1.0);
  double sum = 0.5 + 1.5 + 2.5 + 3.5 + 4.0;
  for (int i = 0; i < 5; ++i) {
    double expect = 200000.0 * s.wealth[i] / sum;
    CHECK(exact[i] == doctest::Approx(expect).epsilon(0.05));
  }
}

TEST_CASE("infinite exponents pick the richest, ties to the lowest index") {
  Rng rng(8);
  auto p = params_for(4, Exponent::infinity(), Exponent::infinity());
  auto s = state_with({2.0, 7.0, 7.0, 1.0});
  for (int t = 0; t < 100; ++t) {
    auto [i, j] = select_pair(s, p, rng);
    CHECK(i == 1);  // tie with 2, lowest index wins
    CHECK(j == 2);  // richest among the rest
  }
}

TEST_CASE("infinite-then-finite mixes argmax with weighted sampling") {
  Rng rng(12);
  auto p = params_for(3, Exponent::infinity(), Exponent::finite(0));
  auto s = state_with({1.0, 9.0, 1.0});
  int seen0 = 0, seen2 = 0;
  for (int t = 0; t < 2000; ++t) {
    auto [i, j] = select_pair(s, p, rng);
    CHECK(i == 1);
    CHECK(j != 1);
    if (j == 0) ++seen0;
    if (j == 2) ++seen2;
  }
  CHECK(seen0 > 800);
  CHECK(seen2 > 800);
}

TEST_CASE("zero-wealth traders are never picked by weighted selection") {
  Rng rng(90);
  auto p = params_for(4, Exponent::finite(1), Exponent::finite(1));
  auto s = state_with({3.0, 0.0, 2.0, 0.0});
  for (int t = 0; t < 5000; ++t) {
    auto [i, j] = select_pair(s, p, rng);
    CHECK(i != 1);
    CHECK(i != 3);
    CHECK(j != 1);
    CHECK(j != 3);
    CHECK(i != j);
  }
}

TEST_CASE("selector stays consistent with wealth updates") {
  Rng rng(4321);
  auto p = params_for(5, Exponent::finite(1), Exponent::finite(1));
  auto s = state_with({1.0, 1.0, 1.0, 1.0, 1.0});
  PairSelector selector(s, p);
  // Concentrate almost everything on trader 3.
  std::vector<double> w{0.01, 0.01, 0.01, 100.0, 0.01};
  for (int i = 0; i < 5; ++i) selector.update(i, w[i]);
  int first3 = 0;
  for (int t = 0; t < 2000; ++t) {
    auto [i, j] = selector.select(rng);
    CHECK(i != j);
    if (i == 3) ++first3;
  }
  CHECK(first3 > 1900);
}

TEST_CASE("selector survives extreme wealth ratios") {
  // Weight ratios overflow a naive x^alpha at alpha = 8; the log-shifted
  // representation has to keep sampling sane.
  Rng rng(777);
  auto p = params_for(3, Exponent::finite(8), Exponent::finite(8));
  auto s = state_with({1e-120, 1e120, 1.0});
  for (int t = 0; t < 500; ++t) {
    auto [i, j] = select_pair(s, p, rng);
    CHECK(i == 1);  // dominates by 10^1920 in weight
    CHECK(j == 2);  // dominates the remainder
  }
}

TEST_CASE("stationarity detector needs two full windows") {
  QssConfig cfg;
  cfg.window = 3;
  cfg.rel_tol = 1e-3;
  CHECK_FALSE(qss_reached({1.0, 1.0, 1.0, 1.0, 1.0}, cfg));
  CHECK(qss_reached({1.0, 1.0, 1.0, 1.0, 1.0, 1.0}, cfg));
}

TEST_CASE("stationarity detector rejects a drifting series") {
  QssConfig cfg;
  cfg.window = 5;
  cfg.rel_tol = 1e-3;
  std::vector<double> rising;
  for (int i = 0; i < 10; ++i) rising.push_back(1.0 + 0.1 * i);
  CHECK_FALSE(qss_reached(rising, cfg));
  std::vector<double> flat(10, 42.0);
  CHECK(qss_reached(flat, cfg));
}

TEST_CASE("stationarity detector accepts noise within tolerance") {
  QssConfig cfg;
  cfg.window = 4;
  cfg.rel_tol = 0.05;
  CHECK(qss_reached({10.0, 10.2, 9.9, 10.1, 10.05, 9.95, 10.1, 10.0}, cfg));
}

TEST_CASE("zero trade budget reports not converged") {
  Rng rng(5);
  auto p = params_for(16, Exponent::finite(0), Exponent::finite(0));
  auto profile = generate_saving_profile(16, rng);
  QssConfig cfg;
  cfg.max_trades = 1;  // below one sampling stride
  auto res = run_to_qss(p, profile, cfg, rng);
  CHECK_FALSE(res.report.converged);
  CHECK(res.report.trades <= 1);
}

TEST_CASE("lambda=0 uniform trading reaches the exponential fixed point") {
  // With no saving and unweighted selection the stationary wealth density is
  // exp(-x), so the mean squared wealth per trader settles at 2.
  Rng rng(314159);
  const int n = 1000;
  auto p = params_for(n, Exponent::finite(0), Exponent::finite(0));
  auto profile = constant_saving_profile(n, 0.0);
  TradingEngine engine(p, profile, initial_wealth(p, rng));
  for (int t = 0; t < 100 * n; ++t) engine.step(rng);  // relax
  double acc = 0.0;
  const int snapshots = 200;
  for (int s = 0; s < snapshots; ++s) {
    for (int t = 0; t < 10 * n; ++t) engine.step(rng);
    acc += engine.state().sum_sq() / n;
  }
  CHECK(acc / snapshots == doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("equilibration converges for moderate sizes") {
  Rng rng(2718);
  const int n = 200;
  auto p = params_for(n, Exponent::finite(1), Exponent::finite(1));
  auto profile = generate_saving_profile(n, rng);
  QssConfig cfg;
  cfg.window = 50;
  cfg.rel_tol = 5e-3;
  cfg.max_trades = 40000000;
  auto res = run_to_qss(p, profile, cfg, rng);
  CHECK(res.report.converged);
  CHECK(res.report.trades > 0);
  CHECK(res.state.total() == doctest::Approx(n).epsilon(1e-9));
}

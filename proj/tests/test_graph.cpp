#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numeric>
#include <sstream>
#include <vector>

#include "ccmnet/rng.hpp"
#include "ccmnet/trade_graph.hpp"

using namespace ccmnet;

namespace {

TradeEvent ev(int i, int j, double w) { return TradeEvent{i, j, w, 0.5}; }

// Depth-first connectivity oracle over an explicit edge list.
std::vector<int> dfs_components(int n,
                                const std::vector<std::pair<int, int>>& edges) {
  std::vector<std::vector<int>> adj(n);
  for (auto [a, b] : edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  std::vector<int> comp(n, -1);
  int next = 0;
  for (int s = 0; s < n; ++s) {
    if (comp[s] != -1) continue;
    std::vector<int> stack{s};
    comp[s] = next;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int u : adj[v])
        if (comp[u] == -1) {
          comp[u] = next;
          stack.push_back(u);
        }
    }
    ++next;
  }
  return comp;
}

}  // namespace

TEST_CASE("union-find agrees with a DFS oracle on random graphs") {
  Rng rng(42);
  for (int trial = 0; trial < 50; ++trial) {
    int n = 4 + static_cast<int>(rng.uniform_below(61));
    UnionFind uf(n);
    std::vector<std::pair<int, int>> edges;
    int m = static_cast<int>(rng.uniform_below(3 * n));
    for (int e = 0; e < m; ++e) {
      int a = static_cast<int>(rng.uniform_below(n));
      int b = static_cast<int>(rng.uniform_below(n));
      if (a == b) continue;
      uf.unite(a, b);
      edges.emplace_back(a, b);
    }
    auto comp = dfs_components(n, edges);
    int n_comp = *std::max_element(comp.begin(), comp.end()) + 1;
    CHECK(uf.n_components() == n_comp);
    std::vector<int> sizes(n_comp, 0);
    for (int c : comp) ++sizes[c];
    CHECK(uf.largest_component() ==
          *std::max_element(sizes.begin(), sizes.end()));
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        CHECK((uf.find(a) == uf.find(b)) == (comp[a] == comp[b]));
  }
}

TEST_CASE("unite reports whether components merged") {
  UnionFind uf(4);
  CHECK(uf.unite(0, 1));
  CHECK(uf.unite(2, 3));
  CHECK(uf.unite(1, 2));
  CHECK_FALSE(uf.unite(0, 3));
  CHECK(uf.n_components() == 1);
  CHECK(uf.component_size(2) == 4);
}

TEST_CASE("first trade creates a link, repeats only add weight") {
  TradeGraph g(4);
  CHECK(g.record_trade(ev(0, 1, 2.0)) == LinkOutcome::NewLink);
  CHECK(g.record_trade(ev(1, 0, 3.0)) == LinkOutcome::ExistingLink);
  CHECK(g.n_links() == 1);
  CHECK(g.weight(0, 1) == doctest::Approx(5.0));
  CHECK(g.weight(1, 0) == doctest::Approx(5.0));
  CHECK(g.has_link(0, 1));
  CHECK_FALSE(g.has_link(0, 2));
  CHECK(g.weight(0, 2) == 0.0);
}

TEST_CASE("degree sum equals twice the link count") {
  Rng rng(7);
  TradeGraph g(30);
  for (int t = 0; t < 500; ++t) {
    int a = static_cast<int>(rng.uniform_below(30));
    int b = static_cast<int>(rng.uniform_below(30));
    if (a == b) continue;
    g.record_trade(ev(a, b, rng.uniform()));
  }
  auto deg = g.degree_sequence();
  std::uint64_t sum = std::accumulate(deg.begin(), deg.end(), std::uint64_t{0});
  CHECK(sum == 2 * g.n_links());
  CHECK(g.max_degree() == *std::max_element(deg.begin(), deg.end()));
}

TEST_CASE("strength is the sum of incident link weights") {
  TradeGraph g(3);
  g.record_trade(ev(0, 1, 1.5));
  g.record_trade(ev(0, 2, 2.5));
  g.record_trade(ev(2, 0, 1.0));
  auto s = g.strength_sequence();
  CHECK(s[0] == doctest::Approx(5.0));
  CHECK(s[1] == doctest::Approx(1.5));
  CHECK(s[2] == doctest::Approx(3.5));
  auto w = g.link_weights();
  REQUIRE(w.size() == 2);
  CHECK(w[0] + w[1] == doctest::Approx(5.0));
}

TEST_CASE("density, mean degree and clique detection") {
  TradeGraph g(4);
  CHECK(g.link_density() == 0.0);
  g.record_trade(ev(0, 1, 1.0));
  g.record_trade(ev(2, 3, 1.0));
  CHECK(g.link_density() == doctest::Approx(2.0 / 6.0));
  CHECK(g.mean_degree() == doctest::Approx(1.0));
  CHECK_FALSE(g.is_connected());
  CHECK(g.giant_component_fraction() == doctest::Approx(0.5));
  g.record_trade(ev(1, 2, 1.0));
  CHECK(g.is_connected());
  CHECK(g.giant_component_fraction() == doctest::Approx(1.0));
  CHECK_FALSE(g.is_clique());
  g.record_trade(ev(0, 2, 1.0));
  g.record_trade(ev(0, 3, 1.0));
  g.record_trade(ev(1, 3, 1.0));
  CHECK(g.is_clique());
}

TEST_CASE("growth times are recorded in trades at first attainment") {
  TradeGraph g(3);
  GrowthTimesTracker tracker;
  g.record_trade(ev(0, 1, 1.0));
  tracker.observe(g, 1);
  CHECK_FALSE(tracker.times().t_single_component.has_value());
  g.record_trade(ev(0, 1, 1.0));
  tracker.observe(g, 2);
  g.record_trade(ev(1, 2, 1.0));
  tracker.observe(g, 3);
  REQUIRE(tracker.times().t_single_component.has_value());
  CHECK(*tracker.times().t_single_component == 3);
  CHECK_FALSE(tracker.times().t_clique.has_value());
  g.record_trade(ev(2, 0, 1.0));
  tracker.observe(g, 9);
  REQUIRE(tracker.times().t_clique.has_value());
  CHECK(*tracker.times().t_clique == 9);
  // Later observations never overwrite the first attainment.
  tracker.observe(g, 50);
  CHECK(*tracker.times().t_single_component == 3);
  CHECK(*tracker.times().t_clique == 9);
}

TEST_CASE("uniform random pairing fills the clique in coupon-collector time") {
  // All-pairs coupon collector: expected M ln M trades for M = N(N-1)/2
  // distinct pairs. Checks order of magnitude, not the constant.
  Rng rng(11);
  const int n = 16;
  TradeGraph g(n);
  GrowthTimesTracker tracker;
  std::uint64_t t = 0;
  while (!g.is_clique()) {
    int a = static_cast<int>(rng.uniform_below(n));
    int b = static_cast<int>(rng.uniform_below(n));
    if (a == b) continue;
    g.record_trade(ev(a, b, 1.0));
    tracker.observe(g, ++t);
  }
  double m = n * (n - 1) / 2.0;
  double expected = m * std::log(m);
  REQUIRE(tracker.times().t_clique.has_value());
  auto t2 = static_cast<double>(*tracker.times().t_clique);
  CHECK(t2 > 0.3 * expected);
  CHECK(t2 < 3.0 * expected);
  REQUIRE(tracker.times().t_single_component.has_value());
  CHECK(*tracker.times().t_single_component < *tracker.times().t_clique);
}

TEST_CASE("edge list export is sorted with i < j") {
  TradeGraph g(4);
  g.record_trade(ev(3, 1, 0.25));
  g.record_trade(ev(2, 0, 1.0));
  g.record_trade(ev(1, 3, 0.25));
  std::ostringstream os;
  g.export_edge_list(os);
  CHECK(os.str() == "0 2 1\n1 3 0.5\n");
}

TEST_CASE("self trades are rejected") {
  TradeGraph g(3);
  CHECK_THROWS(g.record_trade(ev(1, 1, 1.0)));
}

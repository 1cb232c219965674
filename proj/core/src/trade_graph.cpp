#include "ccmnet/trade_graph.hpp"

#include <algorithm>
#include <cstdio>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace ccmnet {

UnionFind::UnionFind(int n)
    : parent_(n), size_(n, 1), largest_(n > 0 ? 1 : 0), n_components_(n) {
  std::iota(parent_.begin(), parent_.end(), 0);
}

int UnionFind::find(int v) {
  // Path halving.
  while (v != parent_[v]) {
    parent_[v] = parent_[parent_[v]];
    v = parent_[v];
  }
  return v;
}

bool UnionFind::unite(int a, int b) {
  a = find(a);
  b = find(b);
  if (a == b) return false;
  if (size_[a] < size_[b]) std::swap(a, b);
  parent_[b] = a;
  size_[a] += size_[b];
  largest_ = std::max(largest_, size_[a]);
  --n_components_;
  return true;
}

int UnionFind::component_size(int v) { return size_[find(v)]; }

TradeGraph::TradeGraph(int n)
    : n_(n), adjacency_(n), weights_(n), components_(n) {
  if (n < 2) throw std::invalid_argument("graph needs n >= 2");
}

int TradeGraph::find_neighbor(int a, int b) const {
  const auto& adj = adjacency_[a];
  auto it = std::lower_bound(adj.begin(), adj.end(), b);
  if (it == adj.end() || *it != b) return -1;
  return static_cast<int>(it - adj.begin());
}

LinkOutcome TradeGraph::record_trade(const TradeEvent& event) {
  int a = event.i, b = event.j;
  if (a < 0 || b < 0 || a >= n_ || b >= n_)
    throw std::invalid_argument("node index out of range");
  if (a == b) throw std::invalid_argument("self-links are not allowed");
  int pos = find_neighbor(a, b);
  if (pos >= 0) {
    weights_[a][pos] += event.invested;
    int rpos = find_neighbor(b, a);
    weights_[b][rpos] += event.invested;
    return LinkOutcome::ExistingLink;
  }
  auto insert_sorted = [](std::vector<int>& adj, std::vector<double>& w,
                          int node, double weight) {
    auto it = std::lower_bound(adj.begin(), adj.end(), node);
    auto at = it - adj.begin();
    adj.insert(it, node);
    w.insert(w.begin() + at, weight);
  };
  insert_sorted(adjacency_[a], weights_[a], b, event.invested);
  insert_sorted(adjacency_[b], weights_[b], a, event.invested);
  ++n_links_;
  components_.unite(a, b);
  return LinkOutcome::NewLink;
}

double TradeGraph::link_density() const {
  return static_cast<double>(n_links_) / static_cast<double>(max_links());
}

double TradeGraph::mean_degree() const {
  return 2.0 * static_cast<double>(n_links_) / static_cast<double>(n_);
}

double TradeGraph::giant_component_fraction() const {
  return static_cast<double>(components_.largest_component()) /
         static_cast<double>(n_);
}

bool TradeGraph::is_connected() const {
  return components_.largest_component() == n_;
}

std::vector<int> TradeGraph::degree_sequence() const {
  std::vector<int> k(n_);
  for (int v = 0; v < n_; ++v) k[v] = degree(v);
  return k;
}

std::vector<double> TradeGraph::strength_sequence() const {
  std::vector<double> s(n_, 0.0);
  for (int v = 0; v < n_; ++v)
    for (double w : weights_[v]) s[v] += w;
  return s;
}

std::vector<double> TradeGraph::link_weights() const {
  std::vector<double> out;
  out.reserve(n_links_);
  for (int v = 0; v < n_; ++v)
    for (std::size_t p = 0; p < adjacency_[v].size(); ++p)
      if (adjacency_[v][p] > v) out.push_back(weights_[v][p]);
  return out;
}

bool TradeGraph::has_link(int a, int b) const { return find_neighbor(a, b) >= 0; }

double TradeGraph::weight(int a, int b) const {
  int pos = find_neighbor(a, b);
  return pos >= 0 ? weights_[a][pos] : 0.0;
}

int TradeGraph::max_degree() const {
  int best = 0;
  for (int v = 0; v < n_; ++v) best = std::max(best, degree(v));
  return best;
}

std::vector<std::tuple<int, int, double>> TradeGraph::edge_list() const {
  std::vector<std::tuple<int, int, double>> out;
  out.reserve(n_links_);
  for (int v = 0; v < n_; ++v)
    for (std::size_t p = 0; p < adjacency_[v].size(); ++p)
      if (adjacency_[v][p] > v)
        out.emplace_back(v, adjacency_[v][p], weights_[v][p]);
  return out;
}

void TradeGraph::export_edge_list(std::ostream& os) const {
  char buf[64];
  for (int v = 0; v < n_; ++v) {
    for (std::size_t p = 0; p < adjacency_[v].size(); ++p) {
      int u = adjacency_[v][p];
      if (u <= v) continue;
      std::snprintf(buf, sizeof(buf), "%d %d %.17g\n", v, u, weights_[v][p]);
      os << buf;
    }
  }
}

void GrowthTimesTracker::observe(const TradeGraph& graph,
                                 std::uint64_t trades_elapsed) {
  if (!times_.t_single_component && graph.is_connected())
    times_.t_single_component = trades_elapsed;
  if (!times_.t_clique && graph.is_clique()) times_.t_clique = trades_elapsed;
}

}  // namespace ccmnet

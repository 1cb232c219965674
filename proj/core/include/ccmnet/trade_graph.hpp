#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <tuple>
#include <vector>

#include "ccmnet/model.hpp"

namespace ccmnet {

// Incremental disjoint-set over N nodes tracking the largest component size.
class UnionFind {
 public:
  explicit UnionFind(int n);

  int find(int v);
  // Merges the components of a and b; returns true if they were distinct.
  bool unite(int a, int b);

  int component_size(int v);
  int largest_component() const { return largest_; }
  int n_components() const { return n_components_; }

 private:
  std::vector<int> parent_;
  std::vector<int> size_;
  int largest_;
  int n_components_;
};

enum class LinkOutcome { NewLink, ExistingLink };

struct GrowthTimes {
  std::optional<std::uint64_t> t_single_component;  // T1, in trades
  std::optional<std::uint64_t> t_clique;            // T2, in trades
};

// Weighted undirected graph accumulated from trade events. Links appear at a
// pair's first trade; repeat trades only add to the link weight.
class TradeGraph {
 public:
  explicit TradeGraph(int n);

  LinkOutcome record_trade(const TradeEvent& event);

  int n_nodes() const { return n_; }
  std::uint64_t n_links() const { return n_links_; }
  std::uint64_t max_links() const {
    auto n = static_cast<std::uint64_t>(n_);
    return n * (n - 1) / 2;
  }

  double link_density() const;
  double mean_degree() const;
  double giant_component_fraction() const;

  bool is_connected() const;
  bool is_clique() const { return n_links_ == max_links(); }

  int degree(int v) const { return static_cast<int>(adjacency_[v].size()); }
  std::vector<int> degree_sequence() const;
  std::vector<double> strength_sequence() const;
  std::vector<double> link_weights() const;

  bool has_link(int a, int b) const;
  double weight(int a, int b) const;  // 0 if unlinked
  int max_degree() const;

  // (i, j, w) triples with i < j, ordered by (i, j).
  std::vector<std::tuple<int, int, double>> edge_list() const;

  const std::vector<int>& neighbors(int v) const { return adjacency_[v]; }
  const std::vector<double>& incident_weights(int v) const { return weights_[v]; }

  // "i j w" per link with i < j, 17-significant-digit weights.
  void export_edge_list(std::ostream& os) const;

 private:
  // Returns the sorted position of b in adjacency_[a], or -1.
  int find_neighbor(int a, int b) const;

  int n_;
  std::uint64_t n_links_ = 0;
  std::vector<std::vector<int>> adjacency_;   // sorted per node
  std::vector<std::vector<double>> weights_;  // parallel to adjacency_
  mutable UnionFind components_;
};

// Consumes the growth trace trade by trade and reports T1/T2.
class GrowthTimesTracker {
 public:
  void observe(const TradeGraph& graph, std::uint64_t trades_elapsed);
  GrowthTimes times() const { return times_; }

 private:
  GrowthTimes times_;
};

}  // namespace ccmnet

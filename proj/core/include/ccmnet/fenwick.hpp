#pragma once

#include <cstddef>
#include <vector>

namespace ccmnet {

// Binary indexed tree over nonnegative weights with O(log N) point update and
// O(log N) sampling of an index proportional to its weight.
class FenwickTree {
 public:
  FenwickTree() = default;

  explicit FenwickTree(std::size_t n)
      : n_(n), tree_(n + 1, 0.0), leaf_(n, 0.0) {
    init_pow2();
  }

  explicit FenwickTree(const std::vector<double>& weights)
      : n_(weights.size()), tree_(weights.size() + 1, 0.0), leaf_(weights) {
    // O(N) bulk build.
    for (std::size_t i = 1; i <= n_; ++i) {
      tree_[i] += leaf_[i - 1];
      std::size_t parent = i + (i & (~i + 1));
      if (parent <= n_) tree_[parent] += tree_[i];
    }
    init_pow2();
  }

  std::size_t size() const { return n_; }

  double get(std::size_t idx) const { return leaf_[idx]; }

  void set(std::size_t idx, double w) {
    double delta = w - leaf_[idx];
    leaf_[idx] = w;
    for (std::size_t i = idx + 1; i <= n_; i += i & (~i + 1)) tree_[i] += delta;
  }

  // Sum of weights over [0, idx).
  double prefix(std::size_t idx) const {
    double s = 0.0;
    for (std::size_t i = idx; i > 0; i -= i & (~i + 1)) s += tree_[i];
    return s;
  }

  double total() const { return prefix(n_); }

  // Index whose cumulative weight interval contains target, target in
  // [0, total()).
  std::size_t find(double target) const {
    std::size_t pos = 0;
    for (std::size_t mask = highest_pow2_; mask > 0; mask >>= 1) {
      std::size_t next = pos + mask;
      if (next <= n_ && tree_[next] <= target) {
        target -= tree_[next];
        pos = next;
      }
    }
    // Descent can land on a zero-weight leaf at an exact boundary.
    while (pos + 1 < n_ && leaf_[pos] <= 0.0) ++pos;
    return pos;
  }

 private:
  void init_pow2() {
    highest_pow2_ = 1;
    while (highest_pow2_ * 2 <= n_) highest_pow2_ *= 2;
  }

  std::size_t n_ = 0;
  std::vector<double> tree_;
  std::vector<double> leaf_;
  std::size_t highest_pow2_ = 0;
};

}  // namespace ccmnet

#pragma once

#include <cstddef>
#include <limits>
#include <vector>

namespace ccmnet {

// Segment tree answering argmax queries with point updates; ties are broken
// toward the lowest index so that infinite-exponent selection is
// deterministic.
class MaxTree {
 public:
  MaxTree() = default;

  explicit MaxTree(const std::vector<double>& values) { build(values); }

  void build(const std::vector<double>& values) {
    n_ = values.size();
    cap_ = 1;
    while (cap_ < n_) cap_ *= 2;
    value_.assign(2 * cap_, -std::numeric_limits<double>::infinity());
    index_.assign(2 * cap_, 0);
    for (std::size_t i = 0; i < n_; ++i) {
      value_[cap_ + i] = values[i];
      index_[cap_ + i] = i;
    }
    for (std::size_t i = cap_ + n_; i < 2 * cap_; ++i) index_[i] = i - cap_;
    for (std::size_t i = cap_ - 1; i >= 1; --i) pull(i);
  }

  std::size_t size() const { return n_; }

  double get(std::size_t idx) const { return value_[cap_ + idx]; }

  void set(std::size_t idx, double v) {
    std::size_t i = cap_ + idx;
    value_[i] = v;
    for (i /= 2; i >= 1; i /= 2) pull(i);
  }

  // Index of the maximum value (lowest index on ties).
  std::size_t argmax() const { return index_[1]; }

  // Argmax over all indices except `excluded`.
  std::size_t argmax_excluding(std::size_t excluded) {
    double saved = value_[cap_ + excluded];
    set(excluded, -std::numeric_limits<double>::infinity());
    std::size_t best = argmax();
    set(excluded, saved);
    return best;
  }

 private:
  void pull(std::size_t i) {
    std::size_t l = 2 * i, r = 2 * i + 1;
    bool left_wins = value_[l] > value_[r] ||
                     (value_[l] == value_[r] && index_[l] <= index_[r]);
    value_[i] = left_wins ? value_[l] : value_[r];
    index_[i] = left_wins ? index_[l] : index_[r];
  }

  std::size_t n_ = 0;
  std::size_t cap_ = 1;
  std::vector<double> value_;
  std::vector<std::size_t> index_;
};

}  // namespace ccmnet

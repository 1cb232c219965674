#pragma once

#include <cstdint>
#include <map>
#include <vector>

namespace ccmnet {

// Log-binned empirical density. Bin edges sit on the global lattice
// 10^(m / bins_per_decade), so histograms from different realizations share
// edges and can be merged bin-wise.
struct Histogram {
  std::vector<double> edges;    // nbins + 1, strictly increasing, positive
  std::vector<std::uint64_t> counts;
  std::vector<double> density;  // count / (n_samples * bin width)
  std::uint64_t n_samples = 0;  // positive samples only
  std::uint64_t n_nonpositive = 0;
  int bins_per_decade = 0;

  std::size_t n_bins() const { return counts.size(); }
  double center(std::size_t b) const;  // geometric bin center
  std::vector<double> centers() const;
};

// Streaming accumulator behind Histogram; merging accumulators is how the
// ensemble averages distributions across realizations.
class LogBinAccumulator {
 public:
  explicit LogBinAccumulator(int bins_per_decade);

  void add(double sample);
  void add_count(double sample, std::uint64_t count);
  void merge(const LogBinAccumulator& other);

  std::uint64_t n_samples() const { return n_; }
  bool empty() const { return counts_.empty(); }
  int bins_per_decade() const { return bpd_; }

  Histogram histogram() const;

 private:
  long bin_index(double x) const;

  int bpd_;
  std::map<long, std::uint64_t> counts_;
  std::uint64_t n_ = 0;
  std::uint64_t nonpositive_ = 0;
};

// Convenience one-shot builder over a sample vector.
Histogram log_binned_histogram(const std::vector<double>& samples,
                               int bins_per_decade);

}  // namespace ccmnet

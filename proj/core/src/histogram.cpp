#include "ccmnet/histogram.hpp"

#include <cmath>
#include <stdexcept>

#include "ccmnet/errors.hpp"

namespace ccmnet {

namespace {
double lattice_edge(long m, int bpd) {
  return std::pow(10.0, static_cast<double>(m) / bpd);
}
}  // namespace

double Histogram::center(std::size_t b) const {
  return std::sqrt(edges[b] * edges[b + 1]);
}

std::vector<double> Histogram::centers() const {
  std::vector<double> c(n_bins());
  for (std::size_t b = 0; b < c.size(); ++b) c[b] = center(b);
  return c;
}

LogBinAccumulator::LogBinAccumulator(int bins_per_decade) : bpd_(bins_per_decade) {
  if (bins_per_decade < 1)
    throw std::invalid_argument("bins_per_decade must be >= 1");
}

long LogBinAccumulator::bin_index(double x) const {
  long m = static_cast<long>(std::floor(std::log10(x) * bpd_));
  // log10 rounding can land one lattice cell off; nudge against exact edges.
  while (x < lattice_edge(m, bpd_)) --m;
  while (x >= lattice_edge(m + 1, bpd_)) ++m;
  return m;
}

void LogBinAccumulator::add(double sample) { add_count(sample, 1); }

void LogBinAccumulator::add_count(double sample, std::uint64_t count) {
  if (!(sample > 0.0)) {
    nonpositive_ += count;
    return;
  }
  counts_[bin_index(sample)] += count;
  n_ += count;
}

void LogBinAccumulator::merge(const LogBinAccumulator& other) {
  if (other.bpd_ != bpd_)
    throw std::invalid_argument("cannot merge accumulators with different binning");
  for (const auto& [m, c] : other.counts_) counts_[m] += c;
  n_ += other.n_;
  nonpositive_ += other.nonpositive_;
}

Histogram LogBinAccumulator::histogram() const {
  if (counts_.empty())
    throw InsufficientDataError("no positive samples to histogram");
  long lo = counts_.begin()->first;
  long hi = counts_.rbegin()->first;
  Histogram h;
  h.bins_per_decade = bpd_;
  h.n_samples = n_;
  h.n_nonpositive = nonpositive_;
  std::size_t nbins = static_cast<std::size_t>(hi - lo + 1);
  h.edges.resize(nbins + 1);
  h.counts.assign(nbins, 0);
  h.density.assign(nbins, 0.0);
  for (std::size_t b = 0; b <= nbins; ++b)
    h.edges[b] = lattice_edge(lo + static_cast<long>(b), bpd_);
  for (const auto& [m, c] : counts_) h.counts[m - lo] = c;
  for (std::size_t b = 0; b < nbins; ++b) {
    double width = h.edges[b + 1] - h.edges[b];
    h.density[b] =
        static_cast<double>(h.counts[b]) / (static_cast<double>(n_) * width);
  }
  return h;
}

Histogram log_binned_histogram(const std::vector<double>& samples,
                               int bins_per_decade) {
  if (samples.empty()) throw InsufficientDataError("empty sample set");
  LogBinAccumulator acc(bins_per_decade);
  for (double s : samples) acc.add(s);
  return acc.histogram();
}

}  // namespace ccmnet

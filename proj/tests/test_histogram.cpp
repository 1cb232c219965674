#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "ccmnet/histogram.hpp"
#include "ccmnet/rng.hpp"

using namespace ccmnet;

TEST_CASE("one bin per decade separates 1 and 10") {
  Histogram h = log_binned_histogram({1.0, 10.0}, 1);
  REQUIRE(h.n_samples == 2);
  std::uint64_t occupied = 0, total = 0;
  for (auto c : h.counts) {
    total += c;
    if (c > 0) ++occupied;
  }
  CHECK(total == 2);
  CHECK(occupied == 2);
  // 1.0 and 10.0 sit on decade boundaries and open their own bins.
  CHECK(h.edges.front() == doctest::Approx(1.0));
  CHECK(h.edges.back() >= 10.0);
}

TEST_CASE("identical samples occupy a single bin") {
  Histogram h = log_binned_histogram(std::vector<double>(57, 1.0), 8);
  std::uint64_t occupied = 0;
  for (std::size_t b = 0; b < h.n_bins(); ++b)
    if (h.counts[b] > 0) {
      ++occupied;
      CHECK(h.counts[b] == 57);
      CHECK(h.edges[b] <= 1.0);
      CHECK(h.edges[b + 1] > 1.0);
    }
  CHECK(occupied == 1);
}

TEST_CASE("edges sit on the global decade lattice") {
  Histogram h = log_binned_histogram({0.37, 5.2, 81.0}, 4);
  for (double e : h.edges) {
    double m = 4.0 * std::log10(e);
    CHECK(m == doctest::Approx(std::round(m)).epsilon(1e-9));
  }
  CHECK(h.bins_per_decade == 4);
}

TEST_CASE("density integrates to one") {
  Rng rng(5);
  std::vector<double> samples(20000);
  for (auto& s : samples) s = std::exp(rng.uniform(-3.0, 4.0));
  Histogram h = log_binned_histogram(samples, 8);
  double integral = 0.0;
  for (std::size_t b = 0; b < h.n_bins(); ++b)
    integral += h.density[b] * (h.edges[b + 1] - h.edges[b]);
  CHECK(integral == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("merged accumulators equal pooled samples") {
  Rng rng(17);
  std::vector<double> a(500), b(700);
  for (auto& s : a) s = rng.uniform() * 50.0 + 0.01;
  for (auto& s : b) s = rng.uniform() * 5.0 + 0.001;
  LogBinAccumulator accA(8), accB(8), pooled(8);
  for (double s : a) {
    accA.add(s);
    pooled.add(s);
  }
  for (double s : b) {
    accB.add(s);
    pooled.add(s);
  }
  accA.merge(accB);
  Histogram merged = accA.histogram();
  Histogram direct = pooled.histogram();
  REQUIRE(merged.n_bins() == direct.n_bins());
  CHECK(merged.edges == direct.edges);
  CHECK(merged.counts == direct.counts);
  CHECK(merged.n_samples == direct.n_samples);
}

TEST_CASE("non-positive samples are excluded but tallied") {
  LogBinAccumulator acc(8);
  acc.add(1.0);
  acc.add(0.0);
  acc.add(-2.5);
  Histogram h = acc.histogram();
  CHECK(h.n_samples == 1);
  CHECK(h.n_nonpositive == 2);
}

TEST_CASE("weighted counts match repeated adds") {
  LogBinAccumulator one(8), many(8);
  one.add_count(3.7, 25);
  for (int i = 0; i < 25; ++i) many.add(3.7);
  CHECK(one.histogram().counts == many.histogram().counts);
}

TEST_CASE("interior empty bins are materialized") {
  Histogram h = log_binned_histogram({1.0, 1000.0}, 1);
  CHECK(h.n_bins() >= 3);  // spans three decades even though two are empty
  std::uint64_t zero_bins = 0;
  for (auto c : h.counts)
    if (c == 0) ++zero_bins;
  CHECK(zero_bins >= 1);
}

TEST_CASE("recovers a known power-law density") {
  // Inverse-CDF sampling of p(x) = x^-2 on [1, inf).
  Rng rng(2024);
  const int n = 400000;
  LogBinAccumulator acc(8);
  for (int i = 0; i < n; ++i) acc.add(1.0 / (1.0 - rng.uniform()));
  Histogram h = acc.histogram();
  for (std::size_t b = 0; b < h.n_bins(); ++b) {
    double c = h.center(b);
    if (c < 2.0 || c > 50.0 || h.counts[b] == 0) continue;
    CHECK(h.density[b] == doctest::Approx(1.0 / (c * c)).epsilon(0.15));
  }
}

TEST_CASE("geometric centers lie between their edges") {
  Histogram h = log_binned_histogram({0.5, 2.0, 7.7}, 8);
  for (std::size_t b = 0; b < h.n_bins(); ++b) {
    CHECK(h.center(b) > h.edges[b]);
    CHECK(h.center(b) < h.edges[b + 1]);
    CHECK(h.center(b) ==
          doctest::Approx(std::sqrt(h.edges[b] * h.edges[b + 1])));
  }
  CHECK(h.centers().size() == h.n_bins());
}

#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "ccmnet/ensemble.hpp"
#include "ccmnet/histogram.hpp"

namespace ccmnet {

inline constexpr const char* kArtifactVersion = "ccmnet 0.1.0";

// Locale-independent shortest-round-trip-safe decimal (17 significant digits).
std::string format_double(double v);

void write_histogram_csv(const std::filesystem::path& path, const Histogram& h);
Histogram read_histogram_csv(const std::filesystem::path& path);

void write_percolation_csv(const std::filesystem::path& path,
                           const PercolationCurve& curve,
                           const std::vector<std::uint64_t>& n_realizations);

void write_lambda_wealth_csv(const std::filesystem::path& path,
                             const LambdaWealthCurve& curve);

void write_conditional_means_csv(const std::filesystem::path& path,
                                 const ConditionalMeanFit& fit);

// Creates the output directory, refuses to overwrite an existing manifest
// unless `force`, and writes manifest.json plus every curve the run produced.
void write_ensemble_output(const std::filesystem::path& dir,
                           const ExperimentConfig& config,
                           const EnsembleOutput& output, bool force);

}  // namespace ccmnet

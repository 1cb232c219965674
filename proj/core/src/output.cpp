#include "ccmnet/output.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "ccmnet/config.hpp"
#include "ccmnet/errors.hpp"
#include "ccmnet/rng.hpp"

namespace ccmnet {

namespace fs = std::filesystem;
using nlohmann::json;

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_histogram_csv(const fs::path& path, const Histogram& h) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "bin_low,bin_high,bin_center,count,density\n";
  for (std::size_t b = 0; b < h.n_bins(); ++b) {
    out << format_double(h.edges[b]) << "," << format_double(h.edges[b + 1])
        << "," << format_double(h.center(b)) << "," << h.counts[b] << ","
        << format_double(h.density[b]) << "\n";
  }
}

Histogram read_histogram_csv(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  Histogram h;
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty csv");
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    double lo, hi, center, density;
    unsigned long long count;
    if (std::sscanf(line.c_str(), "%lf,%lf,%lf,%llu,%lf", &lo, &hi, &center,
                    &count, &density) != 5)
      throw std::runtime_error("bad csv row: " + line);
    if (h.edges.empty()) h.edges.push_back(lo);
    h.edges.push_back(hi);
    h.counts.push_back(count);
    h.density.push_back(density);
    h.n_samples += count;
  }
  return h;
}

void write_percolation_csv(const fs::path& path, const PercolationCurve& curve,
                           const std::vector<std::uint64_t>& n_realizations) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "rho,mean_giant_fraction,n_realizations\n";
  for (std::size_t k = 0; k < curve.points.size(); ++k) {
    out << format_double(curve.points[k].first) << ","
        << format_double(curve.points[k].second) << ","
        << (k < n_realizations.size() ? n_realizations[k] : 0) << "\n";
  }
}

void write_lambda_wealth_csv(const fs::path& path,
                             const LambdaWealthCurve& curve) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "lambda,mean_wealth,mean_product,count\n";
  for (std::size_t b = 0; b < curve.lambda_centers.size(); ++b) {
    out << format_double(curve.lambda_centers[b]) << ","
        << format_double(curve.mean_wealth[b]) << ","
        << format_double(curve.mean_product[b]) << "," << curve.bin_counts[b]
        << "\n";
  }
}

void write_conditional_means_csv(const fs::path& path,
                                 const ConditionalMeanFit& fit) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "k,mean_strength,mean_wealth,count\n";
  for (std::size_t b = 0; b < fit.k_centers.size(); ++b) {
    out << format_double(fit.k_centers[b]) << ","
        << format_double(fit.mean_strength[b]) << ","
        << format_double(fit.mean_wealth[b]) << "," << fit.bin_counts[b]
        << "\n";
  }
}

namespace {

json fit_to_json(const PowerLawFit& fit) {
  return json{{"exponent", fit.exponent},
              {"stderr", fit.stderr_},
              {"fit_low", fit.fit_low},
              {"fit_high", fit.fit_high},
              {"r_squared", fit.r_squared},
              {"n_bins", fit.n_bins}};
}

}  // namespace

void write_ensemble_output(const fs::path& dir, const ExperimentConfig& config,
                           const EnsembleOutput& output, bool force) {
  fs::create_directories(dir);
  fs::path manifest_path = dir / "manifest.json";
  if (fs::exists(manifest_path) && !force)
    throw std::runtime_error("refusing to overwrite existing manifest: " +
                             manifest_path.string() + " (use --force)");

  if (output.wealth_hist)
    write_histogram_csv(dir / "wealth_hist.csv", *output.wealth_hist);
  if (output.degree_hist)
    write_histogram_csv(dir / "degree_hist.csv", *output.degree_hist);
  if (output.weight_hist)
    write_histogram_csv(dir / "weight_hist.csv", *output.weight_hist);
  if (output.strength_hist)
    write_histogram_csv(dir / "strength_hist.csv", *output.strength_hist);
  if (!output.percolation.points.empty())
    write_percolation_csv(dir / "percolation.csv", output.percolation,
                          output.percolation_n);
  if (output.lambda_wealth)
    write_lambda_wealth_csv(dir / "lambda_wealth.csv", *output.lambda_wealth);
  if (output.conditional)
    write_conditional_means_csv(dir / "conditional_means.csv",
                                *output.conditional);

  json manifest;
  manifest["artifact_version"] = kArtifactVersion;
  manifest["rng_algorithm"] = Rng::algorithm_id();
  manifest["master_seed"] = config.master_seed;
  manifest["config_text"] = serialize_config(config);
  manifest["n_realizations"] = output.n_realizations;
  manifest["n_converged"] = output.n_converged;
  manifest["n_excluded"] = output.n_excluded;
  manifest["max_wealth_drift"] = output.max_wealth_drift;
  json fits = json::object();
  if (output.fits.wealth) fits["wealth"] = fit_to_json(*output.fits.wealth);
  if (output.fits.degree) fits["degree"] = fit_to_json(*output.fits.degree);
  if (output.fits.weight) fits["weight"] = fit_to_json(*output.fits.weight);
  if (output.fits.strength)
    fits["strength"] = fit_to_json(*output.fits.strength);
  if (output.fits.chi) {
    fits["chi"] = *output.fits.chi;
    fits["chi_stderr"] = *output.fits.chi_stderr;
  }
  manifest["fits"] = fits;
  if (output.conditional) {
    manifest["phi"] = output.conditional->phi;
    manifest["phi_stderr"] = output.conditional->phi_stderr;
    manifest["mu"] = output.conditional->mu;
    manifest["mu_stderr"] = output.conditional->mu_stderr;
  }
  if (!output.t1_list.empty()) manifest["t1_trades"] = output.t1_list;
  if (!output.t2_list.empty()) manifest["t2_trades"] = output.t2_list;
  if (!output.links_per_net.empty())
    manifest["links_per_net"] = output.links_per_net;
  if (!output.max_degree_per_net.empty())
    manifest["max_degree_per_net"] = output.max_degree_per_net;
  if (!output.degree_counts.empty()) {
    json dc = json::object();
    for (const auto& [k, c] : output.degree_counts) dc[std::to_string(k)] = c;
    manifest["degree_counts"] = dc;
  }

  std::ofstream out(manifest_path);
  if (!out) throw std::runtime_error("cannot write " + manifest_path.string());
  out << manifest.dump(2) << "\n";
}

}  // namespace ccmnet

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ccmnet/collapse.hpp"
#include "ccmnet/config.hpp"
#include "ccmnet/ensemble.hpp"
#include "ccmnet/errors.hpp"
#include "ccmnet/output.hpp"
#include "ccmnet/percolation.hpp"
#include "ccmnet/power_law.hpp"
#include "ccmnet/wealth_analysis.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace ccmnet;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitRuntime = 2;
constexpr int kExitNotConverged = 3;

struct CommonOpts {
  std::string config_path;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
  std::vector<std::string> overrides;
  bool force = false;
  int threads = 1;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--config", opts.config_path, "experiment config file")
      ->required();
  cmd->add_option("--out", opts.out_dir, "output directory")->required();
  cmd->add_option("--seed", opts.seed, "override master_seed");
  cmd->add_option("--set", opts.overrides,
                  "override a config key, key=value (repeatable)");
  cmd->add_flag("--force", opts.force, "overwrite existing output");
  cmd->add_option("--threads", opts.threads, "worker threads over disorder sets")
      ->check(CLI::PositiveNumber);
}

ExperimentConfig load(const CommonOpts& opts) {
  ExperimentConfig config = load_config_file(opts.config_path);
  for (const std::string& kv : opts.overrides) {
    auto eq = kv.find('=');
    if (eq == std::string::npos)
      throw ConfigError("--set expects key=value, got '" + kv + "'");
    apply_override(config, kv.substr(0, eq), kv.substr(eq + 1));
  }
  if (opts.seed) config.master_seed = *opts.seed;
  config.validate();
  return config;
}

void check_out_dir(const fs::path& dir, bool force) {
  if (fs::exists(dir / "manifest.json") && !force)
    throw std::runtime_error("output already exists: " +
                             (dir / "manifest.json").string() +
                             " (use --force)");
}

void print_fit(const char* label, const std::optional<PowerLawFit>& fit) {
  if (!fit) return;
  std::printf("  %-9s exponent %.4f +/- %.4f  (window [%.4g, %.4g], r2 %.4f)\n",
              label, fit->exponent, fit->stderr_, fit->fit_low, fit->fit_high,
              fit->r_squared);
}

void print_summary(const ExperimentConfig& config, const EnsembleOutput& out) {
  std::printf("n=%d alpha=%s beta=%s: %d/%d realizations converged\n",
              config.model.n_traders, config.model.alpha.str().c_str(),
              config.model.beta.str().c_str(), out.n_converged,
              out.n_realizations);
  print_fit("wealth", out.fits.wealth);
  print_fit("degree", out.fits.degree);
  print_fit("weight", out.fits.weight);
  print_fit("strength", out.fits.strength);
  if (out.fits.chi)
    std::printf("  chi       %.4f +/- %.4f\n", *out.fits.chi,
                *out.fits.chi_stderr);
  if (out.conditional) {
    std::printf("  phi       %.4f +/- %.4f\n", out.conditional->phi,
                out.conditional->phi_stderr);
    std::printf("  mu        %.4f +/- %.4f\n", out.conditional->mu,
                out.conditional->mu_stderr);
  }
}

void export_edges(const ExperimentConfig& config, const fs::path& dir) {
  for (int set = 0; set < config.n_lambda_sets; ++set) {
    SetResult res = run_set(config, set);
    for (const RealizationOutput& r : res.realizations) {
      char name[64];
      std::snprintf(name, sizeof(name), "graph_set%d_net%d.edges", r.set_index,
                    r.net_index);
      std::ofstream os(dir / name);
      for (const auto& [i, j, w] : r.edges)
        os << i << " " << j << " " << format_double(w) << "\n";
    }
  }
}

int cmd_simulate(const CommonOpts& opts, bool with_edges) {
  ExperimentConfig config = load(opts);
  fs::path dir(opts.out_dir);
  check_out_dir(dir, opts.force);
  EnsembleOutput out = run_ensemble(config, opts.threads);
  write_ensemble_output(dir, config, out, opts.force);
  if (with_edges) export_edges(config, dir);
  print_summary(config, out);
  if (out.n_excluded > 0) {
    std::fprintf(stderr, "warning: %d realizations never equilibrated\n",
                 out.n_excluded);
    return kExitNotConverged;
  }
  return kExitOk;
}

// Expands the sweep axes declared in the config into concrete override sets.
struct SweepPoint {
  std::string label;
  ExperimentConfig config;
};

std::vector<SweepPoint> expand_sweep(const ExperimentConfig& base) {
  std::vector<ExperimentConfig> by_size;
  std::vector<std::string> size_tags;
  if (base.sweep_sizes.empty()) {
    by_size.push_back(base);
    size_tags.push_back("");
  } else {
    for (int n : base.sweep_sizes) {
      ExperimentConfig c = base;
      c.model.n_traders = n;
      by_size.push_back(c);
      size_tags.push_back("N" + std::to_string(n));
    }
  }
  std::vector<SweepPoint> points;
  if (base.sweep_param.empty()) {
    for (std::size_t s = 0; s < by_size.size(); ++s)
      points.push_back({size_tags[s].empty() ? "base" : size_tags[s],
                        by_size[s]});
    return points;
  }
  if (base.sweep_values.empty())
    throw ConfigError("sweep_param set but sweep_values empty");
  for (std::size_t s = 0; s < by_size.size(); ++s)
    for (const std::string& v : by_size[s].sweep_values) {
      ExperimentConfig c = by_size[s];
      apply_override(c, base.sweep_param, v);
      std::string tag = base.sweep_param + v;
      if (!size_tags[s].empty()) tag = size_tags[s] + "_" + tag;
      points.push_back({tag, c});
    }
  return points;
}

int cmd_sweep(const CommonOpts& opts) {
  ExperimentConfig base = load(opts);
  auto points = expand_sweep(base);
  if (points.size() < 2)
    throw ConfigError("sweep needs sweep_sizes and/or sweep_param+sweep_values");
  fs::path dir(opts.out_dir);
  fs::create_directories(dir);
  std::ofstream summary(dir / "sweep_summary.csv");
  summary << "label,n_traders,alpha,beta,n_converged,gamma_wealth,gamma_degree,"
             "gamma_weight,gamma_strength,chi,phi,mu\n";
  int worst = kExitOk;
  for (const SweepPoint& p : points) {
    std::printf("--- %s ---\n", p.label.c_str());
    EnsembleOutput out = run_ensemble(p.config, opts.threads);
    write_ensemble_output(dir / p.label, p.config, out, opts.force);
    print_summary(p.config, out);
    auto opt = [](const std::optional<PowerLawFit>& f) {
      return f ? format_double(f->exponent) : std::string("nan");
    };
    summary << p.label << "," << p.config.model.n_traders << ","
            << p.config.model.alpha.str() << "," << p.config.model.beta.str()
            << "," << out.n_converged << "," << opt(out.fits.wealth) << ","
            << opt(out.fits.degree) << "," << opt(out.fits.weight) << ","
            << opt(out.fits.strength) << ","
            << (out.fits.chi ? format_double(*out.fits.chi) : "nan") << ","
            << (out.conditional ? format_double(out.conditional->phi) : "nan")
            << ","
            << (out.conditional ? format_double(out.conditional->mu) : "nan")
            << "\n";
    if (out.n_excluded > 0) worst = kExitNotConverged;
  }
  return worst;
}

int cmd_percolation(const CommonOpts& opts) {
  ExperimentConfig base = load(opts);
  if (base.sweep_sizes.empty())
    throw ConfigError("percolation needs sweep_sizes");
  if (base.snapshot_schedule.empty())
    throw ConfigError("percolation needs a snapshot_schedule");
  fs::path dir(opts.out_dir);
  fs::create_directories(dir);
  std::map<int, double> thresholds;
  int worst = kExitOk;
  for (int n : base.sweep_sizes) {
    ExperimentConfig c = base;
    c.model.n_traders = n;
    EnsembleOutput out = run_ensemble(c, opts.threads);
    write_ensemble_output(dir / ("N" + std::to_string(n)), c, out, opts.force);
    double rho_c = percolation_threshold(out.percolation.points);
    thresholds[n] = rho_c;
    std::printf("N=%-7d rho_c = %.6g   (%d/%d realizations)\n", n, rho_c,
                out.n_converged, out.n_realizations);
    if (out.n_excluded > 0) worst = kExitNotConverged;
  }
  std::ofstream summary(dir / "thresholds.csv");
  summary << "n_traders,rho_c\n";
  for (auto [n, rho] : thresholds)
    summary << n << "," << format_double(rho) << "\n";
  json j;
  j["thresholds"] = json::object();
  for (auto [n, rho] : thresholds) j["thresholds"][std::to_string(n)] = rho;
  if (thresholds.size() >= 3) {
    ThetaFit theta = fit_theta(thresholds);
    std::printf("theta = %.4f +/- %.4f\n", theta.theta, theta.stderr_);
    j["theta"] = theta.theta;
    j["theta_stderr"] = theta.stderr_;
  }
  std::ofstream(dir / "summary.json") << j.dump(2) << "\n";
  return worst;
}

int cmd_collapse(const CommonOpts& opts, const std::string& observable) {
  ExperimentConfig base = load(opts);
  if (base.sweep_sizes.size() < 2)
    throw ConfigError("collapse needs >= 2 sweep_sizes");
  fs::path dir(opts.out_dir);
  fs::create_directories(dir);
  std::map<int, Histogram> curves;
  int worst = kExitOk;
  for (int n : base.sweep_sizes) {
    ExperimentConfig c = base;
    c.model.n_traders = n;
    EnsembleOutput out = run_ensemble(c, opts.threads);
    write_ensemble_output(dir / ("N" + std::to_string(n)), c, out, opts.force);
    std::optional<Histogram> h;
    if (observable == "degree") h = out.degree_hist;
    else if (observable == "wealth") h = out.wealth_hist;
    else if (observable == "strength") h = out.strength_hist;
    else if (observable == "weight") h = out.weight_hist;
    if (!h) throw std::runtime_error("no " + observable + " histogram at N=" +
                                     std::to_string(n));
    curves[n] = *h;
    if (out.n_excluded > 0) worst = kExitNotConverged;
  }
  ScalingCollapse best = optimize_collapse(curves, CollapseBox{});
  std::printf("%s collapse: eta = %.4f, zeta = %.4f, gamma = eta/zeta = %.4f "
              "(score %.4g)\n",
              observable.c_str(), best.eta, best.zeta, best.derived_gamma,
              best.score);
  json j{{"observable", observable},
         {"eta", best.eta},
         {"zeta", best.zeta},
         {"gamma", best.derived_gamma},
         {"score", best.score}};
  std::ofstream(dir / "summary.json") << j.dump(2) << "\n";
  std::ofstream curve_csv(dir / "collapse_curves.csv");
  curve_csv << "n_traders,x_rescaled,density_rescaled\n";
  for (const auto& [n, h] : curves) {
    double zx = std::pow(static_cast<double>(n), best.zeta);
    double zy = std::pow(static_cast<double>(n), best.eta);
    for (std::size_t b = 0; b < h.n_bins(); ++b) {
      if (h.counts[b] == 0) continue;
      curve_csv << n << "," << format_double(h.center(b) / zx) << ","
                << format_double(h.density[b] * zy) << "\n";
    }
  }
  return worst;
}

int cmd_pareto(const CommonOpts& opts) {
  ExperimentConfig config = load(opts);
  fs::path dir(opts.out_dir);
  check_out_dir(dir, opts.force);
  EnsembleOutput out = run_ensemble(config, opts.threads);
  write_ensemble_output(dir, config, out, opts.force);
  print_summary(config, out);
  if (out.fits.chi) {
    // Tabulate the matching analytic wealth density for overlay plots.
    TheoreticalDensity th = eq6_density(std::max(0.0, *out.fits.chi), 20000);
    std::ofstream csv(dir / "theory_density.csv");
    csv << "x,density\n";
    for (std::size_t k = 0; k < th.x.size(); ++k)
      csv << format_double(th.x[k]) << "," << format_double(th.density[k])
          << "\n";
  }
  return out.n_excluded > 0 ? kExitNotConverged : kExitOk;
}

int cmd_clique(const CommonOpts& opts) {
  ExperimentConfig base = load(opts);
  if (base.sweep_sizes.empty()) throw ConfigError("clique needs sweep_sizes");
  base.stop_rule.kind = StopRuleKind::Clique;
  fs::path dir(opts.out_dir);
  fs::create_directories(dir);
  std::ofstream csv(dir / "growth_times.csv");
  csv << "n_traders,realization,t1_trades,t2_trades\n";
  std::vector<double> log_n, log_t1, log_t2;
  int worst = kExitOk;
  for (int n : base.sweep_sizes) {
    ExperimentConfig c = base;
    c.model.n_traders = n;
    EnsembleOutput out = run_ensemble(c, opts.threads);
    write_ensemble_output(dir / ("N" + std::to_string(n)), c, out, opts.force);
    double m1 = 0.0, m2 = 0.0;
    for (std::size_t r = 0; r < out.t2_list.size(); ++r) {
      std::uint64_t t1 = r < out.t1_list.size() ? out.t1_list[r] : 0;
      csv << n << "," << r << "," << t1 << "," << out.t2_list[r] << "\n";
      m1 += static_cast<double>(t1);
      m2 += static_cast<double>(out.t2_list[r]);
    }
    if (!out.t2_list.empty()) {
      m1 /= static_cast<double>(out.t2_list.size());
      m2 /= static_cast<double>(out.t2_list.size());
      std::printf("N=%-5d <T1> = %.4g  <T2> = %.4g  (%zu realizations)\n", n,
                  m1, m2, out.t2_list.size());
      log_n.push_back(std::log10(static_cast<double>(n)));
      log_t1.push_back(std::log10(std::max(m1, 1.0)));
      log_t2.push_back(std::log10(m2));
    }
    if (out.n_excluded > 0) worst = kExitNotConverged;
  }
  json j;
  if (log_n.size() >= 3) {
    LinearFit f1 = linear_fit(log_n, log_t1);
    LinearFit f2 = linear_fit(log_n, log_t2);
    std::printf("T1 ~ N^%.3f (+/- %.3f),  T2 ~ N^%.3f (+/- %.3f)\n", f1.slope,
                f1.slope_stderr, f2.slope, f2.slope_stderr);
    j["t1_slope"] = f1.slope;
    j["t1_slope_stderr"] = f1.slope_stderr;
    j["t2_slope"] = f2.slope;
    j["t2_slope_stderr"] = f2.slope_stderr;
  }
  std::ofstream(dir / "summary.json") << j.dump(2) << "\n";
  return worst;
}

int cmd_corners(const CommonOpts& opts) {
  ExperimentConfig base = load(opts);
  fs::path dir(opts.out_dir);
  fs::create_directories(dir);
  struct Corner {
    const char* tag;
    Exponent alpha, beta;
  };
  const Corner corners[] = {
      {"alpha_inf_beta_0", Exponent::infinity(), Exponent::finite(0.0)},
      {"alpha_0_beta_inf", Exponent::finite(0.0), Exponent::infinity()},
      {"alpha_inf_beta_inf", Exponent::infinity(), Exponent::infinity()},
  };
  json report = json::object();
  for (const Corner& corner : corners) {
    ExperimentConfig c = base;
    c.model.alpha = corner.alpha;
    c.model.beta = corner.beta;
    if (c.stop_rule.kind != StopRuleKind::TradeBudget) {
      // Degree-based stops can be unreachable here; give every corner the
      // same fixed trade budget instead.
      c.stop_rule.kind = StopRuleKind::TradeBudget;
      double n = c.model.n_traders;
      c.stop_rule.trade_budget =
          static_cast<std::uint64_t>(std::max(20000.0, 30.0 * n * std::log(n)));
    }
    EnsembleOutput out = run_ensemble(c, opts.threads);
    write_ensemble_output(dir / corner.tag, c, out, opts.force);
    int hub = out.max_degree_per_net.empty()
                  ? 0
                  : *std::max_element(out.max_degree_per_net.begin(),
                                      out.max_degree_per_net.end());
    std::uint64_t links = 0;
    for (auto l : out.links_per_net) links = std::max(links, l);
    std::printf("%-20s max degree %d / %d, links %llu, budget %llu trades\n",
                corner.tag, hub, c.model.n_traders - 1,
                static_cast<unsigned long long>(links),
                static_cast<unsigned long long>(c.stop_rule.trade_budget));
    report[corner.tag] = {{"max_degree", hub},
                          {"max_links", links},
                          {"n_traders", c.model.n_traders},
                          {"trade_budget", c.stop_rule.trade_budget}};
  }
  std::ofstream(dir / "summary.json") << report.dump(2) << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ccmnet: preferential kinetic wealth-exchange simulator"};
  app.require_subcommand(1);

  CommonOpts opts;
  bool with_edges = false;
  std::string observable = "degree";

  auto* simulate = app.add_subcommand(
      "simulate", "run one ensemble and write its distributions");
  add_common(simulate, opts);
  simulate->add_flag("--export-edges", with_edges,
                     "also write per-realization edge lists");

  auto* sweep = app.add_subcommand(
      "sweep", "run the config across sweep_sizes / sweep_values");
  add_common(sweep, opts);

  auto* percolation = app.add_subcommand(
      "percolation", "giant-component thresholds across system sizes");
  add_common(percolation, opts);

  auto* collapse = app.add_subcommand(
      "collapse", "finite-size scaling collapse across sweep_sizes");
  add_common(collapse, opts);
  collapse->add_option("--observable", observable,
                       "distribution to collapse")
      ->check(CLI::IsMember({"degree", "wealth", "strength", "weight"}));

  auto* pareto = app.add_subcommand(
      "pareto", "wealth distribution plus the matching analytic density");
  add_common(pareto, opts);

  auto* clique = app.add_subcommand(
      "clique", "network completion times across sweep_sizes");
  add_common(clique, opts);

  auto* corners = app.add_subcommand(
      "corners", "extreme-exponent topologies: star, random hub, dimer");
  add_common(corners, opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (simulate->parsed()) return cmd_simulate(opts, with_edges);
    if (sweep->parsed()) return cmd_sweep(opts);
    if (percolation->parsed()) return cmd_percolation(opts);
    if (collapse->parsed()) return cmd_collapse(opts, observable);
    if (pareto->parsed()) return cmd_pareto(opts);
    if (clique->parsed()) return cmd_clique(opts);
    if (corners->parsed()) return cmd_corners(opts);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const EnsembleError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitNotConverged;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitRuntime;
  }
  return kExitUsage;
}

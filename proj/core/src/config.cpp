#include "ccmnet/config.hpp"

#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "ccmnet/errors.hpp"

namespace ccmnet {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& v) {
  std::size_t pos = 0;
  double d;
  try {
    d = std::stod(v, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument("not a number: '" + v + "'");
  }
  if (pos != v.size()) throw std::invalid_argument("not a number: '" + v + "'");
  return d;
}

long long parse_int(const std::string& v) {
  std::size_t pos = 0;
  long long i;
  try {
    i = std::stoll(v, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument("not an integer: '" + v + "'");
  }
  if (pos != v.size())
    throw std::invalid_argument("not an integer: '" + v + "'");
  return i;
}

std::uint64_t parse_u64(const std::string& v) {
  long long i = parse_int(v);
  if (i < 0) throw std::invalid_argument("must be nonnegative: '" + v + "'");
  return static_cast<std::uint64_t>(i);
}

std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> out;
  std::string item;
  std::stringstream ss(v);
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

using Setter = std::function<void(ExperimentConfig&, const std::string&)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = {
      {"n_traders",
       [](ExperimentConfig& c, const std::string& v) {
         c.model.n_traders = static_cast<int>(parse_int(v));
       }},
      {"alpha",
       [](ExperimentConfig& c, const std::string& v) {
         c.model.alpha = Exponent::parse(v);
       }},
      {"beta",
       [](ExperimentConfig& c, const std::string& v) {
         c.model.beta = Exponent::parse(v);
       }},
      {"initial_wealth_mode",
       [](ExperimentConfig& c, const std::string& v) {
         if (v == "equal")
           c.model.initial_wealth_mode = InitialWealthMode::Equal;
         else if (v == "uniform")
           c.model.initial_wealth_mode = InitialWealthMode::UniformRandom;
         else
           throw std::invalid_argument("expected equal|uniform, got '" + v + "'");
       }},
      {"mean_initial_wealth",
       [](ExperimentConfig& c, const std::string& v) {
         c.model.mean_initial_wealth = parse_double(v);
       }},
      {"saving_mode",
       [](ExperimentConfig& c, const std::string& v) {
         if (v == "quenched")
           c.saving_mode = SavingMode::Quenched;
         else if (v == "constant")
           c.saving_mode = SavingMode::Constant;
         else
           throw std::invalid_argument("expected quenched|constant, got '" + v +
                                       "'");
       }},
      {"saving_lambda",
       [](ExperimentConfig& c, const std::string& v) {
         c.saving_lambda = parse_double(v);
       }},
      {"qss_window",
       [](ExperimentConfig& c, const std::string& v) {
         c.qss.window = static_cast<int>(parse_int(v));
       }},
      {"qss_rel_tol",
       [](ExperimentConfig& c, const std::string& v) {
         c.qss.rel_tol = parse_double(v);
       }},
      {"qss_sample_stride",
       [](ExperimentConfig& c, const std::string& v) {
         c.qss.sample_stride = parse_u64(v);
       }},
      {"qss_max_trades",
       [](ExperimentConfig& c, const std::string& v) {
         c.qss.max_trades = parse_u64(v);
       }},
      {"n_lambda_sets",
       [](ExperimentConfig& c, const std::string& v) {
         c.n_lambda_sets = static_cast<int>(parse_int(v));
       }},
      {"networks_per_set",
       [](ExperimentConfig& c, const std::string& v) {
         c.networks_per_set = static_cast<int>(parse_int(v));
       }},
      {"stop_rule",
       [](ExperimentConfig& c, const std::string& v) {
         if (v == "mean_degree")
           c.stop_rule.kind = StopRuleKind::MeanDegree;
         else if (v == "single_component")
           c.stop_rule.kind = StopRuleKind::SingleComponent;
         else if (v == "clique")
           c.stop_rule.kind = StopRuleKind::Clique;
         else if (v == "trade_budget")
           c.stop_rule.kind = StopRuleKind::TradeBudget;
         else
           throw std::invalid_argument(
               "expected mean_degree|single_component|clique|trade_budget, "
               "got '" +
               v + "'");
       }},
      {"mean_degree_target",
       [](ExperimentConfig& c, const std::string& v) {
         c.stop_rule.mean_degree_target = parse_double(v);
       }},
      {"trade_budget",
       [](ExperimentConfig& c, const std::string& v) {
         c.stop_rule.trade_budget = parse_u64(v);
       }},
      {"snapshot_unit",
       [](ExperimentConfig& c, const std::string& v) {
         if (v == "density")
           c.snapshot_unit = SnapshotUnit::Density;
         else if (v == "mean_degree")
           c.snapshot_unit = SnapshotUnit::MeanDegree;
         else
           throw std::invalid_argument("expected density|mean_degree, got '" +
                                       v + "'");
       }},
      {"snapshot_schedule",
       [](ExperimentConfig& c, const std::string& v) {
         c.snapshot_schedule.clear();
         for (const auto& item : split_list(v))
           c.snapshot_schedule.push_back(parse_double(item));
       }},
      {"master_seed",
       [](ExperimentConfig& c, const std::string& v) {
         c.master_seed = parse_u64(v);
       }},
      {"bins_per_decade",
       [](ExperimentConfig& c, const std::string& v) {
         c.bins_per_decade = static_cast<int>(parse_int(v));
       }},
      {"lambda_bins",
       [](ExperimentConfig& c, const std::string& v) {
         c.lambda_bins = static_cast<int>(parse_int(v));
       }},
      {"fit_low",
       [](ExperimentConfig& c, const std::string& v) {
         c.fit_low = parse_double(v);
       }},
      {"fit_high",
       [](ExperimentConfig& c, const std::string& v) {
         c.fit_high = parse_double(v);
       }},
      {"growth_max_trades",
       [](ExperimentConfig& c, const std::string& v) {
         c.growth_max_trades = parse_u64(v);
       }},
      {"inter_network_gap",
       [](ExperimentConfig& c, const std::string& v) {
         c.inter_network_gap = parse_u64(v);
       }},
      {"wealth_sample_stride",
       [](ExperimentConfig& c, const std::string& v) {
         c.wealth_sample_stride = parse_u64(v);
       }},
      {"sweep_sizes",
       [](ExperimentConfig& c, const std::string& v) {
         c.sweep_sizes.clear();
         for (const auto& item : split_list(v))
           c.sweep_sizes.push_back(static_cast<int>(parse_int(item)));
       }},
      {"sweep_param",
       [](ExperimentConfig& c, const std::string& v) { c.sweep_param = v; }},
      {"sweep_values",
       [](ExperimentConfig& c, const std::string& v) {
         c.sweep_values = split_list(v);
       }},
  };
  return table;
}

}  // namespace

ExperimentConfig parse_config(const std::string& text) {
  ExperimentConfig config;
  std::map<std::string, bool> seen;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(line_no, "expected 'key = value'");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    auto it = setters().find(key);
    if (it == setters().end())
      throw ConfigError(line_no, "unknown key '" + key + "'");
    if (seen[key]) throw ConfigError(line_no, "duplicate key '" + key + "'");
    seen[key] = true;
    try {
      it->second(config, value);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(line_no, key + ": " + e.what());
    }
  }
  for (const char* required : {"n_traders", "alpha", "beta", "master_seed"})
    if (!seen[required])
      throw ConfigError("missing required key '" + std::string(required) + "'");
  try {
    config.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return config;
}

ExperimentConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

void apply_override(ExperimentConfig& config, const std::string& key,
                    const std::string& value) {
  auto it = setters().find(key);
  if (it == setters().end()) throw ConfigError("unknown key '" + key + "'");
  try {
    it->second(config, value);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(key + ": " + e.what());
  }
}

std::string serialize_config(const ExperimentConfig& c) {
  std::ostringstream out;
  auto join_d = [](const std::vector<double>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) s += ",";
      s += fmt(v[i]);
    }
    return s;
  };
  auto join_i = [](const std::vector<int>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(v[i]);
    }
    return s;
  };
  auto join_s = [](const std::vector<std::string>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) s += ",";
      s += v[i];
    }
    return s;
  };
  out << "n_traders = " << c.model.n_traders << "\n";
  out << "alpha = " << c.model.alpha.str() << "\n";
  out << "beta = " << c.model.beta.str() << "\n";
  out << "initial_wealth_mode = "
      << (c.model.initial_wealth_mode == InitialWealthMode::Equal ? "equal"
                                                                  : "uniform")
      << "\n";
  out << "mean_initial_wealth = " << fmt(c.model.mean_initial_wealth) << "\n";
  out << "saving_mode = "
      << (c.saving_mode == SavingMode::Quenched ? "quenched" : "constant")
      << "\n";
  out << "saving_lambda = " << fmt(c.saving_lambda) << "\n";
  out << "qss_window = " << c.qss.window << "\n";
  out << "qss_rel_tol = " << fmt(c.qss.rel_tol) << "\n";
  out << "qss_sample_stride = " << c.qss.sample_stride << "\n";
  out << "qss_max_trades = " << c.qss.max_trades << "\n";
  out << "n_lambda_sets = " << c.n_lambda_sets << "\n";
  out << "networks_per_set = " << c.networks_per_set << "\n";
  const char* rule = "mean_degree";
  switch (c.stop_rule.kind) {
    case StopRuleKind::MeanDegree: rule = "mean_degree"; break;
    case StopRuleKind::SingleComponent: rule = "single_component"; break;
    case StopRuleKind::Clique: rule = "clique"; break;
    case StopRuleKind::TradeBudget: rule = "trade_budget"; break;
  }
  out << "stop_rule = " << rule << "\n";
  out << "mean_degree_target = " << fmt(c.stop_rule.mean_degree_target) << "\n";
  out << "trade_budget = " << c.stop_rule.trade_budget << "\n";
  out << "snapshot_unit = "
      << (c.snapshot_unit == SnapshotUnit::Density ? "density" : "mean_degree")
      << "\n";
  out << "snapshot_schedule = " << join_d(c.snapshot_schedule) << "\n";
  out << "master_seed = " << c.master_seed << "\n";
  out << "bins_per_decade = " << c.bins_per_decade << "\n";
  out << "lambda_bins = " << c.lambda_bins << "\n";
  out << "fit_low = " << fmt(c.fit_low) << "\n";
  out << "fit_high = " << fmt(c.fit_high) << "\n";
  out << "growth_max_trades = " << c.growth_max_trades << "\n";
  out << "inter_network_gap = " << c.inter_network_gap << "\n";
  out << "wealth_sample_stride = " << c.wealth_sample_stride << "\n";
  out << "sweep_sizes = " << join_i(c.sweep_sizes) << "\n";
  out << "sweep_param = " << c.sweep_param << "\n";
  out << "sweep_values = " << join_s(c.sweep_values) << "\n";
  return out.str();
}

}  // namespace ccmnet

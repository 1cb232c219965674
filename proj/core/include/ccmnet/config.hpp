#pragma once

#include <string>

#include "ccmnet/ensemble.hpp"

namespace ccmnet {

// Plain-text key-value configuration, one `key = value` per line, `#`
// comments. Unknown keys are errors; alpha/beta accept the literal token
// `inf`. n_traders, alpha, beta and master_seed are required.
ExperimentConfig parse_config(const std::string& text);

ExperimentConfig load_config_file(const std::string& path);

// Canonical serialization; parse(serialize(c)) round-trips byte-identically.
std::string serialize_config(const ExperimentConfig& config);

// Applies a `key=value` override on top of a parsed config.
void apply_override(ExperimentConfig& config, const std::string& key,
                    const std::string& value);

}  // namespace ccmnet

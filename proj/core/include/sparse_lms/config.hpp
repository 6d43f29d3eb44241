#pragma once

// YAML experiment configuration. The schema is a flat parameter sheet plus a
// list of estimator entries:
//
//   n_taps: 128
//   k_nonzero: 4
//   snr_db: 10
//   iterations: 3000
//   trials: 1000
//   seed: 1
//   normalize_channel: true
//   defaults:            # inherited by every estimator entry
//     mu0: 0.005
//     phi: 0.0005
//     lambda_za: 0.004
//     lambda_rza: 0.002
//     epsilon: 20
//     lambda_rl1: 0.004
//     delta: 0.05
//   estimators:
//     - label: ZA-IPVSS
//       penalty: za      # none | za | rza | rl1
//       schedule: ipvss  # iss | ipvss
//       lambda: 0.004    # optional, overrides the default for its kind
//       mu0: 0.005
//       phi: 0.0005
//
// Omitted keys take the defaults above; an omitted `estimators` list yields
// the canonical 12-spec grid. Unknown keys are rejected.

#include <filesystem>
#include <string>

#include "sparse_lms/experiment.hpp"

namespace sparse_lms::io {

/// Throws ConfigError (with field and line) on parse or validation failure,
/// IoError if the file cannot be read.
ExperimentConfig parse_config(const std::filesystem::path& path);
ExperimentConfig parse_config_string(const std::string& text);

/// Fully explicit YAML for `config`; parse_config_string() of the result
/// reproduces `config`.
std::string emit_config(const ExperimentConfig& config);

/// Validation shared by the parser and programmatic callers; throws
/// ConfigError.
void validate_config(const ExperimentConfig& config);

}  // namespace sparse_lms::io

#include "sparse_lms/config.hpp"

#include <yaml-cpp/yaml.h>

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <string_view>

#include "sparse_lms/errors.hpp"
#include "sparse_lms/output.hpp"

namespace sparse_lms::io {
namespace {

std::size_t line_of(const YAML::Node& node) {
  const auto mark = node.Mark();
  return mark.line >= 0 ? static_cast<std::size_t>(mark.line) + 1 : 0;
}

[[noreturn]] void fail(const std::string& field, const YAML::Node& node,
                       const std::string& message) {
  const std::size_t line = line_of(node);
  std::string what = "config: " + field + ": " + message;
  if (line > 0) what += " (line " + std::to_string(line) + ")";
  throw ConfigError(what, field, line);
}

void reject_unknown_keys(const YAML::Node& map, const std::set<std::string_view>& known,
                         const std::string& prefix) {
  for (const auto& kv : map) {
    const auto key = kv.first.as<std::string>();
    if (!known.contains(key)) fail(prefix + key, kv.first, "unknown key");
  }
}

template <typename T>
T scalar(const YAML::Node& node, const std::string& field) {
  if (!node.IsScalar()) fail(field, node, "expected a scalar value");
  try {
    return node.as<T>();
  } catch (const YAML::Exception&) {
    fail(field, node, "cannot convert '" + node.Scalar() + "'");
  }
}

double real(const YAML::Node& node, const std::string& field) {
  return scalar<double>(node, field);
}

std::size_t count(const YAML::Node& node, const std::string& field) {
  const auto v = scalar<long long>(node, field);
  if (v < 0) fail(field, node, "must be non-negative");
  return static_cast<std::size_t>(v);
}

struct SheetDefaults {
  double mu0 = reference_params::mu_upper;
  double phi = reference_params::phi;
  double lambda_za = reference_params::lambda_za;
  double lambda_rza = reference_params::lambda_rza;
  double epsilon = reference_params::epsilon;
  double lambda_rl1 = reference_params::lambda_rl1;
  double delta = reference_params::delta;
};

SheetDefaults parse_defaults(const YAML::Node& node) {
  SheetDefaults d;
  if (!node || node.IsNull()) return d;
  if (!node.IsMap()) fail("defaults", node, "expected a mapping");
  reject_unknown_keys(node,
                      {"mu0", "phi", "lambda_za", "lambda_rza", "epsilon", "lambda_rl1",
                       "delta"},
                      "defaults.");
  if (node["mu0"]) d.mu0 = real(node["mu0"], "defaults.mu0");
  if (node["phi"]) d.phi = real(node["phi"], "defaults.phi");
  if (node["lambda_za"]) d.lambda_za = real(node["lambda_za"], "defaults.lambda_za");
  if (node["lambda_rza"]) d.lambda_rza = real(node["lambda_rza"], "defaults.lambda_rza");
  if (node["epsilon"]) d.epsilon = real(node["epsilon"], "defaults.epsilon");
  if (node["lambda_rl1"]) d.lambda_rl1 = real(node["lambda_rl1"], "defaults.lambda_rl1");
  if (node["delta"]) d.delta = real(node["delta"], "defaults.delta");
  return d;
}

PenaltyKind parse_penalty_kind(const YAML::Node& node, const std::string& field) {
  const auto text = scalar<std::string>(node, field);
  if (text == "none" || text == "lms") return PenaltyKind::none;
  if (text == "za") return PenaltyKind::za;
  if (text == "rza") return PenaltyKind::rza;
  if (text == "rl1") return PenaltyKind::rl1;
  fail(field, node, "expected one of none, za, rza, rl1");
}

ScheduleKind parse_schedule_kind(const YAML::Node& node, const std::string& field) {
  const auto text = scalar<std::string>(node, field);
  if (text == "iss" || text == "invariant") return ScheduleKind::invariant;
  if (text == "ipvss" || text == "iterative_promoting") {
    return ScheduleKind::iterative_promoting;
  }
  fail(field, node, "expected iss or ipvss");
}

EstimatorSpec parse_estimator(const YAML::Node& node, std::size_t index,
                              const SheetDefaults& d) {
  const std::string prefix = "estimators[" + std::to_string(index) + "].";
  if (!node.IsMap()) fail(prefix.substr(0, prefix.size() - 1), node, "expected a mapping");
  reject_unknown_keys(
      node, {"label", "penalty", "schedule", "lambda", "epsilon", "delta", "mu0", "phi"},
      prefix);

  EstimatorSpec spec;
  if (!node["label"]) fail(prefix + "label", node, "missing");
  spec.label = scalar<std::string>(node["label"], prefix + "label");

  spec.penalty.kind = node["penalty"] ? parse_penalty_kind(node["penalty"], prefix + "penalty")
                                      : PenaltyKind::none;
  spec.penalty.epsilon = d.epsilon;
  spec.penalty.delta = d.delta;
  switch (spec.penalty.kind) {
    case PenaltyKind::none: spec.penalty.lambda = 0.0; break;
    case PenaltyKind::za: spec.penalty.lambda = d.lambda_za; break;
    case PenaltyKind::rza: spec.penalty.lambda = d.lambda_rza; break;
    case PenaltyKind::rl1: spec.penalty.lambda = d.lambda_rl1; break;
  }
  if (node["lambda"]) spec.penalty.lambda = real(node["lambda"], prefix + "lambda");
  if (node["epsilon"]) spec.penalty.epsilon = real(node["epsilon"], prefix + "epsilon");
  if (node["delta"]) spec.penalty.delta = real(node["delta"], prefix + "delta");

  spec.schedule.kind = node["schedule"]
                           ? parse_schedule_kind(node["schedule"], prefix + "schedule")
                           : ScheduleKind::invariant;
  spec.schedule.mu0 = node["mu0"] ? real(node["mu0"], prefix + "mu0") : d.mu0;
  spec.schedule.phi = node["phi"] ? real(node["phi"], prefix + "phi") : d.phi;
  if (spec.schedule.kind == ScheduleKind::invariant && !node["phi"]) {
    spec.schedule.phi = spec.schedule.mu0;
  }

  try {
    spec.penalty.validate();
    spec.schedule.validate();
  } catch (const InvalidArgument& e) {
    fail(prefix.substr(0, prefix.size() - 1), node, e.what());
  }
  return spec;
}

}  // namespace

void validate_config(const ExperimentConfig& config) {
  try {
    config.validate();
  } catch (const InvalidArgument& e) {
    throw ConfigError(std::string("config: ") + e.what(), "", 0);
  }
}

ExperimentConfig parse_config_string(const std::string& text) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::Exception& e) {
    const std::size_t line = e.mark.line >= 0 ? static_cast<std::size_t>(e.mark.line) + 1 : 0;
    throw ConfigError("config: parse error: " + e.msg +
                          (line ? " (line " + std::to_string(line) + ")" : ""),
                      "", line);
  }

  ExperimentConfig config;
  if (root.IsNull()) {
    config.estimator_specs = canonical_specs();
    return config;
  }
  if (!root.IsMap()) fail("<root>", root, "expected a mapping at top level");
  reject_unknown_keys(root,
                      {"n_taps", "k_nonzero", "snr_db", "iterations", "trials", "seed",
                       "normalize_channel", "defaults", "estimators"},
                      "");

  if (root["n_taps"]) config.n_taps = count(root["n_taps"], "n_taps");
  if (root["k_nonzero"]) config.k_nonzero = count(root["k_nonzero"], "k_nonzero");
  if (root["snr_db"]) config.snr_db = real(root["snr_db"], "snr_db");
  if (root["iterations"]) config.iterations = count(root["iterations"], "iterations");
  if (root["trials"]) config.trials = count(root["trials"], "trials");
  if (root["seed"]) config.master_seed = scalar<std::uint64_t>(root["seed"], "seed");
  if (root["normalize_channel"]) {
    config.normalize_channel = scalar<bool>(root["normalize_channel"], "normalize_channel");
  }

  const SheetDefaults defaults = parse_defaults(root["defaults"]);
  if (const auto list = root["estimators"]; list && !list.IsNull()) {
    if (!list.IsSequence()) fail("estimators", list, "expected a list");
    for (std::size_t i = 0; i < list.size(); ++i) {
      config.estimator_specs.push_back(parse_estimator(list[i], i, defaults));
    }
  } else {
    config.estimator_specs = canonical_specs(defaults.mu0, defaults.phi);
    for (auto& spec : config.estimator_specs) {
      try {
        spec.schedule.validate();
      } catch (const InvalidArgument& e) {
        fail("defaults", root["defaults"], e.what());
      }
      spec.penalty.epsilon = defaults.epsilon;
      spec.penalty.delta = defaults.delta;
      switch (spec.penalty.kind) {
        case PenaltyKind::none: break;
        case PenaltyKind::za: spec.penalty.lambda = defaults.lambda_za; break;
        case PenaltyKind::rza: spec.penalty.lambda = defaults.lambda_rza; break;
        case PenaltyKind::rl1: spec.penalty.lambda = defaults.lambda_rl1; break;
      }
    }
  }

  // Field-level errors carry the key and line of the offending entry.
  auto check = [&](bool ok, const char* key, const std::string& message) {
    if (!ok) fail(key, root[key] ? root[key] : root, message);
  };
  check(config.n_taps >= 1, "n_taps", "must be >= 1");
  check(config.k_nonzero >= 1 && config.k_nonzero <= config.n_taps, "k_nonzero",
        "must satisfy 0 < K <= N (K=" + std::to_string(config.k_nonzero) +
            ", N=" + std::to_string(config.n_taps) + ")");
  check(config.iterations >= 1, "iterations", "must be >= 1");
  check(config.trials >= 1, "trials", "must be >= 1");
  check(std::isfinite(config.snr_db), "snr_db", "must be finite");
  if (config.estimator_specs.empty()) fail("estimators", root, "list must not be empty");
  validate_config(config);
  return config;
}

ExperimentConfig parse_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read config file " + path.string(), path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config_string(buffer.str());
}

std::string emit_config(const ExperimentConfig& config) {
  std::ostringstream os;
  os << "n_taps: " << config.n_taps << '\n'
     << "k_nonzero: " << config.k_nonzero << '\n'
     << "snr_db: " << format_value(config.snr_db) << '\n'
     << "iterations: " << config.iterations << '\n'
     << "trials: " << config.trials << '\n'
     << "seed: " << config.master_seed << '\n'
     << "normalize_channel: " << (config.normalize_channel ? "true" : "false") << '\n'
     << "estimators:\n";
  for (const auto& spec : config.estimator_specs) {
    os << "  - label: \"" << spec.label << "\"\n"
       << "    penalty: " << to_string(spec.penalty.kind) << '\n'
       << "    lambda: " << format_value(spec.penalty.lambda) << '\n'
       << "    epsilon: " << format_value(spec.penalty.epsilon) << '\n'
       << "    delta: " << format_value(spec.penalty.delta) << '\n'
       << "    schedule: " << to_string(spec.schedule.kind) << '\n'
       << "    mu0: " << format_value(spec.schedule.mu0) << '\n'
       << "    phi: " << format_value(spec.schedule.phi) << '\n';
  }
  return os.str();
}

}  // namespace sparse_lms::io

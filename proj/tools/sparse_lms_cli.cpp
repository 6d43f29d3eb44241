// sparse-lms: Monte-Carlo MSE curves for the sparse LMS family.
//
//   sparse-lms run      --config <path> --out <dir> [--seed <u64>] [--threads <k>]
//   sparse-lms sweep    --axis <snr|k|phi> --values <v1,v2,...> [--config <path>] ...
//   sparse-lms schedule --mu0 <f> --phi <f> --iters <n> [--kind iss|ipvss] --out <dir>
//   sparse-lms compare  --out <dir> [--config <path>] [--seed <u64>] [--threads <k>]
//
// Exit codes: 0 success, 1 config error, 2 divergence, 3 I/O error.
// SPARSE_LMS_OUT supplies the output directory when --out is absent.

#include <charconv>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sparse_lms/config.hpp"
#include "sparse_lms/errors.hpp"
#include "sparse_lms/estimators.hpp"
#include "sparse_lms/experiment.hpp"
#include "sparse_lms/output.hpp"
#include "sparse_lms/sweep.hpp"

namespace fs = std::filesystem;
using namespace sparse_lms;

namespace {

enum ExitCode : int { kOk = 0, kConfigError = 1, kDivergence = 2, kIoError = 3 };

constexpr const char* kOutEnv = "SPARSE_LMS_OUT";

struct CommonOptions {
  std::string config_path;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
  std::size_t threads = 0;
};

void add_common(CLI::App* cmd, CommonOptions& opts, bool config_required) {
  auto* cfg = cmd->add_option("--config", opts.config_path, "YAML experiment configuration");
  if (config_required) cfg->required();
  cfg->check(CLI::ExistingFile);
  cmd->add_option("--out", opts.out_dir, std::string("Output directory (default: $") +
                                             kOutEnv + " or ./sparse_lms_out)");
  cmd->add_option("--seed", opts.seed, "Override the config's master seed");
  cmd->add_option("--threads", opts.threads, "Worker threads (0 = all cores)")
      ->check(CLI::NonNegativeNumber);
}

fs::path resolve_out(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv(kOutEnv); env && *env) return env;
  return "sparse_lms_out";
}

ExperimentConfig load(const CommonOptions& opts) {
  ExperimentConfig config = opts.config_path.empty()
                                ? io::parse_config_string("")
                                : io::parse_config(opts.config_path);
  if (opts.seed) config.master_seed = *opts.seed;
  return config;
}

std::vector<double> parse_values(const std::string& text) {
  std::vector<double> values;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = std::min(text.find(',', start), text.size());
    const std::string item = text.substr(start, comma - start);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (item.empty() || ec != std::errc{} || ptr != item.data() + item.size()) {
      throw ConfigError("--values: cannot parse '" + item + "'", "values");
    }
    values.push_back(v);
    start = comma + 1;
  }
  return values;
}

void report(const fs::path& path) { std::cout << "wrote " << path.string() << '\n'; }

int cmd_run(const CommonOptions& opts) {
  const ExperimentConfig config = load(opts);
  const fs::path out = resolve_out(opts.out_dir);
  const auto curves = run_experiment(config, {opts.threads});
  report(io::emit_curves(curves, out));
  io::write_text_file(out / "config_used.yaml", io::emit_config(config));
  report(out / "config_used.yaml");
  return kOk;
}

int cmd_sweep(const CommonOptions& opts, const std::string& axis_text,
              const std::string& values_text) {
  const auto axis = io::parse_sweep_axis(axis_text);
  const auto values = parse_values(values_text);
  const ExperimentConfig config = load(opts);
  const fs::path out = resolve_out(opts.out_dir);
  const auto points = io::sweep(config, axis, values, {opts.threads});
  const auto files = io::emit_sweep(points, axis, out);
  for (const auto& p : files.curves) report(p);
  report(files.summary);
  return kOk;
}

int cmd_schedule(const std::string& kind, double mu0, std::optional<double> phi,
                 std::size_t iters, const std::string& out_flag) {
  StepSchedule schedule;
  if (kind == "iss") {
    schedule = StepSchedule::invariant(mu0);
  } else {
    schedule = StepSchedule::iterative_promoting(mu0, phi.value_or(reference_params::phi));
  }
  try {
    schedule.validate();
  } catch (const InvalidArgument& e) {
    throw ConfigError(e.what(), "schedule");
  }
  if (iters < 1) throw ConfigError("--iters must be >= 1", "iters");
  report(io::emit_schedule(schedule, iters, resolve_out(out_flag)));
  return kOk;
}

int cmd_compare(const CommonOptions& opts) {
  ExperimentConfig config = load(opts);
  config.estimator_specs = canonical_specs();
  io::validate_config(config);
  const fs::path out = resolve_out(opts.out_dir);
  const auto curves = run_experiment(config, {opts.threads});
  report(io::emit_curves(curves, out, "compare.csv"));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sparse LMS channel estimation: Monte-Carlo MSE curves"};
  app.require_subcommand(1);

  CommonOptions run_opts;
  auto* run = app.add_subcommand("run", "Run the experiment described by a config file");
  add_common(run, run_opts, true);

  CommonOptions sweep_opts;
  std::string axis;
  std::string values;
  auto* sweep = app.add_subcommand("sweep", "Repeat an experiment over SNR, K or phi values");
  add_common(sweep, sweep_opts, false);
  sweep->add_option("--axis", axis, "snr, k or phi")->required();
  sweep->add_option("--values", values, "Comma-separated values")->required();

  std::string kind = "ipvss";
  double mu0 = reference_params::mu_upper;
  std::optional<double> phi;
  std::size_t iters = 3000;
  std::string schedule_out;
  auto* schedule = app.add_subcommand("schedule", "Write the step-size schedule mu(n)");
  schedule->add_option("--kind", kind, "iss or ipvss")->check(CLI::IsMember({"iss", "ipvss"}));
  schedule->add_option("--mu0", mu0, "Initial (or fixed) step size");
  schedule->add_option("--phi", phi, "Step-size floor (ipvss)");
  schedule->add_option("--iters", iters, "Number of iterations");
  schedule->add_option("--out", schedule_out, "Output directory");

  CommonOptions compare_opts;
  auto* compare = app.add_subcommand("compare", "Run the 12-estimator comparison grid");
  add_common(compare, compare_opts, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfigError;
  }

  try {
    if (*run) return cmd_run(run_opts);
    if (*sweep) return cmd_sweep(sweep_opts, axis, values);
    if (*schedule) return cmd_schedule(kind, mu0, phi, iters, schedule_out);
    if (*compare) return cmd_compare(compare_opts);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConfigError;
  } catch (const InvalidArgument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConfigError;
  } catch (const DivergenceError& e) {
    std::cerr << "diverged: " << e.what() << '\n';
    return kDivergence;
  } catch (const IoError& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return kIoError;
  }
  return kConfigError;
}

#include "sparse_lms/sweep.hpp"

#include <array>
#include <cmath>
#include <cstdio>

#include "sparse_lms/config.hpp"
#include "sparse_lms/errors.hpp"
#include "sparse_lms/output.hpp"

namespace sparse_lms::io {

SweepAxis parse_sweep_axis(std::string_view text) {
  if (text == "snr") return SweepAxis::snr;
  if (text == "k") return SweepAxis::k;
  if (text == "phi") return SweepAxis::phi;
  throw ConfigError("sweep: unknown axis '" + std::string(text) + "' (expected snr, k or phi)",
                    "axis");
}

std::string_view to_string(SweepAxis axis) noexcept {
  switch (axis) {
    case SweepAxis::snr: return "snr";
    case SweepAxis::k: return "k";
    case SweepAxis::phi: return "phi";
  }
  return "snr";
}

ExperimentConfig substitute(const ExperimentConfig& config, SweepAxis axis, double value) {
  ExperimentConfig out = config;
  switch (axis) {
    case SweepAxis::snr:
      out.snr_db = value;
      break;
    case SweepAxis::k:
      if (!(value >= 1.0) || value != std::floor(value)) {
        throw ConfigError("sweep: k value " + format_value(value) +
                              " is not a positive integer",
                          "values");
      }
      out.k_nonzero = static_cast<std::size_t>(value);
      break;
    case SweepAxis::phi:
      for (auto& spec : out.estimator_specs) {
        if (spec.schedule.kind == ScheduleKind::iterative_promoting) spec.schedule.phi = value;
      }
      break;
  }
  validate_config(out);
  return out;
}

std::vector<SweepPoint> sweep(const ExperimentConfig& config, SweepAxis axis,
                              const std::vector<double>& values, const RunOptions& options) {
  if (values.empty()) throw ConfigError("sweep: no values given", "values");
  // Substitute everything first so a bad value fails before any work runs.
  std::vector<ExperimentConfig> configs;
  configs.reserve(values.size());
  for (double v : values) configs.push_back(substitute(config, axis, v));

  std::vector<SweepPoint> points;
  points.reserve(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    points.push_back({values[i], run_experiment(configs[i], options)});
  }
  return points;
}

std::size_t summary_window(std::size_t iterations) {
  return std::max<std::size_t>(1, iterations / 10);
}

SweepFiles emit_sweep(std::span<const SweepPoint> points, SweepAxis axis,
                      const std::filesystem::path& output_dir) {
  const std::string axis_name(to_string(axis));
  SweepFiles files;
  std::string summary = "value,label,steady_state_db\n";
  for (const auto& point : points) {
    const std::string value = format_value(point.value);
    files.curves.push_back(
        emit_curves(point.curves, output_dir, "sweep_" + axis_name + "_" + value + ".csv"));
    for (const auto& curve : point.curves) {
      const double ss = steady_state_db(curve.mse_db, summary_window(curve.mse_db.size()));
      std::array<char, 64> buf{};
      const int len = std::snprintf(buf.data(), buf.size(), "%.6f", ss);
      summary += value + ',' + curve.label + ',' + std::string(buf.data(), len) + '\n';
    }
  }
  files.summary = output_dir / ("sweep_" + axis_name + "_summary.csv");
  write_text_file(files.summary, summary);
  return files;
}

}  // namespace sparse_lms::io

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sparse_lms/experiment.hpp"

namespace sparse_lms::io {

enum class SweepAxis { snr, k, phi };

/// Parses "snr", "k" or "phi"; throws ConfigError otherwise.
SweepAxis parse_sweep_axis(std::string_view text);
std::string_view to_string(SweepAxis axis) noexcept;

struct SweepPoint {
  double value = 0.0;
  std::vector<MseCurve> curves;
};

/// `config` with one field replaced. For `phi`, only iterative-promoting
/// schedules change. Throws ConfigError if the result is invalid.
ExperimentConfig substitute(const ExperimentConfig& config, SweepAxis axis, double value);

/// Runs one experiment per value, all with the config's master seed.
std::vector<SweepPoint> sweep(const ExperimentConfig& config, SweepAxis axis,
                              const std::vector<double>& values,
                              const RunOptions& options = {});

/// Steady-state window used by the sweep summary: the last 10% of
/// iterations (at least one).
std::size_t summary_window(std::size_t iterations);

struct SweepFiles {
  std::vector<std::filesystem::path> curves;
  std::filesystem::path summary;
};

/// One curves CSV per value plus `sweep_<axis>_summary.csv` with columns
/// value,label,steady_state_db.
SweepFiles emit_sweep(std::span<const SweepPoint> points, SweepAxis axis,
                      const std::filesystem::path& output_dir);

}  // namespace sparse_lms::io

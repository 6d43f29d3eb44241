#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "sparse_lms/estimators.hpp"
#include "sparse_lms/experiment.hpp"

namespace sparse_lms::io {

/// CSV text: header "iteration,<label1>,...", one row per iteration, values
/// with 6 decimals.
std::string format_curves_csv(std::span<const MseCurve> curves);

/// Writes `output_dir/<file_name>` (creating the directory) and returns the
/// path. Throws IoError.
std::filesystem::path emit_curves(std::span<const MseCurve> curves,
                                  const std::filesystem::path& output_dir,
                                  const std::string& file_name = "mse_curves.csv");

std::string format_schedule_csv(const StepSchedule& schedule, std::size_t iterations);

/// (n, mu(n)) for n = 1..iterations, written to `output_dir/step_size.csv`.
std::filesystem::path emit_schedule(const StepSchedule& schedule, std::size_t iterations,
                                    const std::filesystem::path& output_dir);

/// Shortest decimal text that round-trips `value`.
std::string format_value(double value);

/// Writes `contents` to `path` verbatim. Throws IoError.
void write_text_file(const std::filesystem::path& path, const std::string& contents);

}  // namespace sparse_lms::io

#include "sparse_lms/output.hpp"

#include <array>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <system_error>

#include "sparse_lms/errors.hpp"

namespace sparse_lms::io {
namespace {

void append_fixed6(std::string& out, double value) {
  std::array<char, 64> buf{};
  const auto [end, ec] =
      std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::fixed, 6);
  if (ec != std::errc{}) throw InvalidArgument("cannot format value for CSV");
  out.append(buf.data(), end);
}

void ensure_directory(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create directory " + dir.string() + ": " + ec.message(), dir);
}

}  // namespace

std::string format_value(double value) {
  std::array<char, 64> buf{};
  const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::general);
  if (ec != std::errc{}) throw InvalidArgument("cannot format value");
  return std::string(buf.data(), end);
}

std::string format_curves_csv(std::span<const MseCurve> curves) {
  if (curves.empty()) throw InvalidArgument("format_curves_csv: no curves");
  const std::size_t rows = curves.front().mse_db.size();
  for (const auto& c : curves) {
    if (c.mse_db.size() != rows) {
      throw InvalidArgument("format_curves_csv: curve '" + c.label + "' has " +
                            std::to_string(c.mse_db.size()) + " points, expected " +
                            std::to_string(rows));
    }
  }

  std::string out = "iteration";
  for (const auto& c : curves) {
    out += ',';
    out += c.label;
  }
  out += '\n';
  for (std::size_t i = 0; i < rows; ++i) {
    out += std::to_string(i + 1);
    for (const auto& c : curves) {
      out += ',';
      append_fixed6(out, c.mse_db[i]);
    }
    out += '\n';
  }
  return out;
}

void write_text_file(const std::filesystem::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing", path);
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  out.close();
  if (!out) throw IoError("failed writing " + path.string(), path);
}

std::filesystem::path emit_curves(std::span<const MseCurve> curves,
                                  const std::filesystem::path& output_dir,
                                  const std::string& file_name) {
  const std::string text = format_curves_csv(curves);
  ensure_directory(output_dir);
  const auto path = output_dir / file_name;
  write_text_file(path, text);
  return path;
}

std::string format_schedule_csv(const StepSchedule& schedule, std::size_t iterations) {
  if (iterations < 1) throw InvalidArgument("emit_schedule: iterations must be >= 1");
  schedule.validate();
  std::string out = "n,mu\n";
  for (std::size_t n = 1; n <= iterations; ++n) {
    out += std::to_string(n);
    out += ',';
    out += format_value(step_size(schedule, n));
    out += '\n';
  }
  return out;
}

std::filesystem::path emit_schedule(const StepSchedule& schedule, std::size_t iterations,
                                    const std::filesystem::path& output_dir) {
  const std::string text = format_schedule_csv(schedule, iterations);
  ensure_directory(output_dir);
  const auto path = output_dir / "step_size.csv";
  write_text_file(path, text);
  return path;
}

}  // namespace sparse_lms::io

#pragma once

#include <cstddef>
#include <filesystem>
#include <stdexcept>
#include <string>

namespace sparse_lms {

/// Raised when an operation receives arguments outside its domain.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The filter produced a non-finite error or coefficient, which means the
/// step size is too large for the input power.
class DivergenceError : public std::runtime_error {
 public:
  DivergenceError(const std::string& what, std::size_t iteration)
      : std::runtime_error(what), iteration_(iteration) {}

  /// 1-based iteration of the update that went non-finite (0 if unknown).
  std::size_t iteration() const noexcept { return iteration_; }

 private:
  std::size_t iteration_;
};

/// Divergence inside a Monte-Carlo experiment, tagged with where it happened.
class ExperimentError : public DivergenceError {
 public:
  ExperimentError(const std::string& what, std::size_t iteration,
                  std::size_t trial, std::string label)
      : DivergenceError(what, iteration), trial_(trial), label_(std::move(label)) {}

  std::size_t trial() const noexcept { return trial_; }
  const std::string& label() const noexcept { return label_; }

 private:
  std::size_t trial_;
  std::string label_;
};

/// Configuration could not be parsed or failed validation. `line` is
/// 1-based, or 0 when the problem is not tied to a source line.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& what, std::string field, std::size_t line = 0)
      : std::runtime_error(what), field_(std::move(field)), line_(line) {}

  const std::string& field() const noexcept { return field_; }
  std::size_t line() const noexcept { return line_; }

 private:
  std::string field_;
  std::size_t line_;
};

class IoError : public std::runtime_error {
 public:
  IoError(const std::string& what, std::filesystem::path path)
      : std::runtime_error(what), path_(std::move(path)) {}

  const std::filesystem::path& path() const noexcept { return path_; }

 private:
  std::filesystem::path path_;
};

}  // namespace sparse_lms

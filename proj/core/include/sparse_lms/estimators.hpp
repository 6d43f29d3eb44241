#pragma once

// The LMS family under a common update
//
//   h(n+1) = h(n) + mu(n) * (e(n) x(n) - p(n)),   e(n) = y(n) - h(n)^T x(n)
//
// where p(n) is the sparsity penalty direction (zero for plain LMS) and
// mu(n) is either a fixed step or the iterative-promoting schedule
// max(mu0 / n, phi).

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "sparse_lms/signal_model.hpp"

namespace sparse_lms {

enum class ScheduleKind { invariant, iterative_promoting };

struct StepSchedule {
  ScheduleKind kind = ScheduleKind::invariant;
  double mu0 = 0.005;
  double phi = 0.0005;  // floor; ignored by the invariant kind

  static StepSchedule invariant(double mu) { return {ScheduleKind::invariant, mu, mu}; }
  static StepSchedule iterative_promoting(double mu0, double phi) {
    return {ScheduleKind::iterative_promoting, mu0, phi};
  }

  /// Throws InvalidArgument unless mu0 > 0 and (for the promoting kind)
  /// 0 < phi <= mu0.
  void validate() const;

  bool operator==(const StepSchedule&) const = default;
};

enum class PenaltyKind { none, za, rza, rl1 };

struct PenaltyConfig {
  PenaltyKind kind = PenaltyKind::none;
  double lambda = 0.0;
  double epsilon = 20.0;  // rza only
  double delta = 0.05;    // rl1 only

  static PenaltyConfig none() { return {}; }
  static PenaltyConfig za(double lambda) { return {PenaltyKind::za, lambda}; }
  static PenaltyConfig rza(double lambda, double epsilon) {
    return {PenaltyKind::rza, lambda, epsilon};
  }
  static PenaltyConfig rl1(double lambda, double delta) {
    return {PenaltyKind::rl1, lambda, 20.0, delta};
  }

  void validate() const;

  bool operator==(const PenaltyConfig&) const = default;
};

std::string_view to_string(PenaltyKind kind) noexcept;
std::string_view to_string(ScheduleKind kind) noexcept;

/// Running estimate. `prev_estimate` holds h(n-1) for the RL1 reweight and
/// starts equal to the zero initial estimate.
struct FilterState {
  std::vector<double> estimate;
  std::vector<double> prev_estimate;
  std::size_t iteration = 1;

  /// h(1) = h(0) = 0, n = 1.
  static FilterState zeros(std::size_t n_taps);

  std::size_t size() const noexcept { return estimate.size(); }
};

/// mu(n) for 1-based n.
double step_size(const StepSchedule& schedule, std::size_t iteration);

/// Three-valued sign with sgn(0) = 0.
constexpr double sgn(double v) noexcept {
  return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0);
}

/// Penalty for one coefficient given h_i(n) and h_i(n-1).
double penalty_coefficient(const PenaltyConfig& config, double current,
                           double previous) noexcept;

/// Per-coefficient penalty direction p(n); the update subtracts mu(n) p(n).
std::vector<double> penalty_direction(const PenaltyConfig& config,
                                      const FilterState& state);

/// One adaptation step in place. Returns the a-priori error e(n).
/// Throws InvalidArgument on a length mismatch and DivergenceError when the
/// error or updated estimate is not finite.
double iterate(FilterState& state, const PenaltyConfig& config,
               const StepSchedule& schedule, std::span<const double> x, double y);

/// Runs `iterations` updates from the zero estimate over `signal`, drawing
/// the noise z(n) from `rng`, and returns ||h - h(n+1)||^2 after every update.
std::vector<double> run_filter(const SparseChannel& channel,
                               const TrainingSignal& signal, const NoiseSpec& noise,
                               const PenaltyConfig& config,
                               const StepSchedule& schedule, std::size_t iterations,
                               RandomStream& rng);

/// Same as run_filter, but also hands back the final state.
std::vector<double> run_filter(const SparseChannel& channel,
                               const TrainingSignal& signal, const NoiseSpec& noise,
                               const PenaltyConfig& config,
                               const StepSchedule& schedule, std::size_t iterations,
                               RandomStream& rng, FilterState& final_state);

double squared_deviation(std::span<const double> truth,
                         std::span<const double> estimate);

}  // namespace sparse_lms

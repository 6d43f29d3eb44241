#pragma once

// Seeded Monte-Carlo ensembles of the estimators. Every trial draws its own
// channel, PRBS input and noise from streams derived from
// (master_seed, trial_index); all estimator specs in a trial share that
// realization so comparisons are paired.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "sparse_lms/estimators.hpp"
#include "sparse_lms/signal_model.hpp"

namespace sparse_lms {

struct EstimatorSpec {
  std::string label;
  PenaltyConfig penalty;
  StepSchedule schedule;

  bool operator==(const EstimatorSpec&) const = default;
};

struct ExperimentConfig {
  std::size_t n_taps = 128;
  std::size_t k_nonzero = 4;
  double snr_db = 10.0;
  std::size_t iterations = 3000;
  std::size_t trials = 1000;
  std::uint64_t master_seed = 1;
  bool normalize_channel = true;
  std::vector<EstimatorSpec> estimator_specs;

  /// Throws InvalidArgument describing the first violated invariant.
  void validate() const;
};

struct MseCurve {
  std::string label;
  std::vector<double> mse_db;
  std::size_t trials_used = 0;
};

inline constexpr double kMseFloor = 1e-12;

/// 10 log10(max(avg_sq_dev, 1e-12)).
double mse_db(double avg_sq_dev);

/// Independent streams for one trial's channel, input and noise.
struct TrialStreams {
  RandomStream channel;
  RandomStream signal;
  RandomStream noise;
};

TrialStreams derive_trial_streams(std::uint64_t master_seed, std::size_t trial_index);

/// Squared-deviation traces of every spec for one trial, in spec order.
std::vector<std::vector<double>> run_trial_paired(const ExperimentConfig& config,
                                                  std::size_t trial_index);

/// Squared-deviation trace of the spec named `spec_label` for one trial.
std::vector<double> run_trial(const ExperimentConfig& config, std::size_t trial_index,
                              const std::string& spec_label);

struct RunOptions {
  /// Worker threads; 0 picks the hardware concurrency.
  std::size_t threads = 0;
};

/// Trial-averaged MSE curves in spec order. Accumulation happens in
/// trial-index order, so the result does not depend on `options.threads`.
/// Throws ExperimentError if any trial diverges.
std::vector<MseCurve> run_experiment(const ExperimentConfig& config,
                                     const RunOptions& options = {});

/// Reference step sizes and penalty weights used as defaults throughout.
namespace reference_params {
inline constexpr double mu_upper = 0.005;
inline constexpr double phi = 0.0005;
inline constexpr double lambda_za = 0.004;
inline constexpr double lambda_rza = 0.002;
inline constexpr double epsilon = 20.0;
inline constexpr double lambda_rl1 = 0.004;
inline constexpr double delta = 0.05;
}  // namespace reference_params

/// {LMS, ZA, RZA, RL1} x {ISS(mu_upper), ISS(phi), IPVSS(mu_upper, phi)},
/// grouped by algorithm.
std::vector<EstimatorSpec> canonical_specs(double mu_upper = reference_params::mu_upper,
                                           double phi = reference_params::phi);

/// Mean of the last `window` entries of a dB curve.
double steady_state_db(std::span<const double> curve_db, std::size_t window);

/// 1-based first iteration whose value is at most `target_db`, or 0 if never.
std::size_t first_reaching(std::span<const double> curve_db, double target_db);

}  // namespace sparse_lms

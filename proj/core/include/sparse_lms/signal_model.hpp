#pragma once

// Sparse FIR channels, PRBS training input, AWGN and the observed output
//   y(n) = h^T x(n) + z(n).

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace sparse_lms {

/// Every stochastic operation draws from an explicitly passed stream.
using RandomStream = std::mt19937_64;

struct SparseChannel {
  std::vector<double> taps;
  /// Sorted indices of the nonzero taps.
  std::vector<std::size_t> support;

  std::size_t size() const noexcept { return taps.size(); }
};

struct TrainingSignal {
  std::vector<double> samples;  // each exactly +1 or -1

  std::size_t size() const noexcept { return samples.size(); }
};

struct NoiseSpec {
  double snr_db = 10.0;
  double sigma = 0.0;
  double es = 1.0;

  /// Builds a spec whose sigma follows from the SNR definition.
  static NoiseSpec from_snr(double snr_db, double es = 1.0);
};

/// Draws a channel with `k_nonzero` standard-Gaussian taps at distinct
/// uniformly random positions. With `normalize`, the taps are rescaled to
/// unit l2 energy.
SparseChannel generate_sparse_channel(std::size_t n_taps, std::size_t k_nonzero,
                                      bool normalize, RandomStream& rng);

/// Independent equiprobable +/-1 samples.
TrainingSignal generate_prbs(std::size_t length, RandomStream& rng);

/// sqrt(es * 10^(-snr_db/10)).
double noise_sigma_from_snr(double snr_db, double es = 1.0);

/// The length-`n_taps` window [x(n), x(n-1), ..., x(n-N+1)] with zeros
/// before the signal start.
std::vector<double> regressor(const TrainingSignal& signal, std::size_t n,
                              std::size_t n_taps);

/// Sliding regressor maintained incrementally; equivalent to calling
/// regressor() for n = 0, 1, 2, ... .
class RegressorWindow {
 public:
  explicit RegressorWindow(std::size_t n_taps) : window_(n_taps, 0.0) {}

  /// Shifts the window by one sample and places `sample` at the front.
  void push(double sample);
  std::span<const double> view() const noexcept { return window_; }

 private:
  std::vector<double> window_;
};

/// Noiseless channel output h^T x.
double channel_output(const SparseChannel& channel, std::span<const double> x);

/// h^T x plus one N(0, sigma^2) draw.
double observe(const SparseChannel& channel, std::span<const double> x,
               double sigma, RandomStream& rng);

}  // namespace sparse_lms

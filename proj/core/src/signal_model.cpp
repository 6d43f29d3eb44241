#include "sparse_lms/signal_model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "sparse_lms/errors.hpp"

namespace sparse_lms {

NoiseSpec NoiseSpec::from_snr(double snr_db, double es) {
  return {snr_db, noise_sigma_from_snr(snr_db, es), es};
}

SparseChannel generate_sparse_channel(std::size_t n_taps, std::size_t k_nonzero,
                                      bool normalize, RandomStream& rng) {
  if (k_nonzero == 0 || k_nonzero > n_taps) {
    throw InvalidArgument("generate_sparse_channel: need 0 < K <= N, got K=" +
                          std::to_string(k_nonzero) + ", N=" + std::to_string(n_taps));
  }

  // Partial Fisher-Yates: the first K slots become a uniform K-subset.
  std::vector<std::size_t> positions(n_taps);
  std::iota(positions.begin(), positions.end(), std::size_t{0});
  for (std::size_t i = 0; i < k_nonzero; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, n_taps - 1);
    std::swap(positions[i], positions[pick(rng)]);
  }
  positions.resize(k_nonzero);
  std::sort(positions.begin(), positions.end());

  SparseChannel channel;
  channel.taps.assign(n_taps, 0.0);
  channel.support = std::move(positions);

  std::normal_distribution<double> gauss(0.0, 1.0);
  double energy = 0.0;
  for (std::size_t idx : channel.support) {
    double v = 0.0;
    while (v == 0.0) v = gauss(rng);  // a zero draw would break exact-K
    channel.taps[idx] = v;
    energy += v * v;
  }
  if (normalize) {
    const double scale = 1.0 / std::sqrt(energy);
    for (std::size_t idx : channel.support) channel.taps[idx] *= scale;
  }
  return channel;
}

TrainingSignal generate_prbs(std::size_t length, RandomStream& rng) {
  if (length == 0) throw InvalidArgument("generate_prbs: length must be >= 1");
  TrainingSignal signal;
  signal.samples.resize(length);
  std::bernoulli_distribution coin(0.5);
  for (double& s : signal.samples) s = coin(rng) ? 1.0 : -1.0;
  return signal;
}

double noise_sigma_from_snr(double snr_db, double es) {
  if (!(es > 0.0)) throw InvalidArgument("noise_sigma_from_snr: es must be > 0");
  return std::sqrt(es * std::pow(10.0, -snr_db / 10.0));
}

std::vector<double> regressor(const TrainingSignal& signal, std::size_t n,
                              std::size_t n_taps) {
  if (n >= signal.size()) {
    throw InvalidArgument("regressor: index " + std::to_string(n) +
                          " outside signal of length " + std::to_string(signal.size()));
  }
  std::vector<double> window(n_taps, 0.0);
  const std::size_t available = std::min(n_taps, n + 1);
  for (std::size_t i = 0; i < available; ++i) window[i] = signal.samples[n - i];
  return window;
}

void RegressorWindow::push(double sample) {
  if (window_.empty()) return;
  std::shift_right(window_.begin(), window_.end(), 1);
  window_.front() = sample;
}

double channel_output(const SparseChannel& channel, std::span<const double> x) {
  if (x.size() != channel.size()) {
    throw InvalidArgument("observe: regressor length " + std::to_string(x.size()) +
                          " != channel length " + std::to_string(channel.size()));
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) acc += channel.taps[i] * x[i];
  return acc;
}

double observe(const SparseChannel& channel, std::span<const double> x, double sigma,
               RandomStream& rng) {
  if (!(sigma >= 0.0)) throw InvalidArgument("observe: sigma must be >= 0");
  const double clean = channel_output(channel, x);
  std::normal_distribution<double> gauss(0.0, 1.0);
  return clean + sigma * gauss(rng);
}

}  // namespace sparse_lms

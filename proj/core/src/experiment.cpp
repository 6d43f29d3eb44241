#include "sparse_lms/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <thread>

#include "sparse_lms/errors.hpp"

namespace sparse_lms {

void ExperimentConfig::validate() const {
  if (n_taps == 0) throw InvalidArgument("n_taps must be >= 1");
  if (k_nonzero == 0 || k_nonzero > n_taps) {
    throw InvalidArgument("k_nonzero must satisfy 0 < K <= N (K=" +
                          std::to_string(k_nonzero) + ", N=" + std::to_string(n_taps) + ")");
  }
  if (!std::isfinite(snr_db)) throw InvalidArgument("snr_db must be finite");
  if (iterations == 0) throw InvalidArgument("iterations must be >= 1");
  if (trials == 0) throw InvalidArgument("trials must be >= 1");
  if (estimator_specs.empty()) throw InvalidArgument("at least one estimator is required");

  std::set<std::string> seen;
  for (const auto& spec : estimator_specs) {
    if (spec.label.empty()) throw InvalidArgument("estimator label must not be empty");
    if (spec.label.find_first_of(",\"\r\n") != std::string::npos) {
      throw InvalidArgument("estimator label '" + spec.label +
                            "' must not contain commas, quotes or newlines");
    }
    if (!seen.insert(spec.label).second) {
      throw InvalidArgument("duplicate estimator label '" + spec.label + "'");
    }
    spec.penalty.validate();
    spec.schedule.validate();
  }
}

double mse_db(double avg_sq_dev) {
  if (!(avg_sq_dev >= 0.0)) throw InvalidArgument("mse_db: input must be >= 0");
  return 10.0 * std::log10(std::max(avg_sq_dev, kMseFloor));
}

TrialStreams derive_trial_streams(std::uint64_t master_seed, std::size_t trial_index) {
  const auto trial = static_cast<std::uint64_t>(trial_index);
  auto make = [&](std::uint32_t tag) {
    std::seed_seq seq{static_cast<std::uint32_t>(master_seed),
                      static_cast<std::uint32_t>(master_seed >> 32),
                      static_cast<std::uint32_t>(trial),
                      static_cast<std::uint32_t>(trial >> 32), tag};
    return RandomStream(seq);
  };
  return {make(0x43480000u), make(0x53490000u), make(0x4e4f0000u)};
}

std::vector<std::vector<double>> run_trial_paired(const ExperimentConfig& config,
                                                  std::size_t trial_index) {
  if (trial_index >= config.trials) {
    throw InvalidArgument("run_trial: trial index " + std::to_string(trial_index) +
                          " >= trials " + std::to_string(config.trials));
  }
  auto streams = derive_trial_streams(config.master_seed, trial_index);
  const SparseChannel channel = generate_sparse_channel(
      config.n_taps, config.k_nonzero, config.normalize_channel, streams.channel);
  const TrainingSignal signal = generate_prbs(config.iterations, streams.signal);
  const NoiseSpec noise = NoiseSpec::from_snr(config.snr_db);

  std::vector<std::vector<double>> traces;
  traces.reserve(config.estimator_specs.size());
  for (const auto& spec : config.estimator_specs) {
    // Same starting noise state for every spec keeps the comparison paired.
    RandomStream noise_rng = streams.noise;
    try {
      traces.push_back(run_filter(channel, signal, noise, spec.penalty, spec.schedule,
                                  config.iterations, noise_rng));
    } catch (const DivergenceError& e) {
      throw ExperimentError("trial " + std::to_string(trial_index) + ", estimator '" +
                                spec.label + "': " + e.what(),
                            e.iteration(), trial_index, spec.label);
    }
  }
  return traces;
}

std::vector<double> run_trial(const ExperimentConfig& config, std::size_t trial_index,
                              const std::string& spec_label) {
  const auto it = std::find_if(config.estimator_specs.begin(), config.estimator_specs.end(),
                               [&](const EstimatorSpec& s) { return s.label == spec_label; });
  if (it == config.estimator_specs.end()) {
    throw InvalidArgument("run_trial: no estimator labelled '" + spec_label + "'");
  }
  ExperimentConfig single = config;
  single.estimator_specs = {*it};
  auto traces = run_trial_paired(single, trial_index);
  return std::move(traces.front());
}

std::vector<MseCurve> run_experiment(const ExperimentConfig& config,
                                     const RunOptions& options) {
  config.validate();

  std::size_t threads = options.threads;
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, config.trials);

  const std::size_t n_specs = config.estimator_specs.size();
  std::vector<std::vector<double>> sums(n_specs,
                                        std::vector<double>(config.iterations, 0.0));

  // Trials run in bounded batches; each batch is folded into the sums in
  // trial-index order once all of its members are done.
  const std::size_t batch_size = std::max<std::size_t>(threads * 4, 16);
  std::vector<std::vector<std::vector<double>>> slots(batch_size);
  std::vector<std::exception_ptr> failures(batch_size);

  for (std::size_t begin = 0; begin < config.trials; begin += batch_size) {
    const std::size_t count = std::min(batch_size, config.trials - begin);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (std::size_t k = next++; k < count; k = next++) {
        try {
          slots[k] = run_trial_paired(config, begin + k);
        } catch (...) {
          failures[k] = std::current_exception();
        }
      }
    };
    if (threads <= 1) {
      worker();
    } else {
      std::vector<std::jthread> pool;
      pool.reserve(threads);
      for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    }

    for (std::size_t k = 0; k < count; ++k) {
      if (failures[k]) std::rethrow_exception(failures[k]);
      for (std::size_t s = 0; s < n_specs; ++s) {
        const auto& trace = slots[k][s];
        auto& acc = sums[s];
        for (std::size_t i = 0; i < trace.size(); ++i) acc[i] += trace[i];
      }
      slots[k].clear();
    }
  }

  std::vector<MseCurve> curves;
  curves.reserve(n_specs);
  const double inv_trials = 1.0 / static_cast<double>(config.trials);
  for (std::size_t s = 0; s < n_specs; ++s) {
    MseCurve curve{config.estimator_specs[s].label, {}, config.trials};
    curve.mse_db.reserve(config.iterations);
    for (double total : sums[s]) curve.mse_db.push_back(mse_db(total * inv_trials));
    curves.push_back(std::move(curve));
  }
  return curves;
}

std::vector<EstimatorSpec> canonical_specs(double mu_upper, double phi) {
  struct Algorithm {
    const char* name;
    PenaltyConfig penalty;
  };
  const Algorithm algorithms[] = {
      {"LMS", PenaltyConfig::none()},
      {"ZA", PenaltyConfig::za(reference_params::lambda_za)},
      {"RZA", PenaltyConfig::rza(reference_params::lambda_rza, reference_params::epsilon)},
      {"RL1", PenaltyConfig::rl1(reference_params::lambda_rl1, reference_params::delta)},
  };
  auto num = [](double v) {
    std::ostringstream os;
    os << v;
    return os.str();
  };
  std::vector<EstimatorSpec> specs;
  for (const auto& a : algorithms) {
    const std::string name = a.name;
    specs.push_back(
        {name + "-ISS(" + num(mu_upper) + ")", a.penalty, StepSchedule::invariant(mu_upper)});
    specs.push_back({name + "-ISS(" + num(phi) + ")", a.penalty, StepSchedule::invariant(phi)});
    specs.push_back(
        {name + "-IPVSS", a.penalty, StepSchedule::iterative_promoting(mu_upper, phi)});
  }
  return specs;
}

double steady_state_db(std::span<const double> curve_db, std::size_t window) {
  if (curve_db.empty()) throw InvalidArgument("steady_state_db: empty curve");
  window = std::clamp<std::size_t>(window, 1, curve_db.size());
  const auto tail = curve_db.last(window);
  return std::accumulate(tail.begin(), tail.end(), 0.0) / static_cast<double>(window);
}

std::size_t first_reaching(std::span<const double> curve_db, double target_db) {
  for (std::size_t i = 0; i < curve_db.size(); ++i) {
    if (curve_db[i] <= target_db) return i + 1;
  }
  return 0;
}

}  // namespace sparse_lms

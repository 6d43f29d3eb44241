#include "sparse_lms/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sparse_lms/errors.hpp"

namespace sparse_lms {

void StepSchedule::validate() const {
  if (!(mu0 > 0.0) || !std::isfinite(mu0)) {
    throw InvalidArgument("step schedule: mu0 must be a finite value > 0");
  }
  if (kind == ScheduleKind::iterative_promoting && !(phi > 0.0 && phi <= mu0)) {
    throw InvalidArgument("step schedule: iterative-promoting needs 0 < phi <= mu0");
  }
}

void PenaltyConfig::validate() const {
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
    throw InvalidArgument("penalty: lambda must be a finite value >= 0");
  }
  if (kind == PenaltyKind::rza && !(epsilon > 0.0)) {
    throw InvalidArgument("penalty: rza needs epsilon > 0");
  }
  if (kind == PenaltyKind::rl1 && !(delta > 0.0)) {
    throw InvalidArgument("penalty: rl1 needs delta > 0");
  }
}

std::string_view to_string(PenaltyKind kind) noexcept {
  switch (kind) {
    case PenaltyKind::none: return "none";
    case PenaltyKind::za: return "za";
    case PenaltyKind::rza: return "rza";
    case PenaltyKind::rl1: return "rl1";
  }
  return "none";
}

std::string_view to_string(ScheduleKind kind) noexcept {
  return kind == ScheduleKind::invariant ? "iss" : "ipvss";
}

FilterState FilterState::zeros(std::size_t n_taps) {
  return {std::vector<double>(n_taps, 0.0), std::vector<double>(n_taps, 0.0), 1};
}

double step_size(const StepSchedule& schedule, std::size_t iteration) {
  if (iteration < 1) throw InvalidArgument("step_size: iteration must be >= 1");
  if (schedule.kind == ScheduleKind::invariant) return schedule.mu0;
  return std::max(schedule.mu0 / static_cast<double>(iteration), schedule.phi);
}

double penalty_coefficient(const PenaltyConfig& config, double current,
                           double previous) noexcept {
  switch (config.kind) {
    case PenaltyKind::none:
      return 0.0;
    case PenaltyKind::za:
      return config.lambda * sgn(current);
    case PenaltyKind::rza:
      return config.epsilon * config.lambda * sgn(current) /
             (1.0 + config.epsilon * std::abs(current));
    case PenaltyKind::rl1:
      return config.lambda * sgn(current) / (config.delta + std::abs(previous));
  }
  return 0.0;
}

std::vector<double> penalty_direction(const PenaltyConfig& config,
                                      const FilterState& state) {
  if (state.prev_estimate.size() != state.estimate.size()) {
    throw InvalidArgument("penalty_direction: estimate/prev_estimate length mismatch");
  }
  std::vector<double> p(state.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    p[i] = penalty_coefficient(config, state.estimate[i], state.prev_estimate[i]);
  }
  return p;
}

namespace {

// The per-kind loops keep the switch out of the coefficient loop. `next`
// receives h(n+1) while `h` still reads h(n); `prev` is h(n-1).
template <PenaltyKind Kind>
double update_coefficients(std::span<const double> h, std::span<const double> prev,
                           std::span<double> next, std::span<const double> x,
                           double mu, double err, const PenaltyConfig& cfg) {
  double checksum = 0.0;
  for (std::size_t i = 0; i < h.size(); ++i) {
    double p = 0.0;
    if constexpr (Kind == PenaltyKind::za) {
      p = cfg.lambda * sgn(h[i]);
    } else if constexpr (Kind == PenaltyKind::rza) {
      p = cfg.epsilon * cfg.lambda * sgn(h[i]) / (1.0 + cfg.epsilon * std::abs(h[i]));
    } else if constexpr (Kind == PenaltyKind::rl1) {
      p = cfg.lambda * sgn(h[i]) / (cfg.delta + std::abs(prev[i]));
    }
    next[i] = h[i] + mu * (err * x[i] - p);
    checksum += next[i];
  }
  return checksum;
}

}  // namespace

double iterate(FilterState& state, const PenaltyConfig& config,
               const StepSchedule& schedule, std::span<const double> x, double y) {
  const std::size_t n = state.size();
  if (x.size() != n || state.prev_estimate.size() != n) {
    throw InvalidArgument("iterate: regressor length " + std::to_string(x.size()) +
                          " != estimate length " + std::to_string(n));
  }

  double predicted = 0.0;
  for (std::size_t i = 0; i < n; ++i) predicted += state.estimate[i] * x[i];
  const double err = y - predicted;
  if (!std::isfinite(err)) {
    throw DivergenceError("iterate: non-finite estimation error at iteration " +
                              std::to_string(state.iteration),
                          state.iteration);
  }

  const double mu = step_size(schedule, state.iteration);

  // Rotate buffers: prev_estimate <- h(n) happens by writing h(n+1) over
  // h(n-1) and swapping.
  std::span<const double> h(state.estimate);
  std::span<const double> prev(state.prev_estimate);
  std::vector<double>& next = state.prev_estimate;
  double checksum = 0.0;
  switch (config.kind) {
    case PenaltyKind::none:
      checksum = update_coefficients<PenaltyKind::none>(h, prev, next, x, mu, err, config);
      break;
    case PenaltyKind::za:
      checksum = update_coefficients<PenaltyKind::za>(h, prev, next, x, mu, err, config);
      break;
    case PenaltyKind::rza:
      checksum = update_coefficients<PenaltyKind::rza>(h, prev, next, x, mu, err, config);
      break;
    case PenaltyKind::rl1:
      checksum = update_coefficients<PenaltyKind::rl1>(h, prev, next, x, mu, err, config);
      break;
  }
  state.estimate.swap(state.prev_estimate);

  // A sum of finite terms only stops being finite on overflow or NaN.
  if (!std::isfinite(checksum)) {
    throw DivergenceError("iterate: non-finite estimate at iteration " +
                              std::to_string(state.iteration),
                          state.iteration);
  }
  ++state.iteration;
  return err;
}

double squared_deviation(std::span<const double> truth, std::span<const double> estimate) {
  if (truth.size() != estimate.size()) {
    throw InvalidArgument("squared_deviation: length mismatch");
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    const double d = truth[i] - estimate[i];
    acc += d * d;
  }
  return acc;
}

std::vector<double> run_filter(const SparseChannel& channel, const TrainingSignal& signal,
                               const NoiseSpec& noise, const PenaltyConfig& config,
                               const StepSchedule& schedule, std::size_t iterations,
                               RandomStream& rng, FilterState& final_state) {
  if (iterations > signal.size()) {
    throw InvalidArgument("run_filter: " + std::to_string(iterations) +
                          " iterations exceed signal length " +
                          std::to_string(signal.size()));
  }
  if (!(noise.sigma >= 0.0)) throw InvalidArgument("run_filter: sigma must be >= 0");
  config.validate();
  schedule.validate();

  const std::size_t n_taps = channel.size();
  final_state = FilterState::zeros(n_taps);
  RegressorWindow window(n_taps);
  std::normal_distribution<double> gauss(0.0, 1.0);

  std::vector<double> trace;
  trace.reserve(iterations);
  for (std::size_t k = 0; k < iterations; ++k) {
    window.push(signal.samples[k]);
    const auto x = window.view();
    const double y = channel_output(channel, x) + noise.sigma * gauss(rng);
    iterate(final_state, config, schedule, x, y);
    const double dev = squared_deviation(channel.taps, final_state.estimate);
    if (!std::isfinite(dev)) {
      throw DivergenceError("run_filter: squared deviation overflowed at iteration " +
                                std::to_string(k + 1),
                            k + 1);
    }
    trace.push_back(dev);
  }
  return trace;
}

std::vector<double> run_filter(const SparseChannel& channel, const TrainingSignal& signal,
                               const NoiseSpec& noise, const PenaltyConfig& config,
                               const StepSchedule& schedule, std::size_t iterations,
                               RandomStream& rng) {
  FilterState state;
  return run_filter(channel, signal, noise, config, schedule, iterations, rng, state);
}

}  // namespace sparse_lms

#include <benchmark/benchmark.h>

#include "sparse_lms/estimators.hpp"
#include "sparse_lms/experiment.hpp"
#include "sparse_lms/signal_model.hpp"

using namespace sparse_lms;

namespace {

PenaltyConfig penalty_for(int kind) {
  switch (kind) {
    case 1: return PenaltyConfig::za(reference_params::lambda_za);
    case 2: return PenaltyConfig::rza(reference_params::lambda_rza, reference_params::epsilon);
    case 3: return PenaltyConfig::rl1(reference_params::lambda_rl1, reference_params::delta);
    default: return PenaltyConfig::none();
  }
}

void BM_Iterate(benchmark::State& state) {
  const auto n_taps = static_cast<std::size_t>(state.range(0));
  const auto penalty = penalty_for(static_cast<int>(state.range(1)));
  const auto schedule = StepSchedule::iterative_promoting(reference_params::mu_upper, reference_params::phi);
  RandomStream rng(1);
  const auto channel = generate_sparse_channel(n_taps, 4, true, rng);
  const auto signal = generate_prbs(4096, rng);
  RegressorWindow window(n_taps);
  FilterState filter = FilterState::zeros(n_taps);
  std::size_t k = 0;
  for (auto _ : state) {
    window.push(signal.samples[k++ & 4095]);
    const double y = channel_output(channel, window.view());
    benchmark::DoNotOptimize(iterate(filter, penalty, schedule, window.view(), y));
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_Iterate)->ArgsProduct({{16, 128, 1024}, {0, 1, 2, 3}});

void BM_ComparisonGridTrial(benchmark::State& state) {
  ExperimentConfig config;
  config.trials = 1;
  config.estimator_specs = canonical_specs();
  for (auto _ : state) benchmark::DoNotOptimize(run_trial_paired(config, 0));
}
BENCHMARK(BM_ComparisonGridTrial)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

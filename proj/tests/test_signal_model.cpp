#include <algorithm>
#include <cmath>
#include <numeric>

#include "doctest.h"
#include "sparse_lms/errors.hpp"
#include "sparse_lms/signal_model.hpp"

using namespace sparse_lms;

namespace {

std::size_t count_nonzero(const std::vector<double>& v) {
  return static_cast<std::size_t>(std::count_if(v.begin(), v.end(), [](double t) { return t != 0.0; }));
}

double energy(const std::vector<double>& v) {
  return std::inner_product(v.begin(), v.end(), v.begin(), 0.0);
}

}  // namespace

TEST_SUITE("signal_model") {

TEST_CASE("sparse channel with N=128, K=4") {
  RandomStream rng(7);
  const auto ch = generate_sparse_channel(128, 4, true, rng);
  CHECK(ch.size() == 128);
  CHECK(count_nonzero(ch.taps) == 4);
  CHECK(std::count(ch.taps.begin(), ch.taps.end(), 0.0) == 124);
  REQUIRE(ch.support.size() == 4);
  CHECK(std::is_sorted(ch.support.begin(), ch.support.end()));
  for (auto idx : ch.support) CHECK(ch.taps[idx] != 0.0);
  CHECK(energy(ch.taps) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("single tap normalizes to +-1") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    RandomStream rng(seed);
    const auto ch = generate_sparse_channel(1, 1, true, rng);
    REQUIRE(ch.size() == 1);
    CHECK(std::abs(std::abs(ch.taps[0]) - 1.0) < 1e-15);
  }
}

TEST_CASE("K = N gives a dense channel") {
  RandomStream rng(3);
  const auto ch = generate_sparse_channel(8, 8, true, rng);
  CHECK(count_nonzero(ch.taps) == 8);
  CHECK(ch.support == std::vector<std::size_t>{0, 1, 2, 3, 4, 5, 6, 7});
}

TEST_CASE("unnormalized taps are raw standard-normal draws") {
  RandomStream rng(11);
  double sum_sq = 0.0;
  const int reps = 2000;
  for (int r = 0; r < reps; ++r) sum_sq += energy(generate_sparse_channel(16, 4, false, rng).taps);
  // E||h||^2 = K for unit-variance taps.
  CHECK(sum_sq / reps == doctest::Approx(4.0).epsilon(0.05));
}

TEST_CASE("invalid sparsity levels are rejected") {
  RandomStream rng(1);
  CHECK_THROWS_AS(generate_sparse_channel(128, 0, true, rng), InvalidArgument);
  CHECK_THROWS_AS(generate_sparse_channel(128, 129, true, rng), InvalidArgument);
  CHECK_THROWS_AS(generate_sparse_channel(0, 1, true, rng), InvalidArgument);
}

TEST_CASE("PRBS samples are +-1 with balanced mean") {
  RandomStream rng(2024);
  const auto sig = generate_prbs(100000, rng);
  REQUIRE(sig.size() == 100000);
  long plus = 0;
  long minus = 0;
  for (double s : sig.samples) {
    if (s == 1.0) ++plus;
    else if (s == -1.0) ++minus;
  }
  CHECK(plus + minus == 100000);
  const double mean = static_cast<double>(plus - minus) / 100000.0;
  CHECK(std::abs(mean) < 0.02);

  const auto one = generate_prbs(1, rng);
  REQUIRE(one.size() == 1);
  CHECK(std::abs(one.samples[0]) == 1.0);
  CHECK_THROWS_AS(generate_prbs(0, rng), InvalidArgument);
}

TEST_CASE("noise sigma from SNR") {
  CHECK(noise_sigma_from_snr(0.0, 1.0) == 1.0);
  CHECK(noise_sigma_from_snr(10.0, 1.0) == doctest::Approx(std::sqrt(0.1)).epsilon(1e-15));
  CHECK(noise_sigma_from_snr(10.0, 1.0) == doctest::Approx(0.316228).epsilon(1e-6));
  CHECK(noise_sigma_from_snr(20.0, 1.0) == doctest::Approx(0.1).epsilon(1e-15));
  CHECK(noise_sigma_from_snr(0.0, 4.0) == doctest::Approx(2.0));
  CHECK_THROWS_AS(noise_sigma_from_snr(10.0, 0.0), InvalidArgument);
  CHECK_THROWS_AS(noise_sigma_from_snr(10.0, -1.0), InvalidArgument);

  const auto spec = NoiseSpec::from_snr(5.0);
  CHECK(spec.es == 1.0);
  CHECK(spec.sigma == noise_sigma_from_snr(5.0));
}

TEST_CASE("regressor windows") {
  const TrainingSignal s{{1.0, -1.0, 1.0}};
  CHECK(regressor(s, 0, 3) == std::vector<double>{1.0, 0.0, 0.0});
  CHECK(regressor(s, 2, 3) == std::vector<double>{1.0, -1.0, 1.0});
  CHECK(regressor(s, 1, 2) == std::vector<double>{-1.0, 1.0});
  CHECK_THROWS_AS(regressor(s, 3, 3), InvalidArgument);
}

TEST_CASE("incremental window matches the direct regressor") {
  RandomStream rng(5);
  const auto s = generate_prbs(300, rng);
  RegressorWindow w(17);
  for (std::size_t n = 0; n < s.size(); ++n) {
    w.push(s.samples[n]);
    const auto direct = regressor(s, n, 17);
    REQUIRE(std::equal(direct.begin(), direct.end(), w.view().begin(), w.view().end()));
  }
}

TEST_CASE("observe") {
  RandomStream rng(9);
  SparseChannel half{{0.5, 0.0}, {0}};
  const std::vector<double> ones{1.0, 1.0};
  CHECK(observe(half, ones, 0.0, rng) == 0.5);

  SparseChannel zero{{0.0, 0.0, 0.0}, {}};
  const std::vector<double> any{1.0, -1.0, 1.0};
  CHECK(observe(zero, any, 0.0, rng) == 0.0);

  SparseChannel unit{{1.0}, {0}};
  const std::vector<double> neg{-1.0};
  CHECK(observe(unit, neg, 0.0, rng) == -1.0);

  CHECK_THROWS_AS(observe(half, neg, 0.0, rng), InvalidArgument);
  CHECK_THROWS_AS(observe(half, ones, -1.0, rng), InvalidArgument);
}

TEST_CASE("observed noise has the requested variance") {
  RandomStream rng(12);
  SparseChannel zero{{0.0}, {}};
  const std::vector<double> x{1.0};
  const double sigma = noise_sigma_from_snr(10.0);
  double sum = 0.0;
  double sum_sq = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double z = observe(zero, x, sigma, rng);
    sum += z;
    sum_sq += z * z;
  }
  CHECK(std::abs(sum / n) < 5.0 * sigma / std::sqrt(n));
  CHECK(sum_sq / n == doctest::Approx(0.1).epsilon(0.02));
}

TEST_CASE("noiseless observation equals a naive inner product") {
  RandomStream rng(99);
  for (int rep = 0; rep < 200; ++rep) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(1, 1024)(rng);
    const std::size_t k = std::uniform_int_distribution<std::size_t>(1, n)(rng);
    const auto ch = generate_sparse_channel(n, k, true, rng);
    const auto x = generate_prbs(n, rng).samples;
    double naive = 0.0;
    for (std::size_t i = 0; i < n; ++i) naive += ch.taps[i] * x[i];
    CHECK(std::abs(observe(ch, x, 0.0, rng) - naive) <= 1e-15);
  }
}

}  // TEST_SUITE

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include <Eigen/SVD>

#include "mmnoma/channel.hpp"

using namespace mmnoma;

namespace {

SystemConfig square_config(int n, double gain_1, double gain_2) {
  return SystemConfig{n, n, n, gain_1, gain_2};
}

// Second moment of |h| over enough draws to pin the entry variance,
// together with its standard error.
struct Moment {
  double mean;
  double std_error;
};

Moment entry_second_moment(int n_rx, int n_tx, double gain,
                           std::uint64_t seed, long draws) {
  std::mt19937_64 rng(seed);
  double sum = 0.0;
  double sum_sq = 0.0;
  long count = 0;
  while (count < draws) {
    const ChannelSample h = sample_channel(n_rx, n_tx, gain, rng);
    for (int j = 0; j < h.entries.cols(); ++j) {
      for (int i = 0; i < h.entries.rows(); ++i) {
        const double m = std::norm(h.entries(i, j));
        sum += m;
        sum_sq += m * m;
        ++count;
      }
    }
  }
  const double n = static_cast<double>(count);
  const double mean = sum / n;
  const double var = (sum_sq - n * mean * mean) / (n - 1.0);
  return {mean, std::sqrt(var / n)};
}

}  // namespace

TEST_CASE("config validation") {
  CHECK_NOTHROW(validate(square_config(1, 0.5, 2.0)));
  CHECK_THROWS_AS(validate(SystemConfig{0, 1, 1, 1.0, 1.0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(validate(SystemConfig{1, 1, 1, 0.0, 1.0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(validate(SystemConfig{1, 1, 1, 1.0, -2.0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(validate(PowerSplit{-1.0, 0.0}), std::invalid_argument);

  CHECK_FALSE(gain_ordering_inverted(square_config(4, 1.0, 2.0)));
  CHECK_FALSE(gain_ordering_inverted(square_config(4, 2.0, 2.0)));
  CHECK(gain_ordering_inverted(square_config(4, 100.0, 3.16)));
}

TEST_CASE("sample_channel shape and moments") {
  for (std::uint64_t seed : {0ULL, 7ULL, 1234ULL}) {
    const ChannelSample h = sample_channel(2, 3, 1.0, seed);
    CHECK(h.entries.rows() == 2);
    CHECK(h.entries.cols() == 3);
    CHECK(h.gain == 1.0);
  }

  // Per-entry variance gain/n_tx, estimated from 1e5 entries.
  const Moment m = entry_second_moment(2, 3, 1.0, 7, 100000);
  CHECK(std::abs(m.mean - 1.0 / 3.0) < 3.0 * m.std_error);

  const Moment m2 = entry_second_moment(1, 1, 4.0, 11, 40000);
  CHECK(std::abs(m2.mean - 4.0) < 3.0 * m2.std_error);
}

TEST_CASE("gram_spectrum basics") {
  SUBCASE("1x1 matrix") {
    const ChannelSample h = sample_channel(1, 1, 2.0, 5);
    const auto spec = gram_spectrum(h);
    REQUIRE(spec.size() == 1);
    CHECK(spec[0] == doctest::Approx(std::norm(h.entries(0, 0))).epsilon(1e-12));
  }

  SUBCASE("all-zero matrix") {
    ChannelSample h;
    h.entries = Eigen::MatrixXcd::Zero(3, 2);
    h.gain = 1.0;
    const auto spec = gram_spectrum(h);
    REQUIRE(spec.size() == 3);
    for (double ev : spec) CHECK(ev == 0.0);
  }

  SUBCASE("rank deficiency and singular-value oracle") {
    const ChannelSample h = sample_channel(3, 2, 1.0, 21);
    const auto spec = gram_spectrum(h);
    REQUIRE(spec.size() == 3);
    CHECK(spec[0] >= spec[1]);
    CHECK(spec[1] >= spec[2]);
    CHECK(spec[2] <= 1e-12);  // rank <= 2

    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(h.entries);
    const Eigen::VectorXd sv = svd.singularValues();
    for (int i = 0; i < 2; ++i)
      CHECK(spec[static_cast<std::size_t>(i)] ==
            doctest::Approx(sv(i) * sv(i)).epsilon(1e-9));
  }
}

TEST_CASE("shannon_logdet") {
  const std::vector<double> spec{1.0, 3.0};
  CHECK(shannon_logdet(spec, 0.0) == 0.0);
  CHECK(shannon_logdet(spec, 1.0) == doctest::Approx(3.0).epsilon(1e-13));
  const std::vector<double> single{2.0};
  CHECK(shannon_logdet(single, 1.5) == doctest::Approx(2.0).epsilon(1e-13));

  SUBCASE("nondecreasing in alpha and bounded by the extreme eigenvalue") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> unif(0.0, 5.0);
    for (int rep = 0; rep < 50; ++rep) {
      std::vector<double> s(4);
      for (double& v : s) v = unif(rng);
      const double lmax = *std::max_element(s.begin(), s.end());
      double prev = 0.0;
      for (double alpha : {0.0, 0.3, 1.0, 2.5, 10.0}) {
        const double value = shannon_logdet(s, alpha);
        CHECK(value >= prev - 1e-12);
        CHECK(value <= 4.0 * std::log2(1.0 + alpha * lmax) + 1e-12);
        CHECK(value >= std::log2(1.0 + alpha * lmax) - 1e-12);
        prev = value;
      }
    }
  }
}

TEST_CASE("mc_weak_capacity") {
  const SystemConfig cfg = square_config(4, 1.0, 1.0);

  SUBCASE("zero weak power means zero capacity, exactly") {
    const CapacityEstimate est = mc_weak_capacity(cfg, {0.0, 2.0}, 16, 9);
    CHECK(est.value == 0.0);
    CHECK(est.std_error == 0.0);
    CHECK(est.trials == 16);
  }

  SUBCASE("no interference reduces to the single-user log-det") {
    const long trials = 8;
    const std::uint64_t seed = 77;
    const CapacityEstimate est =
        mc_weak_capacity(cfg, {1.5, 0.0}, trials, seed);
    double expected = 0.0;
    for (long t = 0; t < trials; ++t) {
      const ChannelSample h = sample_channel(cfg.n_1, cfg.n_s, cfg.gain_1,
                                             derive_stream_seed(seed, t));
      expected += shannon_logdet(gram_spectrum(h), 1.5);
    }
    expected /= static_cast<double>(trials);
    CHECK(est.value == doctest::Approx(expected).epsilon(1e-13));
  }

  SUBCASE("per-trial values are nonnegative, so is the mean") {
    const CapacityEstimate est = mc_weak_capacity(cfg, {0.3, 1.7}, 32, 13);
    CHECK(est.value >= 0.0);
    CHECK(est.std_error >= 0.0);
  }

  SUBCASE("trials=1 has zero standard error") {
    const CapacityEstimate est = mc_weak_capacity(cfg, {1.0, 1.0}, 1, 5);
    CHECK(est.trials == 1);
    CHECK(est.std_error == 0.0);
  }

  SUBCASE("argument validation") {
    CHECK_THROWS_AS(mc_weak_capacity(cfg, {1.0, 1.0}, 0, 1),
                    std::invalid_argument);
    CHECK_THROWS_AS(mc_weak_capacity(cfg, {-0.1, 1.0}, 4, 1),
                    std::invalid_argument);
  }
}

TEST_CASE("determinism and common-random-number monotonicity") {
  const SystemConfig cfg = square_config(6, 2.0, 3.0);

  SUBCASE("identical seeds give bitwise-identical estimates") {
    const CapacityEstimate a = mc_weak_capacity(cfg, {0.7, 0.9}, 24, 99);
    const CapacityEstimate b = mc_weak_capacity(cfg, {0.7, 0.9}, 24, 99);
    CHECK(a.value == b.value);
    CHECK(a.std_error == b.std_error);
  }

  SUBCASE("C1 is monotone in p1 and antitone in p2 under a common seed") {
    const std::uint64_t seed = 31;
    const double base = mc_weak_capacity(cfg, {1.0, 1.0}, 10, seed).value;
    CHECK(mc_weak_capacity(cfg, {2.0, 1.0}, 10, seed).value >= base);
    CHECK(mc_weak_capacity(cfg, {1.0, 2.0}, 10, seed).value <= base);
  }

  SUBCASE("C2 is monotone in p2 under a common seed") {
    const std::uint64_t seed = 17;
    CHECK(mc_strong_capacity(cfg, 2.0, 10, seed).value >=
          mc_strong_capacity(cfg, 1.0, 10, seed).value);
  }
}

TEST_CASE("gain/power exchangeability") {
  // Scaling by powers of four moves exactly through the arithmetic:
  // gains (g, g) with powers (p1, p2) give the same per-seed values as
  // unit gains with powers (g p1, g p2).
  for (double g : {0.25, 4.0, 16.0}) {
    const SystemConfig scaled = square_config(5, g, g);
    const SystemConfig unit = square_config(5, 1.0, 1.0);
    const double p1 = 0.5, p2 = 1.25;
    const CapacityEstimate a = mc_weak_capacity(scaled, {p1, p2}, 12, 123);
    const CapacityEstimate b =
        mc_weak_capacity(unit, {g * p1, g * p2}, 12, 123);
    CHECK(a.value == b.value);
    CHECK(a.std_error == b.std_error);

    CHECK(mc_strong_capacity(scaled, p2, 12, 9).value ==
          mc_strong_capacity(unit, g * p2, 12, 9).value);
  }
}

TEST_CASE("mc_strong_capacity trivia") {
  const SystemConfig cfg = square_config(4, 1.0, 2.5);
  const CapacityEstimate zero = mc_strong_capacity(cfg, 0.0, 8, 3);
  CHECK(zero.value == 0.0);
  CHECK(zero.std_error == 0.0);
}

TEST_CASE("mc_sic_bound") {
  SUBCASE("no weak power, no bound") {
    const SystemConfig cfg = square_config(4, 1.0, 4.0);
    const CapacityEstimate est = mc_sic_bound(cfg, {0.0, 1.0}, 8, 3);
    CHECK(est.value == 0.0);
  }

  SUBCASE("symmetric users draw identical ensembles") {
    const SystemConfig cfg = square_config(4, 2.0, 2.0);
    const PowerSplit split{0.8, 0.4};
    const CapacityEstimate bound = mc_sic_bound(cfg, split, 64, 7);
    const CapacityEstimate weak = mc_weak_capacity(cfg, split, 64, 7);
    CHECK(bound.value == weak.value);  // same gains, same trial streams
    const double slack =
        3.0 * std::hypot(bound.std_error, weak.std_error) + 1e-15;
    CHECK(std::abs(bound.value - weak.value) <= slack);
  }

  SUBCASE("a stronger channel can always relay the weak message") {
    // Same trial streams map the two users onto gain-scaled copies of
    // one Gaussian draw, so the bound dominates trial by trial.
    const SystemConfig cfg = square_config(4, 1.0, 4.0);
    const PowerSplit split{0.6, 0.9};
    const CapacityEstimate bound = mc_sic_bound(cfg, split, 1000, 19);
    const CapacityEstimate weak = mc_weak_capacity(cfg, split, 1000, 19);
    CHECK(bound.value >= weak.value);
  }
}

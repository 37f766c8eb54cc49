#include "mmnoma/channel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

namespace mmnoma {

namespace {

constexpr double kEigClampFloor = -1e-12;

// splitmix64; decorrelates sequential stream indices.
std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

double sample_mean(const std::vector<double>& values) {
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum / static_cast<double>(values.size());
}

CapacityEstimate summarize(const std::vector<double>& per_trial) {
  CapacityEstimate est;
  est.trials = static_cast<long>(per_trial.size());
  est.value = sample_mean(per_trial);
  if (est.trials > 1) {
    double ss = 0.0;
    for (double v : per_trial) {
      const double d = v - est.value;
      ss += d * d;
    }
    const double var = ss / static_cast<double>(est.trials - 1);
    est.std_error = std::sqrt(var / static_cast<double>(est.trials));
  }
  return est;
}

// Per-trial weak-user rate on a channel with the given gain and receive
// count: log-det at p1+p2 minus log-det at p2. Used for both the weak
// user's own capacity (H1) and the SIC bound (H2).
double logdet_difference_trial(int n_rx, int n_tx, double gain,
                               const PowerSplit& split, std::uint64_t seed) {
  const ChannelSample h = sample_channel(n_rx, n_tx, gain, seed);
  const std::vector<double> spec = gram_spectrum(h);
  return shannon_logdet(spec, split.p_1 + split.p_2) -
         shannon_logdet(spec, split.p_2);
}

void check_mc_args(const SystemConfig& cfg, long trials) {
  validate(cfg);
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
}

}  // namespace

void validate(const SystemConfig& cfg) {
  if (cfg.n_s < 1 || cfg.n_1 < 1 || cfg.n_2 < 1)
    throw std::invalid_argument("antenna counts must be >= 1");
  if (!(cfg.gain_1 > 0.0) || !(cfg.gain_2 > 0.0))
    throw std::invalid_argument("channel gains must be > 0");
}

bool gain_ordering_inverted(const SystemConfig& cfg) {
  return cfg.gain_1 > cfg.gain_2;
}

void validate(const PowerSplit& split) {
  if (split.p_1 < 0.0 || split.p_2 < 0.0)
    throw std::invalid_argument("per-antenna powers must be >= 0");
}

std::uint64_t derive_stream_seed(std::uint64_t master_seed,
                                 std::uint64_t stream) {
  return splitmix64(master_seed + 0x9E3779B97F4A7C15ULL * (stream + 1));
}

ChannelSample sample_channel(int n_rx, int n_tx, double gain,
                             std::mt19937_64& rng) {
  ChannelSample sample;
  sample.gain = gain;
  sample.entries.resize(n_rx, n_tx);

  // Unit-gain entries have variance 1/n_tx split evenly across the real
  // and imaginary parts; the gain enters only through the final scale,
  // so a sample at gain g is exactly sqrt(g) times the unit-gain sample.
  const double unit_sd = std::sqrt(0.5 / static_cast<double>(n_tx));
  const double scale = std::sqrt(gain);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int j = 0; j < n_tx; ++j) {
    for (int i = 0; i < n_rx; ++i) {
      const double re = unit_sd * normal(rng);
      const double im = unit_sd * normal(rng);
      sample.entries(i, j) = scale * std::complex<double>(re, im);
    }
  }
  return sample;
}

ChannelSample sample_channel(int n_rx, int n_tx, double gain,
                             std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return sample_channel(n_rx, n_tx, gain, rng);
}

std::vector<double> gram_spectrum(const ChannelSample& h) {
  const Eigen::MatrixXcd gram = h.entries * h.entries.adjoint();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(
      gram, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw ComputationError("eigensolver failed on the Gram matrix");

  const Eigen::VectorXd& raw = solver.eigenvalues();  // ascending
  std::vector<double> spectrum(static_cast<std::size_t>(raw.size()));
  for (Eigen::Index i = 0; i < raw.size(); ++i) {
    double ev = raw(raw.size() - 1 - i);
    if (ev < 0.0) {
      if (ev < kEigClampFloor)
        throw ComputationError("Gram eigenvalue " + std::to_string(ev) +
                               " is negative beyond round-off");
      ev = 0.0;
    }
    spectrum[static_cast<std::size_t>(i)] = ev;
  }
  return spectrum;
}

double shannon_logdet(std::span<const double> spectrum, double alpha) {
  constexpr double log2e = std::numbers::log2e;
  double total = 0.0;
  for (double ev : spectrum) total += std::log1p(alpha * ev) * log2e;
  return total;
}

CapacityEstimate mc_weak_capacity(const SystemConfig& cfg,
                                  const PowerSplit& split, long trials,
                                  std::uint64_t seed) {
  check_mc_args(cfg, trials);
  validate(split);
  std::vector<double> per_trial(static_cast<std::size_t>(trials));
  for (long t = 0; t < trials; ++t) {
    per_trial[static_cast<std::size_t>(t)] = logdet_difference_trial(
        cfg.n_1, cfg.n_s, cfg.gain_1, split, derive_stream_seed(seed, t));
  }
  return summarize(per_trial);
}

CapacityEstimate mc_strong_capacity(const SystemConfig& cfg, double p_2,
                                    long trials, std::uint64_t seed) {
  check_mc_args(cfg, trials);
  if (p_2 < 0.0) throw std::invalid_argument("p_2 must be >= 0");
  std::vector<double> per_trial(static_cast<std::size_t>(trials));
  for (long t = 0; t < trials; ++t) {
    const ChannelSample h = sample_channel(cfg.n_2, cfg.n_s, cfg.gain_2,
                                           derive_stream_seed(seed, t));
    per_trial[static_cast<std::size_t>(t)] =
        shannon_logdet(gram_spectrum(h), p_2);
  }
  return summarize(per_trial);
}

CapacityEstimate mc_sic_bound(const SystemConfig& cfg, const PowerSplit& split,
                              long trials, std::uint64_t seed) {
  check_mc_args(cfg, trials);
  validate(split);
  std::vector<double> per_trial(static_cast<std::size_t>(trials));
  for (long t = 0; t < trials; ++t) {
    per_trial[static_cast<std::size_t>(t)] = logdet_difference_trial(
        cfg.n_2, cfg.n_s, cfg.gain_2, split, derive_stream_seed(seed, t));
  }
  return summarize(per_trial);
}

}  // namespace mmnoma

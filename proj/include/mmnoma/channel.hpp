#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "mmnoma/types.hpp"

namespace mmnoma {

/// Default number of Monte-Carlo trials per capacity estimate.
inline constexpr long kDefaultTrials = 10;

/// Deterministically derives the seed of child stream `stream` from a
/// master seed. Trial t of every Monte-Carlo estimator runs on stream t,
/// so estimates are reproducible bit-for-bit regardless of how trials are
/// scheduled, and estimators called with the same master seed see the
/// same underlying Gaussian draws (common random numbers).
std::uint64_t derive_stream_seed(std::uint64_t master_seed,
                                 std::uint64_t stream);

/// Draws an n_rx x n_tx matrix with i.i.d. circularly-symmetric complex
/// Gaussian entries of variance gain/n_tx. The unit-gain matrix is drawn
/// first and scaled by sqrt(gain), so samples at different gains from the
/// same rng state differ only by that scale factor.
ChannelSample sample_channel(int n_rx, int n_tx, double gain,
                             std::mt19937_64& rng);

/// Convenience overload seeding a fresh generator.
ChannelSample sample_channel(int n_rx, int n_tx, double gain,
                             std::uint64_t seed);

/// Eigenvalues of H H^dag, sorted descending. Round-off negatives above
/// -1e-12 are clamped to zero; anything more negative, or an eigensolver
/// failure, throws ComputationError.
std::vector<double> gram_spectrum(const ChannelSample& h);

/// sum_i log2(1 + alpha * lambda_i) over a nonnegative spectrum.
double shannon_logdet(std::span<const double> spectrum, double alpha);

/// Ergodic spectral efficiency of the weak user, which decodes its own
/// signal while treating the strong user's signal as noise:
/// E[ log2|I + (p1+p2) H1 H1^dag| - log2|I + p2 H1 H1^dag| ].
CapacityEstimate mc_weak_capacity(const SystemConfig& cfg,
                                  const PowerSplit& split, long trials,
                                  std::uint64_t seed);

/// Ergodic spectral efficiency of the strong user after SIC:
/// E[ log2|I + p2 H2 H2^dag| ].
CapacityEstimate mc_strong_capacity(const SystemConfig& cfg, double p_2,
                                    long trials, std::uint64_t seed);

/// The rate up to which the strong user can decode the weak user's
/// message: the weak-user log-det difference evaluated on the strong
/// user's channel. SIC succeeds when the weak-user rate stays below this.
CapacityEstimate mc_sic_bound(const SystemConfig& cfg,
                              const PowerSplit& split, long trials,
                              std::uint64_t seed);

}  // namespace mmnoma

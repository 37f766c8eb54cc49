#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mmnoma/asymptotic.hpp"

namespace mmnoma {

/// Continuous-part probability mass of the law on [lo, hi].
double mp_mass_between(const MpLaw& law, double lo, double hi);

/// L1 distance between the histogram of a spectrum (binned uniformly
/// over the law's support) and the per-bin masses of the continuous
/// density.
double spectrum_histogram_l1(const std::vector<double>& spectrum,
                             const MpLaw& law, int bins);

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Self-contained invariant suite, also exposed as `mmnoma validate`:
///   - Marchenko-Pastur normalization (continuous mass + zero atom = 1)
///     for beta in {1/4, 1/2, 1, 2, 4};
///   - closed-form Shannon transform vs quadrature over a (c, beta) grid;
///   - empirical spectrum of a 512x512 unit-gain Gram matrix vs the
///     density (50-bin L1 distance).
/// The seed drives the spectrum check's channel draw.
std::vector<CheckResult> run_validation_suite(std::uint64_t seed);

}  // namespace mmnoma

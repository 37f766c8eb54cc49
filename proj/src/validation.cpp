#include "mmnoma/validation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <vector>

#include "mmnoma/asymptotic.hpp"
#include "mmnoma/channel.hpp"

namespace mmnoma {

namespace {

std::string format(const char* fmt, double value) {
  char buf[128];
  std::snprintf(buf, sizeof(buf), fmt, value);
  return buf;
}

CheckResult check_mp_normalization() {
  double worst = 0.0;
  for (double beta : {0.25, 0.5, 1.0, 2.0, 4.0}) {
    const MpLaw law = mp_law(beta);
    const double total = mp_continuous_mass(law, 1e-11) + law.zero_mass;
    worst = std::max(worst, std::abs(total - 1.0));
  }
  return {"mp-normalization", worst < 1e-9,
          format("max |mass - 1| = %.3e (tolerance 1e-9)", worst)};
}

CheckResult check_closed_form_vs_quadrature() {
  double worst = 0.0;
  for (double beta : {0.5, 1.0, 2.0}) {
    for (double c : {0.01, 0.1, 1.0, 10.0, 100.0}) {
      const double quad = asym_capacity_quadrature(c, beta, 1, 1e-9);
      const double closed = shannon_transform(c, beta);
      worst = std::max(worst, std::abs(quad - closed));
    }
  }
  return {"closed-form-vs-quadrature", worst < 1e-6,
          format("max per-antenna |closed - quadrature| = %.3e "
                 "(tolerance 1e-6)",
                 worst)};
}

CheckResult check_spectrum_histogram(std::uint64_t seed) {
  const int n = 512;
  const MpLaw law = mp_law(1.0);
  const ChannelSample h = sample_channel(n, n, 1.0, seed);
  const double l1 = spectrum_histogram_l1(gram_spectrum(h), law, 50);
  return {"spectrum-histogram", l1 < 0.05,
          format("50-bin L1 distance = %.4f (tolerance 0.05)", l1)};
}

}  // namespace

double mp_mass_between(const MpLaw& law, double lo, double hi) {
  lo = std::clamp(lo, law.a, law.b);
  hi = std::clamp(hi, law.a, law.b);
  if (!(hi > lo)) return 0.0;

  // Same edge-absorbing substitution as mp_integrate, restricted to the
  // theta interval covering [lo, hi]; the integrand is smooth there, so a
  // fixed composite Simpson rule reaches well past the 1e-9 scale these
  // checks run at.
  const double width = law.b - law.a;
  auto theta_of = [&](double x) {
    return std::asin(std::min(1.0, std::sqrt((x - law.a) / width)));
  };
  auto integrand = [&](double theta) {
    const double s = std::sin(theta);
    const double c = std::cos(theta);
    const double x = law.a + width * s * s;
    if (x <= 0.0) return 0.0;
    return width * width * s * s * c * c / (std::numbers::pi * law.beta * x);
  };

  const double t_lo = theta_of(lo);
  const double t_hi = theta_of(hi);
  const int panels = 2048;
  const double h = (t_hi - t_lo) / panels;
  double acc = integrand(t_lo) + integrand(t_hi);
  for (int i = 1; i < panels; ++i)
    acc += integrand(t_lo + i * h) * (i % 2 == 1 ? 4.0 : 2.0);
  return acc * h / 3.0;
}

double spectrum_histogram_l1(const std::vector<double>& spectrum,
                             const MpLaw& law, int bins) {
  const double width = (law.b - law.a) / bins;
  std::vector<double> counts(static_cast<std::size_t>(bins), 0.0);
  for (double ev : spectrum) {
    int idx = static_cast<int>((ev - law.a) / width);
    idx = std::clamp(idx, 0, bins - 1);  // edge fluctuations stay in range
    counts[static_cast<std::size_t>(idx)] += 1.0;
  }
  const double n = static_cast<double>(spectrum.size());
  double l1 = 0.0;
  for (int i = 0; i < bins; ++i) {
    const double expected =
        mp_mass_between(law, law.a + i * width, law.a + (i + 1) * width);
    l1 += std::abs(counts[static_cast<std::size_t>(i)] / n - expected);
  }
  return l1;
}

std::vector<CheckResult> run_validation_suite(std::uint64_t seed) {
  std::vector<CheckResult> results;
  results.push_back(check_mp_normalization());
  results.push_back(check_closed_form_vs_quadrature());
  results.push_back(check_spectrum_histogram(seed));
  return results;
}

}  // namespace mmnoma

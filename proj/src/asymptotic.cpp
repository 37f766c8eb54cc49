#include "mmnoma/asymptotic.hpp"

#include <cmath>
#include <numbers>

namespace mmnoma {

namespace {

constexpr double kLog2e = std::numbers::log2e;
constexpr double kPi = std::numbers::pi;

// Effective SNRs below this are treated as zero capacity; keeps the
// Q/c term away from 0/0.
constexpr double kSnrFloor = 1e-12;

struct SimpsonState {
  const std::function<double(double)>* f;
  int max_depth;
};

// Requested tolerances below the round-off floor of the Simpson deltas
// would never be met; per-interval tolerances bottom out here instead of
// recursing forever.
constexpr double kTolFloor = 1e-15;

double adaptive_simpson(const SimpsonState& st, double lo, double hi,
                        double flo, double fmid, double fhi, double whole,
                        double tol, int depth) {
  const double mid = 0.5 * (lo + hi);
  const double lmid = 0.5 * (lo + mid);
  const double rmid = 0.5 * (mid + hi);
  const double flmid = (*st.f)(lmid);
  const double frmid = (*st.f)(rmid);
  const double h = hi - lo;
  const double left = (h / 12.0) * (flo + 4.0 * flmid + fmid);
  const double right = (h / 12.0) * (fmid + 4.0 * frmid + fhi);
  const double delta = left + right - whole;
  if (std::abs(delta) <= 15.0 * std::max(tol, kTolFloor))
    return left + right + delta / 15.0;
  if (depth >= st.max_depth)
    throw ComputationError("adaptive quadrature failed to converge");
  return adaptive_simpson(st, lo, mid, flo, flmid, fmid, left, 0.5 * tol,
                          depth + 1) +
         adaptive_simpson(st, mid, hi, fmid, frmid, fhi, right, 0.5 * tol,
                          depth + 1);
}

double integrate(const std::function<double(double)>& f, double lo, double hi,
                 double abs_tol) {
  SimpsonState st{&f, 48};
  const double mid = 0.5 * (lo + hi);
  const double flo = f(lo);
  const double fmid = f(mid);
  const double fhi = f(hi);
  const double whole = ((hi - lo) / 6.0) * (flo + 4.0 * fmid + fhi);
  return adaptive_simpson(st, lo, hi, flo, fmid, fhi, whole, abs_tol, 0);
}

}  // namespace

MpLaw mp_law(double beta) {
  if (!(beta > 0.0))
    throw std::invalid_argument("aspect ratio beta must be > 0");
  const double root = std::sqrt(beta);
  MpLaw law;
  law.beta = beta;
  law.a = (1.0 - root) * (1.0 - root);
  law.b = (1.0 + root) * (1.0 + root);
  law.zero_mass = std::max(0.0, 1.0 - 1.0 / beta);
  return law;
}

double mp_density(double x, const MpLaw& law) {
  if (x <= law.a || x >= law.b) return 0.0;
  return std::sqrt((x - law.a) * (law.b - x)) / (2.0 * kPi * law.beta * x);
}

double mp_integrate(const std::function<double(double)>& f, const MpLaw& law,
                    double abs_tol) {
  const double width = law.b - law.a;
  // x = a + (b-a) sin^2(theta):  f_MP(x) dx  ->
  //   (b-a)^2 sin^2 cos^2 / (pi beta x) dtheta, smooth on [0, pi/2]
  // even when a = 0.
  auto integrand = [&](double theta) {
    const double s = std::sin(theta);
    const double c = std::cos(theta);
    const double x = law.a + width * s * s;
    const double weight = width * width * s * s * c * c / (kPi * law.beta * x);
    return weight > 0.0 ? f(x) * weight : 0.0;
  };
  return integrate(integrand, 0.0, 0.5 * kPi, abs_tol);
}

double mp_continuous_mass(const MpLaw& law, double abs_tol) {
  return mp_integrate([](double) { return 1.0; }, law, abs_tol);
}

double q_factor(double c, double beta) {
  const double root = std::sqrt(beta);
  const double edge_hi = (1.0 + root) * (1.0 + root);
  const double edge_lo = (1.0 - root) * (1.0 - root);
  const double s = std::sqrt(c * edge_hi + 1.0) + std::sqrt(c * edge_lo + 1.0);
  return 4.0 * c * c * beta / (s * s);
}

double shannon_transform(double c, double beta) {
  if (c < kSnrFloor) return 0.0;
  const double q = q_factor(c, beta);
  const double product = beta * std::log2(1.0 + c - q) +
                         std::log2(1.0 + c * beta - q) - (q / c) * kLog2e;
  return product / beta;
}

double asym_capacity_quadrature(double alpha, double beta, int n_rx,
                                double abs_tol) {
  if (alpha < 0.0) throw std::invalid_argument("alpha must be >= 0");
  if (alpha == 0.0) return 0.0;
  const MpLaw law = mp_law(beta);
  const double per_antenna = mp_integrate(
      [alpha](double x) { return std::log1p(alpha * x) * kLog2e; }, law,
      abs_tol);
  return static_cast<double>(n_rx) * per_antenna;
}

EffectiveSnrs effective_snrs(const PowerSplit& split, const SystemConfig& cfg) {
  return {(split.p_1 + split.p_2) * cfg.gain_1, split.p_2 * cfg.gain_1,
          split.p_2 * cfg.gain_2};
}

double asym_weak_capacity(const PowerSplit& split, const SystemConfig& cfg) {
  validate(cfg);
  validate(split);
  const EffectiveSnrs snrs = effective_snrs(split, cfg);
  const double beta_1 =
      static_cast<double>(cfg.n_1) / static_cast<double>(cfg.n_s);
  return static_cast<double>(cfg.n_1) *
         (shannon_transform(snrs.c_1, beta_1) -
          shannon_transform(snrs.c_2, beta_1));
}

double asym_strong_capacity(double p_2, const SystemConfig& cfg) {
  validate(cfg);
  if (p_2 < 0.0) throw std::invalid_argument("p_2 must be >= 0");
  const double beta_2 =
      static_cast<double>(cfg.n_2) / static_cast<double>(cfg.n_s);
  return static_cast<double>(cfg.n_2) *
         shannon_transform(p_2 * cfg.gain_2, beta_2);
}

double asym_sic_bound(const PowerSplit& split, const SystemConfig& cfg) {
  validate(cfg);
  validate(split);
  const double beta_2 =
      static_cast<double>(cfg.n_2) / static_cast<double>(cfg.n_s);
  const double c_hi = (split.p_1 + split.p_2) * cfg.gain_2;
  const double c_lo = split.p_2 * cfg.gain_2;
  return static_cast<double>(cfg.n_2) *
         (shannon_transform(c_hi, beta_2) - shannon_transform(c_lo, beta_2));
}

}  // namespace mmnoma

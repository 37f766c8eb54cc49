#pragma once

#include <functional>

#include "mmnoma/types.hpp"

namespace mmnoma {

/// Marchenko-Pastur law with aspect ratio beta = n_rx / n_tx, describing
/// the limiting eigenvalue distribution of H H^dag when H has i.i.d.
/// entries of variance 1/n_tx. For beta > 1 the Gram matrix is rank
/// deficient and a point mass of 1 - 1/beta sits at zero; the continuous
/// part lives on [a, b].
struct MpLaw {
  double beta;
  double a;          ///< lower support edge, (1 - sqrt(beta))^2
  double b;          ///< upper support edge, (1 + sqrt(beta))^2
  double zero_mass;  ///< max(0, 1 - 1/beta)
};

/// Builds the law for a given aspect ratio. Throws std::invalid_argument
/// for beta <= 0.
MpLaw mp_law(double beta);

/// Continuous-part density sqrt((x-a)(b-x)) / (2 pi beta x) on (a, b),
/// zero elsewhere. The point mass at zero is reported separately in
/// MpLaw::zero_mass and is not part of this function.
double mp_density(double x, const MpLaw& law);

/// Integral of f against the continuous part of the law. The change of
/// variables x = a + (b-a) sin^2(theta) absorbs the inverse-square-root
/// behaviour at both edges, leaving a smooth integrand for the adaptive
/// rule. Throws ComputationError if the requested absolute tolerance is
/// not reached.
double mp_integrate(const std::function<double(double)>& f, const MpLaw& law,
                    double abs_tol = 1e-10);

/// Total mass of the continuous part (1 for beta <= 1, 1/beta above).
double mp_continuous_mass(const MpLaw& law, double abs_tol = 1e-10);

/// The auxiliary factor
///   Q(c, beta) = 1/4 (sqrt(c(1+sqrt(beta))^2 + 1)
///                     - sqrt(c(1-sqrt(beta))^2 + 1))^2,
/// evaluated in the cancellation-free form 4 c^2 beta / (sum of the two
/// radicals)^2. Nondecreasing in c, Q(0) = 0.
double q_factor(double c, double beta);

/// Shannon transform of the law: integral of log2(1 + c x) against the
/// full law (the zero atom contributes nothing), in closed form.
///
/// The product form log2[(1+c-Q)^beta (1+c*beta-Q) e^(-Q/c)] evaluates to
/// beta times this integral -- exactly at beta = 1, where the two agree,
/// and verified against quadrature over c in [1e-2, 1e2] for beta in
/// {1/4, 1/2, 2, 4}. The quadrature value is the reference, so this
/// routine divides the product form by beta. Returns 0 for c < 1e-12.
double shannon_transform(double c, double beta);

/// Asymptotic total capacity n_rx * integral of log2(1 + alpha x) against
/// the law with beta = n_rx/n_tx, evaluated by adaptive quadrature of the
/// continuous part. abs_tol is the per-antenna tolerance.
double asym_capacity_quadrature(double alpha, double beta, int n_rx,
                                double abs_tol = 1e-9);

/// Effective SNRs that fully parameterize the asymptotic capacities:
/// c_1 = (p1+p2) gain_1, c_2 = p2 gain_1, c_3 = p2 gain_2.
struct EffectiveSnrs {
  double c_1;
  double c_2;
  double c_3;
};

EffectiveSnrs effective_snrs(const PowerSplit& split, const SystemConfig& cfg);

/// Closed-form asymptotic weak-user capacity
///   n_1 * [ V(c_1, beta_1) - V(c_2, beta_1) ],  beta_1 = n_1/n_s,
/// with V the per-antenna Shannon transform.
double asym_weak_capacity(const PowerSplit& split, const SystemConfig& cfg);

/// Closed-form asymptotic strong-user capacity n_2 * V(c_3, beta_2).
double asym_strong_capacity(double p_2, const SystemConfig& cfg);

/// Closed-form asymptotic SIC decodability bound: the weak-user capacity
/// expression evaluated on the strong user's channel parameters.
double asym_sic_bound(const PowerSplit& split, const SystemConfig& cfg);

}  // namespace mmnoma

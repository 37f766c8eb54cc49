#include "mmnoma/optimizer.hpp"

#include <cmath>

#include "mmnoma/asymptotic.hpp"

namespace mmnoma {

namespace {

struct RateEstimate {
  double value = 0.0;
  double std_error = 0.0;
};

RateEstimate weak_rate(const AllocationProblem& problem,
                       const PowerSplit& split) {
  if (problem.evaluator == Evaluator::kAsymptotic)
    return {asym_weak_capacity(split, problem.cfg), 0.0};
  const CapacityEstimate est =
      mc_weak_capacity(problem.cfg, split, problem.trials, problem.seed);
  return {est.value, est.std_error};
}

RateEstimate strong_rate(const AllocationProblem& problem, double p_2) {
  if (problem.evaluator == Evaluator::kAsymptotic)
    return {asym_strong_capacity(p_2, problem.cfg), 0.0};
  const CapacityEstimate est =
      mc_strong_capacity(problem.cfg, p_2, problem.trials, problem.seed);
  return {est.value, est.std_error};
}

RateEstimate sic_rate(const AllocationProblem& problem,
                      const PowerSplit& split) {
  if (problem.evaluator == Evaluator::kAsymptotic)
    return {asym_sic_bound(split, problem.cfg), 0.0};
  const CapacityEstimate est =
      mc_sic_bound(problem.cfg, split, problem.trials, problem.seed);
  return {est.value, est.std_error};
}

}  // namespace

void validate(const AllocationProblem& problem) {
  validate(problem.cfg);
  if (!(problem.p_max > 0.0))
    throw std::invalid_argument("p_max must be > 0");
  if (problem.r_0 < 0.0) throw std::invalid_argument("r_0 must be >= 0");
  if (!(problem.epsilon > 0.0))
    throw std::invalid_argument("epsilon must be > 0");
  if (problem.trials < 1) throw std::invalid_argument("trials must be >= 1");
}

double per_antenna_budget(const AllocationProblem& problem) {
  return problem.p_max / static_cast<double>(problem.cfg.n_s);
}

SumCapacity sum_capacity_at(const AllocationProblem& problem,
                            const PowerSplit& split) {
  validate(problem);
  validate(split);
  const RateEstimate c1 = weak_rate(problem, split);
  const RateEstimate c2 = strong_rate(problem, split.p_2);
  return {c1.value, c2.value, c1.value + c2.value, c1.std_error,
          c2.std_error};
}

SicCheck check_sic(const AllocationProblem& problem, const PowerSplit& split) {
  validate(problem);
  validate(split);
  const RateEstimate bound = sic_rate(problem, split);
  const RateEstimate c1 = weak_rate(problem, split);
  const double margin = bound.value - c1.value;
  double slack = 0.0;
  if (problem.evaluator == Evaluator::kMonteCarlo)
    slack = 3.0 * std::hypot(bound.std_error, c1.std_error);
  return {margin, margin >= -slack};
}

AllocationResult bisect_allocate(const AllocationProblem& problem) {
  validate(problem);
  const double budget = per_antenna_budget(problem);

  AllocationResult result;
  long calls = 0;

  auto c1_at = [&](double p_2) {
    ++calls;
    return weak_rate(problem, {budget - p_2, p_2});
  };

  // Infeasibility is decided up front: even the whole budget on the weak
  // user may miss the rate target.
  const RateEstimate c1_full = c1_at(0.0);
  if (c1_full.value < problem.r_0) {
    throw InfeasibleRateError(problem.r_0, c1_full.value);
  }

  // Bracket invariant: C1 at lo stays >= r_0, C1 at hi stays < r_0
  // (treating the hi endpoint, where C1(budget) = 0 only meets r_0 = 0,
  // as the infeasible side).
  double lo = 0.0;
  double hi = budget;
  RateEstimate c1_lo = c1_full;
  double midpoint = 0.0;
  int iterations = 0;

  while (hi - lo > problem.epsilon) {
    midpoint = 0.5 * (lo + hi);
    const RateEstimate c1_mid = c1_at(midpoint);
    ++iterations;
    if (c1_mid.value < problem.r_0) {
      hi = midpoint;
    } else {
      lo = midpoint;
      c1_lo = c1_mid;
    }
  }

  result.p_2 = lo;
  result.p_1 = budget - lo;
  result.p_2_midpoint = iterations > 0 ? midpoint : lo;
  result.iterations = iterations;
  result.c_1 = c1_lo.value;
  result.c_1_std_error = c1_lo.std_error;

  ++calls;
  const RateEstimate c2 = strong_rate(problem, result.p_2);
  result.c_2 = c2.value;
  result.c_2_std_error = c2.std_error;
  result.sum = result.c_1 + result.c_2;
  result.feasible = true;

  ++calls;
  const RateEstimate bound =
      sic_rate(problem, {result.p_1, result.p_2});
  result.sic_margin = bound.value - result.c_1;
  double slack = 0.0;
  if (problem.evaluator == Evaluator::kMonteCarlo)
    slack = 3.0 * std::hypot(bound.std_error, result.c_1_std_error);
  result.sic_ok = result.sic_margin >= -slack;

  result.evaluator_calls = calls;
  return result;
}

}  // namespace mmnoma

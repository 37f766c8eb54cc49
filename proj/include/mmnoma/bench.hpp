#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "mmnoma/optimizer.hpp"

namespace mmnoma {

enum class SweepAxis { kPMax, kR0, kWeakGainDb, kAntennaCount };

enum class Method { kMonteCarloBisection, kAsymptoticBisection };

std::string_view method_label(Method method);

/// One-dimensional parameter sweep: the axis value overrides the
/// corresponding field of the base problem, everything else is held
/// fixed. Axis values must be strictly increasing.
struct SweepSpec {
  AllocationProblem base;
  SweepAxis axis = SweepAxis::kPMax;
  std::vector<double> values;
  std::vector<Method> methods = {Method::kAsymptoticBisection};
};

void validate(const SweepSpec& spec);

/// One solved allocation. Field order is the CSV column order.
struct ResultRow {
  std::string method;
  double axis_value = 0.0;
  double p_1 = 0.0;
  double p_2 = 0.0;
  double c_1 = 0.0;
  double c_2 = 0.0;
  double sum = 0.0;
  int iterations = 0;
  double wall_time = 0.0;  ///< seconds per bisect_allocate call
  bool feasible = false;
  bool sic_ok = false;
  double std_error = 0.0;  ///< combined MC standard error of the sum
};

/// Solves the allocation problem at every (method, axis value) pair.
/// Each point runs on its own derived seed. Infeasible points are kept
/// in the output with feasible=false and NaN capacities; evaluator
/// failures are rethrown annotated with the offending point.
std::vector<ResultRow> run_sweep(const SweepSpec& spec);

/// Wall-clock comparison of the allocators over square array sizes
/// (n_s = n_1 = n_2 = N). The per-antenna budget and epsilon of the
/// template problem are held constant across N, so every run performs
/// the same number of bisections. Each measurement is the median over
/// `repetitions` timed runs; sub-millisecond runs are timed in batches.
/// Rows report N in axis_value. Runs sequentially by design.
std::vector<ResultRow> time_methods(const std::vector<int>& sizes,
                                    int repetitions,
                                    const AllocationProblem& base,
                                    const std::vector<Method>& methods);

/// Writes rows as CSV: fixed header, '.' decimal point, 12 significant
/// digits, one row per line, input order preserved.
void write_table(const std::vector<ResultRow>& rows, std::ostream& out);

/// write_table to a file; throws std::runtime_error naming the path on
/// I/O failure.
void write_table(const std::vector<ResultRow>& rows,
                 const std::filesystem::path& destination);

/// Parses write_table output (used for round-trip checks and by
/// downstream tooling).
std::vector<ResultRow> read_table(std::istream& in);

}  // namespace mmnoma

#include "mmnoma/bench.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

namespace mmnoma {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

const char* kHeader =
    "method,axis_value,p_1,p_2,c_1,c_2,sum,iterations,wall_time,feasible,"
    "sic_ok,std_error";

std::string format_double(double v) {
  char buf[40];
  auto [ptr, ec] =
      std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 12);
  return std::string(buf, ptr);
}

double parse_double(std::string_view token) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(),
                                   v, std::chars_format::general);
  if (ec != std::errc{} || ptr != token.data() + token.size())
    throw std::runtime_error("malformed numeric field '" + std::string(token) +
                             "'");
  return v;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  const auto elapsed = std::chrono::steady_clock::now() - start;
  return std::chrono::duration<double>(elapsed).count();
}

double combined_std_error(const AllocationResult& r) {
  return std::hypot(r.c_1_std_error, r.c_2_std_error);
}

AllocationProblem apply_axis(const AllocationProblem& base, SweepAxis axis,
                             double value) {
  AllocationProblem p = base;
  switch (axis) {
    case SweepAxis::kPMax:
      p.p_max = value;
      break;
    case SweepAxis::kR0:
      p.r_0 = value;
      break;
    case SweepAxis::kWeakGainDb:
      p.cfg.gain_1 = db_to_linear(value);
      break;
    case SweepAxis::kAntennaCount: {
      const int n = static_cast<int>(std::llround(value));
      p.cfg.n_s = n;
      p.cfg.n_1 = n;
      p.cfg.n_2 = n;
      break;
    }
  }
  return p;
}

ResultRow solve_point(const AllocationProblem& problem, Method method,
                      double axis_value) {
  ResultRow row;
  row.method = std::string(method_label(method));
  row.axis_value = axis_value;

  const auto start = std::chrono::steady_clock::now();
  try {
    const AllocationResult r = bisect_allocate(problem);
    row.wall_time = std::max(seconds_since(start), 1e-9);
    row.p_1 = r.p_1;
    row.p_2 = r.p_2;
    row.c_1 = r.c_1;
    row.c_2 = r.c_2;
    row.sum = r.sum;
    row.iterations = r.iterations;
    row.feasible = true;
    row.sic_ok = r.sic_ok;
    row.std_error = combined_std_error(r);
  } catch (const InfeasibleRateError& e) {
    // Keep the point: the probe at (budget, 0) tells how far the rate
    // target was missed.
    row.wall_time = std::max(seconds_since(start), 1e-9);
    row.p_1 = per_antenna_budget(problem);
    row.p_2 = 0.0;
    row.c_1 = e.achievable_rate;
    row.c_2 = kNan;
    row.sum = kNan;
    row.iterations = 0;
    row.feasible = false;
    row.sic_ok = false;
    row.std_error = 0.0;
  }
  return row;
}

}  // namespace

std::string_view method_label(Method method) {
  switch (method) {
    case Method::kMonteCarloBisection:
      return "monte-carlo-bisection";
    case Method::kAsymptoticBisection:
      return "asymptotic-bisection";
  }
  return "unknown";
}

void validate(const SweepSpec& spec) {
  validate(spec.base);
  if (spec.values.empty())
    throw std::invalid_argument("sweep values must be nonempty");
  for (std::size_t i = 1; i < spec.values.size(); ++i)
    if (!(spec.values[i] > spec.values[i - 1]))
      throw std::invalid_argument("sweep values must be strictly increasing");
  if (spec.methods.empty())
    throw std::invalid_argument("sweep needs at least one method");
}

std::vector<ResultRow> run_sweep(const SweepSpec& spec) {
  validate(spec);
  std::vector<ResultRow> rows;
  rows.reserve(spec.methods.size() * spec.values.size());
  std::uint64_t point = 0;
  for (Method method : spec.methods) {
    for (double value : spec.values) {
      AllocationProblem problem = apply_axis(spec.base, spec.axis, value);
      problem.evaluator = method == Method::kMonteCarloBisection
                              ? Evaluator::kMonteCarlo
                              : Evaluator::kAsymptotic;
      problem.seed = derive_stream_seed(spec.base.seed, point++);
      try {
        rows.push_back(solve_point(problem, method, value));
      } catch (const ComputationError& e) {
        throw ComputationError(std::string(method_label(method)) +
                               " at axis value " + format_double(value) +
                               ": " + e.what());
      }
    }
  }
  return rows;
}

std::vector<ResultRow> time_methods(const std::vector<int>& sizes,
                                    int repetitions,
                                    const AllocationProblem& base,
                                    const std::vector<Method>& methods) {
  validate(base);
  if (repetitions < 3)
    throw std::invalid_argument("timing needs at least 3 repetitions");
  if (sizes.empty()) throw std::invalid_argument("sizes must be nonempty");
  if (methods.empty()) throw std::invalid_argument("no methods selected");

  // Hold the per-antenna budget constant across N so every run performs
  // the same number of bisections.
  const double budget = per_antenna_budget(base);

  std::vector<ResultRow> rows;
  std::uint64_t point = 0;
  for (Method method : methods) {
    for (int n : sizes) {
      if (n < 1) throw std::invalid_argument("antenna counts must be >= 1");
      AllocationProblem problem = base;
      problem.cfg.n_s = n;
      problem.cfg.n_1 = n;
      problem.cfg.n_2 = n;
      problem.p_max = budget * n;
      problem.evaluator = method == Method::kMonteCarloBisection
                              ? Evaluator::kMonteCarlo
                              : Evaluator::kAsymptotic;
      problem.seed = derive_stream_seed(base.seed, point++);

      // Warm-up run; also provides the batch-size estimate so that
      // microsecond-scale solves are timed over enough calls to read the
      // clock meaningfully.
      auto start = std::chrono::steady_clock::now();
      AllocationResult last = bisect_allocate(problem);
      const double estimate = std::max(seconds_since(start), 1e-9);
      const int batch = static_cast<int>(
          std::clamp(std::ceil(2e-3 / estimate), 1.0, 65536.0));

      std::vector<double> samples;
      samples.reserve(static_cast<std::size_t>(repetitions));
      for (int rep = 0; rep < repetitions; ++rep) {
        start = std::chrono::steady_clock::now();
        for (int k = 0; k < batch; ++k) last = bisect_allocate(problem);
        samples.push_back(std::max(seconds_since(start), 1e-9) / batch);
      }
      std::sort(samples.begin(), samples.end());
      const std::size_t m = samples.size() / 2;
      const double median = samples.size() % 2 == 1
                                ? samples[m]
                                : 0.5 * (samples[m - 1] + samples[m]);

      ResultRow row;
      row.method = std::string(method_label(method));
      row.axis_value = static_cast<double>(n);
      row.p_1 = last.p_1;
      row.p_2 = last.p_2;
      row.c_1 = last.c_1;
      row.c_2 = last.c_2;
      row.sum = last.sum;
      row.iterations = last.iterations;
      row.wall_time = median;
      row.feasible = last.feasible;
      row.sic_ok = last.sic_ok;
      row.std_error = combined_std_error(last);
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

void write_table(const std::vector<ResultRow>& rows, std::ostream& out) {
  out << kHeader << '\n';
  for (const ResultRow& r : rows) {
    out << r.method << ',' << format_double(r.axis_value) << ','
        << format_double(r.p_1) << ',' << format_double(r.p_2) << ','
        << format_double(r.c_1) << ',' << format_double(r.c_2) << ','
        << format_double(r.sum) << ',' << r.iterations << ','
        << format_double(r.wall_time) << ',' << (r.feasible ? 1 : 0) << ','
        << (r.sic_ok ? 1 : 0) << ',' << format_double(r.std_error) << '\n';
  }
}

void write_table(const std::vector<ResultRow>& rows,
                 const std::filesystem::path& destination) {
  std::ofstream out(destination);
  if (!out)
    throw std::runtime_error("cannot open table destination " +
                             destination.string());
  write_table(rows, out);
  out.flush();
  if (!out)
    throw std::runtime_error("write failed for table destination " +
                             destination.string());
}

std::vector<ResultRow> read_table(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kHeader)
    throw std::runtime_error("missing or unexpected table header");
  std::vector<ResultRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (fields.size() != 12)
      throw std::runtime_error("expected 12 fields, got " +
                               std::to_string(fields.size()));
    ResultRow r;
    r.method = fields[0];
    r.axis_value = parse_double(fields[1]);
    r.p_1 = parse_double(fields[2]);
    r.p_2 = parse_double(fields[3]);
    r.c_1 = parse_double(fields[4]);
    r.c_2 = parse_double(fields[5]);
    r.sum = parse_double(fields[6]);
    r.iterations = static_cast<int>(parse_double(fields[7]));
    r.wall_time = parse_double(fields[8]);
    r.feasible = fields[9] == "1";
    r.sic_ok = fields[10] == "1";
    r.std_error = parse_double(fields[11]);
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace mmnoma

// Command-line front end: allocate / sweep / bench / validate.
//
// Exit codes: 0 success, 1 runtime failure (infeasible rate target,
// numerical failure, I/O), 2 usage or configuration error.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mmnoma/bench.hpp"
#include "mmnoma/optimizer.hpp"
#include "mmnoma/validation.hpp"

namespace {

struct Options {
  int n = 16;
  int n_s = 0;  // 0 means "use --n"
  int n_1 = 0;
  int n_2 = 0;
  double gain_weak_db = 5.0;
  double gain_strong_db = 20.0;
  double p_max = 4.0;
  double r_0 = 2.0;
  double epsilon = 1e-3;
  long trials = mmnoma::kDefaultTrials;
  std::string method = "asym";
  std::uint64_t seed = 1;
  std::string out;
  std::string config_path;

  std::string axis = "pmax";
  std::vector<double> values;
  std::vector<int> sizes;
  int reps = 5;
};

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

void add_system_options(CLI::App* cmd, Options& o, bool allow_both_methods) {
  cmd->add_option("--n", o.n, "Antenna count, sets n_s = n_1 = n_2");
  cmd->add_option("--ns", o.n_s, "Transmit antennas (overrides --n)");
  cmd->add_option("--n1", o.n_1, "Weak-user antennas (overrides --n)");
  cmd->add_option("--n2", o.n_2, "Strong-user antennas (overrides --n)");
  cmd->add_option("--gain-weak-db", o.gain_weak_db,
                  "Weak-user channel gain (dB)");
  cmd->add_option("--gain-strong-db", o.gain_strong_db,
                  "Strong-user channel gain (dB)");
  cmd->add_option("--pmax", o.p_max, "Total power budget at the source (W)");
  cmd->add_option("--r0", o.r_0, "Minimum weak-user rate (bps/Hz)");
  cmd->add_option("--epsilon", o.epsilon,
                  "Bisection tolerance on per-antenna power (W)");
  cmd->add_option("--trials", o.trials,
                  "Monte-Carlo trials per capacity estimate");
  std::vector<std::string> methods = {"mc", "asym"};
  if (allow_both_methods) methods.push_back("both");
  cmd->add_option("--method", o.method, "Capacity evaluator")
      ->check(CLI::IsMember(methods));
  cmd->add_option("--seed", o.seed, "Master random seed");
  cmd->add_option("--out", o.out, "Write tabular output to this path");
  cmd->add_option("--config", o.config_path,
                  "key=value file; flags given on the command line win");
}

mmnoma::AllocationProblem build_problem(const Options& o) {
  mmnoma::AllocationProblem problem;
  problem.cfg.n_s = o.n_s > 0 ? o.n_s : o.n;
  problem.cfg.n_1 = o.n_1 > 0 ? o.n_1 : o.n;
  problem.cfg.n_2 = o.n_2 > 0 ? o.n_2 : o.n;
  problem.cfg.gain_1 = mmnoma::db_to_linear(o.gain_weak_db);
  problem.cfg.gain_2 = mmnoma::db_to_linear(o.gain_strong_db);
  problem.p_max = o.p_max;
  problem.r_0 = o.r_0;
  problem.epsilon = o.epsilon;
  problem.trials = o.trials;
  problem.seed = o.seed;
  problem.evaluator = o.method == "mc" ? mmnoma::Evaluator::kMonteCarlo
                                       : mmnoma::Evaluator::kAsymptotic;
  mmnoma::validate(problem);
  if (mmnoma::gain_ordering_inverted(problem.cfg))
    std::cerr << "warning: gain-weak-db exceeds gain-strong-db; the weak "
                 "user has the larger gain and SIC feasibility may fail\n";
  return problem;
}

std::vector<mmnoma::Method> methods_from(const std::string& method) {
  using mmnoma::Method;
  if (method == "mc") return {Method::kMonteCarloBisection};
  if (method == "asym") return {Method::kAsymptoticBisection};
  return {Method::kMonteCarloBisection, Method::kAsymptoticBisection};
}

void emit_table(const std::vector<mmnoma::ResultRow>& rows,
                const std::string& out) {
  if (out.empty()) {
    mmnoma::write_table(rows, std::cout);
  } else {
    mmnoma::write_table(rows, std::filesystem::path(out));
  }
}

std::vector<double> default_axis_values(const std::string& axis) {
  if (axis == "pmax") return {0.5, 1, 2, 4, 8, 16};
  if (axis == "r0") return {0.5, 1, 2, 4, 8};
  if (axis == "weak-gain-db") return {-10, -5, 0, 5, 10, 15, 20};
  return {4, 8, 16, 32, 64, 128, 256};  // antenna counts
}

mmnoma::SweepAxis axis_from(const std::string& axis) {
  if (axis == "pmax") return mmnoma::SweepAxis::kPMax;
  if (axis == "r0") return mmnoma::SweepAxis::kR0;
  if (axis == "weak-gain-db") return mmnoma::SweepAxis::kWeakGainDb;
  return mmnoma::SweepAxis::kAntennaCount;
}

int run_allocate(const Options& o) {
  const mmnoma::AllocationProblem problem = build_problem(o);
  const auto start = std::chrono::steady_clock::now();
  const mmnoma::AllocationResult r = mmnoma::bisect_allocate(problem);
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();

  std::cout << "p_1 = " << fmt(r.p_1) << " W\n"
            << "p_2 = " << fmt(r.p_2) << " W\n"
            << "c_1 = " << fmt(r.c_1) << " bps/Hz\n"
            << "c_2 = " << fmt(r.c_2) << " bps/Hz\n"
            << "sum = " << fmt(r.sum) << " bps/Hz\n"
            << "iterations = " << r.iterations << "\n"
            << "sic_ok = " << (r.sic_ok ? 1 : 0) << "\n"
            << "sic_margin = " << fmt(r.sic_margin) << " bps/Hz\n";
  if (problem.evaluator == mmnoma::Evaluator::kMonteCarlo)
    std::cout << "std_error = "
              << fmt(std::hypot(r.c_1_std_error, r.c_2_std_error)) << "\n";

  if (!o.out.empty()) {
    mmnoma::ResultRow row;
    row.method = std::string(mmnoma::method_label(
        problem.evaluator == mmnoma::Evaluator::kMonteCarlo
            ? mmnoma::Method::kMonteCarloBisection
            : mmnoma::Method::kAsymptoticBisection));
    row.axis_value = problem.p_max;
    row.p_1 = r.p_1;
    row.p_2 = r.p_2;
    row.c_1 = r.c_1;
    row.c_2 = r.c_2;
    row.sum = r.sum;
    row.iterations = r.iterations;
    row.wall_time = std::max(elapsed, 1e-9);
    row.feasible = r.feasible;
    row.sic_ok = r.sic_ok;
    row.std_error = std::hypot(r.c_1_std_error, r.c_2_std_error);
    mmnoma::write_table({row}, std::filesystem::path(o.out));
  }
  return 0;
}

int run_sweep_cmd(const Options& o) {
  mmnoma::SweepSpec spec;
  spec.base = build_problem(o);
  spec.axis = axis_from(o.axis);
  spec.values = o.values.empty() ? default_axis_values(o.axis) : o.values;
  spec.methods = methods_from(o.method);
  emit_table(mmnoma::run_sweep(spec), o.out);
  return 0;
}

int run_bench(const Options& o) {
  const mmnoma::AllocationProblem base = build_problem(o);
  const std::vector<int> sizes =
      o.sizes.empty() ? std::vector<int>{4, 8, 16, 32, 64, 128, 256} : o.sizes;
  emit_table(mmnoma::time_methods(sizes, o.reps, base, methods_from(o.method)),
             o.out);
  return 0;
}

int run_validate(const Options& o) {
  bool all_passed = true;
  for (const mmnoma::CheckResult& check :
       mmnoma::run_validation_suite(o.seed)) {
    std::cout << (check.passed ? "[PASS] " : "[FAIL] ") << check.name << ": "
              << check.detail << "\n";
    all_passed = all_passed && check.passed;
  }
  return all_passed ? 0 : 1;
}

// --- config file support ------------------------------------------------

struct ConfigEntry {
  std::string key;
  std::string value;
  int line = 0;
};

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

std::vector<ConfigEntry> load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw std::invalid_argument("config: cannot open file '" + path + "'");
  std::vector<ConfigEntry> entries;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string stripped = trim(line);
    if (stripped.empty() || stripped[0] == '#') continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config: " + path + ":" +
                                  std::to_string(lineno) +
                                  ": expected key=value");
    ConfigEntry entry;
    entry.key = trim(stripped.substr(0, eq));
    entry.value = trim(stripped.substr(eq + 1));
    entry.line = lineno;
    if (entry.key.empty())
      throw std::invalid_argument("config: " + path + ":" +
                                  std::to_string(lineno) + ": empty key");
    entries.push_back(std::move(entry));
  }
  return entries;
}

std::string flag_of(const std::string& key) {
  std::string flag = "--" + key;
  std::replace(flag.begin(), flag.end(), '_', '-');
  return flag;
}

// Expands --config into ordinary tokens placed directly after the
// subcommand name, so that flags typed on the command line (which come
// later) take precedence. Keys mirror flag names with underscores for
// dashes.
std::vector<std::string> expand_config(const std::vector<std::string>& args,
                                       const CLI::App& app) {
  std::string config_path;
  std::size_t subcommand_pos = std::string::npos;
  std::string subcommand;
  for (std::size_t i = 0; i < args.size(); ++i) {
    const std::string& tok = args[i];
    if (subcommand_pos == std::string::npos && !tok.empty() &&
        tok[0] != '-') {
      subcommand_pos = i;
      subcommand = tok;
    }
    if (tok == "--config" && i + 1 < args.size())
      config_path = args[i + 1];
    else if (tok.rfind("--config=", 0) == 0)
      config_path = tok.substr(9);
  }
  if (config_path.empty() || subcommand_pos == std::string::npos) return args;

  const CLI::App* sub = app.get_subcommand_no_throw(subcommand);
  if (sub == nullptr) return args;  // the parser will report it

  std::vector<std::string> inserted;
  for (const ConfigEntry& entry : load_config(config_path)) {
    if (entry.key == "config")
      throw std::invalid_argument("config: key 'config' cannot be nested");
    const std::string flag = flag_of(entry.key);
    if (sub->get_option_no_throw(flag) == nullptr)
      throw std::invalid_argument("config: unknown key '" + entry.key + "'");
    const bool given_on_cli = std::any_of(
        args.begin() + subcommand_pos + 1, args.end(),
        [&](const std::string& tok) {
          return tok == flag || tok.rfind(flag + "=", 0) == 0;
        });
    if (given_on_cli) continue;
    inserted.push_back(flag);
    std::stringstream values(entry.value);
    std::string piece;
    while (values >> piece) inserted.push_back(piece);
  }

  std::vector<std::string> expanded(args.begin(),
                                    args.begin() + subcommand_pos + 1);
  expanded.insert(expanded.end(), inserted.begin(), inserted.end());
  expanded.insert(expanded.end(), args.begin() + subcommand_pos + 1,
                  args.end());
  return expanded;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Power allocation for a two-user massive-MIMO NOMA downlink:\n"
      "maximizes the ergodic sum spectral efficiency under total-power and\n"
      "minimum-rate constraints, with Monte-Carlo and closed-form\n"
      "asymptotic capacity evaluators."};
  app.require_subcommand(1);

  Options o;
  CLI::App* allocate =
      app.add_subcommand("allocate", "Solve one allocation problem");
  add_system_options(allocate, o, false);

  CLI::App* sweep =
      app.add_subcommand("sweep", "Solve along one swept parameter axis");
  add_system_options(sweep, o, true);
  sweep->add_option("--axis", o.axis, "Swept parameter")
      ->check(CLI::IsMember({"pmax", "r0", "weak-gain-db", "n"}));
  sweep->add_option("--values", o.values,
                    "Axis values (strictly increasing)");

  CLI::App* bench = app.add_subcommand(
      "bench", "Compare allocator wall times across array sizes");
  add_system_options(bench, o, true);
  bench->add_option("--sizes", o.sizes, "Antenna counts to time");
  bench->add_option("--reps", o.reps, "Timed repetitions per point");

  CLI::App* validate_cmd = app.add_subcommand(
      "validate", "Run the built-in numerical invariant checks");
  validate_cmd->add_option("--seed", o.seed, "Master random seed");

  try {
    std::vector<std::string> args(argv + 1, argv + argc);
    args = expand_config(args, app);
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }

  try {
    if (allocate->parsed()) return run_allocate(o);
    if (sweep->parsed()) return run_sweep_cmd(o);
    if (bench->parsed()) return run_bench(o);
    return run_validate(o);
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }
}

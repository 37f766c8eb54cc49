#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "mmnoma/bench.hpp"
#include "mmnoma/optimizer.hpp"

using namespace mmnoma;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

RunResult run_cli(const std::string& args) {
  const std::string out_path = "/tmp/mmnoma_cli_test.out";
  const std::string err_path = "/tmp/mmnoma_cli_test.err";
  const std::string command = std::string(MMNOMA_CLI_PATH) + " " + args +
                              " >" + out_path + " 2>" + err_path;
  const int status = std::system(command.c_str());
  RunResult result;
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  result.out = slurp(out_path);
  result.err = slurp(err_path);
  return result;
}

double field_value(const std::string& text, const std::string& key) {
  const auto pos = text.find(key + " = ");
  REQUIRE(pos != std::string::npos);
  return std::stod(text.substr(pos + key.size() + 3));
}

std::string strip_wall_time(const std::string& csv) {
  // column 9 (0-based 8) is wall_time
  std::stringstream in(csv);
  std::string line, out;
  while (std::getline(in, line)) {
    std::stringstream row(line);
    std::string field;
    int idx = 0;
    while (std::getline(row, field, ',')) {
      if (idx != 8) out += field + ",";
      ++idx;
    }
    out += "\n";
  }
  return out;
}

}  // namespace

TEST_CASE("allocate matches the library result") {
  const RunResult r = run_cli(
      "allocate --n 16 --gain-weak-db 5 --gain-strong-db 20 --pmax 4 --r0 2");
  CHECK(r.exit_code == 0);

  AllocationProblem problem;
  problem.cfg =
      SystemConfig{16, 16, 16, db_to_linear(5.0), db_to_linear(20.0)};
  problem.p_max = 4.0;
  problem.r_0 = 2.0;
  const AllocationResult expected = bisect_allocate(problem);

  CHECK(field_value(r.out, "p_1") == doctest::Approx(expected.p_1).epsilon(1e-9));
  CHECK(field_value(r.out, "p_2") == doctest::Approx(expected.p_2).epsilon(1e-9));
  CHECK(field_value(r.out, "c_1") == doctest::Approx(expected.c_1).epsilon(1e-9));
  CHECK(field_value(r.out, "c_2") == doctest::Approx(expected.c_2).epsilon(1e-9));
  CHECK(field_value(r.out, "sum") == doctest::Approx(expected.sum).epsilon(1e-9));
  CHECK(field_value(r.out, "iterations") == expected.iterations);
  CHECK(r.out.find("sic_ok = 1") != std::string::npos);
}

TEST_CASE("exit codes") {
  SUBCASE("unknown flag exits 2 and names it") {
    const RunResult r = run_cli("allocate --bogus-flag 3");
    CHECK(r.exit_code == 2);
    CHECK(r.err.find("--bogus-flag") != std::string::npos);
  }

  SUBCASE("missing subcommand exits 2") {
    const RunResult r = run_cli("");
    CHECK(r.exit_code == 2);
  }

  SUBCASE("invalid domain value exits 2 and names the field") {
    const RunResult r = run_cli("allocate --pmax -1");
    CHECK(r.exit_code == 2);
    CHECK(r.err.find("p_max") != std::string::npos);
  }

  SUBCASE("infeasible rate exits 1 and prints the achievable bound") {
    const RunResult r = run_cli(
        "allocate --n 16 --gain-weak-db 5 --gain-strong-db 20 --pmax 4 "
        "--r0 12");
    CHECK(r.exit_code == 1);
    CHECK(r.err.find("infeasible") != std::string::npos);
    CHECK(r.err.find("11.43") != std::string::npos);
  }

  SUBCASE("validate exits 0 and reports each check") {
    const RunResult r = run_cli("validate --seed 1");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("[PASS] mp-normalization") != std::string::npos);
    CHECK(r.out.find("[PASS] closed-form-vs-quadrature") != std::string::npos);
    CHECK(r.out.find("[PASS] spectrum-histogram") != std::string::npos);
  }
}

TEST_CASE("byte-identical output for identical arguments") {
  const std::string args =
      "allocate --n 8 --method mc --trials 10 --seed 42 --pmax 2 --r0 1";
  const RunResult a = run_cli(args);
  const RunResult b = run_cli(args);
  CHECK(a.exit_code == 0);
  CHECK(a.out == b.out);

  const std::string sweep_args =
      "sweep --axis pmax --values 1 2 --method both --n 8 --trials 5 "
      "--seed 7";
  const RunResult sa = run_cli(sweep_args);
  const RunResult sb = run_cli(sweep_args);
  CHECK(sa.exit_code == 0);
  CHECK(strip_wall_time(sa.out) == strip_wall_time(sb.out));
}

TEST_CASE("inverted gains warn on stderr") {
  const RunResult r = run_cli(
      "allocate --n 8 --gain-weak-db 20 --gain-strong-db 5 --pmax 4 --r0 1");
  CHECK(r.exit_code == 0);
  CHECK(r.err.find("warning") != std::string::npos);
}

TEST_CASE("config files") {
  const std::string cfg_path = "/tmp/mmnoma_test.cfg";

  SUBCASE("values load and flags override") {
    std::ofstream cfg(cfg_path);
    cfg << "# sample configuration\n"
        << "n = 8\n"
        << "pmax = 2\n"
        << "r0 = 0.5\n"
        << "gain_weak_db = 5\n"
        << "gain_strong_db = 20\n";
    cfg.close();

    const RunResult r =
        run_cli("allocate --config " + cfg_path + " --r0 1.5");
    CHECK(r.exit_code == 0);

    AllocationProblem problem;
    problem.cfg =
        SystemConfig{8, 8, 8, db_to_linear(5.0), db_to_linear(20.0)};
    problem.p_max = 2.0;
    problem.r_0 = 1.5;  // the flag, not the file
    const AllocationResult expected = bisect_allocate(problem);
    CHECK(field_value(r.out, "p_2") ==
          doctest::Approx(expected.p_2).epsilon(1e-9));
    CHECK(field_value(r.out, "c_1") ==
          doctest::Approx(expected.c_1).epsilon(1e-9));
  }

  SUBCASE("unknown keys are named and exit 2") {
    std::ofstream cfg(cfg_path);
    cfg << "not_a_real_key = 3\n";
    cfg.close();
    const RunResult r = run_cli("allocate --config " + cfg_path);
    CHECK(r.exit_code == 2);
    CHECK(r.err.find("not_a_real_key") != std::string::npos);
  }

  SUBCASE("malformed lines exit 2 with the line number") {
    std::ofstream cfg(cfg_path);
    cfg << "pmax = 2\nthis line has no equals sign\n";
    cfg.close();
    const RunResult r = run_cli("allocate --config " + cfg_path);
    CHECK(r.exit_code == 2);
    CHECK(r.err.find(":2") != std::string::npos);
  }

  SUBCASE("missing config file exits 2") {
    const RunResult r = run_cli("allocate --config /tmp/does-not-exist.cfg");
    CHECK(r.exit_code == 2);
  }
}

TEST_CASE("sweep writes parseable tables") {
  const std::string out_path = "/tmp/mmnoma_sweep_test.csv";
  const RunResult r = run_cli("sweep --axis r0 --values 0.5 1 2 --n 8 --out " +
                              out_path);
  CHECK(r.exit_code == 0);
  std::ifstream in(out_path);
  REQUIRE(in.good());
  const auto rows = read_table(in);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].method == "asymptotic-bisection");
  CHECK(rows[0].axis_value == 0.5);
  CHECK(rows[2].sum <= rows[0].sum + 1e-12);
}

TEST_CASE("bench emits one row per method and size") {
  const RunResult r =
      run_cli("bench --sizes 4 8 --reps 3 --method both --n 4");
  CHECK(r.exit_code == 0);
  std::istringstream in(r.out);
  const auto rows = read_table(in);
  REQUIRE(rows.size() == 4);
  for (const auto& row : rows) CHECK(row.wall_time > 0.0);
}

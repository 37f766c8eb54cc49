#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mmnoma/bench.hpp"
#include "mmnoma/optimizer.hpp"
#include "mmnoma/validation.hpp"

namespace py = pybind11;
using namespace mmnoma;

PYBIND11_MODULE(_core, m) {
  m.doc() =
      "Power allocation for a two-user massive-MIMO NOMA downlink: "
      "Monte-Carlo and closed-form asymptotic ergodic capacities plus the "
      "bisection sum-capacity optimizer.";

  py::register_exception<ComputationError>(m, "ComputationError",
                                           PyExc_RuntimeError);
  static py::exception<InfeasibleRateError> infeasible(m, "InfeasibleRateError",
                                                       PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const InfeasibleRateError& e) {
      infeasible(e.what());
    }
  });

  py::class_<SystemConfig>(m, "SystemConfig")
      .def(py::init<>())
      .def(py::init([](int n_s, int n_1, int n_2, double gain_1,
                       double gain_2) {
             SystemConfig cfg{n_s, n_1, n_2, gain_1, gain_2};
             validate(cfg);
             return cfg;
           }),
           py::arg("n_s"), py::arg("n_1"), py::arg("n_2"), py::arg("gain_1"),
           py::arg("gain_2"))
      .def_readwrite("n_s", &SystemConfig::n_s)
      .def_readwrite("n_1", &SystemConfig::n_1)
      .def_readwrite("n_2", &SystemConfig::n_2)
      .def_readwrite("gain_1", &SystemConfig::gain_1)
      .def_readwrite("gain_2", &SystemConfig::gain_2);

  py::class_<PowerSplit>(m, "PowerSplit")
      .def(py::init<>())
      .def(py::init([](double p_1, double p_2) {
             PowerSplit s{p_1, p_2};
             validate(s);
             return s;
           }),
           py::arg("p_1"), py::arg("p_2"))
      .def_readwrite("p_1", &PowerSplit::p_1)
      .def_readwrite("p_2", &PowerSplit::p_2);

  py::class_<ChannelSample>(m, "ChannelSample")
      .def_readonly("entries", &ChannelSample::entries)
      .def_readonly("gain", &ChannelSample::gain);

  py::class_<CapacityEstimate>(m, "CapacityEstimate")
      .def_readonly("value", &CapacityEstimate::value)
      .def_readonly("std_error", &CapacityEstimate::std_error)
      .def_readonly("trials", &CapacityEstimate::trials)
      .def("__repr__", [](const CapacityEstimate& e) {
        return "CapacityEstimate(value=" + std::to_string(e.value) +
               ", std_error=" + std::to_string(e.std_error) +
               ", trials=" + std::to_string(e.trials) + ")";
      });

  py::class_<MpLaw>(m, "MpLaw")
      .def_readonly("beta", &MpLaw::beta)
      .def_readonly("a", &MpLaw::a)
      .def_readonly("b", &MpLaw::b)
      .def_readonly("zero_mass", &MpLaw::zero_mass);

  py::class_<EffectiveSnrs>(m, "EffectiveSnrs")
      .def_readonly("c_1", &EffectiveSnrs::c_1)
      .def_readonly("c_2", &EffectiveSnrs::c_2)
      .def_readonly("c_3", &EffectiveSnrs::c_3);

  py::enum_<Evaluator>(m, "Evaluator")
      .value("MONTE_CARLO", Evaluator::kMonteCarlo)
      .value("ASYMPTOTIC", Evaluator::kAsymptotic);

  py::class_<AllocationProblem>(m, "AllocationProblem")
      .def(py::init<>())
      .def_readwrite("cfg", &AllocationProblem::cfg)
      .def_readwrite("p_max", &AllocationProblem::p_max)
      .def_readwrite("r_0", &AllocationProblem::r_0)
      .def_readwrite("epsilon", &AllocationProblem::epsilon)
      .def_readwrite("evaluator", &AllocationProblem::evaluator)
      .def_readwrite("trials", &AllocationProblem::trials)
      .def_readwrite("seed", &AllocationProblem::seed);

  py::class_<SumCapacity>(m, "SumCapacity")
      .def_readonly("c_1", &SumCapacity::c_1)
      .def_readonly("c_2", &SumCapacity::c_2)
      .def_readonly("sum", &SumCapacity::sum)
      .def_readonly("c_1_std_error", &SumCapacity::c_1_std_error)
      .def_readonly("c_2_std_error", &SumCapacity::c_2_std_error);

  py::class_<SicCheck>(m, "SicCheck")
      .def_readonly("margin", &SicCheck::margin)
      .def_readonly("ok", &SicCheck::ok);

  py::class_<AllocationResult>(m, "AllocationResult")
      .def_readonly("p_1", &AllocationResult::p_1)
      .def_readonly("p_2", &AllocationResult::p_2)
      .def_readonly("c_1", &AllocationResult::c_1)
      .def_readonly("c_2", &AllocationResult::c_2)
      .def_readonly("sum", &AllocationResult::sum)
      .def_readonly("iterations", &AllocationResult::iterations)
      .def_readonly("feasible", &AllocationResult::feasible)
      .def_readonly("sic_ok", &AllocationResult::sic_ok)
      .def_readonly("sic_margin", &AllocationResult::sic_margin)
      .def_readonly("evaluator_calls", &AllocationResult::evaluator_calls)
      .def_readonly("p_2_midpoint", &AllocationResult::p_2_midpoint)
      .def_readonly("c_1_std_error", &AllocationResult::c_1_std_error)
      .def_readonly("c_2_std_error", &AllocationResult::c_2_std_error);

  py::enum_<SweepAxis>(m, "SweepAxis")
      .value("P_MAX", SweepAxis::kPMax)
      .value("R_0", SweepAxis::kR0)
      .value("WEAK_GAIN_DB", SweepAxis::kWeakGainDb)
      .value("ANTENNA_COUNT", SweepAxis::kAntennaCount);

  py::enum_<Method>(m, "Method")
      .value("MONTE_CARLO_BISECTION", Method::kMonteCarloBisection)
      .value("ASYMPTOTIC_BISECTION", Method::kAsymptoticBisection);

  py::class_<SweepSpec>(m, "SweepSpec")
      .def(py::init<>())
      .def_readwrite("base", &SweepSpec::base)
      .def_readwrite("axis", &SweepSpec::axis)
      .def_readwrite("values", &SweepSpec::values)
      .def_readwrite("methods", &SweepSpec::methods);

  py::class_<ResultRow>(m, "ResultRow")
      .def_readonly("method", &ResultRow::method)
      .def_readonly("axis_value", &ResultRow::axis_value)
      .def_readonly("p_1", &ResultRow::p_1)
      .def_readonly("p_2", &ResultRow::p_2)
      .def_readonly("c_1", &ResultRow::c_1)
      .def_readonly("c_2", &ResultRow::c_2)
      .def_readonly("sum", &ResultRow::sum)
      .def_readonly("iterations", &ResultRow::iterations)
      .def_readonly("wall_time", &ResultRow::wall_time)
      .def_readonly("feasible", &ResultRow::feasible)
      .def_readonly("sic_ok", &ResultRow::sic_ok)
      .def_readonly("std_error", &ResultRow::std_error);

  py::class_<CheckResult>(m, "CheckResult")
      .def_readonly("name", &CheckResult::name)
      .def_readonly("passed", &CheckResult::passed)
      .def_readonly("detail", &CheckResult::detail);

  m.def("db_to_linear", &db_to_linear, py::arg("db"));
  m.def("linear_to_db", &linear_to_db, py::arg("linear"));

  m.def(
      "sample_channel",
      [](int n_rx, int n_tx, double gain, std::uint64_t seed) {
        return sample_channel(n_rx, n_tx, gain, seed);
      },
      py::arg("n_rx"), py::arg("n_tx"), py::arg("gain"), py::arg("seed"));
  m.def("gram_spectrum", &gram_spectrum, py::arg("sample"));
  m.def(
      "shannon_logdet",
      [](const std::vector<double>& spectrum, double alpha) {
        return shannon_logdet(spectrum, alpha);
      },
      py::arg("spectrum"), py::arg("alpha"));

  m.def("mc_weak_capacity", &mc_weak_capacity, py::arg("cfg"),
        py::arg("split"), py::arg("trials") = kDefaultTrials,
        py::arg("seed") = 1);
  m.def("mc_strong_capacity", &mc_strong_capacity, py::arg("cfg"),
        py::arg("p_2"), py::arg("trials") = kDefaultTrials,
        py::arg("seed") = 1);
  m.def("mc_sic_bound", &mc_sic_bound, py::arg("cfg"), py::arg("split"),
        py::arg("trials") = kDefaultTrials, py::arg("seed") = 1);

  m.def("mp_law", &mp_law, py::arg("beta"));
  m.def("mp_density", &mp_density, py::arg("x"), py::arg("law"));
  m.def("mp_integrate", &mp_integrate, py::arg("f"), py::arg("law"),
        py::arg("abs_tol") = 1e-10);
  m.def("mp_continuous_mass", &mp_continuous_mass, py::arg("law"),
        py::arg("abs_tol") = 1e-10);
  m.def("q_factor", &q_factor, py::arg("c"), py::arg("beta"));
  m.def("shannon_transform", &shannon_transform, py::arg("c"),
        py::arg("beta"));
  m.def("asym_capacity_quadrature", &asym_capacity_quadrature,
        py::arg("alpha"), py::arg("beta"), py::arg("n_rx"),
        py::arg("abs_tol") = 1e-9);
  m.def("effective_snrs", &effective_snrs, py::arg("split"), py::arg("cfg"));
  m.def("asym_weak_capacity", &asym_weak_capacity, py::arg("split"),
        py::arg("cfg"));
  m.def("asym_strong_capacity", &asym_strong_capacity, py::arg("p_2"),
        py::arg("cfg"));
  m.def("asym_sic_bound", &asym_sic_bound, py::arg("split"), py::arg("cfg"));

  m.def("per_antenna_budget", &per_antenna_budget, py::arg("problem"));
  m.def("sum_capacity_at", &sum_capacity_at, py::arg("problem"),
        py::arg("split"));
  m.def("check_sic", &check_sic, py::arg("problem"), py::arg("split"));
  m.def("bisect_allocate", &bisect_allocate, py::arg("problem"),
        py::call_guard<py::gil_scoped_release>());

  m.def("run_sweep", &run_sweep, py::arg("spec"),
        py::call_guard<py::gil_scoped_release>());
  m.def("time_methods", &time_methods, py::arg("sizes"),
        py::arg("repetitions"), py::arg("base"), py::arg("methods"),
        py::call_guard<py::gil_scoped_release>());

  m.def("run_validation_suite", &run_validation_suite, py::arg("seed") = 1,
        py::call_guard<py::gil_scoped_release>());

  m.attr("DEFAULT_TRIALS") = kDefaultTrials;
  m.attr("__version__") = "0.1.0";
}

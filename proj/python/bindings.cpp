// Python bindings for the dual-divergence survival estimation core.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "dualdiv/asymptotics.hpp"
#include "dualdiv/divergence.hpp"
#include "dualdiv/estimators.hpp"
#include "dualdiv/kaplan_meier.hpp"
#include "dualdiv/simulation.hpp"

namespace py = pybind11;
using namespace dualdiv;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Dual divergence estimators for censored exponential samples";

  py::class_<CensoredSample>(m, "CensoredSample")
      .def(py::init<>())
      .def(py::init([](std::vector<double> z, std::vector<int> delta) {
             return CensoredSample{std::move(z), std::move(delta)};
           }),
           py::arg("z"), py::arg("delta"))
      .def_readwrite("z", &CensoredSample::z)
      .def_readwrite("delta", &CensoredSample::delta)
      .def("__len__", &CensoredSample::size);

  py::class_<SurvivalPoint>(m, "SurvivalPoint")
      .def_readonly("lower", &SurvivalPoint::lower)
      .def_readonly("estimate", &SurvivalPoint::estimate)
      .def_readonly("upper", &SurvivalPoint::upper);

  py::class_<KaplanMeierFit>(m, "KaplanMeierFit")
      .def(py::init<const CensoredSample&>(), py::arg("sample"))
      .def("__len__", &KaplanMeierFit::size)
      .def_property_readonly("times", &KaplanMeierFit::times)
      .def_property_readonly("events", &KaplanMeierFit::events)
      .def_property_readonly("weights", &KaplanMeierFit::weights)
      .def_property_readonly("weight_sum", &KaplanMeierFit::weight_sum)
      .def("survival", &KaplanMeierFit::survival, py::arg("x"))
      .def("survival_with_ci", &KaplanMeierFit::survival_with_ci, py::arg("x"),
           py::arg("level") = 0.95);

  m.def("km_fit", &km_fit, py::arg("sample"));

  m.def("divergence_name", [](double gamma) -> py::object {
    const char* name = divergence_name(gamma);
    return name ? py::object(py::str(name)) : py::none();
  });
  m.def("phi", [](double gamma, double x) { return phi({gamma}, x); },
        py::arg("gamma"), py::arg("x"));
  m.def("phi_prime",
        [](double gamma, double x) { return phi_prime({gamma}, x); },
        py::arg("gamma"), py::arg("x"));
  m.def("phi_second",
        [](double gamma, double x) { return phi_second({gamma}, x); },
        py::arg("gamma"), py::arg("x"));

  py::class_<FitResult>(m, "FitResult")
      .def_readonly("estimate", &FitResult::estimate)
      .def_readonly("criterion", &FitResult::criterion)
      .def_readonly("escort", &FitResult::escort)
      .def_readonly("gradient_norm", &FitResult::gradient_norm)
      .def_readonly("iterations", &FitResult::iterations)
      .def_readonly("converged", &FitResult::converged)
      .def_readonly("grid_best", &FitResult::grid_best)
      .def("__repr__", [](const FitResult& r) {
        return "FitResult(estimate=" + std::to_string(r.estimate) +
               ", converged=" + (r.converged ? "True" : "False") + ")";
      });

  m.def("dual_criterion",
        py::overload_cast<const CensoredSample&, double, double, double>(
            &dual_criterion),
        py::arg("sample"), py::arg("gamma"), py::arg("theta"),
        py::arg("alpha"));
  m.def("criterion_derivative", &criterion_derivative, py::arg("fit"),
        py::arg("gamma"), py::arg("theta"), py::arg("alpha"));
  m.def("mle_value", &mle_value, py::arg("sample"));
  m.def("amle_value",
        [](const CensoredSample& s) { return amle_value(km_fit(s)); },
        py::arg("sample"));
  m.def("fit_mle", &fit_mle_exponential, py::arg("sample"));
  m.def("fit_amle",
        py::overload_cast<const CensoredSample&>(&fit_amle),
        py::arg("sample"));
  m.def(
      "fit_dphide",
      [](const CensoredSample& sample, double gamma, py::object escort,
         double tolerance, int max_iterations) {
        DphideConfig config;
        config.divergence = PowerDivergence{gamma};
        config.tolerance = tolerance;
        config.max_iterations = max_iterations;
        if (!escort.is_none()) {
          config.adaptive_escort = false;
          config.escort = escort.cast<double>();
        }
        return fit_dphide(sample, config);
      },
      py::arg("sample"), py::arg("gamma"), py::arg("escort") = py::none(),
      py::arg("tolerance") = 1e-8, py::arg("max_iterations") = 100);
  m.def("fit_mdpde",
        py::overload_cast<const CensoredSample&, double, double, int>(
            &fit_mdpde),
        py::arg("sample"), py::arg("beta"), py::arg("tolerance") = 1e-8,
        py::arg("max_iterations") = 100);

  py::class_<CensoringScheme>(m, "CensoringScheme")
      .def(py::init([](double theta0, double c) {
             return CensoringScheme{theta0, c};
           }),
           py::arg("theta0") = 1.0, py::arg("c") = 0.0)
      .def_readwrite("theta0", &CensoringScheme::theta0)
      .def_readwrite("c", &CensoringScheme::c)
      .def("censoring_probability", &CensoringScheme::censoring_probability);

  py::class_<SandwichVariance>(m, "SandwichVariance")
      .def_readonly("S", &SandwichVariance::S)
      .def_readonly("V", &SandwichVariance::V)
      .def_readonly("sandwich", &SandwichVariance::sandwich);

  m.def("sandwich_variance", &sandwich_variance, py::arg("scheme"),
        py::arg("gamma"), py::arg("theta"),
        py::call_guard<py::gil_scoped_release>());
  m.def("population_criterion", &population_criterion, py::arg("theta0"),
        py::arg("gamma"), py::arg("theta"), py::arg("alpha"),
        py::call_guard<py::gil_scoped_release>());

  py::class_<SimulationScenario>(m, "SimulationScenario")
      .def(py::init<>())
      .def_readwrite("n_values", &SimulationScenario::n_values)
      .def_readwrite("theta0", &SimulationScenario::theta0)
      .def_readwrite("censoring_rate", &SimulationScenario::censoring_rate)
      .def_readwrite("contamination_fraction",
                     &SimulationScenario::contamination_fraction)
      .def_readwrite("contamination_rate",
                     &SimulationScenario::contamination_rate)
      .def_readwrite("replications", &SimulationScenario::replications)
      .def_readwrite("gammas", &SimulationScenario::gammas)
      .def_readwrite("betas", &SimulationScenario::betas)
      .def_readwrite("include_mle", &SimulationScenario::include_mle)
      .def_readwrite("base_seed", &SimulationScenario::base_seed);

  py::class_<MseTable>(m, "MseTable")
      .def_readonly("row_labels", &MseTable::row_labels)
      .def_readonly("mse", &MseTable::mse)
      .def_readonly("failures", &MseTable::failures);

  m.def("generate_sample", &generate_sample, py::arg("scenario"),
        py::arg("size_index"), py::arg("replication"));
  m.def("run_scenario", &run_scenario, py::arg("scenario"),
        py::call_guard<py::gil_scoped_release>());
  m.def("preset", &preset, py::arg("name"));
}

#include <sstream>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "remr/errors.hpp"
#include "remr/montecarlo.hpp"
#include "remr/pathset.hpp"
#include "remr/reliability.hpp"
#include "remr/scenario.hpp"
#include "remr/timing.hpp"
#include "remr/trace.hpp"

namespace py = pybind11;

namespace {

remr::ResolvedPlan resolve_named(const remr::Scenario& s, const std::string& name) {
  const remr::DeploymentPlan* plan = s.find_plan(name);
  if (plan == nullptr) throw py::key_error("no plan named '" + name + "'");
  return s.resolve(*plan);
}

py::list vectors_to_list(const remr::VectorSet& set) {
  py::list out;
  for (const auto& v : set.vectors) out.append(py::make_tuple(v.x, v.y));
  return out;
}

}  // namespace

PYBIND11_MODULE(_remr, m) {
  m.doc() = "Deadline reliability of staged tasks on dynamic edge computing networks";

  static py::exception<remr::ScenarioError> scenario_error(m, "ScenarioError", PyExc_ValueError);
  static py::exception<remr::GuardExceeded> guard_exceeded(m, "GuardExceeded", PyExc_RuntimeError);
  static py::exception<remr::TraceError> trace_error(m, "TraceError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const remr::ScenarioError& e) {
      scenario_error(e.what());
    } catch (const remr::GuardExceeded& e) {
      guard_exceeded(e.what());
    } catch (const remr::TraceError& e) {
      trace_error(e.what());
    }
  });

  py::class_<remr::Pmf>(m, "Pmf")
      .def(py::init([](const std::map<int, double>& entries) {
             return remr::Pmf(std::vector<remr::Pmf::Entry>(entries.begin(), entries.end()));
           }),
           py::arg("entries"))
      .def("survival", &remr::Pmf::survival, py::arg("level"))
      .def("probability", &remr::Pmf::probability, py::arg("level"))
      .def("support", &remr::Pmf::support)
      .def("max_level", &remr::Pmf::max_level)
      .def_property_readonly("entries", &remr::Pmf::entries)
      .def("__eq__", [](const remr::Pmf& a, const remr::Pmf& b) { return a == b; });

  py::class_<remr::Scenario>(m, "Scenario")
      .def_property_readonly("plan_names",
                             [](const remr::Scenario& s) {
                               std::vector<std::string> out;
                               for (const auto& p : s.plans()) out.push_back(p.name);
                               return out;
                             })
      .def_property_readonly("branch_count", [](const remr::Scenario& s) { return s.branches().size(); })
      .def_property_readonly("node_count", [](const remr::Scenario& s) { return s.nodes().size(); })
      .def_property_readonly("default_input_size",
                             [](const remr::Scenario& s) { return s.defaults().input_size; })
      .def_property_readonly("default_deadline",
                             [](const remr::Scenario& s) { return s.defaults().deadline; })
      .def("render", &remr::render_scenario)
      .def("__eq__", [](const remr::Scenario& a, const remr::Scenario& b) { return a == b; });

  m.def("parse_scenario", &remr::parse_scenario, py::arg("text"));
  m.def("load_scenario", &remr::load_scenario, py::arg("path"));

  py::class_<remr::CompletionTime>(m, "CompletionTime")
      .def_readonly("lead", &remr::CompletionTime::lead)
      .def_readonly("transmission", &remr::CompletionTime::transmission)
      .def_readonly("computation", &remr::CompletionTime::computation)
      .def_readonly("unbounded", &remr::CompletionTime::unbounded)
      .def_property_readonly("total", &remr::CompletionTime::total);

  m.def("data_sizes",
        [](const remr::Scenario& s, const std::string& plan, double c) {
          return remr::data_sizes(resolve_named(s, plan), c).sizes;
        },
        py::arg("scenario"), py::arg("plan"), py::arg("input_size"));
  m.def("total_time",
        [](const remr::Scenario& s, const std::string& plan, double c, std::vector<int> x,
           std::vector<int> y) {
          return remr::total_time(resolve_named(s, plan), c, remr::StateVector{std::move(x), std::move(y)});
        },
        py::arg("scenario"), py::arg("plan"), py::arg("input_size"), py::arg("x"), py::arg("y"));

  m.def("feasible_vectors",
        [](const remr::Scenario& s, const std::string& plan, double c, double t) {
          return vectors_to_list(remr::feasible_vectors(resolve_named(s, plan), c, t));
        },
        py::arg("scenario"), py::arg("plan"), py::arg("input_size"), py::arg("deadline"));
  m.def("minimal_vectors",
        [](const remr::Scenario& s, const std::string& plan, double c, double t) {
          const auto rp = resolve_named(s, plan);
          return vectors_to_list(remr::minimal_vectors(remr::feasible_vectors(rp, c, t)));
        },
        py::arg("scenario"), py::arg("plan"), py::arg("input_size"), py::arg("deadline"));

  m.def("rsdp_reliability",
        [](const std::vector<std::vector<int>>& vectors, const std::vector<remr::Pmf>& marginals) {
          return remr::rsdp_reliability(vectors, marginals);
        },
        py::arg("vectors"), py::arg("marginals"));
  m.def("inclusion_exclusion_reliability",
        [](const std::vector<std::vector<int>>& vectors, const std::vector<remr::Pmf>& marginals) {
          return remr::inclusion_exclusion_reliability(vectors, marginals);
        },
        py::arg("vectors"), py::arg("marginals"));
  m.def("exact_reliability",
        [](const remr::Scenario& s, const std::string& plan, double c, double t) {
          return remr::exact_reliability(resolve_named(s, plan), c, t);
        },
        py::arg("scenario"), py::arg("plan"), py::arg("input_size"), py::arg("deadline"));
  m.def("union_reliability",
        [](const std::vector<double>& values) { return remr::union_reliability(values); },
        py::arg("per_plan"));

  py::class_<remr::PlanReliability>(m, "PlanReliability")
      .def_readonly("name", &remr::PlanReliability::name)
      .def_readonly("feasible_count", &remr::PlanReliability::feasible_count)
      .def_readonly("msv_count", &remr::PlanReliability::msv_count)
      .def_readonly("reliability", &remr::PlanReliability::reliability)
      .def_property_readonly("msvs",
                             [](const remr::PlanReliability& p) { return vectors_to_list(p.msvs); });

  py::class_<remr::ReliabilityReport>(m, "ReliabilityReport")
      .def_readonly("per_plan", &remr::ReliabilityReport::per_plan)
      .def_readonly("global_reliability", &remr::ReliabilityReport::global)
      .def_readonly("input_size", &remr::ReliabilityReport::input_size)
      .def_readonly("deadline", &remr::ReliabilityReport::deadline);

  m.def("evaluate",
        [](const remr::Scenario& s, double c, double t, std::uint64_t guard) {
          return remr::evaluate(s, c, t, guard);
        },
        py::arg("scenario"), py::arg("input_size"), py::arg("deadline"),
        py::arg("guard") = remr::kDefaultSearchGuard);

  py::class_<remr::SimResult>(m, "SimResult")
      .def_readonly("estimate", &remr::SimResult::estimate)
      .def_readonly("half_width", &remr::SimResult::half_width)
      .def_readonly("trials", &remr::SimResult::trials)
      .def_readonly("seed", &remr::SimResult::seed)
      .def_readonly("successes", &remr::SimResult::successes)
      .def_readonly("per_plan_estimates", &remr::SimResult::per_plan_estimates)
      .def_readonly("per_plan_half_widths", &remr::SimResult::per_plan_half_widths);

  m.def("simulate",
        [](const remr::Scenario& s, double c, double t, std::uint64_t trials, std::uint64_t seed,
           double z) {
          py::gil_scoped_release release;
          return remr::simulate(s, c, t, remr::SimConfig{trials, seed, z});
        },
        py::arg("scenario"), py::arg("input_size"), py::arg("deadline"),
        py::arg("trials") = 1'000'000, py::arg("seed") = remr::kDefaultSeed,
        py::arg("confidence_z") = 3.0);

  m.def("ingest_trace",
        [](const std::string& csv_text, const std::string& machine, int levels, double capacity) {
          std::istringstream in(csv_text);
          return remr::ingest_trace(remr::parse_trace_csv(in), machine, {levels, capacity});
        },
        py::arg("csv_text"), py::arg("machine"), py::arg("levels") = 6, py::arg("capacity") = 6.0);
  m.def("machines_in",
        [](const std::string& csv_text) {
          std::istringstream in(csv_text);
          return remr::machines_in(remr::parse_trace_csv(in));
        },
        py::arg("csv_text"));
}

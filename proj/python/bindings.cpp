#include <pybind11/eigen.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "heronwaist/errors.hpp"
#include "heronwaist/io.hpp"
#include "heronwaist/optimality.hpp"
#include "heronwaist/render.hpp"
#include "heronwaist/solver.hpp"
#include "heronwaist/subgradient.hpp"

namespace py = pybind11;
using namespace heronwaist;

namespace {

py::dict shape_dict(const ConvexSet& s) {
  py::dict d;
  d["kind"] = to_string(s.kind());
  std::visit(
      [&](const auto& shape) {
        using T = std::decay_t<decltype(shape)>;
        if constexpr (std::is_same_v<T, Ball>) {
          d["center"] = shape.center;
          d["radius"] = shape.radius;
        } else if constexpr (std::is_same_v<T, Box>) {
          d["center"] = shape.center;
          d["half_widths"] = shape.half_widths;
        } else if constexpr (std::is_same_v<T, HalfSpace>) {
          d["normal"] = shape.normal;
          d["offset"] = shape.offset;
        } else {
          d["point"] = shape.point;
        }
      },
      s.shape());
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Projected subgradient solver for the weighted Heron-waist problem";

  auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<InvalidInput>(m, "InvalidInput", error.ptr());
  py::register_exception<StructuralError>(m, "StructuralError", error.ptr());
  py::register_exception<NumericalError>(m, "NumericalError", error.ptr());
  py::register_exception<ParseError>(m, "ParseError", error.ptr());
  py::register_exception<IoError>(m, "IoError", error.ptr());
  py::register_exception<UnsupportedDimension>(m, "UnsupportedDimension", error.ptr());

  py::class_<ConvexSet>(m, "ConvexSet")
      .def_static("ball", &ConvexSet::ball, py::arg("center"), py::arg("radius"))
      .def_static("box", &ConvexSet::box, py::arg("center"), py::arg("half_widths"))
      .def_static("halfspace", &ConvexSet::halfspace, py::arg("normal"), py::arg("offset"))
      .def_static("singleton", &ConvexSet::singleton, py::arg("point"))
      .def_property_readonly("dimension", &ConvexSet::dimension)
      .def_property_readonly("kind", [](const ConvexSet& s) { return to_string(s.kind()); })
      .def_property_readonly("shape", &shape_dict)
      .def("project", &ConvexSet::project, py::arg("x"))
      .def("distance", &ConvexSet::distance, py::arg("x"))
      .def("contains", &ConvexSet::contains, py::arg("x"), py::arg("tol") = kMembershipTol)
      .def("is_bounded", &ConvexSet::is_bounded)
      .def("normal_cone_contains", &ConvexSet::normal_cone_contains, py::arg("x"), py::arg("v"),
           py::arg("tol") = kAngularTol)
      .def("anchor", &ConvexSet::anchor)
      .def(py::self == py::self)
      .def("__repr__", [](const ConvexSet& s) { return "<ConvexSet " + std::string(to_string(s.kind())) + ">"; });

  m.def("set_distance", &set_distance, py::arg("a"), py::arg("b"));

  py::class_<Problem>(m, "Problem")
      .def(py::init([](std::vector<ConvexSet> chain_sets, ConvexSet hub_set, std::vector<double> rho,
                       std::vector<double> omega, bool allow_two_vertex_chain, bool allow_degenerate) {
             return Problem(std::move(chain_sets), std::move(hub_set), Weights{std::move(rho), std::move(omega)},
                            ProblemOptions{allow_two_vertex_chain, allow_degenerate});
           }),
           py::arg("chain_sets"), py::arg("hub_set"), py::arg("rho"), py::arg("omega"),
           py::arg("allow_two_vertex_chain") = false, py::arg("allow_degenerate") = false)
      .def_property_readonly("dimension", &Problem::dimension)
      .def_property_readonly("size", &Problem::size)
      .def_property_readonly("chain_sets", &Problem::chain_sets)
      .def_property_readonly("hub_set", &Problem::hub_set)
      .def_property_readonly("rho", &Problem::rho)
      .def_property_readonly("omega", &Problem::omega)
      .def(py::self == py::self);

  py::class_<Configuration>(m, "Configuration")
      .def(py::init(&Configuration::from_points), py::arg("chain_points"), py::arg("hub_point"))
      .def_property_readonly("chain_points", &Configuration::chain_points)
      .def_property_readonly("hub_point", &Configuration::hub_point)
      .def_property_readonly("flat", [](const Configuration& u) { return Eigen::VectorXd(u.flat()); })
      .def(py::self == py::self);

  m.def("objective", &objective, py::arg("problem"), py::arg("u"));
  m.def("check_nondegeneracy", &check_nondegeneracy, py::arg("problem"));
  m.def(
      "connected_components",
      [](const Problem& p) {
        py::list out;
        for (const auto& c : connected_components(p)) out.append(py::make_tuple(c.indices, c.includes_hub));
        return out;
      },
      py::arg("problem"), "List of (indices, includes_hub) pairs.");
  m.def(
      "check_existence",
      [](const Problem& p) {
        const auto r = check_existence(p);
        py::list entries;
        for (const auto& e : r.entries) {
          py::dict d;
          d["indices"] = e.component.indices;
          d["includes_hub"] = e.component.includes_hub;
          d["condition"] = std::string(1, e.condition);
          d["satisfied"] = e.satisfied;
          entries.append(d);
        }
        return py::make_tuple(r.satisfied, entries);
      },
      py::arg("problem"), "(satisfied, entries)");
  m.def(
      "check_pairwise_disjoint",
      [](const Problem& p, double margin) {
        py::list pairs;
        for (const auto& pair : check_pairwise_disjoint(p, margin).pairs) {
          pairs.append(py::make_tuple(pair.first, pair.second == kHubIndex ? py::object(py::str("hub"))
                                                                             : py::object(py::int_(pair.second)),
                                      pair.distance));
        }
        return pairs;
      },
      py::arg("problem"), py::arg("margin") = 0.0);
  m.def("uniqueness_expected", &uniqueness_expected, py::arg("problem"));

  py::enum_<CoincidenceRule>(m, "CoincidenceRule")
      .value("per_term", CoincidenceRule::per_term)
      .value("whole_block", CoincidenceRule::whole_block);
  m.def("chain_subgradient", &chain_subgradient, py::arg("problem"), py::arg("u"), py::arg("i"),
        py::arg("rule") = CoincidenceRule::per_term);
  m.def("hub_subgradient", &hub_subgradient, py::arg("problem"), py::arg("u"));
  m.def(
      "full_subgradient",
      [](const Problem& p, const Configuration& u, CoincidenceRule rule) {
        return Eigen::VectorXd(full_subgradient(p, u, rule).flat());
      },
      py::arg("problem"), py::arg("u"), py::arg("rule") = CoincidenceRule::per_term,
      "Flat subgradient laid out like Configuration.flat.");
  m.def("subgradient_bound", &subgradient_bound, py::arg("problem"));

  py::enum_<StepRule>(m, "StepRule")
      .value("harmonic", StepRule::harmonic)
      .value("harmonic_offset", StepRule::harmonic_offset)
      .value("sqrt_decay", StepRule::sqrt_decay);
  py::enum_<StopReason>(m, "StopReason")
      .value("objective_stagnation", StopReason::objective_stagnation)
      .value("gradient_small", StopReason::gradient_small)
      .value("max_iter", StopReason::max_iter);

  py::class_<SolverConfig>(m, "SolverConfig")
      .def(py::init<>())
      .def_readwrite("step_rule", &SolverConfig::step_rule)
      .def_readwrite("step_scale", &SolverConfig::step_scale)
      .def_readwrite("step_offset", &SolverConfig::step_offset)
      .def_readwrite("tolerance", &SolverConfig::tolerance)
      .def_readwrite("max_iter", &SolverConfig::max_iter)
      .def_readwrite("stop_on_gradient", &SolverConfig::stop_on_gradient)
      .def_readwrite("trace_full_records", &SolverConfig::trace_full_records)
      .def_readwrite("coincidence", &SolverConfig::coincidence);

  py::class_<TraceRecord>(m, "TraceRecord")
      .def_readonly("k", &TraceRecord::k)
      .def_readonly("objective", &TraceRecord::objective)
      .def_readonly("best_objective", &TraceRecord::best_objective)
      .def_readonly("step", &TraceRecord::step)
      .def_readonly("grad_norm", &TraceRecord::grad_norm);

  py::class_<SolveResult>(m, "SolveResult")
      .def_readonly("best_config", &SolveResult::best_config)
      .def_readonly("best_objective", &SolveResult::best_objective)
      .def_readonly("iterations", &SolveResult::iterations)
      .def_readonly("stop_reason", &SolveResult::stop_reason)
      .def_readonly("trace", &SolveResult::trace)
      .def_readonly("initial_projected", &SolveResult::initial_projected)
      .def_property_readonly("checkpoints", [](const SolveResult& r) {
        py::dict d;
        for (const auto& cp : r.checkpoints) d[py::float_(cp.tolerance)] = cp.iteration;
        return d;
      });

  m.def("step_size", &step_size, py::arg("config"), py::arg("k"));
  m.def("project_feasible", &project_feasible, py::arg("problem"), py::arg("u"));
  m.def("is_feasible", &is_feasible, py::arg("problem"), py::arg("u"), py::arg("tol") = kMembershipTol);
  m.def("initialize_anchors", &initialize_anchors, py::arg("problem"));
  m.def("initialize_projected", &initialize_projected, py::arg("problem"), py::arg("u"));
  m.def(
      "solve",
      [](const Problem& p, const Configuration& u0, const SolverConfig& cfg) {
        py::gil_scoped_release release;
        return solve(p, u0, cfg);
      },
      py::arg("problem"), py::arg("u0"), py::arg("config") = SolverConfig{});

  py::enum_<Verdict>(m, "Verdict")
      .value("optimal_within_tol", Verdict::optimal_within_tol)
      .value("not_optimal", Verdict::not_optimal)
      .value("indeterminate", Verdict::indeterminate);

  py::class_<OptimalityReport>(m, "OptimalityReport")
      .def_readonly("chain_residuals", &OptimalityReport::chain_residuals)
      .def_readonly("hub_residual", &OptimalityReport::hub_residual)
      .def_readonly("chain_normal_ok", &OptimalityReport::chain_normal_ok)
      .def_readonly("chain_indeterminate", &OptimalityReport::chain_indeterminate)
      .def_readonly("hub_normal_ok", &OptimalityReport::hub_normal_ok)
      .def_readonly("hub_indeterminate", &OptimalityReport::hub_indeterminate)
      .def_readonly("global_balance_norm", &OptimalityReport::global_balance_norm)
      .def_readonly("tolerance", &OptimalityReport::tolerance)
      .def_readonly("verdict", &OptimalityReport::verdict)
      .def_property_readonly("overlapping_pairs",
                             [](const OptimalityReport& r) { return r.disjointness.pairs.size(); });

  m.def("verify", &verify, py::arg("problem"), py::arg("u"), py::arg("tol"));
  m.def("chain_residual", &chain_residual, py::arg("problem"), py::arg("u"), py::arg("i"));
  m.def("hub_residual", &hub_residual, py::arg("problem"), py::arg("u"));

  py::class_<ProblemSpec>(m, "ProblemSpec")
      .def_readonly("problem", &ProblemSpec::problem)
      .def_readonly("init", &ProblemSpec::init)
      .def_readonly("solver", &ProblemSpec::solver);
  m.def("parse_problem", [](const std::string& text) { return parse_problem(text); }, py::arg("text"));
  m.def("load_problem", &load_problem, py::arg("path"));
  m.def("serialize_problem", &serialize_problem, py::arg("spec"));
  m.def("trace_csv", &trace_csv, py::arg("trace"));
  m.def("render_svg", &render_svg, py::arg("problem"), py::arg("u"));
  m.def("configuration_table", &configuration_table, py::arg("problem"), py::arg("u"));
}

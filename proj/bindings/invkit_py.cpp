#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "invkit/errors.hpp"
#include "invkit/json_io.hpp"
#include "invkit/polyhedra.hpp"
#include "invkit/pwse.hpp"
#include "invkit/solver.hpp"
#include "invkit/synth.hpp"
#include "invkit/systems.hpp"

namespace py = pybind11;
using namespace invkit;

namespace {

std::vector<SymmetricMatrix> to_symmetric(const std::vector<MatrixXd>& Ms) {
  std::vector<SymmetricMatrix> out;
  out.reserve(Ms.size());
  for (const MatrixXd& M : Ms) {
    if ((M - M.transpose()).cwiseAbs().maxCoeff() > 1e-9)
      fail(ErrorCode::InvalidArgument, "matrix is not symmetric");
    out.push_back(SymmetricMatrix::from_dense(M));
  }
  return out;
}

std::vector<MatrixXd> to_dense(const std::vector<SymmetricMatrix>& Qs) {
  std::vector<MatrixXd> out;
  out.reserve(Qs.size());
  for (const SymmetricMatrix& Q : Qs) out.push_back(Q.dense());
  return out;
}

const char* violation_kind(PwseViolation::Kind k) {
  switch (k) {
    case PwseViolation::Kind::NotPsd: return "not_psd";
    case PwseViolation::Kind::Continuity: return "continuity";
    case PwseViolation::Kind::Convexity: return "convexity";
  }
  return "unknown";
}

SynthesisResult py_synthesize(const SynthesisProblem& prob,
                              const SolverOptions& opts) {
  InteriorPointSolver backend(opts);
  return solve(prob, backend);
}

}  // namespace

PYBIND11_MODULE(_invkit, m) {
  m.doc() = "Control invariant sets via piecewise semi-ellipsoids";

  py::register_exception<Error>(m, "InvkitError");

  py::class_<HPolyhedron>(m, "HPolyhedron")
      .def(py::init<MatrixXd, VectorXd>(), py::arg("A"), py::arg("b"))
      .def_static("box", &HPolyhedron::box, py::arg("n"), py::arg("radius"))
      .def_static("cone", &HPolyhedron::cone, py::arg("A"))
      .def_static("full_space", &HPolyhedron::full_space, py::arg("n"))
      .def_property_readonly("A", &HPolyhedron::A)
      .def_property_readonly("b", &HPolyhedron::b)
      .def_property_readonly("ambient_dim", &HPolyhedron::ambient_dim)
      .def_property_readonly("num_rows", &HPolyhedron::num_rows)
      .def("is_cone", &HPolyhedron::is_cone, py::arg("tol") = 1e-12)
      .def("contains", &HPolyhedron::contains, py::arg("x"),
           py::arg("tol") = 1e-9)
      .def("is_empty", &HPolyhedron::is_empty)
      .def("intersect", &HPolyhedron::intersect, py::arg("other"))
      .def("remove_redundancy", &HPolyhedron::remove_redundancy,
           py::arg("tol") = 1e-9)
      .def("dim", &HPolyhedron::dim)
      .def("support_lp", &HPolyhedron::support_lp, py::arg("y"))
      .def("__repr__", [](const HPolyhedron& P) {
        return "HPolyhedron(n=" + std::to_string(P.ambient_dim()) +
               ", rows=" + std::to_string(P.num_rows()) + ")";
      });

  m.def("vertices_of", &vertices_of, py::arg("P"),
        "Vertices of a bounded polyhedron.");
  m.def("cone_generators", &cone_generators, py::arg("cone"),
        "Extreme rays of a polyhedral cone.");
  m.def("polar_polytope", &polar_polytope, py::arg("P"),
        "Polar polytope {y : y . x <= 1 on P}.");
  m.def("facet_cones", &facet_cones, py::arg("P"),
        "Conic hull of each facet of a polytope with 0 in its interior.");

  py::class_<ConicPartition>(m, "ConicPartition")
      .def_readonly("pieces", &ConicPartition::pieces)
      .def_readonly("covers", &ConicPartition::covers)
      .def_readonly("neighbors", &ConicPartition::neighbors)
      .def_property_readonly("ambient_dim", &ConicPartition::ambient_dim)
      .def("find_piece", &ConicPartition::find_piece, py::arg("x"),
           py::arg("tol") = 1e-10)
      .def("__len__",
           [](const ConicPartition& p) { return p.pieces.size(); })
      .def("__repr__", [](const ConicPartition& p) {
        return "ConicPartition(pieces=" + std::to_string(p.pieces.size()) +
               ", covers=" + (p.covers ? std::string("True") : "False") + ")";
      });

  m.def("build_partition", &build_partition, py::arg("cones"),
        py::arg("allow_partial") = false,
        "Validated conic partition from a list of full-dimensional cones.");

  py::class_<PwseViolation>(m, "PwseViolation")
      .def_property_readonly(
          "kind", [](const PwseViolation& v) { return violation_kind(v.kind); })
      .def_readonly("i", &PwseViolation::i)
      .def_readonly("j", &PwseViolation::j)
      .def_readonly("residual", &PwseViolation::residual)
      .def_readonly("description", &PwseViolation::description)
      .def("__repr__", [](const PwseViolation& v) { return v.description; });

  py::class_<PiecewiseSemiEllipsoid>(m, "PiecewiseSemiEllipsoid")
      .def(py::init([](const ConicPartition& part,
                       const std::vector<MatrixXd>& Qs) {
             return PiecewiseSemiEllipsoid(part, to_symmetric(Qs));
           }),
           py::arg("partition"), py::arg("matrices"))
      .def_property_readonly("partition", &PiecewiseSemiEllipsoid::partition)
      .def_property_readonly("matrices",
                             [](const PiecewiseSemiEllipsoid& S) {
                               return to_dense(S.matrices());
                             })
      .def_property_readonly("num_pieces", &PiecewiseSemiEllipsoid::num_pieces)
      .def_property_readonly("ambient_dim",
                             &PiecewiseSemiEllipsoid::ambient_dim)
      .def("gauge", &PiecewiseSemiEllipsoid::gauge, py::arg("x"))
      .def("support", &PiecewiseSemiEllipsoid::support, py::arg("y"))
      .def("sublevel_contains", &PiecewiseSemiEllipsoid::sublevel_contains,
           py::arg("x"))
      .def("validate", &PiecewiseSemiEllipsoid::validate)
      .def("polar", &PiecewiseSemiEllipsoid::polar,
           py::return_value_policy::copy)
      .def("__repr__", [](const PiecewiseSemiEllipsoid& S) {
        return "PiecewiseSemiEllipsoid(n=" + std::to_string(S.ambient_dim()) +
               ", pieces=" + std::to_string(S.num_pieces()) + ")";
      });

  m.def("from_polytope", &from_polytope, py::arg("P"),
        "Piecewise semi-ellipsoid whose gauge equals the polytope gauge.");
  m.def(
      "from_ellipsoid",
      [](const MatrixXd& Q) {
        return from_ellipsoid(SymmetricMatrix::from_dense(Q));
      },
      py::arg("Q"), "Single-piece set {x : x' Q x <= 1}.");

  py::class_<LinearControlSystem>(m, "LinearControlSystem")
      .def(py::init<MatrixXd, MatrixXd, HPolyhedron>(), py::arg("A"),
           py::arg("B"), py::arg("X"))
      .def_readonly("A", &LinearControlSystem::A)
      .def_readonly("B", &LinearControlSystem::B)
      .def_readonly("X", &LinearControlSystem::X)
      .def_property_readonly("state_dim", &LinearControlSystem::state_dim)
      .def_property_readonly("input_dim", &LinearControlSystem::input_dim);

  py::class_<SwitchedControlSystem>(m, "SwitchedControlSystem")
      .def(py::init<std::vector<std::pair<MatrixXd, MatrixXd>>, HPolyhedron>(),
           py::arg("modes"), py::arg("X"))
      .def_readonly("modes", &SwitchedControlSystem::modes)
      .def_readonly("X", &SwitchedControlSystem::X)
      .def_property_readonly("num_modes", &SwitchedControlSystem::num_modes)
      .def("mode_system", &SwitchedControlSystem::mode_system, py::arg("s"));

  py::class_<ViabilityResult>(m, "ViabilityResult")
      .def_readonly("kernel", &ViabilityResult::kernel)
      .def_readonly("converged", &ViabilityResult::converged)
      .def_readonly("iterates", &ViabilityResult::iterates);

  m.def("viability_kernel", &viability_kernel, py::arg("sys"),
        py::arg("max_iter") = 50, py::arg("tol") = 1e-8,
        "Iterate the one-step viable set until a fixed point.");
  m.def("viability_step", &viability_step, py::arg("sys"), py::arg("P"));

  py::class_<InvarianceReport>(m, "InvarianceReport")
      .def_readonly("passed", &InvarianceReport::passed)
      .def_readonly("subset_of_X", &InvarianceReport::subset_of_X)
      .def_readonly("primal_worst", &InvarianceReport::primal_worst)
      .def_readonly("dual_worst", &InvarianceReport::dual_worst);

  m.def("check_control_invariance", &check_control_invariance, py::arg("sys"),
        py::arg("S"), py::arg("n_samples") = 200,
        "Sampled primal/dual certificate that S is control invariant.");

  py::class_<SolverOptions>(m, "SolverOptions")
      .def(py::init<>())
      .def_readwrite("max_iterations", &SolverOptions::max_iterations)
      .def_readwrite("tol_feas", &SolverOptions::tol_feas)
      .def_readwrite("tol_gap", &SolverOptions::tol_gap)
      .def_readwrite("tol_infeas", &SolverOptions::tol_infeas)
      .def_readwrite("verbose", &SolverOptions::verbose);

  py::enum_<SolveStatus>(m, "SolveStatus")
      .value("Optimal", SolveStatus::Optimal)
      .value("Infeasible", SolveStatus::Infeasible)
      .value("Unbounded", SolveStatus::Unbounded)
      .value("NumericalFailure", SolveStatus::NumericalFailure);

  py::class_<SynthesisProblem>(m, "SynthesisProblem")
      .def(py::init<LinearControlSystem, ConicPartition, HPolyhedron>(),
           py::arg("system"), py::arg("partition"), py::arg("objective"))
      .def(py::init<SwitchedControlSystem, ConicPartition, HPolyhedron>(),
           py::arg("system"), py::arg("partition"), py::arg("objective"))
      .def_readonly("partition", &SynthesisProblem::partition)
      .def_readonly("objective_polytope", &SynthesisProblem::objective_polytope);

  py::class_<SynthesisResult>(m, "SynthesisResult")
      .def_readonly("status", &SynthesisResult::status)
      .def_readonly("objective", &SynthesisResult::objective)
      .def_property_readonly("polar_side",
                             [](const SynthesisResult& r) {
                               return r.polar_side;
                             })
      .def_property_readonly("S",
                             [](const SynthesisResult& r) { return r.S; })
      .def_readonly("violations", &SynthesisResult::violations)
      .def_property_readonly("check",
                             [](const SynthesisResult& r) { return r.check; });

  m.def("synthesize", &py_synthesize, py::arg("problem"),
        py::arg("options") = SolverOptions(),
        "Assemble and solve the invariance program; the maximizer's polar is "
        "the synthesized set.");

  m.def(
      "to_json",
      [](const PiecewiseSemiEllipsoid& S) { return to_json(S).dump(2); },
      py::arg("S"), "Serialize a set to the invkit/1 JSON document.");
  m.def(
      "pwse_from_json",
      [](const std::string& text) { return pwse_from_json(Json::parse(text)); },
      py::arg("text"), "Parse a set from an invkit/1 JSON document.");
  m.def(
      "hpolyhedron_from_json",
      [](const std::string& text) {
        return hpolyhedron_from_json(Json::parse(text));
      },
      py::arg("text"));
}

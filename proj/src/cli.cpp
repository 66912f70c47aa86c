#include "invkit/cli.hpp"

#include <fstream>
#include <iostream>
#include <utility>

#include "invkit/errors.hpp"
#include "invkit/json_io.hpp"
#include "invkit/plot.hpp"
#include "invkit/synth.hpp"

namespace invkit {
namespace {

Json read_document(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::InvalidArgument, "cannot open " + path);
  Json j = Json::parse(in, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded())
    fail(ErrorCode::InvalidArgument, "malformed JSON in " + path);
  return j;
}

void write_text(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out);
  if (!f) fail(ErrorCode::InvalidArgument, "cannot write " + out);
  f << text;
}

void write_output(const Json& doc, const std::string& out) {
  write_text(doc.dump(2) + "\n", out);
}

int map_error(const Error& e) {
  switch (e.code()) {
    case ErrorCode::EmptyPolyhedron: return kExitEmpty;
    case ErrorCode::ComplexityBudgetExceeded: return kExitBudget;
    default: return kExitError;
  }
}

template <typename F>
int guarded(F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    std::cerr << "invkit: " << to_string(e.code()) << ": " << e.what() << "\n";
    return map_error(e);
  } catch (const std::exception& e) {
    std::cerr << "invkit: " << e.what() << "\n";
    return kExitError;
  }
}

const char* violation_kind(PwseViolation::Kind k) {
  switch (k) {
    case PwseViolation::Kind::NotPsd: return "not_psd";
    case PwseViolation::Kind::Continuity: return "continuity";
    case PwseViolation::Kind::Convexity: return "convexity";
  }
  return "unknown";
}

Json report_to_json(const InvarianceReport& rep) {
  return {{"passed", rep.passed},
          {"subset_of_X", rep.subset_of_X},
          {"primal_worst", rep.primal_worst},
          {"dual_worst", rep.dual_worst}};
}

InvarianceReport aggregate_check(const SwitchedControlSystem& sys,
                                 const PiecewiseSemiEllipsoid& S,
                                 int n_samples) {
  InvarianceReport agg;
  agg.passed = true;
  agg.subset_of_X = true;
  for (int s = 0; s < sys.num_modes(); ++s) {
    const InvarianceReport rep =
        check_control_invariance(sys.mode_system(s), S, n_samples);
    agg.passed = agg.passed && rep.passed;
    agg.subset_of_X = agg.subset_of_X && rep.subset_of_X;
    agg.primal_worst = std::max(agg.primal_worst, rep.primal_worst);
    agg.dual_worst = std::max(agg.dual_worst, rep.dual_worst);
  }
  return agg;
}

}  // namespace

int cmd_viability(const ViabilityArgs& args) {
  return guarded([&] {
    const ProblemFile pf = problem_from_json(read_document(args.input));
    if (pf.system.num_modes() != 1)
      fail(ErrorCode::InvalidArgument,
           "viability: a single-mode system is required");
    const double tol = args.tol >= 0.0 ? args.tol : pf.viability_tol;
    const LinearControlSystem sys = pf.system.mode_system(0);
    const ViabilityResult res = viability_kernel(sys, args.max_iter, tol);

    Json iterates = Json::array();
    Json facets = Json::array();
    for (const HPolyhedron& P : res.iterates) {
      const HPolyhedron R = P.remove_redundancy();
      iterates.push_back(to_json(R));
      facets.push_back(R.num_rows());
    }
    const Json doc = {{"schema", kSchemaTag},
                      {"type", "viability"},
                      {"converged", res.converged},
                      {"iterates", iterates},
                      {"facet_counts", facets},
                      {"kernel", to_json(res.kernel.remove_redundancy())},
                      {"safe_set", to_json(sys.X)}};
    write_output(doc, args.out);
    if (!res.converged)
      std::cerr << "invkit: no fixed point within " << args.max_iter
                << " iterations\n";
    return kExitOk;
  });
}

int cmd_synthesize(const SynthesizeArgs& args) {
  return guarded([&] {
    ProblemFile pf = problem_from_json(read_document(args.input));
    if (args.solver_max_iter > 0)
      pf.solver.max_iterations = args.solver_max_iter;
    if (args.solver_tol > 0.0) {
      pf.solver.tol_feas = args.solver_tol;
      pf.solver.tol_gap = args.solver_tol;
    }
    const SynthesisProblem prob(pf.system, resolve_partition(pf),
                                pf.objective);
    if (!args.dump_program.empty())
      write_output(to_json(assemble(prob).program), args.dump_program);

    const InteriorPointSolver backend(pf.solver);
    const SynthesisResult res = solve(prob, backend);

    Json doc = {{"schema", kSchemaTag},
                {"type", "synthesis"},
                {"status", to_string(res.status)},
                {"objective", res.objective}};
    if (res.polar_side.has_value()) {
      Json Qs = Json::array();
      for (const SymmetricMatrix& Q : res.polar_side->matrices())
        Qs.push_back(to_json(Q));
      doc["Q"] = Qs;
      doc["partition"] = to_json(res.polar_side->partition());
      doc["polar_side"] = to_json(*res.polar_side);
      doc["S"] = to_json(*res.S);
      doc["state_constraints"] = to_json(pf.system.X);
      Json viols = Json::array();
      for (const PwseViolation& v : res.violations)
        viols.push_back({{"kind", violation_kind(v.kind)},
                         {"i", v.i},
                         {"j", v.j},
                         {"residual", v.residual},
                         {"description", v.description}});
      doc["violations"] = viols;
      doc["verification"] = report_to_json(*res.check);
    }
    write_output(doc, args.out);
    switch (res.status) {
      case SolveStatus::Optimal: return kExitOk;
      case SolveStatus::Infeasible: return kExitInfeasible;
      default: return kExitNumerical;
    }
  });
}

int cmd_polar(const PolarArgs& args) {
  return guarded([&] {
    const PiecewiseSemiEllipsoid S = pwse_from_json(read_document(args.input));
    write_output(to_json(S.polar()), args.out);
    return kExitOk;
  });
}

int cmd_check(const CheckArgs& args) {
  return guarded([&] {
    const Json doc = read_document(args.input);
    if (!doc.contains("schema") || doc["schema"] != kSchemaTag)
      fail(ErrorCode::InvalidArgument, "check: missing schema tag");
    const SwitchedControlSystem sys = system_from_json(doc.at("system"));
    const PiecewiseSemiEllipsoid S = pwse_from_json(doc.at("set"));
    int samples = args.samples;
    if (samples <= 0) samples = doc.value("samples", 200);
    const InvarianceReport rep = aggregate_check(sys, S, samples);
    Json out = report_to_json(rep);
    out["schema"] = kSchemaTag;
    out["type"] = "check";
    out["samples"] = samples;
    write_output(out, args.out);
    return rep.passed ? kExitOk : kExitError;
  });
}

int cmd_plot(const PlotArgs& args) {
  return guarded([&] {
    if (args.format != "svg" && args.format != "json")
      fail(ErrorCode::InvalidArgument, "plot: format must be svg or json");
    std::vector<Curve> curves;
    const auto planar = [](int n) { return n == 2; };

    for (const std::string& path : args.inputs) {
      const Json doc = read_document(path);
      const std::string type = doc.value("type", "");
      if (type == "viability") {
        const HPolyhedron safe = hpolyhedron_from_json(doc.at("safe_set"));
        if (!planar(safe.ambient_dim())) {
          std::cerr << "invkit: plot requires dimension 2\n";
          return kExitNotPlanar;
        }
        curves.push_back(
            {"safe set", boundary_polyline(safe, args.samples)});
        const Json& iterates = doc.at("iterates");
        for (size_t k = 1; k < iterates.size(); ++k)
          curves.push_back({"iterate " + std::to_string(k),
                            boundary_polyline(
                                hpolyhedron_from_json(iterates[k]),
                                args.samples)});
        curves.push_back(
            {"kernel", boundary_polyline(
                           hpolyhedron_from_json(doc.at("kernel")),
                           args.samples)});
      } else if (type == "synthesis") {
        if (!doc.contains("S"))
          fail(ErrorCode::InvalidArgument,
               "plot: synthesis result has no set (was it infeasible?)");
        const PiecewiseSemiEllipsoid S = pwse_from_json(doc.at("S"));
        if (!planar(S.ambient_dim())) {
          std::cerr << "invkit: plot requires dimension 2\n";
          return kExitNotPlanar;
        }
        curves.push_back(
            {"safe set",
             boundary_polyline(
                 hpolyhedron_from_json(doc.at("state_constraints")),
                 args.samples)});
        curves.push_back({"synthesized", boundary_polyline(S, args.samples)});
      } else if (type == "pwse") {
        const PiecewiseSemiEllipsoid S = pwse_from_json(doc);
        if (!planar(S.ambient_dim())) {
          std::cerr << "invkit: plot requires dimension 2\n";
          return kExitNotPlanar;
        }
        curves.push_back({"set", boundary_polyline(S, args.samples)});
      } else if (type == "check") {
        const PiecewiseSemiEllipsoid S = pwse_from_json(doc.at("set"));
        if (!planar(S.ambient_dim())) {
          std::cerr << "invkit: plot requires dimension 2\n";
          return kExitNotPlanar;
        }
        curves.push_back({"set", boundary_polyline(S, args.samples)});
      } else {
        fail(ErrorCode::InvalidArgument,
             "plot: unsupported document type \"" + type + "\" in " + path);
      }
    }

    if (args.format == "svg")
      write_text(render_svg(curves), args.out);
    else
      write_output(curves_to_json(curves), args.out);
    return kExitOk;
  });
}

}  // namespace invkit

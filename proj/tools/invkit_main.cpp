#include <CLI11.hpp>

#include "invkit/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"invkit: control invariant sets via piecewise semi-ellipsoids"};
  app.require_subcommand(1);

  invkit::ViabilityArgs va;
  CLI::App* viability =
      app.add_subcommand("viability", "Iterate the viability kernel");
  viability->add_option("file", va.input, "problem JSON")->required();
  viability->add_option("--max-iter", va.max_iter, "iteration cap")
      ->capture_default_str();
  viability->add_option("--tol", va.tol,
                        "fixed-point containment tolerance (default 1e-8)");
  viability->add_option("-o,--out", va.out, "output path (default stdout)");

  invkit::SynthesizeArgs sa;
  CLI::App* synthesize = app.add_subcommand(
      "synthesize", "Solve the piecewise semi-ellipsoid program");
  synthesize->add_option("file", sa.input, "problem JSON")->required();
  synthesize->add_option("-o,--out", sa.out, "output path (default stdout)");
  synthesize->add_option("--dump-program", sa.dump_program,
                         "also write the assembled conic program");
  synthesize->add_option("--solver-max-iter", sa.solver_max_iter,
                         "interior-point iteration cap (default 100)");
  synthesize->add_option("--solver-tol", sa.solver_tol,
                         "feasibility and gap tolerance (default 1e-9)");

  invkit::PolarArgs pa;
  CLI::App* polar =
      app.add_subcommand("polar", "Polar of a piecewise semi-ellipsoid");
  polar->add_option("file", pa.input, "pwse JSON")->required();
  polar->add_option("-o,--out", pa.out, "output path (default stdout)");

  invkit::CheckArgs ca;
  CLI::App* check =
      app.add_subcommand("check", "Verify control invariance of a set");
  check->add_option("file", ca.input, "system + set JSON")->required();
  check->add_option("--samples", ca.samples,
                    "boundary / direction samples (default 200)");
  check->add_option("-o,--out", ca.out, "output path (default stdout)");

  invkit::PlotArgs la;
  CLI::App* plot =
      app.add_subcommand("plot", "Boundary polylines of planar result sets");
  plot->add_option("files", la.inputs, "result JSON documents")->required();
  plot->add_option("--format", la.format, "svg or json")
      ->check(CLI::IsMember({"svg", "json"}))
      ->capture_default_str();
  plot->add_option("--samples", la.samples, "boundary samples per set")
      ->capture_default_str();
  plot->add_option("-o,--out", la.out, "output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : invkit::kExitError;
  }

  if (viability->parsed()) return invkit::cmd_viability(va);
  if (synthesize->parsed()) return invkit::cmd_synthesize(sa);
  if (polar->parsed()) return invkit::cmd_polar(pa);
  if (check->parsed()) return invkit::cmd_check(ca);
  if (plot->parsed()) return invkit::cmd_plot(la);
  return invkit::kExitError;
}

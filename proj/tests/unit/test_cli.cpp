#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <string>
#include <vector>

#include "invkit/cli.hpp"
#include "invkit/json_io.hpp"
#include "invkit/pwse.hpp"

using namespace invkit;

namespace {

std::string data_path(const std::string& name) {
  return std::string(INVKIT_TEST_DATA_DIR) + "/" + name;
}

std::string tmp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("invkit_test_" + name))
      .string();
}

Json read_json(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  return Json::parse(in);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  return std::string(std::istreambuf_iterator<char>(in), {});
}

std::string write_tmp(const std::string& name, const Json& doc) {
  const std::string path = tmp_path(name);
  std::ofstream out(path);
  out << doc.dump(2) << "\n";
  return path;
}

MatrixXd mat(std::initializer_list<std::initializer_list<double>> rows) {
  const int m = static_cast<int>(rows.size());
  const int n = static_cast<int>(rows.begin()->size());
  MatrixXd M(m, n);
  int i = 0;
  for (const auto& r : rows) {
    int j = 0;
    for (double v : r) M(i, j++) = v;
    ++i;
  }
  return M;
}

VectorXd dir(double deg) {
  const double t = deg * std::numbers::pi / 180.0;
  VectorXd d(2);
  d << std::cos(t), std::sin(t);
  return d;
}

bool same_cone(const HPolyhedron& C, const HPolyhedron& D) {
  if (C.ambient_dim() != D.ambient_dim()) return false;
  for (const VectorXd& g : cone_generators(C))
    if (!D.contains(g / g.norm(), 1e-9)) return false;
  for (const VectorXd& g : cone_generators(D))
    if (!C.contains(g / g.norm(), 1e-9)) return false;
  return true;
}

int count_occurrences(const std::string& text, const std::string& needle) {
  int count = 0;
  for (std::size_t pos = text.find(needle); pos != std::string::npos;
       pos = text.find(needle, pos + needle.size()))
    ++count;
  return count;
}

}  // namespace

TEST_CASE("polar command reproduces the six piece golden") {
  const std::string out = tmp_path("polar_five.json");
  REQUIRE(cmd_polar({data_path("five_piece_set.json"), out}) == kExitOk);

  const Json doc = read_json(out);
  CHECK(doc.at("schema") == kSchemaTag);
  CHECK(doc.at("type") == "pwse");
  const PiecewiseSemiEllipsoid P = pwse_from_json(doc);
  const PiecewiseSemiEllipsoid golden =
      pwse_from_json(read_json(data_path("five_piece_polar_golden.json")));
  REQUIRE(P.num_pieces() == 6);

  // Every golden piece has exactly one counterpart with the same cone, and
  // the matrices agree there entrywise.
  for (int g = 0; g < golden.num_pieces(); ++g) {
    int found = -1;
    for (int i = 0; i < P.num_pieces(); ++i) {
      if (!same_cone(golden.partition().pieces[g], P.partition().pieces[i]))
        continue;
      CHECK(found == -1);
      found = i;
    }
    REQUIRE(found >= 0);
    CHECK(golden.matrices()[g].approx_equal(P.matrices()[found], 1e-9));
  }

  const PiecewiseSemiEllipsoid S =
      pwse_from_json(read_json(data_path("five_piece_set.json")));
  for (int k = 0; k < 360; ++k) {
    const VectorXd d = dir(k);
    CHECK(P.gauge(d) == doctest::Approx(golden.gauge(d)).epsilon(1e-9));
    // Polar gauge equals the support function of the original set.
    CHECK(P.gauge(d) == doctest::Approx(S.support(d)).epsilon(1e-9));
  }
}

TEST_CASE("polar command is an involution through files") {
  const std::string once = tmp_path("polar_once.json");
  const std::string twice = tmp_path("polar_twice.json");
  REQUIRE(cmd_polar({data_path("five_piece_set.json"), once}) == kExitOk);
  REQUIRE(cmd_polar({once, twice}) == kExitOk);
  const PiecewiseSemiEllipsoid S =
      pwse_from_json(read_json(data_path("five_piece_set.json")));
  const PiecewiseSemiEllipsoid SS = pwse_from_json(read_json(twice));
  for (int k = 0; k < 144; ++k) {
    const VectorXd d = dir(k * 2.5);
    CHECK(SS.gauge(d) == doctest::Approx(S.gauge(d)).epsilon(1e-9));
  }
}

TEST_CASE("polar command maps the unit disk to itself") {
  const std::string out = tmp_path("polar_disk.json");
  REQUIRE(cmd_polar({data_path("unit_disk.json"), out}) == kExitOk);
  const PiecewiseSemiEllipsoid P = pwse_from_json(read_json(out));
  REQUIRE(P.num_pieces() == 1);
  CHECK(P.matrices()[0].approx_equal(SymmetricMatrix::identity(2), 1e-12));
}

TEST_CASE("viability command finds the double integrator kernel") {
  const std::string out = tmp_path("viability_di.json");
  ViabilityArgs args{data_path("double_integrator_quadrants.json"), out};
  REQUIRE(cmd_viability(args) == kExitOk);

  const Json doc = read_json(out);
  CHECK(doc.at("schema") == kSchemaTag);
  CHECK(doc.at("type") == "viability");
  CHECK(doc.at("converged") == true);
  REQUIRE(doc.at("iterates").size() == 2);
  CHECK(doc.at("facet_counts") == Json::array({4, 6}));

  const HPolyhedron kernel = hpolyhedron_from_json(doc.at("kernel"));
  REQUIRE(kernel.ambient_dim() == 2);
  CHECK(kernel.num_rows() == 6);
  // |x1| <= 1, |x2| <= 1, |x1 + x2| <= 1, checked through supports.
  VectorXd d(2);
  d << 1, 0;
  CHECK(kernel.support_lp(d) == doctest::Approx(1.0).epsilon(1e-8));
  d << 0, -1;
  CHECK(kernel.support_lp(d) == doctest::Approx(1.0).epsilon(1e-8));
  d << 1, 1;
  CHECK(kernel.support_lp(d) == doctest::Approx(1.0).epsilon(1e-8));
  d << 1, -1;
  CHECK(kernel.support_lp(d) == doctest::Approx(2.0).epsilon(1e-8));
}

TEST_CASE("viability command converges immediately under full actuation") {
  const std::string out = tmp_path("viability_full.json");
  REQUIRE(cmd_viability({data_path("fully_actuated.json"), out}) == kExitOk);
  const Json doc = read_json(out);
  CHECK(doc.at("converged") == true);
  CHECK(doc.at("iterates").size() == 1);
  const HPolyhedron kernel = hpolyhedron_from_json(doc.at("kernel"));
  VectorXd d(2);
  d << 1, 0;
  CHECK(kernel.support_lp(d) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("viability command reports when no fixed point is reached") {
  const std::string out = tmp_path("viability_exp.json");
  ViabilityArgs args{data_path("expansion.json"), out};
  args.max_iter = 4;
  REQUIRE(cmd_viability(args) == kExitOk);
  const Json doc = read_json(out);
  CHECK(doc.at("converged") == false);
  REQUIRE(doc.at("iterates").size() == 5);
  for (const Json& f : doc.at("facet_counts")) CHECK(f == 4);
  // Each step halves the box.
  const HPolyhedron last = hpolyhedron_from_json(doc.at("kernel"));
  VectorXd d(2);
  d << 0, 1;
  CHECK(last.support_lp(d) == doctest::Approx(0.0625).epsilon(1e-10));
}

TEST_CASE("synthesize command solves the double integrator") {
  const std::string out = tmp_path("synth_quad.json");
  SynthesizeArgs args{data_path("double_integrator_quadrants.json"), out};
  args.dump_program = tmp_path("synth_quad_program.json");
  REQUIRE(cmd_synthesize(args) == kExitOk);

  const Json doc = read_json(out);
  CHECK(doc.at("schema") == kSchemaTag);
  CHECK(doc.at("type") == "synthesis");
  CHECK(doc.at("status") == "Optimal");
  CHECK(doc.at("objective").get<double>() > 0.1);
  REQUIRE(doc.at("Q").size() == 4);
  CHECK(doc.at("violations").empty());
  CHECK(doc.at("verification").at("passed") == true);
  CHECK(doc.at("verification").at("subset_of_X") == true);
  CHECK(doc.at("verification").at("primal_worst").get<double>() < 1e-6);
  CHECK(doc.at("verification").at("dual_worst").get<double>() < 1e-6);

  // The synthesized set parses back and sits inside the state constraints.
  const PiecewiseSemiEllipsoid S = pwse_from_json(doc.at("S"));
  const HPolyhedron X = hpolyhedron_from_json(doc.at("state_constraints"));
  for (int k = 0; k < 36; ++k) {
    const VectorXd d = dir(k * 10.0);
    const double g = S.gauge(d);
    REQUIRE(g > 0.0);
    CHECK(X.contains(d / g, 1e-7));
  }

  const Json prog = read_json(args.dump_program);
  CHECK(prog.at("type") == "conic_program");
  CHECK(prog.at("matrices").size() == 4);
  CHECK(prog.at("psd_constraints").size() >= 4);
  CHECK(prog.at("equalities").size() == 12);
}

TEST_CASE("facet cone partition scores at least the quadrants") {
  const std::string out_q = tmp_path("synth_cmp_quad.json");
  const std::string out_f = tmp_path("synth_cmp_facet.json");
  REQUIRE(cmd_synthesize({data_path("double_integrator_quadrants.json"), out_q}) ==
          kExitOk);
  REQUIRE(cmd_synthesize({data_path("double_integrator_facet_cones.json"), out_f}) ==
          kExitOk);
  const Json dq = read_json(out_q);
  const Json df = read_json(out_f);
  CHECK(df.at("status") == "Optimal");
  CHECK(df.at("Q").size() == 6);
  CHECK(df.at("verification").at("passed") == true);
  CHECK(df.at("objective").get<double>() >=
        dq.at("objective").get<double>() - 1e-6);
}

TEST_CASE("synthesize command reports infeasibility for pure expansion") {
  const std::string out = tmp_path("synth_exp.json");
  CHECK(cmd_synthesize({data_path("expansion.json"), out}) == kExitInfeasible);
  const Json doc = read_json(out);
  CHECK(doc.at("status") == "Infeasible");
  CHECK_FALSE(doc.contains("S"));
}

TEST_CASE("synthesize command certifies the rotation pair with the disk") {
  const std::string out = tmp_path("synth_rot.json");
  REQUIRE(cmd_synthesize({data_path("rotation_pair.json"), out}) == kExitOk);
  const Json doc = read_json(out);
  CHECK(doc.at("status") == "Optimal");
  REQUIRE(doc.at("Q").size() == 1);
  const SymmetricMatrix Q = symmetric_from_json(doc.at("Q")[0]);
  CHECK(Q.approx_equal(SymmetricMatrix::identity(2), 1e-5));
  CHECK(doc.at("verification").at("passed") == true);
}

TEST_CASE("synthesize command rejects the contraction expansion pair") {
  const std::string out = tmp_path("synth_sw.json");
  CHECK(cmd_synthesize({data_path("switched_infeasible.json"), out}) ==
        kExitInfeasible);
  CHECK(read_json(out).at("status") == "Infeasible");
}

TEST_CASE("check command verdicts drive the exit code") {
  const Json disk = read_json(data_path("unit_disk.json"));
  const Json box = to_json(HPolyhedron::box(2, 2.0));
  const Json rot = {{"A", to_json(mat({{0.8660254037844386, -0.5},
                                       {0.5, 0.8660254037844386}}))},
                    {"B", Json::parse("[[],[]]")},
                    {"X", box}};

  const std::string good = write_tmp("check_good.json",
                                     {{"schema", kSchemaTag},
                                      {"type", "check"},
                                      {"system", rot},
                                      {"set", disk},
                                      {"samples", 60}});
  const std::string out = tmp_path("check_good_out.json");
  CHECK(cmd_check({good, out}) == kExitOk);
  Json rep = read_json(out);
  CHECK(rep.at("type") == "check");
  CHECK(rep.at("passed") == true);
  CHECK(rep.at("subset_of_X") == true);
  CHECK(rep.at("samples") == 60);

  // Sample count from the command line wins over the document.
  CheckArgs args{good, out};
  args.samples = 17;
  CHECK(cmd_check(args) == kExitOk);
  CHECK(read_json(out).at("samples") == 17);

  const Json expand = {{"A", to_json(mat({{2.0, 0.0}, {0.0, 2.0}}))},
                       {"B", Json::parse("[[],[]]")},
                       {"X", box}};
  const std::string bad = write_tmp("check_bad.json", {{"schema", kSchemaTag},
                                                       {"type", "check"},
                                                       {"system", expand},
                                                       {"set", disk}});
  const std::string out_bad = tmp_path("check_bad_out.json");
  CHECK(cmd_check({bad, out_bad}) == kExitError);
  rep = read_json(out_bad);
  CHECK(rep.at("passed") == false);
  CHECK(rep.at("primal_worst").get<double>() > 1e-3);
}

TEST_CASE("plot command samples boundaries exactly") {
  const std::string out = tmp_path("plot_disk.json");
  PlotArgs args{{data_path("unit_disk.json")}, out, "json", 4};
  REQUIRE(cmd_plot(args) == kExitOk);
  Json doc = read_json(out);
  CHECK(doc.at("type") == "plot");
  REQUIRE(doc.at("curves").size() == 1);
  CHECK(doc.at("curves")[0].at("label") == "set");
  const Json& pts = doc.at("curves")[0].at("points");
  REQUIRE(pts.size() == 4);
  const double want[4][2] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  for (int k = 0; k < 4; ++k) {
    CHECK(pts[k][0].get<double>() == doctest::Approx(want[k][0]).epsilon(1e-9));
    CHECK(pts[k][1].get<double>() == doctest::Approx(want[k][1]).epsilon(1e-9));
  }

  // Two documents overlay to two curves; the five piece boundary passes
  // through (1, 1) at 45 degrees and (1, -1)/sqrt(3) at 315 degrees.
  PlotArgs both{{data_path("unit_disk.json"), data_path("five_piece_set.json")},
                out,
                "json",
                8};
  REQUIRE(cmd_plot(both) == kExitOk);
  doc = read_json(out);
  REQUIRE(doc.at("curves").size() == 2);
  const Json& five = doc.at("curves")[1].at("points");
  REQUIRE(five.size() == 8);
  CHECK(five[1][0].get<double>() == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(five[1][1].get<double>() == doctest::Approx(1.0).epsilon(1e-9));
  const double s = 1.0 / std::sqrt(3.0);
  CHECK(five[7][0].get<double>() == doctest::Approx(s).epsilon(1e-9));
  CHECK(five[7][1].get<double>() == doctest::Approx(-s).epsilon(1e-9));

  // Sup norm ball: the gauge of the box's set representation.
  const std::string square =
      write_tmp("plot_square.json", to_json(from_polytope(HPolyhedron::box(2, 1.0))));
  REQUIRE(cmd_plot({{square}, out, "json", 8}) == kExitOk);
  const Json square_doc = read_json(out);
  const Json& sq = square_doc.at("curves")[0].at("points");
  CHECK(sq[0][0].get<double>() == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(sq[1][0].get<double>() == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(sq[1][1].get<double>() == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("plot command renders layered svg documents") {
  const std::string synth_out = tmp_path("plot_synth_result.json");
  REQUIRE(cmd_synthesize({data_path("double_integrator_quadrants.json"),
                          synth_out}) == kExitOk);
  const std::string svg_path = tmp_path("plot_synth.svg");
  REQUIRE(cmd_plot({{synth_out}, svg_path, "svg", 64}) == kExitOk);
  const std::string svg = read_file(svg_path);
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(svg.find("version=\"1.1\"") != std::string::npos);
  CHECK(svg.find("</svg>") != std::string::npos);
  CHECK(count_occurrences(svg, "<polygon") == 2);
  CHECK(svg.find("synthesized") != std::string::npos);

  const std::string via_out = tmp_path("plot_via_result.json");
  REQUIRE(cmd_viability({data_path("double_integrator_quadrants.json"),
                         via_out}) == kExitOk);
  const std::string via_svg = tmp_path("plot_via.svg");
  REQUIRE(cmd_plot({{via_out}, via_svg, "svg", 64}) == kExitOk);
  const std::string rendered = read_file(via_svg);
  // Safe set, one intermediate iterate, kernel.
  CHECK(count_occurrences(rendered, "<polygon") == 3);
  CHECK(rendered.find("kernel") != std::string::npos);
}

TEST_CASE("plot command refuses non planar sets") {
  const std::string cube =
      write_tmp("plot_cube.json", to_json(from_polytope(HPolyhedron::box(3, 1.0))));
  CHECK(cmd_plot({{cube}, tmp_path("plot_cube.svg"), "svg", 16}) ==
        kExitNotPlanar);
}

TEST_CASE("bad inputs exit with the generic error code") {
  CHECK(cmd_polar({tmp_path("does_not_exist.json"), tmp_path("x.json")}) ==
        kExitError);
  // Viability needs a single mode.
  CHECK(cmd_viability({data_path("rotation_pair.json"), tmp_path("x.json")}) ==
        kExitError);
  CHECK(cmd_plot({{data_path("unit_disk.json")}, tmp_path("x.png"), "png", 8}) ==
        kExitError);
  std::ofstream(tmp_path("garbage.json")) << "not json {";
  CHECK(cmd_polar({tmp_path("garbage.json"), tmp_path("x.json")}) == kExitError);
  const std::string unmarked =
      write_tmp("check_unmarked.json", {{"system", Json::object()}});
  CHECK(cmd_check({unmarked, tmp_path("x.json")}) == kExitError);
}

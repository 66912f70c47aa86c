#include "invkit/plot.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "invkit/errors.hpp"

namespace invkit {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

VectorXd direction(double theta) {
  VectorXd d(2);
  d << std::cos(theta), std::sin(theta);
  return d;
}

template <typename Gauge>
std::vector<VectorXd> sample_boundary(int n_samples, Gauge&& gauge) {
  if (n_samples < 3)
    fail(ErrorCode::InvalidArgument, "boundary_polyline: need at least 3 samples");
  std::vector<VectorXd> out;
  out.reserve(n_samples);
  for (int k = 0; k < n_samples; ++k) {
    const VectorXd d = direction(2.0 * std::numbers::pi * k / n_samples);
    const double g = gauge(d);
    if (g <= 1e-12) continue;  // unbounded direction, boundary at infinity
    out.push_back(g == kInf ? VectorXd(VectorXd::Zero(2)) : VectorXd(d / g));
  }
  return out;
}

struct Style {
  const char* stroke;
  double width;
  double dash_on = 0.0;  // 0 draws solid
  double dash_off = 0.0;
};

// Label-driven styling: the overlay reads as constraints (gray), iterate
// history (thin dashed), kernel (blue) and synthesized set (red).
Style style_for(const std::string& label, int index) {
  if (label == "safe set") return {"#888888", 1.5, 6.0, 3.0};
  if (label.rfind("iterate", 0) == 0) return {"#99bbdd", 0.8, 2.0, 2.0};
  if (label == "kernel") return {"#1f77b4", 1.5};
  if (label == "synthesized") return {"#d62728", 1.5};
  static const char* palette[] = {"#2ca02c", "#9467bd", "#ff7f0e", "#17becf"};
  return {palette[index % 4], 1.2};
}

}  // namespace

std::vector<VectorXd> boundary_polyline(const PiecewiseSemiEllipsoid& S,
                                        int n_samples) {
  if (S.ambient_dim() != 2)
    fail(ErrorCode::DimensionMismatch, "boundary_polyline: set must be planar");
  return sample_boundary(n_samples, [&](const VectorXd& d) { return S.gauge(d); });
}

std::vector<VectorXd> boundary_polyline(const HPolyhedron& P, int n_samples) {
  if (P.ambient_dim() != 2)
    fail(ErrorCode::DimensionMismatch, "boundary_polyline: set must be planar");
  const HPolyhedron C = P.canonicalized();
  return sample_boundary(n_samples, [&](const VectorXd& d) {
    // gauge of a polytope with the origin interior: max_i a_i^T d / b_i
    double g = 0.0;
    for (int i = 0; i < C.num_rows(); ++i) {
      if (C.b()[i] <= 0.0)
        fail(ErrorCode::OriginNotContained,
             "boundary_polyline: polytope needs the origin in its interior");
      g = std::max(g, C.A().row(i).dot(d) / C.b()[i]);
    }
    return g;
  });
}

std::string render_svg(const std::vector<Curve>& curves) {
  double lo = -1.0, hi = 1.0;
  for (const Curve& c : curves)
    for (const VectorXd& p : c.points) {
      lo = std::min({lo, p[0], p[1]});
      hi = std::max({hi, p[0], p[1]});
    }
  const double margin = 0.05 * (hi - lo);
  lo -= margin;
  hi += margin;
  const double span = hi - lo;

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" "
      << "width=\"480\" height=\"480\" viewBox=\"" << lo << " " << lo << " "
      << span << " " << span << "\">\n";
  // flip to mathematical orientation inside a group
  svg << "  <g transform=\"scale(1,-1) translate(0," << -(lo + hi) << ")\">\n";
  int index = 0;
  for (const Curve& c : curves) {
    const Style st = style_for(c.label, index++);
    svg << "    <polygon points=\"";
    for (size_t k = 0; k < c.points.size(); ++k) {
      if (k) svg << " ";
      svg << c.points[k][0] << "," << c.points[k][1];
    }
    svg << "\" fill=\"none\" stroke=\"" << st.stroke << "\" stroke-width=\""
        << st.width * span / 100.0 << "\"";
    if (st.dash_on > 0.0)
      svg << " stroke-dasharray=\"" << st.dash_on * span / 100.0 << ","
          << st.dash_off * span / 100.0 << "\"";
    svg << "><title>" << c.label << "</title></polygon>\n";
  }
  svg << "  </g>\n</svg>\n";
  return svg.str();
}

Json curves_to_json(const std::vector<Curve>& curves) {
  Json arr = Json::array();
  for (const Curve& c : curves) {
    Json pts = Json::array();
    for (const VectorXd& p : c.points) pts.push_back({p[0], p[1]});
    arr.push_back({{"label", c.label}, {"points", pts}});
  }
  return {{"schema", kSchemaTag}, {"type", "plot"}, {"curves", arr}};
}

}  // namespace invkit

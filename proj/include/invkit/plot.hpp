#pragma once

#include <string>
#include <vector>

#include "invkit/json_io.hpp"
#include "invkit/polyhedra.hpp"
#include "invkit/pwse.hpp"

namespace invkit {

/// Closed boundary polyline of a planar set, labeled for styling.
struct Curve {
  std::string label;
  std::vector<VectorXd> points;
};

/// Boundary samples x(theta) = d(theta) / gauge(S, d(theta)) over n_samples
/// equally spaced angles starting at theta = 0. Directions with zero gauge
/// (unbounded) are skipped; infinite gauge collapses to the origin.
std::vector<VectorXd> boundary_polyline(const PiecewiseSemiEllipsoid& S,
                                        int n_samples);
std::vector<VectorXd> boundary_polyline(const HPolyhedron& P, int n_samples);

/// SVG 1.1 document with one polygon per curve, distinct stroke styles,
/// y axis pointing up.
std::string render_svg(const std::vector<Curve>& curves);

Json curves_to_json(const std::vector<Curve>& curves);

}  // namespace invkit

#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "invkit/linalg.hpp"

namespace invkit {

/// Polyhedron in halfspace form, rows a_i^T x <= b_i. Cones have all b = 0.
/// Values are immutable; every operation returns a new polyhedron.
class HPolyhedron {
 public:
  HPolyhedron(MatrixXd A, VectorXd b);
  static HPolyhedron cone(MatrixXd A);
  static HPolyhedron box(int n, double radius);
  static HPolyhedron full_space(int n);

  int ambient_dim() const { return n_; }
  int num_rows() const { return static_cast<int>(A_.rows()); }
  const MatrixXd& A() const { return A_; }
  const VectorXd& b() const { return b_; }
  bool is_cone(double tol = 1e-12) const;

  /// Unit-norm rows, duplicates merged keeping the tighter offset; trivial
  /// rows (zero normal, nonnegative offset) dropped.
  HPolyhedron canonicalized(double tol = 1e-9) const;
  bool contains(const VectorXd& x, double tol = 1e-9) const;
  bool is_empty() const;
  HPolyhedron intersect(const HPolyhedron& other) const;
  HPolyhedron cross(const HPolyhedron& other) const;  // cartesian product
  /// {x : Mx in P}.
  HPolyhedron preimage(const MatrixXd& M) const;
  /// Fourier-Motzkin projection dropping the last coordinate; redundancy
  /// removed unless the projection is empty.
  HPolyhedron eliminate_last() const;
  HPolyhedron eliminate_last(int count) const;
  HPolyhedron remove_redundancy(double tol = 1e-9) const;
  /// Dimension of the affine hull; -1 for the empty set.
  int dim() const;
  std::optional<VectorXd> relative_interior_point() const;
  /// sup y^T x over P; +inf if unbounded in that direction, -inf if empty.
  double support_lp(const VectorXd& y) const;

 private:
  int n_;
  MatrixXd A_;
  VectorXd b_;
  struct AffineHull {
    bool empty;
    std::vector<int> implicit_rows;
    VectorXd relint;
    int dim;
  };
  AffineHull affine_hull() const;
};

struct VPolyhedron {
  int n = 0;
  std::vector<VectorXd> vertices;
  std::vector<VectorXd> rays;
};

VPolyhedron to_vrep(const HPolyhedron& P);
HPolyhedron to_hrep(const VPolyhedron& V);
/// Vertices of a bounded polyhedron; UnboundedNonCone if rays exist.
std::vector<VectorXd> vertices_of(const HPolyhedron& P);
/// Generators of a cone: extreme rays, with lineality emitted as +/- pairs.
std::vector<VectorXd> cone_generators(const HPolyhedron& cone);
HPolyhedron polar_polytope(const HPolyhedron& P);

/// Conic partition of R^n. neighbors holds pairs (i, j) with i < j whose
/// intersection has dimension n-1; normals[k] is the unit normal of
/// aff(P_i cap P_j) pointing toward P_i (the first index of the pair).
struct ConicPartition {
  std::vector<HPolyhedron> pieces;
  std::vector<std::pair<int, int>> neighbors;
  std::vector<VectorXd> normals;
  bool covers = true;

  int ambient_dim() const;
  /// Unit normal of the (i, j) interface pointing toward piece i.
  VectorXd normal_toward(int i, int j) const;
  /// First piece containing x at the given tolerance; -1 if none.
  int find_piece(const VectorXd& x, double tol = 1e-10) const;
};

/// Validates the partition axioms and computes the neighbor structure.
/// With allow_partial, a union that fails to cover R^n is accepted and
/// marked covers = false instead of raising NotCovering.
ConicPartition build_partition(std::vector<HPolyhedron> cones,
                               bool allow_partial = false);

/// One cone per facet of a polytope with the origin interior: the conic
/// hull of that facet's vertices.
std::vector<HPolyhedron> facet_cones(const HPolyhedron& P);

}  // namespace invkit

#pragma once

#include <utility>
#include <vector>

#include "invkit/linalg.hpp"
#include "invkit/polyhedra.hpp"
#include "invkit/pwse.hpp"

namespace invkit {

/// Discrete-time system x+ = Ax + Bu constrained to a bounded polytope X
/// with the origin in its interior. B may have zero columns (autonomous).
struct LinearControlSystem {
  MatrixXd A;
  MatrixXd B;
  HPolyhedron X;

  LinearControlSystem(MatrixXd A_in, MatrixXd B_in, HPolyhedron X_in);

  int state_dim() const { return static_cast<int>(A.rows()); }
  int input_dim() const { return static_cast<int>(B.cols()); }
};

/// Implicit system E x+ = C x with E, C of size r x n. Rows of E need not
/// span R^n; r < n leaves part of the successor state unconstrained.
struct AlgebraicSystem {
  MatrixXd E;
  MatrixXd C;
  HPolyhedron X;

  AlgebraicSystem(MatrixXd E_in, MatrixXd C_in, HPolyhedron X_in);

  int state_dim() const { return static_cast<int>(E.cols()); }
  int num_rows() const { return static_cast<int>(E.rows()); }
};

/// x+ = A_s x + B_s u where s follows an arbitrary switching signal over a
/// finite mode set. Input widths may differ across modes.
struct SwitchedControlSystem {
  std::vector<std::pair<MatrixXd, MatrixXd>> modes;
  HPolyhedron X;

  SwitchedControlSystem(std::vector<std::pair<MatrixXd, MatrixXd>> modes_in,
                        HPolyhedron X_in);

  int state_dim() const { return X.ambient_dim(); }
  int num_modes() const { return static_cast<int>(modes.size()); }
  LinearControlSystem mode_system(int s) const;
};

/// Eliminates the input: with W an orthonormal basis of Image(B)^perp the
/// control system is equivalent to W^T x+ = W^T A x, so E = W^T and
/// C = W^T A with r = n - rank(B) rows. B = 0 gives E = I; full actuation
/// gives r = 0 and every set is invariant.
AlgebraicSystem reduce_to_algebraic(const LinearControlSystem& sys);

/// Ellipsoid {x : x^T Q x <= 1} is invariant under x+ = Ax iff
/// Q - A^T Q A is positive semidefinite.
bool is_invariant_autonomous_ellipsoid(const MatrixXd& A,
                                       const SymmetricMatrix& Q);

/// One step of the viability iteration: {x in X : exists u, Ax + Bu in P},
/// computed by eliminating the input coordinates from the preimage and
/// removing redundant rows. Throws EmptyPolyhedron when no state survives.
HPolyhedron viability_step(const LinearControlSystem& sys,
                           const HPolyhedron& P);

struct ViabilityResult {
  HPolyhedron kernel;
  bool converged = false;
  /// Distinct iterates starting from X; the repeated fixed point is not
  /// appended, so a run converging at the first step stores X alone.
  std::vector<HPolyhedron> iterates;
};

/// Iterates viability_step from P0 = X until two consecutive iterates agree
/// (mutual containment within tol on the facet normals) or max_iter steps.
/// The limit need not be polyhedral, so converged = false is a normal
/// outcome, not an error.
ViabilityResult viability_kernel(const LinearControlSystem& sys, int max_iter,
                                 double tol = 1e-8);

struct InvarianceReport {
  bool passed = false;
  bool subset_of_X = false;
  /// max over boundary samples x of (min_u gauge(S, Ax + Bu)) - 1.
  double primal_worst = 0.0;
  /// max over direction samples y of gauge(S*, C^T y) - gauge(S*, E^T y)
  /// for the reduced algebraic system; infinite <= infinite counts as 0.
  double dual_worst = 0.0;
};

/// Two independent control-invariance tests for a piecewise semi-ellipsoid:
/// a primal test minimizing the gauge of the successor over the input at
/// sampled boundary points, and a dual test on the polar gauge along
/// sampled row-space directions. Report-based; never throws on failure.
InvarianceReport check_control_invariance(const LinearControlSystem& sys,
                                          const PiecewiseSemiEllipsoid& S,
                                          int n_samples = 200);

}  // namespace invkit

#pragma once

#include <optional>
#include <vector>

#include "invkit/certify.hpp"
#include "invkit/conic_program.hpp"
#include "invkit/pwse.hpp"
#include "invkit/solver.hpp"
#include "invkit/systems.hpp"

namespace invkit {

/// Synthesis instance: a control system (one or several modes), the conic
/// partition carrying one quadratic form per piece, and the polytope the
/// volume heuristic integrates over.
struct SynthesisProblem {
  SwitchedControlSystem system;
  ConicPartition partition;
  HPolyhedron objective_polytope;

  SynthesisProblem(LinearControlSystem sys, ConicPartition partition_in,
                   HPolyhedron objective_in);
  SynthesisProblem(SwitchedControlSystem sys, ConicPartition partition_in,
                   HPolyhedron objective_in);
};

/// Assembled program plus the handles needed to read a solution back.
struct AssembledProgram {
  ConicProgram program;
  std::vector<int> Q_vars;                    // PSD matrix id per piece
  std::vector<std::vector<int>> u_vars;       // per neighbor pair, n scalars
  std::vector<CopositivityBlock> invariance;  // emitted (mode, i, j) blocks
  std::vector<SymmetricMatrix> moments;       // objective coefficient per Q_i
};

/// Builds the semidefinite program: per-piece PSD variables, one
/// copositivity block per mode and ordered piece pair whose constraint cone
/// is nontrivial, unit bounds at the polar state-constraint vertices,
/// rank-two continuity equalities and polar-cone convexity rows, with the
/// integrated piecewise quadratic as the objective. Throws
/// EmptyIntersectionEverywhere when a mode needs invariance constraints but
/// every candidate cone degenerates to the origin.
AssembledProgram assemble(const SynthesisProblem& prob);

/// The switched assembly; a single mode yields the same program as
/// assemble.
AssembledProgram assemble_switched(const SynthesisProblem& prob);

/// Exact second moments: the coefficient matrix of Q_i in the integral of
/// x^T Q_i x over polytope intersected with piece i, via a recursive fan
/// triangulation and the closed-form simplex formula.
std::vector<SymmetricMatrix> piece_second_moments(const HPolyhedron& polytope,
                                                  const ConicPartition& partition);

/// Linear expression for the integral of the piecewise quadratic given by
/// Q_exprs over the polytope.
LinExpr integrate_quadratic(const std::vector<SymExpr>& Q_exprs,
                            const HPolyhedron& polytope,
                            const ConicPartition& partition);

struct SynthesisResult {
  SolveStatus status = SolveStatus::NumericalFailure;
  double objective = 0.0;
  /// Solved piecewise set; its gauge is the support function of S.
  std::optional<PiecewiseSemiEllipsoid> polar_side;
  /// The invariant set itself, the polar of polar_side.
  std::optional<PiecewiseSemiEllipsoid> S;
  std::vector<PwseViolation> violations;
  /// Control-invariance verification of S, aggregated across modes.
  std::optional<InvarianceReport> check;
};

/// Assembles, solves and extracts. Q = 0 satisfies every constraint, so an
/// optimum whose objective stays below 1e-6 times the identity moment of
/// the objective polytope is reported as Infeasible: nothing nontrivial is
/// certifiable over this partition at the first copositivity level, which
/// does not prove that no invariant piecewise semi-ellipsoid exists.
SynthesisResult solve(const SynthesisProblem& prob,
                      const SolverBackend& backend = default_solver());

}  // namespace invkit

#pragma once

#include "invkit/conic_program.hpp"

namespace invkit {

struct SolverOptions {
  int max_iterations = 100;
  double tol_feas = 1e-9;
  double tol_gap = 1e-9;
  double tol_infeas = 1e-9;
  // accepted at the iteration cap before declaring NumericalFailure
  double relaxed_feas = 1e-7;
  double relaxed_gap = 1e-6;
  double relaxed_infeas = 1e-7;
  bool verbose = false;
};

/// Homogeneous self-dual interior-point method over the product of a free
/// space, a nonnegative orthant and PSD blocks, with NT scaling and a
/// Mehrotra predictor-corrector. Problem sizes here are small, so the
/// Newton system is assembled densely and LU-factored.
class InteriorPointSolver : public SolverBackend {
 public:
  InteriorPointSolver() = default;
  explicit InteriorPointSolver(SolverOptions opts) : opts_(opts) {}
  SolveResult solve(const ConicProgram& prog) const override;

 private:
  SolverOptions opts_;
};

/// Shared default backend instance.
const SolverBackend& default_solver();

}  // namespace invkit

#pragma once

#include "invkit/conic_program.hpp"
#include "invkit/linalg.hpp"

namespace invkit {

struct LpResult {
  SolveStatus status = SolveStatus::NumericalFailure;
  VectorXd x;
  double objective = 0.0;
};

/// maximize c^T x  subject to  A x <= b,  Aeq x = beq.
LpResult solve_lp(const MatrixXd& A, const VectorXd& b, const VectorXd& c,
                  const MatrixXd& Aeq, const VectorXd& beq);

LpResult solve_lp(const MatrixXd& A, const VectorXd& b, const VectorXd& c);

}  // namespace invkit

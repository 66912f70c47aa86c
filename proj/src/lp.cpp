#include "invkit/lp.hpp"

#include "invkit/errors.hpp"
#include "invkit/solver.hpp"

namespace invkit {

LpResult solve_lp(const MatrixXd& A, const VectorXd& b, const VectorXd& c,
                  const MatrixXd& Aeq, const VectorXd& beq) {
  const int n = static_cast<int>(c.size());
  if ((A.size() > 0 && A.cols() != n) || A.rows() != b.size() ||
      (Aeq.size() > 0 && Aeq.cols() != n) || Aeq.rows() != beq.size())
    fail(ErrorCode::DimensionMismatch, "solve_lp: inconsistent shapes");

  ConicProgram prog;
  std::vector<int> x(n);
  for (int j = 0; j < n; ++j) x[j] = prog.add_scalar(VarKind::Free);

  auto row_expr = [&](const MatrixXd& M, const VectorXd& v, int i) {
    LinExpr e(-v[i]);
    for (int j = 0; j < n; ++j)
      if (M(i, j) != 0.0) e.terms.emplace_back(x[j], M(i, j));
    return e;
  };
  for (int i = 0; i < A.rows(); ++i) prog.add_inequality(row_expr(A, b, i));
  for (int i = 0; i < Aeq.rows(); ++i) prog.add_equality(row_expr(Aeq, beq, i));
  LinExpr obj;
  for (int j = 0; j < n; ++j)
    if (c[j] != 0.0) obj.terms.emplace_back(x[j], c[j]);
  prog.set_objective(obj);

  const SolveResult r = default_solver().solve(prog);
  LpResult out;
  out.status = r.status;
  if (r.status == SolveStatus::Optimal) {
    out.x.resize(n);
    for (int j = 0; j < n; ++j) out.x[j] = r.values[x[j]];
    out.objective = r.objective;
  }
  return out;
}

LpResult solve_lp(const MatrixXd& A, const VectorXd& b, const VectorXd& c) {
  return solve_lp(A, b, c, MatrixXd(0, c.size()), VectorXd(0));
}

}  // namespace invkit

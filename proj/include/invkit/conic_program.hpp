#pragma once

#include <string>
#include <utility>
#include <vector>

#include "invkit/linalg.hpp"

namespace invkit {

/// Solver-agnostic conic program IR: scalar variables (free or nonnegative),
/// PSD matrix variables, affine equalities/inequalities, affine PSD
/// constraint blocks, and a linear objective to maximize.
enum class VarKind { Free, NonNeg, PsdEntry };

struct LinExpr {
  double constant = 0.0;
  std::vector<std::pair<int, double>> terms;  // (scalar var index, coeff)

  LinExpr() = default;
  explicit LinExpr(double c) : constant(c) {}
  static LinExpr variable(int idx, double coeff = 1.0) {
    LinExpr e;
    e.terms.emplace_back(idx, coeff);
    return e;
  }

  LinExpr& operator+=(const LinExpr& o);
  LinExpr& operator-=(const LinExpr& o);
  LinExpr& operator*=(double t);
  LinExpr operator+(const LinExpr& o) const {
    LinExpr r = *this;
    r += o;
    return r;
  }
  LinExpr operator-(const LinExpr& o) const {
    LinExpr r = *this;
    r -= o;
    return r;
  }
  LinExpr scaled(double t) const {
    LinExpr r = *this;
    r *= t;
    return r;
  }
  /// Merges duplicate terms and drops zeros.
  void compress();
  double eval(const std::vector<double>& values) const;
};

/// Symmetric matrix of affine expressions (upper triangle stored).
class SymExpr {
 public:
  explicit SymExpr(int dim);
  int dim() const { return dim_; }
  LinExpr& at(int i, int j);
  const LinExpr& at(int i, int j) const;

  /// A^T X A -style congruence of a matrix of expressions by a constant
  /// matrix: returns M with M(i,j) = sum_kl C(k,i) C(l,j) X(k,l).
  SymExpr congruence(const MatrixXd& C) const;
  SymExpr operator-(const SymExpr& o) const;
  SymExpr operator+(const SymExpr& o) const;
  static SymExpr constant(const SymmetricMatrix& M);

  MatrixXd eval(const std::vector<double>& values) const;

 private:
  int dim_;
  std::vector<LinExpr> upper_;
  int index(int i, int j) const;
};

struct ScalarVarInfo {
  VarKind kind = VarKind::Free;
  std::string name;
  int mat_id = -1;  // for PsdEntry
  int row = -1, col = -1;
};

struct MatrixVarInfo {
  int dim = 0;
  std::string name;
  int first_scalar = 0;  // index of entry (0,0) in the scalar table
};

class ConicProgram {
 public:
  int add_scalar(VarKind kind, std::string name = "");
  int add_psd_matrix(int dim, std::string name = "");
  /// Scalar index of entry (i,j) of matrix variable mat_id.
  int entry(int mat_id, int i, int j) const;
  SymExpr matrix_expr(int mat_id) const;

  void add_equality(LinExpr e);    // e == 0
  void add_inequality(LinExpr e);  // e <= 0
  int add_psd_constraint(SymExpr m);
  void set_objective(LinExpr obj) { objective_ = std::move(obj); }

  int num_scalars() const { return static_cast<int>(scalars_.size()); }
  const std::vector<ScalarVarInfo>& scalars() const { return scalars_; }
  const std::vector<MatrixVarInfo>& matrices() const { return matrices_; }
  const std::vector<LinExpr>& equalities() const { return equalities_; }
  const std::vector<LinExpr>& inequalities() const { return inequalities_; }
  const std::vector<SymExpr>& psd_constraints() const { return psd_constraints_; }
  const LinExpr& objective() const { return objective_; }

 private:
  std::vector<ScalarVarInfo> scalars_;
  std::vector<MatrixVarInfo> matrices_;
  std::vector<LinExpr> equalities_;
  std::vector<LinExpr> inequalities_;
  std::vector<SymExpr> psd_constraints_;
  LinExpr objective_;
};

enum class SolveStatus { Optimal, Infeasible, Unbounded, NumericalFailure };

const char* to_string(SolveStatus s);

struct SolveResult {
  SolveStatus status = SolveStatus::NumericalFailure;
  std::vector<double> values;  // per scalar variable
  double objective = 0.0;
  /// Values of the PSD constraint blocks at the solution (the witnesses).
  std::vector<MatrixXd> psd_constraint_values;
  int iterations = 0;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  double gap = 0.0;

  MatrixXd matrix_value(const ConicProgram& prog, int mat_id) const;
};

/// Backend contract: a conforming solver returns primal-feasible values
/// (residual < 1e-7) with relative objective gap < 1e-6 on feasible
/// programs, and distinguishes Infeasible / Unbounded / NumericalFailure.
class SolverBackend {
 public:
  virtual ~SolverBackend() = default;
  virtual SolveResult solve(const ConicProgram& prog) const = 0;
};

}  // namespace invkit

#include "invkit/conic_program.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "invkit/errors.hpp"

namespace invkit {

LinExpr& LinExpr::operator+=(const LinExpr& o) {
  constant += o.constant;
  terms.insert(terms.end(), o.terms.begin(), o.terms.end());
  return *this;
}

LinExpr& LinExpr::operator-=(const LinExpr& o) {
  constant -= o.constant;
  for (const auto& [idx, c] : o.terms) terms.emplace_back(idx, -c);
  return *this;
}

LinExpr& LinExpr::operator*=(double t) {
  constant *= t;
  for (auto& [idx, c] : terms) c *= t;
  return *this;
}

void LinExpr::compress() {
  std::map<int, double> acc;
  for (const auto& [idx, c] : terms) acc[idx] += c;
  terms.clear();
  for (const auto& [idx, c] : acc)
    if (c != 0.0) terms.emplace_back(idx, c);
}

double LinExpr::eval(const std::vector<double>& values) const {
  double v = constant;
  for (const auto& [idx, c] : terms) v += c * values.at(idx);
  return v;
}

SymExpr::SymExpr(int dim) : dim_(dim), upper_(dim * (dim + 1) / 2) {
  if (dim <= 0) fail(ErrorCode::InvalidArgument, "SymExpr dimension must be positive");
}

int SymExpr::index(int i, int j) const {
  if (i < 0 || j < 0 || i >= dim_ || j >= dim_)
    fail(ErrorCode::InvalidArgument, "SymExpr index out of range");
  if (i > j) std::swap(i, j);
  return i * dim_ - i * (i - 1) / 2 + (j - i);
}

LinExpr& SymExpr::at(int i, int j) { return upper_[index(i, j)]; }
const LinExpr& SymExpr::at(int i, int j) const { return upper_[index(i, j)]; }

SymExpr SymExpr::congruence(const MatrixXd& C) const {
  if (C.rows() != dim_)
    fail(ErrorCode::DimensionMismatch, "congruence: matrix has wrong row count");
  const int m = static_cast<int>(C.cols());
  SymExpr out(m);
  for (int i = 0; i < m; ++i)
    for (int j = i; j < m; ++j) {
      LinExpr e;
      for (int k = 0; k < dim_; ++k)
        for (int l = 0; l < dim_; ++l) {
          const double w = C(k, i) * C(l, j);
          if (w == 0.0) continue;
          e += at(k, l).scaled(w);
        }
      e.compress();
      out.at(i, j) = std::move(e);
    }
  return out;
}

SymExpr SymExpr::operator-(const SymExpr& o) const {
  if (o.dim_ != dim_) fail(ErrorCode::DimensionMismatch, "SymExpr size mismatch");
  SymExpr out(dim_);
  for (size_t k = 0; k < upper_.size(); ++k) out.upper_[k] = upper_[k] - o.upper_[k];
  return out;
}

SymExpr SymExpr::operator+(const SymExpr& o) const {
  if (o.dim_ != dim_) fail(ErrorCode::DimensionMismatch, "SymExpr size mismatch");
  SymExpr out(dim_);
  for (size_t k = 0; k < upper_.size(); ++k) out.upper_[k] = upper_[k] + o.upper_[k];
  return out;
}

SymExpr SymExpr::constant(const SymmetricMatrix& M) {
  SymExpr out(M.dim());
  for (int i = 0; i < M.dim(); ++i)
    for (int j = i; j < M.dim(); ++j) out.at(i, j) = LinExpr(M(i, j));
  return out;
}

MatrixXd SymExpr::eval(const std::vector<double>& values) const {
  MatrixXd M(dim_, dim_);
  for (int i = 0; i < dim_; ++i)
    for (int j = i; j < dim_; ++j) M(i, j) = M(j, i) = at(i, j).eval(values);
  return M;
}

int ConicProgram::add_scalar(VarKind kind, std::string name) {
  if (kind == VarKind::PsdEntry)
    fail(ErrorCode::InvalidArgument, "PSD entries are created via add_psd_matrix");
  ScalarVarInfo info;
  info.kind = kind;
  info.name = std::move(name);
  scalars_.push_back(std::move(info));
  return static_cast<int>(scalars_.size()) - 1;
}

int ConicProgram::add_psd_matrix(int dim, std::string name) {
  if (dim <= 0) fail(ErrorCode::InvalidArgument, "PSD variable dimension must be positive");
  MatrixVarInfo m;
  m.dim = dim;
  m.name = name;
  m.first_scalar = static_cast<int>(scalars_.size());
  const int mat_id = static_cast<int>(matrices_.size());
  matrices_.push_back(m);
  for (int i = 0; i < dim; ++i)
    for (int j = i; j < dim; ++j) {
      ScalarVarInfo info;
      info.kind = VarKind::PsdEntry;
      info.name = name.empty() ? "" : name + "[" + std::to_string(i) + "," + std::to_string(j) + "]";
      info.mat_id = mat_id;
      info.row = i;
      info.col = j;
      scalars_.push_back(std::move(info));
    }
  return mat_id;
}

int ConicProgram::entry(int mat_id, int i, int j) const {
  const MatrixVarInfo& m = matrices_.at(mat_id);
  if (i < 0 || j < 0 || i >= m.dim || j >= m.dim)
    fail(ErrorCode::InvalidArgument, "matrix entry index out of range");
  if (i > j) std::swap(i, j);
  return m.first_scalar + i * m.dim - i * (i - 1) / 2 + (j - i);
}

SymExpr ConicProgram::matrix_expr(int mat_id) const {
  const MatrixVarInfo& m = matrices_.at(mat_id);
  SymExpr e(m.dim);
  for (int i = 0; i < m.dim; ++i)
    for (int j = i; j < m.dim; ++j) e.at(i, j) = LinExpr::variable(entry(mat_id, i, j));
  return e;
}

void ConicProgram::add_equality(LinExpr e) {
  e.compress();
  equalities_.push_back(std::move(e));
}

void ConicProgram::add_inequality(LinExpr e) {
  e.compress();
  inequalities_.push_back(std::move(e));
}

int ConicProgram::add_psd_constraint(SymExpr m) {
  psd_constraints_.push_back(std::move(m));
  return static_cast<int>(psd_constraints_.size()) - 1;
}

const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Optimal: return "Optimal";
    case SolveStatus::Infeasible: return "Infeasible";
    case SolveStatus::Unbounded: return "Unbounded";
    case SolveStatus::NumericalFailure: return "NumericalFailure";
  }
  return "?";
}

MatrixXd SolveResult::matrix_value(const ConicProgram& prog, int mat_id) const {
  const int d = prog.matrices().at(mat_id).dim;
  MatrixXd M(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = i; j < d; ++j) M(i, j) = M(j, i) = values.at(prog.entry(mat_id, i, j));
  return M;
}

}  // namespace invkit

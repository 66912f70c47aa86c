#include "invkit/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace invkit {

SymmetricMatrix::SymmetricMatrix(int n) : n_(n) {
  if (n < 1) fail(ErrorCode::InvalidArgument, "SymmetricMatrix: n must be >= 1");
  upper_.assign(static_cast<size_t>(n) * (n + 1) / 2, 0.0);
}

int SymmetricMatrix::index(int i, int j) const {
  if (i > j) std::swap(i, j);
  // row-major upper triangle: row i starts after i full rows
  return i * n_ - i * (i - 1) / 2 + (j - i);
}

SymmetricMatrix SymmetricMatrix::from_dense(const MatrixXd& M) {
  if (M.rows() != M.cols())
    fail(ErrorCode::InvalidArgument, "SymmetricMatrix::from_dense: square matrix required");
  SymmetricMatrix S(static_cast<int>(M.rows()));
  for (int i = 0; i < S.n_; ++i)
    for (int j = i; j < S.n_; ++j) S.set(i, j, 0.5 * (M(i, j) + M(j, i)));
  return S;
}

SymmetricMatrix SymmetricMatrix::identity(int n) {
  SymmetricMatrix S(n);
  for (int i = 0; i < n; ++i) S.set(i, i, 1.0);
  return S;
}

SymmetricMatrix SymmetricMatrix::zero(int n) { return SymmetricMatrix(n); }

SymmetricMatrix SymmetricMatrix::outer(const VectorXd& a) {
  SymmetricMatrix S(static_cast<int>(a.size()));
  for (int i = 0; i < S.n_; ++i)
    for (int j = i; j < S.n_; ++j) S.set(i, j, a(i) * a(j));
  return S;
}

double SymmetricMatrix::operator()(int i, int j) const { return upper_[index(i, j)]; }

void SymmetricMatrix::set(int i, int j, double v) { upper_[index(i, j)] = v; }

MatrixXd SymmetricMatrix::dense() const {
  MatrixXd M(n_, n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) M(i, j) = (*this)(i, j);
  return M;
}

double SymmetricMatrix::quad(const VectorXd& x) const {
  if (x.size() != n_) fail(ErrorCode::DimensionMismatch, "quad: vector size mismatch");
  double acc = 0.0;
  for (int i = 0; i < n_; ++i) {
    acc += (*this)(i, i) * x(i) * x(i);
    for (int j = i + 1; j < n_; ++j) acc += 2.0 * (*this)(i, j) * x(i) * x(j);
  }
  return acc;
}

double SymmetricMatrix::norm() const { return dense().norm(); }

bool SymmetricMatrix::approx_equal(const SymmetricMatrix& other, double tol) const {
  if (other.n_ != n_) return false;
  return (dense() - other.dense()).cwiseAbs().maxCoeff() <= tol;
}

SymmetricMatrix SymmetricMatrix::operator+(const SymmetricMatrix& o) const {
  if (o.n_ != n_) fail(ErrorCode::DimensionMismatch, "SymmetricMatrix::operator+");
  SymmetricMatrix S(n_);
  for (size_t k = 0; k < upper_.size(); ++k) S.upper_[k] = upper_[k] + o.upper_[k];
  return S;
}

SymmetricMatrix SymmetricMatrix::operator-(const SymmetricMatrix& o) const {
  if (o.n_ != n_) fail(ErrorCode::DimensionMismatch, "SymmetricMatrix::operator-");
  SymmetricMatrix S(n_);
  for (size_t k = 0; k < upper_.size(); ++k) S.upper_[k] = upper_[k] - o.upper_[k];
  return S;
}

SymmetricMatrix SymmetricMatrix::scaled(double t) const {
  SymmetricMatrix S(n_);
  for (size_t k = 0; k < upper_.size(); ++k) S.upper_[k] = t * upper_[k];
  return S;
}

EigResult eig_sym(const SymmetricMatrix& M) {
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(M.dense());
  return {es.eigenvalues(), es.eigenvectors()};
}

bool is_psd(const SymmetricMatrix& M, double tol) {
  EigResult e = eig_sym(M);
  double scale = std::max(1.0, M.norm());
  return e.eigenvalues.minCoeff() >= -tol * scale;
}

SymmetricMatrix pseudoinverse(const SymmetricMatrix& M, double rank_tol) {
  if (!is_psd(M, 1e-9))
    fail(ErrorCode::InvalidArgument, "pseudoinverse: matrix is not PSD");
  EigResult e = eig_sym(M);
  double lmax = e.eigenvalues.maxCoeff();
  double cut = rank_tol * std::max(lmax, 0.0);
  MatrixXd P = MatrixXd::Zero(M.dim(), M.dim());
  for (int k = 0; k < M.dim(); ++k) {
    double l = e.eigenvalues(k);
    if (l > cut && l > 0.0)
      P += e.eigenvectors.col(k) * e.eigenvectors.col(k).transpose() / l;
  }
  return SymmetricMatrix::from_dense(P);
}

Subspace::Subspace(int ambient_dim, MatrixXd orthonormal_basis)
    : n_(ambient_dim), basis_(std::move(orthonormal_basis)) {
  if (basis_.size() == 0) basis_.resize(n_, 0);
  if (basis_.rows() != n_)
    fail(ErrorCode::DimensionMismatch, "Subspace: basis rows != ambient dim");
  MatrixXd G = basis_.transpose() * basis_;
  if (basis_.cols() > 0 &&
      (G - MatrixXd::Identity(G.rows(), G.cols())).cwiseAbs().maxCoeff() > 1e-10)
    fail(ErrorCode::InvalidArgument, "Subspace: basis not orthonormal");
}

Subspace Subspace::span_of(const MatrixXd& A, double rank_tol) {
  int n = static_cast<int>(A.rows());
  if (A.cols() == 0) return zero(n);
  Eigen::JacobiSVD<MatrixXd> svd(A, Eigen::ComputeThinU);
  double smax = svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
  int r = 0;
  for (int k = 0; k < svd.singularValues().size(); ++k)
    if (svd.singularValues()(k) > rank_tol * std::max(1.0, smax)) ++r;
  return Subspace(n, svd.matrixU().leftCols(r));
}

Subspace Subspace::full(int n) { return Subspace(n, MatrixXd::Identity(n, n)); }

Subspace Subspace::zero(int n) { return Subspace(n, MatrixXd(n, 0)); }

SymmetricMatrix projection_matrix(const Subspace& S) {
  MatrixXd P = S.basis() * S.basis().transpose();
  if (S.dim() == 0) P = MatrixXd::Zero(S.ambient_dim(), S.ambient_dim());
  return SymmetricMatrix::from_dense(P);
}

Subspace orthogonal_complement(const Subspace& S) {
  int n = S.ambient_dim();
  if (S.dim() == 0) return Subspace::full(n);
  if (S.dim() == n) return Subspace::zero(n);
  // columns of the full eigenbasis of P = BB^T with eigenvalue ~0
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(S.basis() * S.basis().transpose());
  MatrixXd comp(n, n - S.dim());
  int c = 0;
  for (int k = 0; k < n; ++k)
    if (es.eigenvalues()(k) < 0.5) comp.col(c++) = es.eigenvectors().col(k);
  return Subspace(n, comp.leftCols(c));
}

}  // namespace invkit

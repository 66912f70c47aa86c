#pragma once

#include <Eigen/Dense>
#include <vector>

#include "invkit/errors.hpp"

namespace invkit {

using Eigen::MatrixXd;
using Eigen::VectorXd;

/// Dense symmetric matrix with structurally symmetric (upper triangle)
/// storage. Dimensions stay tiny here (state dimensions of a handful), so
/// everything is dense and eager.
class SymmetricMatrix {
 public:
  explicit SymmetricMatrix(int n);

  /// Symmetrizes (M + M^T)/2 if the input is only symmetric up to roundoff.
  static SymmetricMatrix from_dense(const MatrixXd& M);
  static SymmetricMatrix identity(int n);
  static SymmetricMatrix zero(int n);
  /// Rank-one a a^T.
  static SymmetricMatrix outer(const VectorXd& a);

  int dim() const { return n_; }
  double operator()(int i, int j) const;
  void set(int i, int j, double v);

  MatrixXd dense() const;
  VectorXd apply(const VectorXd& x) const { return dense() * x; }
  double quad(const VectorXd& x) const;  // x^T M x

  double norm() const;  // Frobenius
  bool approx_equal(const SymmetricMatrix& other, double tol) const;

  SymmetricMatrix operator+(const SymmetricMatrix& o) const;
  SymmetricMatrix operator-(const SymmetricMatrix& o) const;
  SymmetricMatrix scaled(double t) const;

 private:
  int n_;
  std::vector<double> upper_;  // row-major upper triangle, row i from diag
  int index(int i, int j) const;
};

struct EigResult {
  VectorXd eigenvalues;   // ascending
  MatrixXd eigenvectors;  // orthonormal columns, M = V diag(l) V^T
};

/// Symmetric eigendecomposition (tridiagonal QR underneath).
EigResult eig_sym(const SymmetricMatrix& M);

/// True iff min eigenvalue >= -tol * max(1, ||M||).
bool is_psd(const SymmetricMatrix& M, double tol = 1e-9);

/// Moore-Penrose pseudoinverse of a PSD matrix via eigendecomposition;
/// eigenvalues below rank_tol * lambda_max count as zero. Throws on
/// non-PSD input (caller bug, not data).
SymmetricMatrix pseudoinverse(const SymmetricMatrix& M, double rank_tol = 1e-9);

/// Linear subspace of R^n held as an orthonormal basis (possibly empty).
class Subspace {
 public:
  /// Basis columns must already be orthonormal (checked at 1e-10).
  Subspace(int ambient_dim, MatrixXd orthonormal_basis);

  /// Orthonormalizes the column span of A; columns below rank_tol are
  /// dropped.
  static Subspace span_of(const MatrixXd& A, double rank_tol = 1e-10);
  static Subspace full(int n);
  static Subspace zero(int n);

  int ambient_dim() const { return n_; }
  int dim() const { return static_cast<int>(basis_.cols()); }
  const MatrixXd& basis() const { return basis_; }

 private:
  int n_;
  MatrixXd basis_;  // n x dim, orthonormal columns
};

/// P = sum b b^T over the basis; P^2 = P, P^T = P.
SymmetricMatrix projection_matrix(const Subspace& S);

Subspace orthogonal_complement(const Subspace& S);

}  // namespace invkit

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "invkit/errors.hpp"
#include "invkit/linalg.hpp"

using namespace invkit;

namespace {

MatrixXd mat2(double a, double b, double c, double d) {
  MatrixXd M(2, 2);
  M << a, b, c, d;
  return M;
}

SymmetricMatrix random_psd(std::mt19937& rng, int n, int rank) {
  std::normal_distribution<double> g;
  MatrixXd B = MatrixXd::Zero(n, rank);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < rank; ++j) B(i, j) = g(rng);
  return SymmetricMatrix::from_dense(B * B.transpose());
}

}  // namespace

TEST_CASE("packed storage round trip") {
  std::mt19937 rng(7);
  std::normal_distribution<double> g;
  for (int n = 1; n <= 5; ++n) {
    MatrixXd M(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) M(i, j) = g(rng);
    const SymmetricMatrix S = SymmetricMatrix::from_dense(M);
    const MatrixXd D = S.dense();
    CHECK((D - D.transpose()).norm() == 0.0);
    CHECK((D - 0.5 * (M + M.transpose())).norm() < 1e-14);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) CHECK(S(i, j) == doctest::Approx(D(i, j)));
  }
}

TEST_CASE("quad and apply agree with dense arithmetic") {
  std::mt19937 rng(11);
  std::normal_distribution<double> g;
  const SymmetricMatrix S = random_psd(rng, 4, 4);
  VectorXd x(4);
  for (int i = 0; i < 4; ++i) x[i] = g(rng);
  CHECK(S.quad(x) == doctest::Approx(x.dot(S.dense() * x)));
  CHECK((S.apply(x) - S.dense() * x).norm() < 1e-12);
}

TEST_CASE("eigenvalues of a 2x2 with off-diagonal -1/2") {
  const auto S = SymmetricMatrix::from_dense(mat2(1, -0.5, -0.5, 1));
  const EigResult e = eig_sym(S);
  CHECK(e.eigenvalues[0] == doctest::Approx(0.5));
  CHECK(e.eigenvalues[1] == doctest::Approx(1.5));
  const MatrixXd R = e.eigenvectors * e.eigenvalues.asDiagonal() *
                     e.eigenvectors.transpose();
  CHECK((R - S.dense()).norm() < 1e-12);
}

TEST_CASE("psd test") {
  CHECK(is_psd(SymmetricMatrix::identity(3)));
  CHECK(is_psd(SymmetricMatrix::zero(2)));
  CHECK(is_psd(SymmetricMatrix::outer(VectorXd::Ones(3))));
  CHECK_FALSE(is_psd(SymmetricMatrix::from_dense(mat2(0, 1, 1, 0))));
  CHECK_FALSE(is_psd(SymmetricMatrix::from_dense(mat2(1, 2, 2, 1))));
  // Tolerance is relative: a tiny negative eigenvalue passes.
  CHECK(is_psd(SymmetricMatrix::from_dense(mat2(1e-12, 0, 0, 1))));
}

TEST_CASE("psd test matches the spectrum on random matrices") {
  std::mt19937 rng(23);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 4);
    MatrixXd M(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) M(i, j) = g(rng);
    const SymmetricMatrix S = SymmetricMatrix::from_dense(M);
    const double mn = eig_sym(S).eigenvalues.minCoeff();
    if (mn > 1e-7)
      CHECK(is_psd(S));
    else if (mn < -1e-7)
      CHECK_FALSE(is_psd(S));
  }
}

TEST_CASE("pseudoinverse of an invertible matrix is its inverse") {
  const auto S = SymmetricMatrix::from_dense(mat2(1, -0.5, -0.5, 1));
  const SymmetricMatrix P = pseudoinverse(S);
  const MatrixXd expected = (4.0 / 3.0) * mat2(1, 0.5, 0.5, 1);
  CHECK((P.dense() - expected).norm() < 1e-12);
}

TEST_CASE("pseudoinverse of a singular diagonal") {
  const auto S = SymmetricMatrix::from_dense(mat2(2, 0, 0, 0));
  const SymmetricMatrix P = pseudoinverse(S);
  CHECK((P.dense() - mat2(0.5, 0, 0, 0)).norm() < 1e-14);
}

TEST_CASE("pseudoinverse is an involution on random low-rank psd matrices") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 3);
    const int rank = 1 + static_cast<int>(rng() % n);
    const SymmetricMatrix S = random_psd(rng, n, rank);
    const SymmetricMatrix back = pseudoinverse(pseudoinverse(S));
    CHECK(back.approx_equal(S, 1e-6 * (1.0 + S.norm())));
    // Moore-Penrose identity M M+ M = M.
    const MatrixXd D = S.dense(), Pi = pseudoinverse(S).dense();
    CHECK((D * Pi * D - D).norm() < 1e-7 * (1.0 + S.norm()));
  }
}

TEST_CASE("pseudoinverse rejects indefinite input") {
  CHECK_THROWS_AS(pseudoinverse(SymmetricMatrix::from_dense(mat2(0, 1, 1, 0))),
                  Error);
}

TEST_CASE("span_of finds the right rank") {
  MatrixXd A(3, 3);
  A << 1, 2, 3, 2, 4, 6, 0, 0, 1;  // rank 2
  const Subspace S = Subspace::span_of(A);
  CHECK(S.ambient_dim() == 3);
  CHECK(S.dim() == 2);
  const MatrixXd B = S.basis();
  CHECK((B.transpose() * B - MatrixXd::Identity(2, 2)).norm() < 1e-12);
  // Columns of A lie in the span.
  const MatrixXd P = projection_matrix(S).dense();
  CHECK((P * A - A).norm() < 1e-12);
}

TEST_CASE("projection onto span plus complement is the identity") {
  std::mt19937 rng(31);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 4);
    const int k = static_cast<int>(rng() % (n + 1));
    MatrixXd A = MatrixXd::Zero(n, std::max(k, 1));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < A.cols(); ++j) A(i, j) = k == 0 ? 0.0 : g(rng);
    const Subspace S = Subspace::span_of(A);
    const Subspace C = orthogonal_complement(S);
    CHECK(S.dim() + C.dim() == n);
    const MatrixXd P = projection_matrix(S).dense();
    const MatrixXd Q = projection_matrix(C).dense();
    CHECK((P + Q - MatrixXd::Identity(n, n)).norm() < 1e-10);
    CHECK((P * P - P).norm() < 1e-10);
    CHECK((P * Q).norm() < 1e-10);
  }
}

TEST_CASE("full and zero subspaces") {
  CHECK(Subspace::full(3).dim() == 3);
  CHECK(Subspace::zero(3).dim() == 0);
  CHECK(projection_matrix(Subspace::zero(2)).norm() == 0.0);
  CHECK(orthogonal_complement(Subspace::zero(4)).dim() == 4);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <vector>

#include "invkit/errors.hpp"
#include "invkit/pwse.hpp"
#include "invkit/systems.hpp"

using namespace invkit;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

MatrixXd mat(std::initializer_list<std::initializer_list<double>> rows) {
  const int m = static_cast<int>(rows.size());
  const int n = static_cast<int>(rows.begin()->size());
  MatrixXd M(m, n);
  int i = 0;
  for (const auto& r : rows) {
    int j = 0;
    for (double v : r) M(i, j++) = v;
    ++i;
  }
  return M;
}

VectorXd vec(std::initializer_list<double> vals) {
  VectorXd v(static_cast<int>(vals.size()));
  int i = 0;
  for (double x : vals) v[i++] = x;
  return v;
}

SymmetricMatrix sym2(double a, double b, double c) {
  MatrixXd M(2, 2);
  M << a, b, b, c;
  return SymmetricMatrix::from_dense(M);
}

MatrixXd rot(double deg) {
  const double t = deg * std::numbers::pi / 180.0;
  return mat({{std::cos(t), -std::sin(t)}, {std::sin(t), std::cos(t)}});
}

bool subset_of(const HPolyhedron& inner, const HPolyhedron& outer,
               double tol = 1e-7) {
  const HPolyhedron C = outer.canonicalized();
  for (int i = 0; i < C.num_rows(); ++i)
    if (inner.support_lp(C.A().row(i).transpose()) > C.b()[i] + tol)
      return false;
  return true;
}

bool equal_sets(const HPolyhedron& P, const HPolyhedron& Q, double tol = 1e-7) {
  return subset_of(P, Q, tol) && subset_of(Q, P, tol);
}

LinearControlSystem double_integrator() {
  return LinearControlSystem(mat({{1, 1}, {0, 1}}), mat({{0}, {1}}),
                             HPolyhedron::box(2, 1.0));
}

// The kernel of the double integrator on the unit box: |x1| <= 1,
// |x2| <= 1 and |x1 + x2| <= 1.
HPolyhedron di_kernel() {
  return HPolyhedron(
      mat({{1, 0}, {-1, 0}, {0, 1}, {0, -1}, {1, 1}, {-1, -1}}),
      vec({1, 1, 1, 1, 1, 1}));
}

// Running example: five cones with matrices mixing flat, round and
// polyhedral pieces; the partition covers the plane.
PiecewiseSemiEllipsoid five_piece_set() {
  std::vector<HPolyhedron> cones;
  cones.push_back(HPolyhedron::cone(mat({{0, -1}, {-1, 1}})));
  cones.push_back(HPolyhedron::cone(mat({{-1, 0}, {1, -1}})));
  cones.push_back(HPolyhedron::cone(mat({{1, 0}, {0, -1}})));
  cones.push_back(HPolyhedron::cone(mat({{1, 0}, {0, 1}})));
  cones.push_back(HPolyhedron::cone(mat({{0, 1}, {-1, 0}})));
  std::vector<SymmetricMatrix> Q;
  Q.push_back(sym2(1, 0, 0));
  Q.push_back(sym2(0, 0, 1));
  Q.push_back(sym2(1, 0, 1));
  Q.push_back(sym2(1, 1, 1));
  Q.push_back(sym2(1, -0.5, 1));
  return PiecewiseSemiEllipsoid(build_partition(std::move(cones)),
                                std::move(Q));
}

// Q = sum_k (A^k)^T A^k solves Q - A^T Q A = I for a stable A.
SymmetricMatrix lyapunov_series(const MatrixXd& A) {
  const int n = static_cast<int>(A.rows());
  MatrixXd Q = MatrixXd::Zero(n, n);
  MatrixXd Ak = MatrixXd::Identity(n, n);
  for (int k = 0; k < 2000; ++k) {
    Q += Ak.transpose() * Ak;
    Ak = A * Ak;
    if (Ak.norm() < 1e-15) break;
  }
  return SymmetricMatrix::from_dense(0.5 * (Q + Q.transpose()));
}

double ext_sub(double lhs, double rhs) {
  if (lhs == kInf && rhs == kInf) return 0.0;
  if (lhs == kInf) return kInf;
  if (rhs == kInf) return 0.0;
  return lhs - rhs;
}

// Worst violation over sampled directions of the four invariance
// inequalities relating gauge and support of S and its polar under A.
double four_way_violation(const MatrixXd& A, const PiecewiseSemiEllipsoid& S,
                          int dirs) {
  const PiecewiseSemiEllipsoid& P = S.polar();
  double worst = 0.0;
  for (int k = 0; k < dirs; ++k) {
    const double t = 2.0 * std::numbers::pi * k / dirs;
    const VectorXd d = vec({std::cos(t), std::sin(t)});
    const VectorXd Ad = A * d;
    const VectorXd Atd = A.transpose() * d;
    worst = std::max(worst, ext_sub(S.support(Atd), S.support(d)));
    worst = std::max(worst, ext_sub(S.gauge(Ad), S.gauge(d)));
    worst = std::max(worst, ext_sub(P.gauge(Atd), P.gauge(d)));
    worst = std::max(worst, ext_sub(P.support(Ad), P.support(d)));
  }
  return worst;
}

// Sampled invariance of the unit sublevel set of S under x+ = Mx.
bool sampled_invariant(const MatrixXd& M, const PiecewiseSemiEllipsoid& S,
                       int dirs, double tol = 1e-7) {
  for (int k = 0; k < dirs; ++k) {
    const double t = 2.0 * std::numbers::pi * k / dirs;
    const VectorXd d = vec({std::cos(t), std::sin(t)});
    const double g = S.gauge(d);
    if (g == kInf || g <= 1e-12) continue;
    if (S.gauge(M * (d / g)) > 1.0 + tol) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("reduce_to_algebraic compresses to the complement of Image(B)") {
  const LinearControlSystem di = double_integrator();
  const AlgebraicSystem alg = reduce_to_algebraic(di);
  REQUIRE(alg.num_rows() == 1);
  CHECK((alg.E - mat({{1, 0}})).norm() <= 1e-12);
  CHECK((alg.C - mat({{1, 1}})).norm() <= 1e-12);
}

TEST_CASE("reduce_to_algebraic keeps the autonomous case intact") {
  const MatrixXd A = mat({{1, 2}, {3, 4}});
  const LinearControlSystem sys(A, MatrixXd::Zero(2, 1),
                                HPolyhedron::box(2, 1.0));
  const AlgebraicSystem alg = reduce_to_algebraic(sys);
  CHECK((alg.E - MatrixXd::Identity(2, 2)).norm() == 0.0);
  CHECK((alg.C - A).norm() == 0.0);
}

TEST_CASE("reduce_to_algebraic with full actuation has no rows") {
  const LinearControlSystem sys(mat({{1, 2}, {3, 4}}),
                                MatrixXd::Identity(2, 2),
                                HPolyhedron::box(2, 1.0));
  const AlgebraicSystem alg = reduce_to_algebraic(sys);
  CHECK(alg.num_rows() == 0);
  CHECK(alg.state_dim() == 2);
}

TEST_CASE("reduced rows are orthonormal, kill B and match the projector") {
  std::mt19937 rng(711);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    MatrixXd A(3, 3), B(3, 2);
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) A(i, j) = U(rng);
      for (int j = 0; j < 2; ++j) B(i, j) = U(rng);
    }
    if (trial % 2 == 0) B.col(1) = 2.0 * B.col(0);  // rank-one input map
    const LinearControlSystem sys(A, B, HPolyhedron::box(3, 1.0));
    const AlgebraicSystem alg = reduce_to_algebraic(sys);
    const int rank = Subspace::span_of(B).dim();
    REQUIRE(alg.num_rows() == 3 - rank);
    CHECK((alg.E * alg.E.transpose() -
           MatrixXd::Identity(alg.num_rows(), alg.num_rows()))
              .norm() <= 1e-10);
    CHECK((alg.E * B).norm() <= 1e-10);
    CHECK((alg.C - alg.E * A).norm() <= 1e-12);
    // The compressed rows define the same constraint as the uncompressed
    // projector P = E^T E onto Image(B)^perp.
    const MatrixXd P = alg.E.transpose() * alg.E;
    for (int s = 0; s < 20; ++s) {
      VectorXd x(3), z(3);
      for (int i = 0; i < 3; ++i) {
        x[i] = U(rng);
        z[i] = U(rng);
      }
      const VectorXd xp = P * A * x + (MatrixXd::Identity(3, 3) - P) * z;
      CHECK((alg.E * xp - alg.C * x).norm() <= 1e-10);
      CHECK((P * xp - P * A * x).norm() <= 1e-10);
    }
  }
}

TEST_CASE("ellipsoid invariance under the autonomous dynamics") {
  const SymmetricMatrix I2 = SymmetricMatrix::identity(2);
  CHECK(is_invariant_autonomous_ellipsoid(0.5 * MatrixXd::Identity(2, 2), I2));
  CHECK(is_invariant_autonomous_ellipsoid(rot(90), I2));
  CHECK(!is_invariant_autonomous_ellipsoid(2.0 * MatrixXd::Identity(2, 2), I2));
}

TEST_CASE("Lyapunov solutions of stable dynamics give invariant ellipsoids") {
  std::mt19937 rng(2024);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  for (int trial = 0; trial < 5; ++trial) {
    MatrixXd A(3, 3);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) A(i, j) = U(rng);
    A *= 0.8 / A.norm();  // Frobenius bound forces spectral radius < 1
    CHECK(is_invariant_autonomous_ellipsoid(A, lyapunov_series(A)));
  }
}

TEST_CASE("viability_step of the full box against the double integrator") {
  const LinearControlSystem di = double_integrator();
  const HPolyhedron step = viability_step(di, di.X);
  CHECK(equal_sets(step, di_kernel()));
}

TEST_CASE("viability_step under full actuation returns X") {
  const LinearControlSystem sys(mat({{1, 1}, {0, 1}}),
                                MatrixXd::Identity(2, 2),
                                HPolyhedron::box(2, 1.0));
  CHECK(equal_sets(viability_step(sys, sys.X), sys.X));
}

TEST_CASE("viability_step of the origin is a constrained segment") {
  const LinearControlSystem di = double_integrator();
  const HPolyhedron origin(mat({{1, 0}, {-1, 0}, {0, 1}, {0, -1}}),
                           vec({0, 0, 0, 0}));
  const HPolyhedron expected(
      mat({{1, 0}, {-1, 0}, {0, 1}, {0, -1}, {1, 1}, {-1, -1}}),
      vec({1, 1, 1, 1, 0, 0}));
  CHECK(equal_sets(viability_step(di, origin), expected));
}

TEST_CASE("viability_step throws when no state admits an input") {
  // Zero dynamics map everything to the origin, which lies outside P.
  const LinearControlSystem sys(MatrixXd::Zero(2, 2), MatrixXd::Zero(2, 1),
                                HPolyhedron::box(2, 1.0));
  const HPolyhedron off(mat({{-1, 0}, {1, 0}, {0, 1}, {0, -1}}),
                        vec({-0.5, 1, 1, 1}));
  CHECK_THROWS_AS(viability_step(sys, off), Error);
  try {
    viability_step(sys, off);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::EmptyPolyhedron);
  }
}

TEST_CASE("viability_step is monotone in the iterate") {
  const LinearControlSystem di = double_integrator();
  const HPolyhedron small = viability_step(di, HPolyhedron::box(2, 0.4));
  const HPolyhedron large = viability_step(di, HPolyhedron::box(2, 0.8));
  CHECK(subset_of(small, large));
  CHECK(subset_of(large, viability_step(di, di.X)));

  const LinearControlSystem sys(mat({{0.6, -0.9}, {0.4, 0.2}}),
                                mat({{0.3}, {1.0}}),
                                HPolyhedron::box(2, 1.0));
  CHECK(subset_of(viability_step(sys, HPolyhedron::box(2, 0.5)),
                  viability_step(sys, sys.X)));
}

TEST_CASE("viability_kernel of the double integrator stops after one step") {
  const ViabilityResult R = viability_kernel(double_integrator(), 10);
  CHECK(R.converged);
  REQUIRE(R.iterates.size() == 2);
  CHECK(equal_sets(R.iterates[1], di_kernel()));
  CHECK(equal_sets(R.kernel, di_kernel()));
}

TEST_CASE("viability_kernel under full actuation converges immediately") {
  const LinearControlSystem sys(mat({{0, 1}, {-1, 0}}),
                                MatrixXd::Identity(2, 2),
                                HPolyhedron::box(2, 1.0));
  const ViabilityResult R = viability_kernel(sys, 5);
  CHECK(R.converged);
  CHECK(R.iterates.size() == 1);
  CHECK(equal_sets(R.kernel, sys.X));
}

TEST_CASE("viability_kernel of an expansion shrinks without converging") {
  const LinearControlSystem sys(2.0 * MatrixXd::Identity(2, 2),
                                MatrixXd::Zero(2, 1),
                                HPolyhedron::box(2, 1.0));
  const ViabilityResult R = viability_kernel(sys, 4);
  CHECK(!R.converged);
  REQUIRE(R.iterates.size() == 5);
  CHECK(equal_sets(R.iterates[1], HPolyhedron::box(2, 0.5)));
  CHECK(equal_sets(R.iterates[3], HPolyhedron::box(2, 0.125)));
  CHECK(equal_sets(R.kernel, HPolyhedron::box(2, 0.0625)));
}

TEST_CASE("check_control_invariance accepts the disk under a rotation") {
  const LinearControlSystem sys(rot(90), MatrixXd::Zero(2, 0),
                                HPolyhedron::box(2, 2.0));
  const InvarianceReport rep =
      check_control_invariance(sys, from_ellipsoid(SymmetricMatrix::identity(2)),
                               64);
  CHECK(rep.passed);
  CHECK(rep.subset_of_X);
  CHECK(std::abs(rep.primal_worst) <= 1e-9);
  CHECK(std::abs(rep.dual_worst) <= 1e-9);
}

TEST_CASE("check_control_invariance rejects the box under an expansion") {
  const LinearControlSystem sys(2.0 * MatrixXd::Identity(2, 2),
                                MatrixXd::Zero(2, 1),
                                HPolyhedron::box(2, 1.0));
  const InvarianceReport rep =
      check_control_invariance(sys, from_polytope(sys.X), 64);
  CHECK(!rep.passed);
  CHECK(rep.subset_of_X);
  // Boundary points map to gauge 2, so the primal residual is exactly 1.
  CHECK(rep.primal_worst == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(rep.dual_worst >= 0.99);
  CHECK(rep.dual_worst <= std::sqrt(2.0) + 1e-9);
}

TEST_CASE("check_control_invariance accepts the double-integrator kernel") {
  const LinearControlSystem di = double_integrator();
  const ViabilityResult R = viability_kernel(di, 10);
  const PiecewiseSemiEllipsoid S = from_polytope(R.kernel);
  const InvarianceReport rep = check_control_invariance(di, S, 120);
  CHECK(rep.passed);
  CHECK(rep.subset_of_X);
  CHECK(rep.primal_worst <= 1e-6);
  CHECK(rep.dual_worst <= 1e-6);
}

TEST_CASE("image containment matches preimage containment on vertices") {
  std::mt19937 rng(4321);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  auto random_polytope = [&]() {
    MatrixXd M(2, 2);
    do {
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) M(i, j) = U(rng);
    } while (std::abs(M.determinant()) < 0.3);
    VPolyhedron V;
    V.n = 2;
    const VectorXd shift = 0.5 * vec({U(rng), U(rng)});
    for (double sx : {-1.0, 1.0})
      for (double sy : {-1.0, 1.0})
        V.vertices.push_back(M * vec({sx, sy}) + shift);
    return to_hrep(V);
  };
  int holds = 0, fails = 0;
  for (int trial = 0; trial < 20; ++trial) {
    MatrixXd A(2, 2);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) A(i, j) = U(rng);
    const HPolyhedron S = random_polytope();
    const HPolyhedron T = random_polytope();
    const HPolyhedron pre = T.preimage(A);
    bool image_inside = true, preimage_inside = true;
    for (const VectorXd& v : vertices_of(S)) {
      if (!T.contains(A * v)) image_inside = false;
      if (!pre.contains(v)) preimage_inside = false;
    }
    CHECK(image_inside == preimage_inside);
    (image_inside ? holds : fails) += 1;
  }
  // Crafted instances pin both outcomes.
  const HPolyhedron box = HPolyhedron::box(2, 1.0);
  for (const VectorXd& v : vertices_of(box)) {
    CHECK(HPolyhedron::box(2, 2.0).preimage(MatrixXd::Identity(2, 2))
              .contains(v));
    CHECK(!HPolyhedron::box(2, 0.5).preimage(MatrixXd::Identity(2, 2))
               .contains(v));
  }
}

TEST_CASE("projection image equality does not transfer to the preimage") {
  const MatrixXd A = mat({{1, 0}});
  const HPolyhedron S(mat({{1}, {-1}}), vec({1, 1}));
  const HPolyhedron T = HPolyhedron::box(2, 1.0);
  // The image of T under A is exactly S.
  CHECK(T.support_lp(vec({1, 0})) == doctest::Approx(1.0));
  CHECK(T.support_lp(vec({-1, 0})) == doctest::Approx(1.0));
  // Yet the preimage of S is a strip strictly larger than T.
  const HPolyhedron pre = S.preimage(A);
  CHECK(pre.contains(vec({0, 5})));
  CHECK(!T.contains(vec({0, 5})));
}

TEST_CASE("the four invariance inequalities agree on invariant pairs") {
  CHECK(four_way_violation(0.5 * rot(37),
                           from_ellipsoid(SymmetricMatrix::identity(2)),
                           500) <= 1e-7);
  const PiecewiseSemiEllipsoid S = five_piece_set();
  CHECK(four_way_violation(0.6 * MatrixXd::Identity(2, 2), S, 500) <= 1e-7);
  const MatrixXd A = mat({{0.5, 0.3}, {0.0, 0.4}});
  CHECK(four_way_violation(
            A, from_ellipsoid(lyapunov_series(A)), 500) <= 1e-7);
  // An expansion breaks all four by a unit margin on the disk.
  CHECK(four_way_violation(2.0 * MatrixXd::Identity(2, 2),
                           from_ellipsoid(SymmetricMatrix::identity(2)),
                           100) >= 0.9);
}

TEST_CASE("invariance transfers to the polar system and back") {
  const MatrixXd A = mat({{0.4, -0.7}, {0.2, 0.5}});
  const SymmetricMatrix Q = lyapunov_series(A);
  CHECK(is_invariant_autonomous_ellipsoid(A, Q));
  const PiecewiseSemiEllipsoid S = from_ellipsoid(Q);
  CHECK(sampled_invariant(A, S, 200));
  CHECK(sampled_invariant(A.transpose(), S.polar(), 200));
  // The ellipsoidal polar check agrees with the LMI on Q^{-1}.
  CHECK(is_invariant_autonomous_ellipsoid(A.transpose(), pseudoinverse(Q)));

  const PiecewiseSemiEllipsoid F = five_piece_set();
  CHECK(sampled_invariant(0.7 * MatrixXd::Identity(2, 2), F, 200));
  CHECK(sampled_invariant(0.7 * MatrixXd::Identity(2, 2), F.polar(), 200));
  CHECK(!sampled_invariant(1.3 * MatrixXd::Identity(2, 2), F, 200));
  CHECK(!sampled_invariant(1.3 * MatrixXd::Identity(2, 2), F.polar(), 200));

  const MatrixXd D = mat({{1.5, 0}, {0, 0.2}});
  const PiecewiseSemiEllipsoid disk =
      from_ellipsoid(SymmetricMatrix::identity(2));
  CHECK(sampled_invariant(D, disk, 200) ==
        sampled_invariant(D.transpose(), disk.polar(), 200));
}

TEST_CASE("system constructors validate their inputs") {
  const MatrixXd A = MatrixXd::Identity(2, 2);
  const MatrixXd B = MatrixXd::Zero(2, 1);
  const HPolyhedron strip(mat({{1, 0}, {-1, 0}}), vec({1, 1}));
  CHECK_THROWS_AS(LinearControlSystem(A, B, strip), Error);
  try {
    LinearControlSystem(A, B, strip);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidArgument);
  }
  const HPolyhedron touching(mat({{1, 0}, {-1, 0}, {0, 1}, {0, -1}}),
                             vec({1, 1, 1, 0}));
  try {
    LinearControlSystem(A, B, touching);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::OriginNotContained);
  }
  CHECK_THROWS_AS(
      LinearControlSystem(A, MatrixXd::Zero(3, 1), HPolyhedron::box(2, 1.0)),
      Error);
  CHECK_THROWS_AS(SwitchedControlSystem({}, HPolyhedron::box(2, 1.0)), Error);
  const SwitchedControlSystem sw(
      {{rot(30), MatrixXd::Zero(2, 0)}, {rot(-45), MatrixXd::Zero(2, 0)}},
      HPolyhedron::box(2, 1.0));
  CHECK(sw.num_modes() == 2);
  CHECK((sw.mode_system(1).A - rot(-45)).norm() == 0.0);
  CHECK_THROWS_AS(viability_kernel(double_integrator(), 0), Error);
}

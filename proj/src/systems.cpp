#include "invkit/systems.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <string>
#include <utility>

#include "invkit/errors.hpp"

namespace invkit {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void validate_state_set(const HPolyhedron& X, const std::string& who) {
  const HPolyhedron C = X.canonicalized();
  for (int i = 0; i < C.num_rows(); ++i)
    if (C.b()[i] <= 1e-9)
      fail(ErrorCode::OriginNotContained,
           who + ": state constraints must contain the origin in their interior");
  for (int i = 0; i < X.ambient_dim(); ++i)
    for (const double s : {1.0, -1.0}) {
      VectorXd d = VectorXd::Zero(X.ambient_dim());
      d[i] = s;
      if (!std::isfinite(X.support_lp(d)))
        fail(ErrorCode::InvalidArgument,
             who + ": state constraints must be bounded");
    }
}

bool contained_in(const HPolyhedron& inner, const HPolyhedron& outer,
                  double tol) {
  const HPolyhedron C = outer.canonicalized();
  for (int i = 0; i < C.num_rows(); ++i)
    if (inner.support_lp(C.A().row(i).transpose()) > C.b()[i] + tol)
      return false;
  return true;
}

// Minimizes gauge(S, base + Bu) over u by cyclic coordinate descent with a
// golden-section line search. The gauge is convex in u but can be infinite
// off the covered cones, so each line search scans nested brackets for a
// finite window first; windows narrower than the scan spacing are missed.
double min_gauge_over_input(const PiecewiseSemiEllipsoid& S, const MatrixXd& B,
                            const VectorXd& base) {
  const int m = static_cast<int>(B.cols());
  if (m == 0) return S.gauge(base);
  const double golden = 0.5 * (std::sqrt(5.0) - 1.0);
  VectorXd u = VectorXd::Zero(m);
  double cur = S.gauge(base + B * u);
  for (int sweep = 0; sweep < 100; ++sweep) {
    const double before = cur;
    for (int j = 0; j < m; ++j) {
      auto value = [&](double t) {
        VectorXd v = u;
        v[j] = t;
        return S.gauge(base + B * v);
      };
      // The grid includes u[j] itself (kGrid is even), so the incumbent
      // competes and the refined value can never regress.
      double best_t = u[j], best_f = kInf, width = 0.0;
      for (const double span : {1e3, 10.0, 0.1}) {
        constexpr int kGrid = 64;
        const double step = 2.0 * span / kGrid;
        for (int k = 0; k <= kGrid; ++k) {
          const double t = u[j] - span + step * k;
          const double f = value(t);
          if (f < best_f) {
            best_f = f;
            best_t = t;
            width = step;
          }
        }
        if (best_f < kInf) break;
      }
      if (best_f == kInf) continue;
      double a = best_t - width, b = best_t + width;
      double c = b - golden * (b - a), d = a + golden * (b - a);
      double fc = value(c), fd = value(d);
      while (b - a > 1e-8) {
        if (fc <= fd) {
          b = d;
          d = c;
          fd = fc;
          c = b - golden * (b - a);
          fc = value(c);
        } else {
          a = c;
          c = d;
          fc = fd;
          d = a + golden * (b - a);
          fd = value(d);
        }
      }
      const double mid = 0.5 * (a + b);
      const double fm = value(mid);
      if (fm <= best_f) {
        best_t = mid;
        best_f = fm;
      }
      u[j] = best_t;
      cur = best_f;
    }
    if (before - cur < 1e-10) break;
  }
  return cur;
}

}  // namespace

LinearControlSystem::LinearControlSystem(MatrixXd A_in, MatrixXd B_in,
                                         HPolyhedron X_in)
    : A(std::move(A_in)), B(std::move(B_in)), X(std::move(X_in)) {
  if (A.rows() != A.cols())
    fail(ErrorCode::DimensionMismatch, "LinearControlSystem: A must be square");
  if (B.rows() != A.rows())
    fail(ErrorCode::DimensionMismatch,
         "LinearControlSystem: B must have one row per state");
  if (X.ambient_dim() != A.rows())
    fail(ErrorCode::DimensionMismatch,
         "LinearControlSystem: state constraints dimension");
  validate_state_set(X, "LinearControlSystem");
}

AlgebraicSystem::AlgebraicSystem(MatrixXd E_in, MatrixXd C_in,
                                 HPolyhedron X_in)
    : E(std::move(E_in)), C(std::move(C_in)), X(std::move(X_in)) {
  if (E.rows() != C.rows() || E.cols() != C.cols())
    fail(ErrorCode::DimensionMismatch,
         "AlgebraicSystem: E and C must have equal shape");
  if (X.ambient_dim() != E.cols())
    fail(ErrorCode::DimensionMismatch,
         "AlgebraicSystem: state constraints dimension");
}

SwitchedControlSystem::SwitchedControlSystem(
    std::vector<std::pair<MatrixXd, MatrixXd>> modes_in, HPolyhedron X_in)
    : modes(std::move(modes_in)), X(std::move(X_in)) {
  if (modes.empty())
    fail(ErrorCode::InvalidArgument,
         "SwitchedControlSystem: at least one mode required");
  for (const auto& [A, B] : modes) {
    if (A.rows() != A.cols() || A.rows() != X.ambient_dim())
      fail(ErrorCode::DimensionMismatch,
           "SwitchedControlSystem: mode dynamics dimension");
    if (B.rows() != A.rows())
      fail(ErrorCode::DimensionMismatch,
           "SwitchedControlSystem: mode input dimension");
  }
  validate_state_set(X, "SwitchedControlSystem");
}

LinearControlSystem SwitchedControlSystem::mode_system(int s) const {
  if (s < 0 || s >= num_modes())
    fail(ErrorCode::InvalidArgument, "SwitchedControlSystem: mode index");
  return LinearControlSystem(modes[s].first, modes[s].second, X);
}

AlgebraicSystem reduce_to_algebraic(const LinearControlSystem& sys) {
  MatrixXd W = orthogonal_complement(Subspace::span_of(sys.B)).basis();
  // Flip each basis vector so its largest entry is positive; this keeps the
  // reduced rows reproducible across eigensolver sign choices.
  for (int j = 0; j < W.cols(); ++j) {
    int imax = 0;
    W.col(j).cwiseAbs().maxCoeff(&imax);
    if (W(imax, j) < 0.0) W.col(j) = -W.col(j);
  }
  return AlgebraicSystem(W.transpose(), W.transpose() * sys.A, sys.X);
}

bool is_invariant_autonomous_ellipsoid(const MatrixXd& A,
                                       const SymmetricMatrix& Q) {
  if (A.rows() != A.cols() || A.rows() != Q.dim())
    fail(ErrorCode::DimensionMismatch,
         "is_invariant_autonomous_ellipsoid: dimensions");
  const MatrixXd Qd = Q.dense();
  return is_psd(SymmetricMatrix::from_dense(Qd - A.transpose() * Qd * A),
                1e-9);
}

HPolyhedron viability_step(const LinearControlSystem& sys,
                           const HPolyhedron& P) {
  const int n = sys.state_dim();
  const int m = sys.input_dim();
  if (P.ambient_dim() != n)
    fail(ErrorCode::DimensionMismatch, "viability_step: iterate dimension");
  HPolyhedron projected = [&] {
    if (m == 0) return P.preimage(sys.A).intersect(sys.X);
    MatrixXd AB(n, n + m);
    AB.leftCols(n) = sys.A;
    AB.rightCols(m) = sys.B;
    const HPolyhedron lifted =
        P.preimage(AB).intersect(sys.X.cross(HPolyhedron::full_space(m)));
    return lifted.eliminate_last(m);
  }();
  if (projected.is_empty())
    fail(ErrorCode::EmptyPolyhedron,
         "viability_step: no state admits a feasible input");
  return projected.remove_redundancy();
}

ViabilityResult viability_kernel(const LinearControlSystem& sys, int max_iter,
                                 double tol) {
  if (max_iter < 1)
    fail(ErrorCode::InvalidArgument, "viability_kernel: max_iter must be >= 1");
  std::vector<HPolyhedron> iterates;
  iterates.push_back(sys.X);
  bool converged = false;
  for (int k = 0; k < max_iter; ++k) {
    HPolyhedron next = viability_step(sys, iterates.back());
    if (contained_in(iterates.back(), next, tol) &&
        contained_in(next, iterates.back(), tol)) {
      converged = true;
      break;
    }
    iterates.push_back(std::move(next));
  }
  ViabilityResult result{iterates.back(), converged, {}};
  result.iterates = std::move(iterates);
  return result;
}

InvarianceReport check_control_invariance(const LinearControlSystem& sys,
                                          const PiecewiseSemiEllipsoid& S,
                                          int n_samples) {
  const int n = sys.state_dim();
  if (S.ambient_dim() != n)
    fail(ErrorCode::DimensionMismatch, "check_control_invariance: set dimension");
  if (n_samples < 1)
    fail(ErrorCode::InvalidArgument, "check_control_invariance: n_samples");
  const AlgebraicSystem alg = reduce_to_algebraic(sys);
  const PiecewiseSemiEllipsoid& polar = S.polar();

  std::mt19937 rng(987123u);
  std::normal_distribution<double> gauss(0.0, 1.0);
  auto direction = [&](int k) {
    if (n == 2) {
      const double t = 2.0 * std::numbers::pi * k / n_samples;
      return (VectorXd(2) << std::cos(t), std::sin(t)).finished();
    }
    VectorXd d(n);
    do {
      for (int i = 0; i < n; ++i) d[i] = gauss(rng);
    } while (d.norm() < 1e-6);
    return VectorXd(d / d.norm());
  };

  InvarianceReport report;
  report.subset_of_X = true;
  double primal_worst = -kInf;
  for (int k = 0; k < n_samples; ++k) {
    const VectorXd d = direction(k);
    const double g = S.gauge(d);
    if (g == kInf) continue;  // only the origin lies along this direction
    if (g <= 1e-12) {
      report.subset_of_X = false;  // unbounded direction, X is bounded
      continue;
    }
    const VectorXd x = d / g;
    if (!sys.X.contains(x, 1e-6)) report.subset_of_X = false;
    const double best = min_gauge_over_input(S, sys.B, sys.A * x);
    primal_worst = std::max(primal_worst, best - 1.0);
  }
  report.primal_worst = primal_worst == -kInf ? 0.0 : primal_worst;

  const int r = static_cast<int>(alg.E.rows());
  double dual_worst = -kInf;
  for (int k = 0; r > 0 && k < n_samples; ++k) {
    VectorXd y(r);
    do {
      for (int i = 0; i < r; ++i) y[i] = gauss(rng);
    } while (y.norm() < 1e-6);
    y /= y.norm();
    const double lhs = polar.gauge(alg.C.transpose() * y);
    const double rhs = polar.gauge(alg.E.transpose() * y);
    double residual;
    if (lhs == kInf && rhs == kInf) residual = 0.0;  // infinite on both sides
    else if (lhs == kInf) residual = kInf;
    else if (rhs == kInf) continue;  // strictly satisfied
    else residual = lhs - rhs;
    dual_worst = std::max(dual_worst, residual);
  }
  report.dual_worst = dual_worst == -kInf ? 0.0 : dual_worst;
  report.passed = report.subset_of_X && report.primal_worst <= 1e-6 &&
                  report.dual_worst <= 1e-6;
  return report;
}

}  // namespace invkit

#include "invkit/synth.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "invkit/errors.hpp"

namespace invkit {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void validate_problem(const SynthesisProblem& prob) {
  const int n = prob.system.state_dim();
  if (prob.partition.pieces.empty())
    fail(ErrorCode::InvalidArgument, "SynthesisProblem: partition has no pieces");
  if (prob.partition.ambient_dim() != n)
    fail(ErrorCode::DimensionMismatch,
         "SynthesisProblem: partition dimension does not match the system");
  if (prob.objective_polytope.ambient_dim() != n)
    fail(ErrorCode::DimensionMismatch,
         "SynthesisProblem: objective polytope dimension does not match the system");
  for (int k = 0; k < n; ++k) {
    VectorXd e = VectorXd::Zero(n);
    e[k] = 1.0;
    if (!std::isfinite(prob.objective_polytope.support_lp(e)) ||
        !std::isfinite(prob.objective_polytope.support_lp(-e)))
      fail(ErrorCode::InvalidArgument,
           "SynthesisProblem: objective polytope must be bounded");
  }
}

// Integral of x x^T over the simplex with the given d+1 vertices:
//   vol / ((d+1)(d+2)) * (sum_k v_k v_k^T + s s^T),  s = sum_k v_k.
MatrixXd simplex_second_moment(const std::vector<VectorXd>& simplex) {
  const int d = static_cast<int>(simplex[0].size());
  MatrixXd D(d, d);
  for (int c = 0; c < d; ++c) D.col(c) = simplex[c + 1] - simplex[0];
  double vol = std::abs(D.determinant());
  for (int k = 2; k <= d; ++k) vol /= k;
  MatrixXd sum_outer = MatrixXd::Zero(d, d);
  VectorXd s = VectorXd::Zero(d);
  for (const VectorXd& v : simplex) {
    sum_outer += v * v.transpose();
    s += v;
  }
  return vol / ((d + 1.0) * (d + 2.0)) * (sum_outer + s * s.transpose());
}

// Fan triangulation of conv(V): cone each facet's triangulation with the
// vertex centroid, recursing on facets in their own (d-1)-frame. V is the
// full vertex set of a full-dimensional polytope.
void collect_simplices(const std::vector<VectorXd>& V,
                       std::vector<std::vector<VectorXd>>& out) {
  if (V.empty()) return;
  const int d = static_cast<int>(V[0].size());
  if (d == 1) {
    double lo = V[0][0], hi = V[0][0];
    for (const VectorXd& v : V) {
      lo = std::min(lo, v[0]);
      hi = std::max(hi, v[0]);
    }
    VectorXd a(1), b(1);
    a[0] = lo;
    b[0] = hi;
    out.push_back({a, b});
    return;
  }
  if (static_cast<int>(V.size()) < d + 1) return;

  VPolyhedron vp;
  vp.n = d;
  vp.vertices = V;
  const HPolyhedron H = to_hrep(vp).remove_redundancy();
  VectorXd centroid = VectorXd::Zero(d);
  for (const VectorXd& v : V) centroid += v;
  centroid /= static_cast<double>(V.size());

  for (int k = 0; k < H.num_rows(); ++k) {
    std::vector<VectorXd> F;
    for (const VectorXd& v : V)
      if (std::abs(H.A().row(k).dot(v) - H.b()[k]) <=
          1e-8 * (1.0 + std::abs(H.b()[k]) + v.norm()))
        F.push_back(v);
    if (static_cast<int>(F.size()) < d) continue;

    const VectorXd p0 = F[0];
    MatrixXd D(d, static_cast<int>(F.size()) - 1);
    for (int c = 1; c < static_cast<int>(F.size()); ++c)
      D.col(c - 1) = F[c] - p0;
    const MatrixXd W = Subspace::span_of(D).basis();
    if (W.cols() != d - 1) continue;  // tight set degenerate, not a facet

    std::vector<VectorXd> Fp;
    Fp.reserve(F.size());
    for (const VectorXd& v : F) Fp.push_back(W.transpose() * (v - p0));
    std::vector<std::vector<VectorXd>> sub;
    collect_simplices(Fp, sub);
    for (const std::vector<VectorXd>& s : sub) {
      std::vector<VectorXd> simplex{centroid};
      for (const VectorXd& w : s) simplex.push_back(p0 + W * w);
      out.push_back(std::move(simplex));
    }
  }
}

// <C, Q_i> as a linear expression over the upper-triangle scalars of Q_i.
LinExpr contraction(const ConicProgram& prog, int mat_id,
                    const SymmetricMatrix& C) {
  LinExpr e;
  const int n = C.dim();
  for (int r = 0; r < n; ++r)
    for (int c = r; c < n; ++c) {
      const double coeff = (r == c) ? C(r, r) : 2.0 * C(r, c);
      if (coeff != 0.0) e += LinExpr::variable(prog.entry(mat_id, r, c), coeff);
    }
  return e;
}

SymmetricMatrix clamp_psd(const MatrixXd& M) {
  const SymmetricMatrix S = SymmetricMatrix::from_dense(M);
  const EigResult e = eig_sym(S);
  if (e.eigenvalues.minCoeff() >= 0.0) return S;
  const MatrixXd lifted = e.eigenvectors *
                          e.eigenvalues.cwiseMax(0.0).asDiagonal() *
                          e.eigenvectors.transpose();
  return SymmetricMatrix::from_dense(lifted);
}

}  // namespace

SynthesisProblem::SynthesisProblem(LinearControlSystem sys,
                                   ConicPartition partition_in,
                                   HPolyhedron objective_in)
    : SynthesisProblem(
          SwitchedControlSystem({{sys.A, sys.B}}, sys.X),
          std::move(partition_in), std::move(objective_in)) {}

SynthesisProblem::SynthesisProblem(SwitchedControlSystem sys,
                                   ConicPartition partition_in,
                                   HPolyhedron objective_in)
    : system(std::move(sys)),
      partition(std::move(partition_in)),
      objective_polytope(std::move(objective_in)) {
  validate_problem(*this);
}

std::vector<SymmetricMatrix> piece_second_moments(
    const HPolyhedron& polytope, const ConicPartition& partition) {
  const int n = polytope.ambient_dim();
  if (partition.pieces.empty() || partition.ambient_dim() != n)
    fail(ErrorCode::DimensionMismatch,
         "piece_second_moments: partition does not match the polytope");
  std::vector<SymmetricMatrix> out;
  out.reserve(partition.pieces.size());
  for (const HPolyhedron& piece : partition.pieces) {
    const HPolyhedron region = polytope.intersect(piece);
    MatrixXd M = MatrixXd::Zero(n, n);
    if (!region.is_empty() && region.dim() == n) {
      const std::vector<VectorXd> verts = vertices_of(region);
      if (static_cast<int>(verts.size()) >= n + 1) {
        std::vector<std::vector<VectorXd>> simplices;
        collect_simplices(verts, simplices);
        for (const std::vector<VectorXd>& s : simplices)
          M += simplex_second_moment(s);
      }
    }
    out.push_back(SymmetricMatrix::from_dense(M));
  }
  return out;
}

LinExpr integrate_quadratic(const std::vector<SymExpr>& Q_exprs,
                            const HPolyhedron& polytope,
                            const ConicPartition& partition) {
  if (Q_exprs.size() != partition.pieces.size())
    fail(ErrorCode::DimensionMismatch,
         "integrate_quadratic: one expression per piece required");
  const std::vector<SymmetricMatrix> moments =
      piece_second_moments(polytope, partition);
  const int n = polytope.ambient_dim();
  LinExpr total;
  for (size_t i = 0; i < Q_exprs.size(); ++i)
    for (int r = 0; r < n; ++r)
      for (int c = r; c < n; ++c) {
        const double coeff =
            (r == c) ? moments[i](r, r) : 2.0 * moments[i](r, c);
        if (coeff != 0.0) total += Q_exprs[i].at(r, c).scaled(coeff);
      }
  total.compress();
  return total;
}

AssembledProgram assemble(const SynthesisProblem& prob) {
  const int n = prob.system.state_dim();
  const int m = static_cast<int>(prob.partition.pieces.size());
  AssembledProgram ap;

  ap.Q_vars.reserve(m);
  std::vector<SymExpr> Q_exprs;
  Q_exprs.reserve(m);
  for (int i = 0; i < m; ++i) {
    ap.Q_vars.push_back(ap.program.add_psd_matrix(n, "Q" + std::to_string(i)));
    Q_exprs.push_back(ap.program.matrix_expr(ap.Q_vars[i]));
  }

  // Invariance, one copositivity block per mode and ordered piece pair.
  // The constraint lives in the reduced coordinates: on the cone of y with
  // C^T y in piece i and E^T y in piece j, require y^T E Q_j E^T y to
  // dominate y^T C Q_i C^T y. Pairs whose cone is only the origin are
  // skipped; a fully actuated mode (no rows) constrains nothing.
  int needs_invariance = 0;
  for (int s = 0; s < prob.system.num_modes(); ++s) {
    const AlgebraicSystem alg = reduce_to_algebraic(prob.system.mode_system(s));
    const int r = alg.num_rows();
    if (r == 0) continue;
    ++needs_invariance;
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        const HPolyhedron K =
            prob.partition.pieces[i]
                .preimage(alg.C.transpose())
                .intersect(prob.partition.pieces[j].preimage(alg.E.transpose()));
        if (K.dim() < 1) continue;
        const SymExpr gap = Q_exprs[j].congruence(alg.E.transpose()) -
                            Q_exprs[i].congruence(alg.C.transpose());
        ap.invariance.push_back(encode_copositivity(
            ap.program, gap, K, 1,
            "lam_m" + std::to_string(s) + "_" + std::to_string(i) + "_" +
                std::to_string(j)));
      }
  }
  if (needs_invariance > 0 && ap.invariance.empty())
    fail(ErrorCode::EmptyIntersectionEverywhere,
         "assemble: every invariance constraint domain degenerates to the origin");

  // State constraints: the gauge cannot exceed 1 at the vertices of the
  // polar of X, enforced in every piece containing the vertex.
  const std::vector<VectorXd> polar_vertices =
      to_vrep(polar_polytope(prob.system.X)).vertices;
  for (const VectorXd& v : polar_vertices) {
    for (int i = 0; i < m; ++i) {
      if (!prob.partition.pieces[i].contains(v, 1e-9)) continue;
      LinExpr e(-1.0);
      for (int r = 0; r < n; ++r)
        for (int c = r; c < n; ++c) {
          const double coeff = (r == c) ? v[r] * v[r] : 2.0 * v[r] * v[c];
          if (coeff != 0.0)
            e += LinExpr::variable(ap.program.entry(ap.Q_vars[i], r, c), coeff);
        }
      ap.program.add_inequality(e);
    }
  }

  // Continuity across each interface: Q_i - Q_j = u n^T + n u^T with a
  // fresh free vector u, n the interface normal toward piece i.
  for (size_t k = 0; k < prob.partition.neighbors.size(); ++k) {
    const auto [i, j] = prob.partition.neighbors[k];
    const VectorXd& nvec = prob.partition.normals[k];
    std::vector<int> u(n);
    for (int c = 0; c < n; ++c)
      u[c] = ap.program.add_scalar(
          VarKind::Free, "u" + std::to_string(k) + "_" + std::to_string(c));
    ap.u_vars.push_back(u);
    for (int r = 0; r < n; ++r)
      for (int c = r; c < n; ++c) {
        LinExpr e = LinExpr::variable(ap.program.entry(ap.Q_vars[i], r, c)) -
                    LinExpr::variable(ap.program.entry(ap.Q_vars[j], r, c));
        e -= LinExpr::variable(u[r], nvec[c]);
        e -= LinExpr::variable(u[c], nvec[r]);
        ap.program.add_equality(e);
      }
  }

  // Convexity: crossing an interface against its normal cannot increase
  // the normal derivative, g^T (Q_j - Q_i) n <= 0 on the face generators.
  for (size_t k = 0; k < prob.partition.neighbors.size(); ++k) {
    const auto [i, j] = prob.partition.neighbors[k];
    const VectorXd& nvec = prob.partition.normals[k];
    const HPolyhedron face =
        prob.partition.pieces[i].intersect(prob.partition.pieces[j]);
    for (const VectorXd& g : cone_generators(face)) {
      LinExpr e;
      for (int r = 0; r < n; ++r)
        for (int c = r; c < n; ++c) {
          const double coeff =
              (r == c) ? g[r] * nvec[r] : g[r] * nvec[c] + g[c] * nvec[r];
          if (coeff == 0.0) continue;
          e += LinExpr::variable(ap.program.entry(ap.Q_vars[j], r, c), coeff);
          e -= LinExpr::variable(ap.program.entry(ap.Q_vars[i], r, c), coeff);
        }
      ap.program.add_inequality(e);
    }
  }

  // Volume heuristic: maximize the integral of the piecewise quadratic
  // over the objective polytope.
  ap.moments = piece_second_moments(prob.objective_polytope, prob.partition);
  LinExpr obj;
  for (int i = 0; i < m; ++i) obj += contraction(ap.program, ap.Q_vars[i], ap.moments[i]);
  obj.compress();
  ap.program.set_objective(obj);
  return ap;
}

AssembledProgram assemble_switched(const SynthesisProblem& prob) {
  return assemble(prob);
}

SynthesisResult solve(const SynthesisProblem& prob,
                      const SolverBackend& backend) {
  const AssembledProgram ap = assemble(prob);
  const SolveResult res = backend.solve(ap.program);
  SynthesisResult out;
  out.status = res.status;
  out.objective = res.objective;
  if (res.status != SolveStatus::Optimal) return out;

  // Q = 0 is always feasible, so a vanishing optimum means the program
  // certifies nothing beyond the origin on this partition.
  double identity_moment = 0.0;
  for (const SymmetricMatrix& c : ap.moments)
    for (int r = 0; r < c.dim(); ++r) identity_moment += c(r, r);
  if (res.objective < 1e-6 * std::max(identity_moment, 1e-12)) {
    out.status = SolveStatus::Infeasible;
    return out;
  }

  std::vector<SymmetricMatrix> Q;
  Q.reserve(ap.Q_vars.size());
  for (const int id : ap.Q_vars)
    Q.push_back(clamp_psd(res.matrix_value(ap.program, id)));
  out.polar_side.emplace(prob.partition, std::move(Q));
  out.S.emplace(out.polar_side->polar());
  out.violations = out.S->validate();

  InvarianceReport agg;
  agg.passed = true;
  agg.subset_of_X = true;
  agg.primal_worst = -kInf;
  agg.dual_worst = -kInf;
  for (int s = 0; s < prob.system.num_modes(); ++s) {
    const InvarianceReport rep =
        check_control_invariance(prob.system.mode_system(s), *out.S);
    agg.passed = agg.passed && rep.passed;
    agg.subset_of_X = agg.subset_of_X && rep.subset_of_X;
    agg.primal_worst = std::max(agg.primal_worst, rep.primal_worst);
    agg.dual_worst = std::max(agg.dual_worst, rep.dual_worst);
  }
  out.check = agg;
  return out;
}

}  // namespace invkit

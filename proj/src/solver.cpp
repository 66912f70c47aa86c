#include "invkit/solver.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <cstdio>
#include <limits>
#include <vector>

#include "invkit/errors.hpp"

namespace invkit {
namespace {

constexpr double kSqrt2 = 1.4142135623730951;

int svec_dim(int d) { return d * (d + 1) / 2; }

// svec packs the upper triangle row-major with off-diagonals scaled by
// sqrt(2), so that <svec(A), svec(B)> = <A, B>.
VectorXd svec_of(const MatrixXd& M) {
  const int d = static_cast<int>(M.rows());
  VectorXd v(svec_dim(d));
  int k = 0;
  for (int i = 0; i < d; ++i)
    for (int j = i; j < d; ++j) v[k++] = (i == j) ? M(i, j) : kSqrt2 * M(i, j);
  return v;
}

MatrixXd smat_of(const Eigen::Ref<const VectorXd>& v, int d) {
  MatrixXd M(d, d);
  int k = 0;
  for (int i = 0; i < d; ++i)
    for (int j = i; j < d; ++j) {
      const double x = (i == j) ? v[k] : v[k] / kSqrt2;
      M(i, j) = M(j, i) = x;
      ++k;
    }
  return M;
}

// Matrix of the map svec(M) -> svec(C^T M C).
MatrixXd congruence_operator(const MatrixXd& C) {
  const int d = static_cast<int>(C.rows());
  const int t = svec_dim(d);
  MatrixXd G(t, t);
  VectorXd e = VectorXd::Zero(t);
  for (int k = 0; k < t; ++k) {
    e[k] = 1.0;
    const MatrixXd Ek = smat_of(e, d);
    G.col(k) = svec_of(C.transpose() * Ek * C);
    e[k] = 0.0;
  }
  return G;
}

struct Lowered {
  int nf = 0;                 // free coordinates
  int nl = 0;                 // nonnegative coordinates
  std::vector<int> psd_dims;  // PSD blocks: matrix variables, then constraint slacks
  int constraint_block_first = 0;
  int nz = 0;  // total coordinates
  int nc = 0;  // cone coordinates (nz - nf)
  MatrixXd A;
  VectorXd b;
  VectorXd c;
  std::vector<int> coord_of_scalar;     // -1 when pinned to zero
  std::vector<double> scale_of_scalar;  // program value = coord value * scale
  std::vector<int> psd_offset;          // coordinate offset of each PSD block
  bool infeasible = false;
  bool unbounded_if_feasible = false;
};

struct ConeLayout {
  int nf, nl, nz, nc;
  std::vector<int> psd_dims;
  std::vector<int> psd_offset;
  double nu;  // barrier degree
};

Lowered lower(const ConicProgram& prog) {
  Lowered L;
  const auto& scalars = prog.scalars();
  const int ns = static_cast<int>(scalars.size());
  L.coord_of_scalar.assign(ns, -1);
  L.scale_of_scalar.assign(ns, 1.0);

  std::vector<char> used(ns, 0);
  auto mark = [&](const LinExpr& e) {
    for (const auto& [idx, coeff] : e.terms)
      if (coeff != 0.0) used[idx] = 1;
  };
  for (const auto& e : prog.equalities()) mark(e);
  for (const auto& e : prog.inequalities()) mark(e);
  for (const auto& m : prog.psd_constraints())
    for (int i = 0; i < m.dim(); ++i)
      for (int j = i; j < m.dim(); ++j) mark(m.at(i, j));

  // Free scalars that appear nowhere: pin to zero. If one carries objective
  // weight the program is unbounded whenever it is feasible at all.
  LinExpr obj = prog.objective();
  obj.compress();
  std::vector<char> in_obj(ns, 0);
  for (const auto& [idx, coeff] : obj.terms)
    if (coeff != 0.0) in_obj[idx] = 1;

  // Assign coordinates: free scalars, nonneg scalars, inequality slacks,
  // PSD matrix variables, PSD constraint slacks.
  for (int i = 0; i < ns; ++i)
    if (scalars[i].kind == VarKind::Free) {
      if (!used[i]) {
        if (in_obj[i]) L.unbounded_if_feasible = true;
        continue;  // pinned
      }
      L.coord_of_scalar[i] = L.nf++;
    }
  const int lin_base = L.nf;
  for (int i = 0; i < ns; ++i)
    if (scalars[i].kind == VarKind::NonNeg) L.coord_of_scalar[i] = lin_base + L.nl++;
  const int num_ineq = static_cast<int>(prog.inequalities().size());
  const int slack_base = lin_base + L.nl;
  L.nl += num_ineq;

  int offset = L.nf + L.nl;
  for (const auto& m : prog.matrices()) {
    L.psd_offset.push_back(offset);
    L.psd_dims.push_back(m.dim);
    int k = 0;
    for (int i = 0; i < m.dim; ++i)
      for (int j = i; j < m.dim; ++j) {
        const int s = m.first_scalar + k;
        L.coord_of_scalar[s] = offset + k;
        L.scale_of_scalar[s] = (i == j) ? 1.0 : 1.0 / kSqrt2;
        ++k;
      }
    offset += svec_dim(m.dim);
  }
  L.constraint_block_first = static_cast<int>(L.psd_dims.size());
  for (const auto& m : prog.psd_constraints()) {
    L.psd_offset.push_back(offset);
    L.psd_dims.push_back(m.dim());
    offset += svec_dim(m.dim());
  }
  L.nz = offset;
  L.nc = L.nz - L.nf;

  const int num_rows_guess = static_cast<int>(prog.equalities().size()) + num_ineq;
  int psd_rows = 0;
  for (const auto& m : prog.psd_constraints()) psd_rows += svec_dim(m.dim());
  const int m_rows = num_rows_guess + psd_rows;
  L.A = MatrixXd::Zero(m_rows, L.nz);
  L.b = VectorXd::Zero(m_rows);
  L.c = VectorXd::Zero(L.nz);

  auto fill_row = [&](int r, const LinExpr& e) {
    for (const auto& [idx, coeff] : e.terms) {
      const int j = L.coord_of_scalar[idx];
      if (j < 0) continue;  // pinned to zero
      L.A(r, j) += coeff * L.scale_of_scalar[idx];
    }
    L.b[r] = -e.constant;
  };

  int r = 0;
  for (const auto& e : prog.equalities()) fill_row(r++, e);
  for (int i = 0; i < num_ineq; ++i) {
    fill_row(r, prog.inequalities()[i]);
    L.A(r, slack_base + i) = 1.0;
    ++r;
  }
  // Link each PSD constraint block to its slack variable entrywise.
  for (size_t ci = 0; ci < prog.psd_constraints().size(); ++ci) {
    const SymExpr& m = prog.psd_constraints()[ci];
    const int blk = L.constraint_block_first + static_cast<int>(ci);
    const int off = L.psd_offset[blk];
    int k = 0;
    for (int i = 0; i < m.dim(); ++i)
      for (int j = i; j < m.dim(); ++j) {
        fill_row(r, m.at(i, j));
        L.A(r, off + k) = (i == j) ? -1.0 : -1.0 / kSqrt2;
        ++r;
        ++k;
      }
  }

  for (const auto& [idx, coeff] : obj.terms) {
    const int j = L.coord_of_scalar[idx];
    if (j < 0) continue;
    L.c[j] -= coeff * L.scale_of_scalar[idx];  // maximize -> minimize
  }

  // Drop zero rows; an inconsistent zero row certifies infeasibility.
  std::vector<int> keep;
  for (int i = 0; i < m_rows; ++i) {
    if (L.A.row(i).lpNorm<Eigen::Infinity>() > 1e-12)
      keep.push_back(i);
    else if (std::abs(L.b[i]) > 1e-9)
      L.infeasible = true;
  }
  if (static_cast<int>(keep.size()) < m_rows) {
    MatrixXd A2(keep.size(), L.nz);
    VectorXd b2(keep.size());
    for (size_t i = 0; i < keep.size(); ++i) {
      A2.row(i) = L.A.row(keep[i]);
      b2[i] = L.b[keep[i]];
    }
    L.A = std::move(A2);
    L.b = std::move(b2);
  }

  // Remove linearly dependent rows (consistent ones only).
  const int mr = static_cast<int>(L.A.rows());
  if (mr > 0) {
    Eigen::ColPivHouseholderQR<MatrixXd> qr(L.A.transpose());
    qr.setThreshold(1e-10);
    const int rank = static_cast<int>(qr.rank());
    if (rank < mr) {
      MatrixXd Ab(mr, L.nz + 1);
      Ab.leftCols(L.nz) = L.A;
      Ab.col(L.nz) = L.b;
      Eigen::ColPivHouseholderQR<MatrixXd> qr2(Ab.transpose());
      qr2.setThreshold(1e-10);
      if (static_cast<int>(qr2.rank()) > rank) {
        L.infeasible = true;
      } else {
        const auto& perm = qr.colsPermutation().indices();
        MatrixXd A2(rank, L.nz);
        VectorXd b2(rank);
        for (int i = 0; i < rank; ++i) {
          A2.row(i) = L.A.row(perm[i]);
          b2[i] = L.b[perm[i]];
        }
        L.A = std::move(A2);
        L.b = std::move(b2);
      }
    }
  }
  return L;
}

struct Scaling {
  // Per PSD block NT scaling data.
  std::vector<MatrixXd> Gx, Gs;  // svec operators for R^{-1} M R^{-T} and R^T M R
  std::vector<VectorXd> lambda;  // scaled spectrum
  bool ok = true;
};

Scaling compute_scaling(const Lowered& L, const VectorXd& z, const VectorXd& s) {
  Scaling sc;
  for (size_t k = 0; k < L.psd_dims.size(); ++k) {
    const int d = L.psd_dims[k];
    const int off = L.psd_offset[k];
    const int t = svec_dim(d);
    const MatrixXd Z = smat_of(z.segment(off, t), d);
    const MatrixXd S = smat_of(s.segment(off, t), d);
    Eigen::LLT<MatrixXd> lz(Z), ls(S);
    if (lz.info() != Eigen::Success || ls.info() != Eigen::Success) {
      sc.ok = false;
      return sc;
    }
    const MatrixXd Lz = lz.matrixL();
    const MatrixXd Ls = ls.matrixL();
    Eigen::JacobiSVD<MatrixXd> svd(Ls.transpose() * Lz,
                                   Eigen::ComputeFullU | Eigen::ComputeFullV);
    const VectorXd sig = svd.singularValues();
    if (sig.minCoeff() <= 0) {
      sc.ok = false;
      return sc;
    }
    const VectorXd si = sig.array().sqrt().inverse();
    const MatrixXd R = Lz * svd.matrixV() * si.asDiagonal();
    const MatrixXd Rinv = si.asDiagonal() * svd.matrixU().transpose() * Ls.transpose();
    sc.Gx.push_back(congruence_operator(Rinv.transpose()));  // M -> R^{-1} M R^{-T}
    sc.Gs.push_back(congruence_operator(R));                 // M -> R^T M R
    sc.lambda.push_back(sig);
  }
  return sc;
}

// Largest step alpha with Lambda + alpha * smat(G * delta) psd, given the
// scaled spectrum Lambda (diagonal).
double psd_step_bound(const VectorXd& lam, const MatrixXd& G,
                      const Eigen::Ref<const VectorXd>& delta, int d) {
  const MatrixXd D = smat_of(G * delta, d);
  const VectorXd w = lam.array().sqrt().inverse();
  const MatrixXd M = w.asDiagonal() * D * w.asDiagonal();
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(M, Eigen::EigenvaluesOnly);
  const double mn = es.eigenvalues().minCoeff();
  if (mn >= 0) return std::numeric_limits<double>::infinity();
  return 1.0 / (-mn);
}

struct Residuals {
  VectorXd rd;  // -A^T y - s + c tau
  VectorXd rp;  // A z - b tau
  double rg;    // b^T y - c^T z - kappa
  double mu;
};

SolveResult extract_optimal(const ConicProgram& prog, const Lowered& L,
                            const VectorXd& z, double tau, int iters, double pres,
                            double dres, double relgap) {
  SolveResult res;
  res.status = SolveStatus::Optimal;
  res.iterations = iters;
  res.primal_residual = pres;
  res.dual_residual = dres;
  res.gap = relgap;
  const int ns = prog.num_scalars();
  res.values.assign(ns, 0.0);
  for (int i = 0; i < ns; ++i) {
    const int j = L.coord_of_scalar[i];
    if (j >= 0) res.values[i] = z[j] / tau * L.scale_of_scalar[i];
  }
  res.objective = prog.objective().eval(res.values);
  for (size_t ci = 0; ci < prog.psd_constraints().size(); ++ci) {
    const int blk = L.constraint_block_first + static_cast<int>(ci);
    const int d = L.psd_dims[blk];
    res.psd_constraint_values.push_back(
        smat_of(z.segment(L.psd_offset[blk], svec_dim(d)) / tau, d));
  }
  return res;
}

// Equality-constrained problem over free variables only: solve directly.
SolveResult solve_affine(const ConicProgram& prog, const Lowered& L) {
  SolveResult res;
  const auto lstsq = L.A.completeOrthogonalDecomposition();
  const VectorXd z = lstsq.solve(L.b);
  if ((L.A * z - L.b).norm() > 1e-8 * (1.0 + L.b.norm())) {
    res.status = SolveStatus::Infeasible;
    return res;
  }
  const VectorXd w = L.A.transpose().completeOrthogonalDecomposition().solve(L.c);
  if ((L.A.transpose() * w - L.c).norm() > 1e-8 * (1.0 + L.c.norm())) {
    res.status = SolveStatus::Unbounded;
    return res;
  }
  return extract_optimal(prog, L, z, 1.0, 0, 0.0, 0.0, 0.0);
}

}  // namespace

SolveResult InteriorPointSolver::solve(const ConicProgram& prog) const {
  Lowered L = lower(prog);
  SolveResult res;
  if (L.infeasible) {
    res.status = SolveStatus::Infeasible;
    return res;
  }
  if (L.nc == 0) {
    res = solve_affine(prog, L);
    if (res.status == SolveStatus::Optimal && L.unbounded_if_feasible)
      res.status = SolveStatus::Unbounded;
    return res;
  }

  const int nz = L.nz, nf = L.nf, nl = L.nl, nc = L.nc;
  const int m = static_cast<int>(L.A.rows());
  double nu = nl;
  for (int d : L.psd_dims) nu += d;

  // Iterate: z primal, (y, s) dual, homogenizing pair (tau, kappa).
  VectorXd z = VectorXd::Zero(nz), s = VectorXd::Zero(nz), y = VectorXd::Zero(m);
  for (int j = nf; j < nf + nl; ++j) z[j] = s[j] = 1.0;
  for (size_t k = 0; k < L.psd_dims.size(); ++k) {
    const int d = L.psd_dims[k];
    const VectorXd id = svec_of(MatrixXd::Identity(d, d));
    z.segment(L.psd_offset[k], svec_dim(d)) = id;
    s.segment(L.psd_offset[k], svec_dim(d)) = id;
  }
  double tau = 1.0, kappa = 1.0;

  const int N = nz + m + nc + 2;
  const int tau_idx = nz + m + nc, kappa_idx = tau_idx + 1;
  MatrixXd K(N, N);
  VectorXd rhs(N), delta(N), delta_aff(N);

  double best_pres = 1e30, best_dres = 1e30, best_gap = 1e30;
  VectorXd best_z;
  double best_tau = 1.0;
  bool have_best = false;
  int iter = 0;

  auto finish_optimal = [&](const VectorXd& zz, double tt, double pr, double dr,
                            double gg) {
    if (L.unbounded_if_feasible) {
      SolveResult r;
      r.status = SolveStatus::Unbounded;
      r.iterations = iter;
      return r;
    }
    return extract_optimal(prog, L, zz, tt, iter, pr, dr, gg);
  };

  for (iter = 0; iter < opts_.max_iterations; ++iter) {
    const double mu = (z.dot(s) + tau * kappa) / (nu + 1.0);

    // Scaled-by-tau residuals for convergence tests.
    const VectorXd xbar = z / tau, sbar = s / tau, ybar = y / tau;
    const double pres = (L.A * xbar - L.b).norm() / (1.0 + L.b.norm());
    const double dres =
        (L.A.transpose() * ybar + sbar - L.c).norm() / (1.0 + L.c.norm());
    const double pcost = L.c.dot(xbar);
    const double gap = xbar.dot(sbar);
    const double relgap = gap / std::max(1.0, std::abs(pcost));
    if (pres + dres + relgap < best_pres + best_dres + best_gap) {
      best_pres = pres;
      best_dres = dres;
      best_gap = relgap;
      best_z = z;
      best_tau = tau;
      have_best = true;
    }
    if (opts_.verbose)
      std::fprintf(stderr, "it %2d mu %.2e pres %.2e dres %.2e gap %.2e tau %.2e\n",
                   iter, mu, pres, dres, relgap, tau);

    if (pres <= opts_.tol_feas && dres <= opts_.tol_feas && relgap <= opts_.tol_gap)
      return finish_optimal(z, tau, pres, dres, relgap);

    // Infeasibility certificates.
    const double by = L.b.dot(y);
    if (by > 0) {
      const VectorXd v = (L.A.transpose() * y + s) / by;
      if (v.lpNorm<Eigen::Infinity>() <=
          opts_.tol_infeas * (1.0 + y.lpNorm<Eigen::Infinity>() / by)) {
        res.status = SolveStatus::Infeasible;
        res.iterations = iter;
        return res;
      }
    }
    const double cz = -L.c.dot(z);
    if (cz > 0) {
      const VectorXd v = (L.A * z) / cz;
      if (v.lpNorm<Eigen::Infinity>() <=
          opts_.tol_infeas * (1.0 + z.lpNorm<Eigen::Infinity>() / cz)) {
        res.status = SolveStatus::Unbounded;
        res.iterations = iter;
        return res;
      }
    }
    if (mu < 1e-16) break;

    const Scaling sc = compute_scaling(L, z, s);
    if (!sc.ok) break;

    // Assemble the Newton system once; predictor and corrector share it.
    K.setZero();
    K.block(0, 0, m, nz) = L.A;
    K.block(0, tau_idx, m, 1) = -L.b;
    K.block(m, nz, nz, m) = -L.A.transpose();
    K.block(m, tau_idx, nz, 1) = L.c;
    for (int j = nf; j < nz; ++j) K(m + j, nz + m + (j - nf)) = -1.0;
    K.block(m + nz, nz, 1, m) = L.b.transpose();
    K.block(m + nz, 0, 1, nz) = -L.c.transpose();
    K(m + nz, kappa_idx) = -1.0;
    const int comp_base = m + nz + 1;
    for (int k = 0; k < nl; ++k) {
      const int j = nf + k;
      K(comp_base + k, j) = s[j];
      K(comp_base + k, nz + m + k) = z[j];
    }
    for (size_t k = 0; k < L.psd_dims.size(); ++k) {
      const int d = L.psd_dims[k];
      const int t = svec_dim(d);
      const int off = L.psd_offset[k];
      const int row = comp_base + (off - nf);
      VectorXd dscale(t);
      int q = 0;
      for (int i = 0; i < d; ++i)
        for (int j = i; j < d; ++j) dscale[q++] = 0.5 * (sc.lambda[k][i] + sc.lambda[k][j]);
      K.block(row, off, t, t) = dscale.asDiagonal() * sc.Gx[k];
      K.block(row, nz + m + (off - nf), t, t) = dscale.asDiagonal() * sc.Gs[k];
    }
    K(N - 1, tau_idx) = kappa;
    K(N - 1, kappa_idx) = tau;

    Eigen::PartialPivLU<MatrixXd> lu(K);
    auto solve_refined = [&](const VectorXd& r) {
      VectorXd d = lu.solve(r);
      d += lu.solve(r - K * d);
      return d;
    };

    const VectorXd rd = -L.A.transpose() * y - s + L.c * tau;
    const VectorXd rp = L.A * z - L.b * tau;
    const double rg = L.b.dot(y) - L.c.dot(z) - kappa;

    rhs.segment(0, m) = -rp;
    rhs.segment(m, nz) = -rd;
    rhs[m + nz] = -rg;
    for (int k = 0; k < nl; ++k) {
      const int j = nf + k;
      rhs[comp_base + k] = -z[j] * s[j];
    }
    for (size_t k = 0; k < L.psd_dims.size(); ++k) {
      const int d = L.psd_dims[k];
      const int off = L.psd_offset[k];
      int q = 0;
      for (int i = 0; i < d; ++i)
        for (int j = i; j < d; ++j) {
          rhs[comp_base + (off - nf) + q] =
              (i == j) ? -sc.lambda[k][i] * sc.lambda[k][i] : 0.0;
          ++q;
        }
    }
    rhs[N - 1] = -tau * kappa;

    delta_aff = solve_refined(rhs);
    if (!delta_aff.allFinite()) break;

    auto max_step = [&](const VectorXd& d) {
      double a = std::numeric_limits<double>::infinity();
      for (int k = 0; k < nl; ++k) {
        const int j = nf + k;
        if (d[j] < 0) a = std::min(a, z[j] / -d[j]);
        if (d[nz + m + k] < 0) a = std::min(a, s[j] / -d[nz + m + k]);
      }
      for (size_t k = 0; k < L.psd_dims.size(); ++k) {
        const int dd = L.psd_dims[k];
        const int off = L.psd_offset[k];
        const int t = svec_dim(dd);
        a = std::min(a, psd_step_bound(sc.lambda[k], sc.Gx[k], d.segment(off, t), dd));
        a = std::min(a, psd_step_bound(sc.lambda[k], sc.Gs[k],
                                       d.segment(nz + m + (off - nf), t), dd));
      }
      if (d[tau_idx] < 0) a = std::min(a, tau / -d[tau_idx]);
      if (d[kappa_idx] < 0) a = std::min(a, kappa / -d[kappa_idx]);
      return a;
    };

    const double a_aff = std::min(1.0, max_step(delta_aff));
    double zs_aff =
        (tau + a_aff * delta_aff[tau_idx]) * (kappa + a_aff * delta_aff[kappa_idx]);
    {
      VectorXd z2 = z, s2 = s;
      z2 += a_aff * delta_aff.segment(0, nz);
      for (int k = 0; k < nc; ++k) s2[nf + k] += a_aff * delta_aff[nz + m + k];
      zs_aff += z2.dot(s2);
    }
    const double mu_aff = zs_aff / (nu + 1.0);
    double sigma = std::pow(std::max(0.0, mu_aff / mu), 3);
    sigma = std::min(1.0, std::max(1e-8, sigma));

    // Corrector right-hand side: same linear residuals, recentered
    // complementarity with the Mehrotra second-order term.
    for (int k = 0; k < nl; ++k) {
      const int j = nf + k;
      rhs[comp_base + k] =
          sigma * mu - z[j] * s[j] - delta_aff[j] * delta_aff[nz + m + k];
    }
    for (size_t k = 0; k < L.psd_dims.size(); ++k) {
      const int d = L.psd_dims[k];
      const int off = L.psd_offset[k];
      const int t = svec_dim(d);
      const MatrixXd dX = smat_of(sc.Gx[k] * delta_aff.segment(off, t), d);
      const MatrixXd dS =
          smat_of(sc.Gs[k] * delta_aff.segment(nz + m + (off - nf), t), d);
      const MatrixXd H = 0.5 * (dX * dS + dS * dX);
      int q = 0;
      for (int i = 0; i < d; ++i)
        for (int j = i; j < d; ++j) {
          const double lam2 = (i == j) ? sc.lambda[k][i] * sc.lambda[k][i] : 0.0;
          const double target = (i == j) ? sigma * mu : 0.0;
          const double hij = (i == j) ? H(i, j) : kSqrt2 * H(i, j);
          rhs[comp_base + (off - nf) + q] = target - lam2 - hij;
          ++q;
        }
    }
    rhs[N - 1] = sigma * mu - tau * kappa - delta_aff[tau_idx] * delta_aff[kappa_idx];

    delta = solve_refined(rhs);
    if (!delta.allFinite()) break;

    const double alpha = std::min(1.0, 0.99 * max_step(delta));
    z += alpha * delta.segment(0, nz);
    y += alpha * delta.segment(nz, m);
    for (int k = 0; k < nc; ++k) s[nf + k] += alpha * delta[nz + m + k];
    tau += alpha * delta[tau_idx];
    kappa += alpha * delta[kappa_idx];
    if (!(tau > 0) || !z.allFinite() || !s.allFinite()) break;
  }

  // Iteration cap or numerical trouble: accept relaxed tolerances, then
  // relaxed certificates, before giving up.
  if (have_best && best_pres <= opts_.relaxed_feas && best_dres <= opts_.relaxed_feas &&
      best_gap <= opts_.relaxed_gap)
    return finish_optimal(best_z, best_tau, best_pres, best_dres, best_gap);
  {
    const double by = L.b.dot(y);
    if (by > 0) {
      const VectorXd v = (L.A.transpose() * y + s) / by;
      if (v.lpNorm<Eigen::Infinity>() <=
          opts_.relaxed_infeas * (1.0 + y.lpNorm<Eigen::Infinity>() / by)) {
        res.status = SolveStatus::Infeasible;
        res.iterations = iter;
        return res;
      }
    }
    const double cz = -L.c.dot(z);
    if (cz > 0) {
      const VectorXd v = (L.A * z) / cz;
      if (v.lpNorm<Eigen::Infinity>() <=
          opts_.relaxed_infeas * (1.0 + z.lpNorm<Eigen::Infinity>() / cz)) {
        res.status = SolveStatus::Unbounded;
        res.iterations = iter;
        return res;
      }
    }
  }
  res.status = SolveStatus::NumericalFailure;
  res.iterations = iter;
  return res;
}

const SolverBackend& default_solver() {
  static const InteriorPointSolver solver;
  return solver;
}

}  // namespace invkit

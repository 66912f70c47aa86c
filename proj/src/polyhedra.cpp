#include "invkit/polyhedra.hpp"

#include <algorithm>
#include <bitset>
#include <cmath>
#include <limits>
#include <random>

#include "invkit/errors.hpp"
#include "invkit/lp.hpp"

namespace invkit {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Row budget shared by Fourier-Motzkin and double description.
constexpr int kMaxIntermediateRows = 100000;
constexpr int kMaxWorkingRows = 2000;
constexpr int kMaxDDRows = 256;

MatrixXd rows_to_matrix(const std::vector<VectorXd>& rows, int n) {
  MatrixXd M(rows.size(), n);
  for (size_t i = 0; i < rows.size(); ++i) M.row(i) = rows[i].transpose();
  return M;
}

}  // namespace

HPolyhedron::HPolyhedron(MatrixXd A, VectorXd b)
    : n_(static_cast<int>(A.cols())), A_(std::move(A)), b_(std::move(b)) {
  if (A_.rows() != b_.size())
    fail(ErrorCode::DimensionMismatch, "HPolyhedron: rows of A vs entries of b");
  if (n_ <= 0) fail(ErrorCode::InvalidArgument, "HPolyhedron: ambient dimension");
}

HPolyhedron HPolyhedron::cone(MatrixXd A) {
  const int m = static_cast<int>(A.rows());
  return HPolyhedron(std::move(A), VectorXd::Zero(m));
}

HPolyhedron HPolyhedron::box(int n, double radius) {
  MatrixXd A(2 * n, n);
  A.topRows(n) = MatrixXd::Identity(n, n);
  A.bottomRows(n) = -MatrixXd::Identity(n, n);
  return HPolyhedron(std::move(A), VectorXd::Constant(2 * n, radius));
}

HPolyhedron HPolyhedron::full_space(int n) {
  return HPolyhedron(MatrixXd(0, n), VectorXd(0));
}

bool HPolyhedron::is_cone(double tol) const {
  return b_.size() == 0 || b_.cwiseAbs().maxCoeff() <= tol;
}

HPolyhedron HPolyhedron::canonicalized(double tol) const {
  std::vector<VectorXd> rows;
  std::vector<double> offs;
  bool empty_marker = false;
  for (int i = 0; i < num_rows(); ++i) {
    const double nrm = A_.row(i).norm();
    if (nrm <= 1e-12) {
      if (b_[i] < -1e-12) empty_marker = true;
      continue;  // 0 <= b trivial
    }
    const VectorXd a = A_.row(i).transpose() / nrm;
    const double bi = b_[i] / nrm;
    bool merged = false;
    for (size_t k = 0; k < rows.size(); ++k)
      if ((rows[k] - a).lpNorm<Eigen::Infinity>() <= tol) {
        offs[k] = std::min(offs[k], bi);
        merged = true;
        break;
      }
    if (!merged) {
      rows.push_back(a);
      offs.push_back(bi);
    }
  }
  if (empty_marker) {
    rows.push_back(VectorXd::Zero(n_));
    offs.push_back(-1.0);
  }
  MatrixXd A = rows_to_matrix(rows, n_);
  VectorXd b(offs.size());
  for (size_t i = 0; i < offs.size(); ++i) b[i] = offs[i];
  return HPolyhedron(std::move(A), std::move(b));
}

bool HPolyhedron::contains(const VectorXd& x, double tol) const {
  if (x.size() != n_) fail(ErrorCode::DimensionMismatch, "contains: point dimension");
  for (int i = 0; i < num_rows(); ++i) {
    const double nrm = std::max(A_.row(i).norm(), 1e-12);
    if ((A_.row(i).dot(x) - b_[i]) / nrm > tol) return false;
  }
  return true;
}

bool HPolyhedron::is_empty() const {
  if (is_cone()) return false;  // contains the origin
  const LpResult r = solve_lp(A_, b_, VectorXd::Zero(n_));
  if (r.status == SolveStatus::NumericalFailure)
    fail(ErrorCode::NumericalFailure, "is_empty: feasibility LP failed");
  return r.status == SolveStatus::Infeasible;
}

HPolyhedron HPolyhedron::intersect(const HPolyhedron& other) const {
  if (other.n_ != n_) fail(ErrorCode::DimensionMismatch, "intersect: ambient dims");
  MatrixXd A(num_rows() + other.num_rows(), n_);
  A << A_, other.A_;
  VectorXd b(b_.size() + other.b_.size());
  b << b_, other.b_;
  return HPolyhedron(std::move(A), std::move(b));
}

HPolyhedron HPolyhedron::cross(const HPolyhedron& other) const {
  MatrixXd A = MatrixXd::Zero(num_rows() + other.num_rows(), n_ + other.n_);
  A.topLeftCorner(num_rows(), n_) = A_;
  A.bottomRightCorner(other.num_rows(), other.n_) = other.A_;
  VectorXd b(b_.size() + other.b_.size());
  b << b_, other.b_;
  return HPolyhedron(std::move(A), std::move(b));
}

HPolyhedron HPolyhedron::preimage(const MatrixXd& M) const {
  if (M.rows() != n_) fail(ErrorCode::DimensionMismatch, "preimage: map range");
  return HPolyhedron(A_ * M, b_);
}

double HPolyhedron::support_lp(const VectorXd& y) const {
  const LpResult r = solve_lp(A_, b_, y);
  switch (r.status) {
    case SolveStatus::Optimal: return r.objective;
    case SolveStatus::Unbounded: return kInf;
    case SolveStatus::Infeasible: return -kInf;
    case SolveStatus::NumericalFailure: break;
  }
  fail(ErrorCode::NumericalFailure, "support_lp: LP failed");
}

HPolyhedron HPolyhedron::eliminate_last() const {
  if (n_ < 2) fail(ErrorCode::InvalidArgument, "eliminate_last: need n >= 2");
  const HPolyhedron C = canonicalized();
  std::vector<int> pos, neg, zero;
  for (int i = 0; i < C.num_rows(); ++i) {
    const double c = C.A_(i, n_ - 1);
    if (c > 1e-10)
      pos.push_back(i);
    else if (c < -1e-10)
      neg.push_back(i);
    else
      zero.push_back(i);
  }
  const long count =
      static_cast<long>(zero.size()) + static_cast<long>(pos.size()) * neg.size();
  if (count > kMaxIntermediateRows)
    fail(ErrorCode::ComplexityBudgetExceeded,
         "eliminate_last: too many intermediate rows");
  MatrixXd A(count, n_ - 1);
  VectorXd b(count);
  long r = 0;
  for (int i : zero) {
    A.row(r) = C.A_.row(i).head(n_ - 1);
    b[r] = C.b_[i];
    ++r;
  }
  for (int p : pos)
    for (int q : neg) {
      const double cp = C.A_(p, n_ - 1), cq = C.A_(q, n_ - 1);
      A.row(r) = -cq * C.A_.row(p).head(n_ - 1) + cp * C.A_.row(q).head(n_ - 1);
      b[r] = -cq * C.b_[p] + cp * C.b_[q];
      ++r;
    }
  const HPolyhedron proj = HPolyhedron(std::move(A), std::move(b)).canonicalized();
  if (proj.num_rows() > kMaxWorkingRows)
    fail(ErrorCode::ComplexityBudgetExceeded,
         "eliminate_last: projection too complex after deduplication");
  if (proj.is_empty()) return proj;
  return proj.remove_redundancy();
}

HPolyhedron HPolyhedron::eliminate_last(int count) const {
  HPolyhedron P = *this;
  for (int k = 0; k < count; ++k) P = P.eliminate_last();
  return P;
}

HPolyhedron HPolyhedron::remove_redundancy(double tol) const {
  HPolyhedron C = canonicalized();
  if (C.is_empty()) fail(ErrorCode::EmptyPolyhedron, "remove_redundancy: empty input");
  const int m = C.num_rows();
  const double R =
      1e4 * (1.0 + (m > 0 ? C.b_.cwiseAbs().maxCoeff() : 0.0));
  std::vector<char> active(m, 1);
  for (int i = 0; i < m; ++i) {
    // Maximize a_i^T x over the others, bounded by b_i + 1 so the LP
    // cannot be unbounded; the row is needed iff the optimum clears b_i.
    // The box at radius R keeps the optimal face compact: the interior
    // point LP stalls on vertex-free faces such as a lone halfplane.
    std::vector<int> rows;
    for (int j = 0; j < m; ++j)
      if (j != i && active[j]) rows.push_back(j);
    const int nr = static_cast<int>(rows.size());
    MatrixXd A = MatrixXd::Zero(nr + 1 + 2 * n_, n_);
    VectorXd b(nr + 1 + 2 * n_);
    for (int k = 0; k < nr; ++k) {
      A.row(k) = C.A_.row(rows[k]);
      b[k] = C.b_[rows[k]];
    }
    A.row(nr) = C.A_.row(i);
    b[nr] = C.b_[i] + 1.0;
    for (int j = 0; j < n_; ++j) {
      A(nr + 1 + 2 * j, j) = 1.0;
      b[nr + 1 + 2 * j] = R;
      A(nr + 2 + 2 * j, j) = -1.0;
      b[nr + 2 + 2 * j] = R;
    }
    const LpResult r = solve_lp(A, b, C.A_.row(i).transpose());
    if (r.status != SolveStatus::Optimal)
      fail(ErrorCode::NumericalFailure, "remove_redundancy: LP failed");
    if (r.objective <= C.b_[i] + tol) active[i] = 0;
  }
  std::vector<VectorXd> keep;
  std::vector<double> offs;
  for (int i = 0; i < m; ++i)
    if (active[i]) {
      keep.push_back(C.A_.row(i).transpose());
      offs.push_back(C.b_[i]);
    }
  if (keep.empty()) return full_space(n_);
  MatrixXd A = rows_to_matrix(keep, n_);
  VectorXd b(offs.size());
  for (size_t i = 0; i < offs.size(); ++i) b[i] = offs[i];
  return HPolyhedron(std::move(A), std::move(b));
}

HPolyhedron::AffineHull HPolyhedron::affine_hull() const {
  const HPolyhedron C = canonicalized();
  const int m = C.num_rows();
  const double R =
      1e4 * (1.0 + (m > 0 ? C.b_.cwiseAbs().maxCoeff() : 0.0));

  // Chebyshev-style LP over (x, d): maximize the common slack d <= 1.
  auto slack_lp = [&](const std::vector<int>& eq_rows) {
    std::vector<char> is_eq(m, 0);
    for (int i : eq_rows) is_eq[i] = 1;
    const int rows = m + 2 * n_ + 1;
    MatrixXd A = MatrixXd::Zero(rows - static_cast<int>(eq_rows.size()), n_ + 1);
    VectorXd b(A.rows());
    MatrixXd Aeq(eq_rows.size(), n_ + 1);
    VectorXd beq(eq_rows.size());
    int r = 0, re = 0;
    for (int i = 0; i < m; ++i) {
      if (is_eq[i]) {
        Aeq.row(re).head(n_) = C.A_.row(i);
        Aeq(re, n_) = 0.0;
        beq[re] = C.b_[i];
        ++re;
      } else {
        A.row(r).head(n_) = C.A_.row(i);
        A(r, n_) = 1.0;
        b[r] = C.b_[i];
        ++r;
      }
    }
    for (int j = 0; j < n_; ++j) {
      A(r, j) = 1.0;
      b[r] = R;
      ++r;
      A(r, j) = -1.0;
      b[r] = R;
      ++r;
    }
    A(r, n_) = 1.0;
    b[r] = 1.0;
    ++r;
    VectorXd c = VectorXd::Zero(n_ + 1);
    c[n_] = 1.0;
    return solve_lp(A, b, c, Aeq, beq);
  };

  AffineHull H;
  H.empty = false;
  const LpResult cheb = slack_lp({});
  if (cheb.status != SolveStatus::Optimal)
    fail(ErrorCode::NumericalFailure, "affine_hull: slack LP failed");
  // Degenerate feasible sets solve to a marginally negative slack, so a
  // clear margin is required here; borderline cases fall through to the
  // per-row LPs whose infeasibility certificates are exact.
  if (cheb.objective < -1e-6 && !C.is_cone(1e-9)) {
    H.empty = true;
    H.dim = -1;
    return H;
  }
  if (cheb.objective > 1e-7) {
    H.dim = n_;
    H.relint = cheb.x.head(n_);
    return H;
  }

  // Degenerate: find the implicit equality rows one by one. The same box
  // as in slack_lp keeps these LPs compact; on a lineality direction the
  // objective is constant and the unboxed face stretches to infinity.
  for (int i = 0; i < m; ++i) {
    MatrixXd A = MatrixXd::Zero(m + 1 + 2 * n_, n_);
    VectorXd b(m + 1 + 2 * n_);
    A.topRows(m) = C.A_;
    b.head(m) = C.b_;
    A.row(m) = -C.A_.row(i);
    b[m] = 1.0 - C.b_[i];  // slack of row i capped at 1
    for (int j = 0; j < n_; ++j) {
      A(m + 1 + 2 * j, j) = 1.0;
      b[m + 1 + 2 * j] = R;
      A(m + 2 + 2 * j, j) = -1.0;
      b[m + 2 + 2 * j] = R;
    }
    const LpResult r = solve_lp(A, b, -C.A_.row(i).transpose());
    if (r.status == SolveStatus::Infeasible) {
      H.empty = true;
      H.dim = -1;
      return H;
    }
    if (r.status != SolveStatus::Optimal)
      fail(ErrorCode::NumericalFailure, "affine_hull: slack LP failed");
    if (C.b_[i] + r.objective <= 1e-7) H.implicit_rows.push_back(i);
  }
  if (H.implicit_rows.empty()) {
    H.dim = n_;
    H.relint = cheb.x.head(n_);
    return H;
  }
  MatrixXd E(H.implicit_rows.size(), n_);
  for (size_t k = 0; k < H.implicit_rows.size(); ++k)
    E.row(k) = C.A_.row(H.implicit_rows[k]);
  H.dim = n_ - Subspace::span_of(E.transpose(), 1e-8).dim();
  const LpResult inner = slack_lp(H.implicit_rows);
  if (inner.status != SolveStatus::Optimal)
    fail(ErrorCode::NumericalFailure, "affine_hull: interior LP failed");
  H.relint = inner.x.head(n_);
  return H;
}

int HPolyhedron::dim() const { return affine_hull().dim; }

std::optional<VectorXd> HPolyhedron::relative_interior_point() const {
  const AffineHull H = affine_hull();
  if (H.empty) return std::nullopt;
  return H.relint;
}

// ---------------------------------------------------------------------------
// Double description: V-representation of {x : Ax <= 0} with explicit
// lineality handling (cdd-style).

namespace {

struct DDRay {
  VectorXd v;
  std::bitset<kMaxDDRows> tight;
};

struct DDResult {
  std::vector<VectorXd> rays;       // unit extreme rays modulo lineality
  std::vector<VectorXd> lineality;  // basis of the lineality space
};

DDResult dd_cone(const MatrixXd& A_in) {
  const int n = static_cast<int>(A_in.cols());
  const HPolyhedron C =
      HPolyhedron(A_in, VectorXd::Zero(A_in.rows())).canonicalized();
  const MatrixXd& A = C.A();
  const int m = static_cast<int>(A.rows());
  if (m > kMaxDDRows)
    fail(ErrorCode::ComplexityBudgetExceeded, "double description: too many rows");

  std::vector<VectorXd> L;
  for (int j = 0; j < n; ++j) L.push_back(VectorXd::Unit(n, j));
  std::vector<DDRay> R;

  for (int k = 0; k < m; ++k) {
    const VectorXd a = A.row(k).transpose();
    // If the row cuts the lineality space, split off a pivot direction.
    int pivot = -1;
    double best = 1e-9;
    for (size_t l = 0; l < L.size(); ++l)
      if (std::abs(a.dot(L[l])) > best) {
        best = std::abs(a.dot(L[l]));
        pivot = static_cast<int>(l);
      }
    if (pivot >= 0) {
      const VectorXd l0 = L[pivot];
      const double s0 = a.dot(l0);
      L.erase(L.begin() + pivot);
      for (VectorXd& l : L) {
        l -= (a.dot(l) / s0) * l0;
        const double nl = l.norm();
        if (nl > 1e-12) l /= nl;
      }
      for (DDRay& r : R) {
        r.v -= (a.dot(r.v) / s0) * l0;
        const double nv = r.v.norm();
        if (nv > 1e-12) r.v /= nv;
        r.tight.set(k);  // projected into the hyperplane of row k
      }
      DDRay r0;
      r0.v = (s0 > 0 ? -l0 : l0).normalized();
      for (int kk = 0; kk < k; ++kk) r0.tight.set(kk);  // was lineality
      R.push_back(std::move(r0));
      continue;
    }

    std::vector<int> posi, negi;
    std::vector<DDRay> next;
    for (size_t i = 0; i < R.size(); ++i) {
      const double val = a.dot(R[i].v);
      if (val > 1e-9) {
        posi.push_back(static_cast<int>(i));
      } else if (val < -1e-9) {
        negi.push_back(static_cast<int>(i));
        next.push_back(R[i]);
      } else {
        DDRay r = R[i];
        r.tight.set(k);
        next.push_back(std::move(r));
      }
    }
    if (static_cast<long>(next.size()) +
            static_cast<long>(posi.size()) * negi.size() >
        kMaxIntermediateRows)
      fail(ErrorCode::ComplexityBudgetExceeded, "double description: ray blowup");
    for (int p : posi)
      for (int q : negi) {
        const std::bitset<kMaxDDRows> common = R[p].tight & R[q].tight;
        bool adjacent = true;
        for (size_t t = 0; t < R.size(); ++t) {
          if (static_cast<int>(t) == p || static_cast<int>(t) == q) continue;
          if ((common & ~R[t].tight).none()) {
            adjacent = false;
            break;
          }
        }
        if (!adjacent) continue;
        DDRay r;
        r.v = a.dot(R[p].v) * R[q].v - a.dot(R[q].v) * R[p].v;
        const double nv = r.v.norm();
        if (nv <= 1e-12) continue;
        r.v /= nv;
        r.tight = common;
        r.tight.set(k);
        next.push_back(std::move(r));
      }
    // Deduplicate directions.
    std::vector<DDRay> dedup;
    for (DDRay& r : next) {
      bool seen = false;
      for (const DDRay& s : dedup)
        if ((r.v - s.v).lpNorm<Eigen::Infinity>() <= 1e-9) {
          seen = true;
          break;
        }
      if (!seen) dedup.push_back(std::move(r));
    }
    R = std::move(dedup);
  }

  DDResult out;
  for (DDRay& r : R) out.rays.push_back(std::move(r.v));
  if (!L.empty()) {
    const Subspace S = Subspace::span_of(rows_to_matrix(L, n).transpose());
    for (int j = 0; j < S.dim(); ++j) out.lineality.push_back(S.basis().col(j));
  }
  return out;
}

}  // namespace

VPolyhedron to_vrep(const HPolyhedron& P) {
  const int n = P.ambient_dim();
  VPolyhedron V;
  V.n = n;
  if (!P.is_cone() && P.is_empty()) return V;
  const HPolyhedron C = P.canonicalized();
  // Homogenize: (x, t) with Ax <= bt, t >= 0.
  MatrixXd H(C.num_rows() + 1, n + 1);
  H.topLeftCorner(C.num_rows(), n) = C.A();
  H.topRightCorner(C.num_rows(), 1) = -C.b();
  H.bottomRows(1).setZero();
  H(C.num_rows(), n) = -1.0;
  const DDResult dd = dd_cone(H);
  for (const VectorXd& r : dd.rays) {
    const double t = r[n];
    if (t > 1e-9)
      V.vertices.push_back(r.head(n) / t);
    else
      V.rays.push_back(r.head(n).normalized());
  }
  for (const VectorXd& l : dd.lineality) {
    const VectorXd d = l.head(n).normalized();
    V.rays.push_back(d);
    V.rays.push_back(-d);
  }
  // Remove zero rays and duplicates introduced by homogenization.
  std::vector<VectorXd> rays;
  for (const VectorXd& r : V.rays) {
    if (r.norm() < 1e-9) continue;
    bool seen = false;
    for (const VectorXd& s : rays)
      if ((r - s).lpNorm<Eigen::Infinity>() <= 1e-9) seen = true;
    if (!seen) rays.push_back(r);
  }
  V.rays = std::move(rays);
  return V;
}

HPolyhedron to_hrep(const VPolyhedron& V) {
  const int n = V.n;
  if (V.vertices.empty())
    return HPolyhedron(MatrixXd::Zero(1, n), -VectorXd::Ones(1));  // empty
  MatrixXd G(V.vertices.size() + V.rays.size(), n + 1);
  for (size_t i = 0; i < V.vertices.size(); ++i) {
    G.row(i).head(n) = V.vertices[i].transpose();
    G(i, n) = 1.0;
  }
  for (size_t i = 0; i < V.rays.size(); ++i) {
    G.row(V.vertices.size() + i).head(n) = V.rays[i].transpose();
    G(V.vertices.size() + i, n) = 0.0;
  }
  const DDResult dd = dd_cone(G);  // generators of the dual cone
  std::vector<VectorXd> rows;
  std::vector<double> offs;
  auto add_row = [&](const VectorXd& u) {
    rows.push_back(u.head(n));
    offs.push_back(-u[n]);
  };
  for (const VectorXd& u : dd.rays) add_row(u);
  for (const VectorXd& l : dd.lineality) {
    add_row(l);
    add_row(-l);
  }
  MatrixXd A = rows_to_matrix(rows, n);
  VectorXd b(offs.size());
  for (size_t i = 0; i < offs.size(); ++i) b[i] = offs[i];
  return HPolyhedron(std::move(A), std::move(b)).canonicalized();
}

std::vector<VectorXd> vertices_of(const HPolyhedron& P) {
  const VPolyhedron V = to_vrep(P);
  if (!V.rays.empty() && !P.is_cone())
    fail(ErrorCode::UnboundedNonCone, "vertices_of: polyhedron is unbounded");
  return V.vertices;
}

std::vector<VectorXd> cone_generators(const HPolyhedron& cone) {
  return to_vrep(cone).rays;
}

HPolyhedron polar_polytope(const HPolyhedron& P) {
  const HPolyhedron C = P.canonicalized();
  const int n = C.ambient_dim();
  VPolyhedron V;
  V.n = n;
  if (C.is_cone(1e-12)) {
    V.vertices.push_back(VectorXd::Zero(n));
    for (int i = 0; i < C.num_rows(); ++i)
      V.rays.push_back(C.A().row(i).transpose());
    return to_hrep(V);
  }
  if ((C.b().array() < -1e-9).any())
    fail(ErrorCode::OriginNotContained, "polar_polytope: some offset is negative");
  V.vertices.push_back(VectorXd::Zero(n));
  for (int i = 0; i < C.num_rows(); ++i) {
    if (C.b()[i] > 1e-9)
      V.vertices.push_back(C.A().row(i).transpose() / C.b()[i]);
    else
      V.rays.push_back(C.A().row(i).transpose());
  }
  return to_hrep(V);
}

// ---------------------------------------------------------------------------
// Conic partitions.

int ConicPartition::ambient_dim() const {
  return pieces.empty() ? 0 : pieces.front().ambient_dim();
}

VectorXd ConicPartition::normal_toward(int i, int j) const {
  for (size_t k = 0; k < neighbors.size(); ++k) {
    if (neighbors[k].first == i && neighbors[k].second == j) return normals[k];
    if (neighbors[k].first == j && neighbors[k].second == i) return -normals[k];
  }
  fail(ErrorCode::InvalidArgument, "normal_toward: not a neighbor pair");
}

int ConicPartition::find_piece(const VectorXd& x, double tol) const {
  for (size_t i = 0; i < pieces.size(); ++i)
    if (pieces[i].contains(x, tol)) return static_cast<int>(i);
  return -1;
}

ConicPartition build_partition(std::vector<HPolyhedron> cones, bool allow_partial) {
  if (cones.empty()) fail(ErrorCode::InvalidArgument, "build_partition: no pieces");
  const int n = cones.front().ambient_dim();
  ConicPartition part;
  std::vector<VectorXd> interior;
  for (HPolyhedron& c : cones) {
    if (c.ambient_dim() != n)
      fail(ErrorCode::DimensionMismatch, "build_partition: mixed ambient dims");
    if (!c.is_cone(1e-9))
      fail(ErrorCode::InvalidArgument, "build_partition: piece is not a cone");
    HPolyhedron canon = c.canonicalized().remove_redundancy();
    if (canon.dim() != n)
      fail(ErrorCode::InvalidArgument, "build_partition: piece not full-dimensional");
    interior.push_back(*canon.relative_interior_point());
    part.pieces.push_back(std::move(canon));
  }
  const int m = static_cast<int>(part.pieces.size());

  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      const HPolyhedron inter = part.pieces[i].intersect(part.pieces[j]);
      const int d = inter.dim();
      if (d == n)
        fail(ErrorCode::OverlappingPieces, "build_partition: pieces " +
                                               std::to_string(i) + " and " +
                                               std::to_string(j) + " overlap");
      if (d != n - 1) continue;
      // Unit normal of the shared hyperplane, oriented toward piece i.
      // The affine hull is a hyperplane through 0; its normal spans the
      // row space of the implicit equality rows.
      MatrixXd AB(part.pieces[i].num_rows() + part.pieces[j].num_rows(), n);
      AB << part.pieces[i].A(), part.pieces[j].A();
      // Find a row that is tight on the whole intersection: the affine
      // hull normal maximizes |a . relint(inter)| = 0 among rows.
      const VectorXd mid = *inter.relative_interior_point();
      VectorXd normal = VectorXd::Zero(n);
      double best = 1e-6;
      for (int r = 0; r < AB.rows(); ++r) {
        const double v = std::abs(AB.row(r).dot(mid));
        if (v < best && AB.row(r).norm() > 0.5) {
          best = v;
          normal = AB.row(r).transpose();
        }
      }
      if (normal.norm() < 0.5)
        fail(ErrorCode::NumericalFailure, "build_partition: interface normal");
      normal.normalize();
      if (normal.dot(interior[i]) < 0) normal = -normal;
      if (normal.dot(interior[i]) <= 1e-9 || normal.dot(interior[j]) >= -1e-9)
        fail(ErrorCode::NumericalFailure,
             "build_partition: interface normal orientation");
      part.neighbors.emplace_back(i, j);
      part.normals.push_back(normal);
    }

  // Coverage: every facet of every piece must reappear in a neighbor.
  part.covers = true;
  for (int i = 0; i < m && part.covers; ++i) {
    const HPolyhedron& Pi = part.pieces[i];
    for (int r = 0; r < Pi.num_rows() && part.covers; ++r) {
      MatrixXd F(Pi.num_rows() + 1, n);
      F << Pi.A(), -Pi.A().row(r);
      const std::vector<VectorXd> gens = cone_generators(HPolyhedron::cone(F));
      bool matched = false;
      for (int j = 0; j < m && !matched; ++j) {
        if (j == i) continue;
        bool inside = true;
        for (const VectorXd& g : gens)
          if (!part.pieces[j].contains(g, 1e-9)) {
            inside = false;
            break;
          }
        matched = inside;
      }
      if (!matched) part.covers = false;
    }
  }
  if (part.covers) {
    std::mt19937 rng(20240811);
    std::normal_distribution<double> g;
    for (int s = 0; s < 500; ++s) {
      VectorXd d(n);
      for (int j = 0; j < n; ++j) d[j] = g(rng);
      if (d.norm() < 1e-6) continue;
      d.normalize();
      if (part.find_piece(d, 1e-9) < 0) {
        part.covers = false;
        break;
      }
    }
  }
  if (!part.covers && !allow_partial)
    fail(ErrorCode::NotCovering, "build_partition: union does not cover R^n");
  return part;
}

std::vector<HPolyhedron> facet_cones(const HPolyhedron& P) {
  const HPolyhedron C = P.canonicalized().remove_redundancy();
  const int n = C.ambient_dim();
  if ((C.b().array() <= 1e-9).any())
    fail(ErrorCode::OriginNotContained, "facet_cones: origin not interior");
  const VPolyhedron V = to_vrep(C);
  if (!V.rays.empty())
    fail(ErrorCode::InvalidArgument, "facet_cones: polytope required");
  std::vector<HPolyhedron> cones;
  for (int i = 0; i < C.num_rows(); ++i) {
    VPolyhedron F;
    F.n = n;
    F.vertices.push_back(VectorXd::Zero(n));
    for (const VectorXd& v : V.vertices)
      if (std::abs(C.A().row(i).dot(v) - C.b()[i]) <= 1e-8 * (1.0 + v.norm()))
        F.rays.push_back(v.normalized());
    cones.push_back(to_hrep(F));
  }
  return cones;
}

}  // namespace invkit

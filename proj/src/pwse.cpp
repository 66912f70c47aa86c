#include "invkit/pwse.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <set>

#include "invkit/errors.hpp"

namespace invkit {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Loose on purpose: a solver can report an eigenvalue of 1e-8 for a
// direction that is exactly degenerate, and treating it as regular would
// promise full polar coverage that the pruned image cones cannot deliver.
bool is_singular(const SymmetricMatrix& Q) {
  const EigResult e = eig_sym(Q);
  const double scale = std::max(1.0, e.eigenvalues.cwiseAbs().maxCoeff());
  return e.eigenvalues.minCoeff() <= 1e-7 * scale;
}

int span_dim(const std::vector<VectorXd>& vs, int n) {
  if (vs.empty()) return 0;
  MatrixXd M(n, vs.size());
  for (size_t k = 0; k < vs.size(); ++k) M.col(k) = vs[k];
  return Subspace::span_of(M).dim();
}

bool same_cone_rows(const HPolyhedron& P, const HPolyhedron& Q, double tol) {
  if (P.num_rows() != Q.num_rows()) return false;
  std::vector<char> used(Q.num_rows(), 0);
  for (int i = 0; i < P.num_rows(); ++i) {
    bool found = false;
    for (int j = 0; j < Q.num_rows() && !found; ++j) {
      if (used[j]) continue;
      if ((P.A().row(i) - Q.A().row(j)).norm() <= tol) {
        used[j] = 1;
        found = true;
      }
    }
    if (!found) return false;
  }
  return true;
}

}  // namespace

PiecewiseSemiEllipsoid::PiecewiseSemiEllipsoid(ConicPartition partition,
                                               std::vector<SymmetricMatrix> Q)
    : ambient_(partition.ambient_dim()),
      partition_(std::move(partition)),
      Q_(std::move(Q)) {
  if (partition_.pieces.size() != Q_.size())
    fail(ErrorCode::DimensionMismatch,
         "PiecewiseSemiEllipsoid: one matrix per piece required");
  for (const SymmetricMatrix& q : Q_)
    if (q.dim() != ambient_)
      fail(ErrorCode::DimensionMismatch,
           "PiecewiseSemiEllipsoid: matrix dimension vs partition");
}

PiecewiseSemiEllipsoid::PiecewiseSemiEllipsoid(const PiecewiseSemiEllipsoid& o)
    : ambient_(o.ambient_), partition_(o.partition_), Q_(o.Q_) {
  std::lock_guard<std::mutex> lock(o.polar_mutex_);
  polar_cache_ = o.polar_cache_;
}

PiecewiseSemiEllipsoid& PiecewiseSemiEllipsoid::operator=(
    const PiecewiseSemiEllipsoid& o) {
  if (this == &o) return *this;
  ambient_ = o.ambient_;
  partition_ = o.partition_;
  Q_ = o.Q_;
  std::shared_ptr<const PiecewiseSemiEllipsoid> cache;
  {
    std::lock_guard<std::mutex> lock(o.polar_mutex_);
    cache = o.polar_cache_;
  }
  std::lock_guard<std::mutex> lock(polar_mutex_);
  polar_cache_ = std::move(cache);
  return *this;
}

PiecewiseSemiEllipsoid PiecewiseSemiEllipsoid::origin_only(int ambient_dim) {
  ConicPartition part;
  part.covers = false;
  PiecewiseSemiEllipsoid S(std::move(part), {});
  S.ambient_ = ambient_dim;
  return S;
}

ExtendedReal PiecewiseSemiEllipsoid::gauge(const VectorXd& x) const {
  if (x.size() != ambient_)
    fail(ErrorCode::DimensionMismatch, "gauge: point dimension");
  if (x.lpNorm<Eigen::Infinity>() == 0.0) return 0.0;
  const int idx = partition_.find_piece(x, 1e-10);
  if (idx < 0) {
    if (!partition_.covers) return kInf;
    fail(ErrorCode::NoPieceContains, "gauge: no piece contains the point");
  }
  const double value = std::sqrt(std::max(0.0, Q_[idx].quad(x)));
#ifndef NDEBUG
  for (size_t k = 0; k < Q_.size(); ++k)
    if (partition_.pieces[k].contains(x, 1e-10)) {
      const double other = std::sqrt(std::max(0.0, Q_[k].quad(x)));
      assert(std::abs(other - value) <= 1e-7 * (1.0 + value));
    }
#endif
  return value;
}

ExtendedReal PiecewiseSemiEllipsoid::support(const VectorXd& y) const {
  return polar().gauge(y);
}

bool PiecewiseSemiEllipsoid::sublevel_contains(const VectorXd& x) const {
  return gauge(x) <= 1.0 + 1e-9;
}

std::vector<PwseViolation> PiecewiseSemiEllipsoid::validate() const {
  std::vector<PwseViolation> out;
  for (int i = 0; i < num_pieces(); ++i) {
    if (!is_psd(Q_[i], 1e-9)) {
      PwseViolation v;
      v.kind = PwseViolation::Kind::NotPsd;
      v.i = i;
      v.residual = eig_sym(Q_[i]).eigenvalues.minCoeff();
      v.description = "piece " + std::to_string(i) + " matrix not PSD";
      out.push_back(std::move(v));
    }
  }
  for (size_t k = 0; k < partition_.neighbors.size(); ++k) {
    const auto [i, j] = partition_.neighbors[k];
    const VectorXd& nrm = partition_.normals[k];
    // The shared face spans the hyperplane orthogonal to the interface
    // normal; continuity requires the two quadratics to agree there.
    MatrixXd nmat(ambient_, 1);
    nmat.col(0) = nrm;
    const Subspace W = orthogonal_complement(Subspace::span_of(nmat));
    const MatrixXd diff = W.basis().transpose() *
                          (Q_[i].dense() - Q_[j].dense()) * W.basis();
    const double cont = diff.cwiseAbs().maxCoeff();
    if (cont > 1e-8) {
      PwseViolation v;
      v.kind = PwseViolation::Kind::Continuity;
      v.i = i;
      v.j = j;
      v.residual = cont;
      v.description = "continuity violated on interface of pieces " +
                      std::to_string(i) + " and " + std::to_string(j);
      out.push_back(std::move(v));
    }
    const std::vector<VectorXd> gens =
        cone_generators(partition_.pieces[i].intersect(partition_.pieces[j]));
    for (const VectorXd& g : gens) {
      const double lhs = nrm.dot(Q_[i].apply(g));
      const double rhs = nrm.dot(Q_[j].apply(g));
      if (lhs < rhs - 1e-8) {
        PwseViolation v;
        v.kind = PwseViolation::Kind::Convexity;
        v.i = i;
        v.j = j;
        v.residual = lhs - rhs;
        v.description = "convexity violated on interface of pieces " +
                        std::to_string(i) + " and " + std::to_string(j);
        out.push_back(std::move(v));
      }
    }
  }
  return out;
}

const PiecewiseSemiEllipsoid& PiecewiseSemiEllipsoid::polar() const {
  std::lock_guard<std::mutex> lock(polar_mutex_);
  if (!polar_cache_)
    polar_cache_ =
        std::make_shared<const PiecewiseSemiEllipsoid>(compute_polar());
  return *polar_cache_;
}

PiecewiseSemiEllipsoid PiecewiseSemiEllipsoid::compute_polar() const {
  const int n = ambient_;
  const int m = num_pieces();
  std::vector<std::vector<VectorXd>> piece_gens(m);
  for (int i = 0; i < m; ++i)
    piece_gens[i] = cone_generators(partition_.pieces[i]);

  std::vector<HPolyhedron> cones;
  std::vector<SymmetricMatrix> mats;
  // Matrix roundoff of order 1e-9 tilts image rays, so nearby rays snap to
  // one representative. Adjacent polar pieces then share their boundary ray
  // exactly, and the sliver image of a nearly singular matrix collapses to
  // a single ray and is pruned as lower-dimensional.
  std::vector<VectorXd> canon_rays;
  auto snap = [&](const VectorXd& w) -> VectorXd {
    for (const VectorXd& r : canon_rays)
      if ((w - r).norm() <= 1e-6) return r;
    canon_rays.push_back(w);
    return w;
  };
  auto push_candidate = [&](const std::vector<VectorXd>& rays,
                            const SymmetricMatrix& Qp) {
    if (span_dim(rays, n) < n) return;  // not full-dimensional, dropped
    VPolyhedron V;
    V.n = n;
    V.vertices.push_back(VectorXd::Zero(n));
    V.rays = rays;
    HPolyhedron cone = to_hrep(V).remove_redundancy();
    for (const HPolyhedron& c : cones)
      if (same_cone_rows(cone, c, 1e-8)) return;
    cones.push_back(std::move(cone));
    mats.push_back(Qp);
  };

  // Image pieces Q_i P_i with the pseudoinverse as matrix.
  bool any_singular = false;
  for (int i = 0; i < m; ++i) {
    const MatrixXd D = Q_[i].dense();
    if (is_singular(Q_[i])) any_singular = true;
    std::vector<VectorXd> images;
    for (const VectorXd& g : piece_gens[i]) {
      VectorXd w = D * g;
      const double nw = w.norm();
      if (nw > 1e-12) images.push_back(snap(w / nw));
    }
    push_candidate(images, pseudoinverse(Q_[i]));
  }

  // Faces shared by several pieces, found by closing the neighbor pairs
  // under intersection; each yields the convex hull of its images.
  struct Face {
    std::vector<int> I;
    std::vector<VectorXd> gens;
  };
  auto face_of = [&](const std::vector<int>& I) {
    HPolyhedron F = partition_.pieces[I[0]];
    for (size_t k = 1; k < I.size(); ++k) F = F.intersect(partition_.pieces[I[k]]);
    Face f;
    f.gens = cone_generators(F);
    return f;
  };
  std::set<std::vector<int>> seen;
  std::vector<Face> faces;
  for (const auto& [i, j] : partition_.neighbors) {
    std::vector<int> I = {i, j};
    Face f = face_of(I);
    if (span_dim(f.gens, n) < 1) continue;
    f.I = I;
    seen.insert(I);
    faces.push_back(std::move(f));
  }
  for (size_t a = 0; a < faces.size(); ++a)
    for (size_t b = a + 1; b < faces.size(); ++b) {
      std::vector<int> I;
      std::set_union(faces[a].I.begin(), faces[a].I.end(), faces[b].I.begin(),
                     faces[b].I.end(), std::back_inserter(I));
      if (I.size() <= std::max(faces[a].I.size(), faces[b].I.size())) continue;
      if (seen.count(I)) continue;
      seen.insert(I);
      Face f = face_of(I);
      if (span_dim(f.gens, n) < 1) continue;
      f.I = I;
      faces.push_back(std::move(f));
    }
  // Extend each index set to every piece containing the face, then merge.
  std::set<std::vector<int>> emitted;
  for (Face& f : faces) {
    std::vector<int> full;
    for (int k = 0; k < m; ++k) {
      bool inside = true;
      for (const VectorXd& g : f.gens)
        if (!partition_.pieces[k].contains(g, 1e-9)) {
          inside = false;
          break;
        }
      if (inside) full.push_back(k);
    }
    f.I = std::move(full);
  }
  for (const Face& f : faces) {
    if (f.I.size() < 2 || emitted.count(f.I)) continue;
    emitted.insert(f.I);
    MatrixXd span(n, f.gens.size());
    for (size_t k = 0; k < f.gens.size(); ++k) span.col(k) = f.gens[k];
    const Subspace W = Subspace::span_of(span);
    const MatrixXd Wb = W.basis();
    // The restricted matrix must agree between the pieces sharing the face.
    const MatrixXd M0 = Wb.transpose() * Q_[f.I[0]].dense() * Wb;
    for (size_t k = 1; k < f.I.size(); ++k) {
      const MatrixXd Mk = Wb.transpose() * Q_[f.I[k]].dense() * Wb;
      if ((Mk - M0).cwiseAbs().maxCoeff() > 1e-7)
        fail(ErrorCode::NumericalFailure,
             "polar: shared-face matrix differs between pieces " +
                 std::to_string(f.I[0]) + " and " + std::to_string(f.I[k]));
    }
    std::vector<VectorXd> rays;
    for (int i : f.I)
      for (const VectorXd& g : f.gens) {
        VectorXd w = Q_[i].apply(g);
        const double nw = w.norm();
        if (nw > 1e-12) rays.push_back(snap(w / nw));
      }
    const MatrixXd M0_pinv =
        pseudoinverse(SymmetricMatrix::from_dense(M0)).dense();
    push_candidate(rays,
                   SymmetricMatrix::from_dense(Wb * M0_pinv * Wb.transpose()));
  }

  if (cones.empty()) return origin_only(n);
  const bool allow_partial = any_singular || !partition_.covers;
  ConicPartition part = build_partition(std::move(cones), allow_partial);
  return PiecewiseSemiEllipsoid(std::move(part), std::move(mats));
}

PiecewiseSemiEllipsoid from_ellipsoid(const SymmetricMatrix& Q) {
  const int n = Q.dim();
  if (!is_psd(Q, 1e-9))
    fail(ErrorCode::InvalidArgument, "from_ellipsoid: matrix not PSD");
  ConicPartition part = build_partition({HPolyhedron::full_space(n)});
  return PiecewiseSemiEllipsoid(std::move(part), {Q});
}

PiecewiseSemiEllipsoid from_polytope(const HPolyhedron& P) {
  const HPolyhedron C = P.canonicalized().remove_redundancy();
  const std::vector<HPolyhedron> cones = facet_cones(C);
  std::vector<SymmetricMatrix> Q;
  for (int i = 0; i < C.num_rows(); ++i) {
    const VectorXd a = C.A().row(i).transpose() / C.b()[i];
    Q.push_back(SymmetricMatrix::outer(a));
  }
  ConicPartition part = build_partition(cones);
  return PiecewiseSemiEllipsoid(std::move(part), std::move(Q));
}

}  // namespace invkit

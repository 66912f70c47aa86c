#pragma once

#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "invkit/linalg.hpp"
#include "invkit/polyhedra.hpp"

namespace invkit {

// Gauge values live in [0, +inf]; +inf encodes directions outside the
// union of the pieces of a partial partition.
using ExtendedReal = double;

struct PwseViolation {
  enum class Kind { NotPsd, Continuity, Convexity };
  Kind kind;
  int i = -1;
  int j = -1;  // second piece for the pairwise conditions
  double residual = 0.0;
  std::string description;
};

/// A conic partition with one PSD matrix per piece. The gauge of the
/// represented set is sqrt(x^T Q_i x) on piece i; validity additionally
/// requires the quadratics to agree on shared faces (continuity) and the
/// normal derivative to jump the right way (convexity).
class PiecewiseSemiEllipsoid {
 public:
  PiecewiseSemiEllipsoid(ConicPartition partition,
                         std::vector<SymmetricMatrix> Q);

  PiecewiseSemiEllipsoid(const PiecewiseSemiEllipsoid& other);
  PiecewiseSemiEllipsoid& operator=(const PiecewiseSemiEllipsoid& other);

  /// The set {0}, represented by a partial partition with no pieces.
  static PiecewiseSemiEllipsoid origin_only(int ambient_dim);

  const ConicPartition& partition() const { return partition_; }
  const std::vector<SymmetricMatrix>& matrices() const { return Q_; }
  int num_pieces() const { return static_cast<int>(Q_.size()); }
  int ambient_dim() const { return ambient_; }

  ExtendedReal gauge(const VectorXd& x) const;
  ExtendedReal support(const VectorXd& y) const;
  bool sublevel_contains(const VectorXd& x) const;
  std::vector<PwseViolation> validate() const;

  /// Closed-form polar; computed once and cached. The polar of a set with
  /// singular pieces has a partial partition (support is +inf outside it).
  const PiecewiseSemiEllipsoid& polar() const;

 private:
  PiecewiseSemiEllipsoid compute_polar() const;

  int ambient_;
  ConicPartition partition_;
  std::vector<SymmetricMatrix> Q_;
  mutable std::mutex polar_mutex_;
  mutable std::shared_ptr<const PiecewiseSemiEllipsoid> polar_cache_;
};

PiecewiseSemiEllipsoid from_ellipsoid(const SymmetricMatrix& Q);
PiecewiseSemiEllipsoid from_polytope(const HPolyhedron& P);

}  // namespace invkit

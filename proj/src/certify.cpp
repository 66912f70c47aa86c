#include "invkit/certify.hpp"

#include <cmath>
#include <random>
#include <string>

#include "invkit/errors.hpp"

namespace invkit {

CopositivityBlock encode_copositivity(ConicProgram& prog, const SymExpr& Q_expr,
                                      const HPolyhedron& P, int level,
                                      const std::string& name_prefix) {
  if (level != 1)
    fail(ErrorCode::InvalidArgument,
         "encode_copositivity: only the first hierarchy level is implemented");
  if (!P.is_cone(1e-9))
    fail(ErrorCode::InvalidArgument, "encode_copositivity: P must be a cone");
  const int n = Q_expr.dim();
  if (P.ambient_dim() != n)
    fail(ErrorCode::DimensionMismatch, "encode_copositivity: dimensions");
  const HPolyhedron C = P.canonicalized();
  CopositivityBlock block;
  SymExpr M = Q_expr;
  for (int i = 0; i < C.num_rows(); ++i)
    for (int j = i + 1; j < C.num_rows(); ++j) {
      const int lam = prog.add_scalar(
          VarKind::NonNeg,
          name_prefix + "_" + std::to_string(i) + "_" + std::to_string(j));
      block.lambda_vars.push_back({{i, j}, lam});
      // Stored rows are a^T x <= 0; both flips cancel in the products, but
      // the certificate is stated for the a^T x >= 0 orientation.
      const VectorXd ai = -C.A().row(i).transpose();
      const VectorXd aj = -C.A().row(j).transpose();
      const MatrixXd S = ai * aj.transpose() + aj * ai.transpose();
      for (int r = 0; r < n; ++r)
        for (int c = r; c < n; ++c)
          if (S(r, c) != 0.0) M.at(r, c) -= LinExpr::variable(lam, S(r, c));
    }
  block.psd_constraint = prog.add_psd_constraint(std::move(M));
  return block;
}

CopositivityCertificate extract_certificate(const ConicProgram& prog,
                                            const SolveResult& result,
                                            const CopositivityBlock& block) {
  (void)prog;
  CopositivityCertificate cert{
      {},
      SymmetricMatrix::from_dense(
          result.psd_constraint_values.at(block.psd_constraint))};
  for (const auto& [pair, idx] : block.lambda_vars)
    cert.lambda[pair] = result.values.at(idx);
  return cert;
}

double verify_copositivity_pointwise(const SymmetricMatrix& Q,
                                     const HPolyhedron& P, int n_samples) {
  if (!P.is_cone(1e-9))
    fail(ErrorCode::InvalidArgument,
         "verify_copositivity_pointwise: P must be a cone");
  if (P.ambient_dim() != Q.dim())
    fail(ErrorCode::DimensionMismatch,
         "verify_copositivity_pointwise: dimensions");
  std::vector<VectorXd> gens = cone_generators(P);
  for (VectorXd& g : gens) {
    const double norm = g.norm();
    if (norm > 1e-12) g /= norm;
  }
  if (gens.empty()) return 0.0;  // the cone is the origin alone
  const int k = static_cast<int>(gens.size());
  double worst = std::numeric_limits<double>::infinity();
  auto probe = [&](const VectorXd& w) {
    VectorXd x = VectorXd::Zero(Q.dim());
    for (int i = 0; i < k; ++i) x += w[i] * gens[i];
    worst = std::min(worst, Q.quad(x));
  };
  for (int i = 0; i < k; ++i) probe(VectorXd::Unit(k, i));
  probe(VectorXd::Ones(k));
  std::mt19937 rng(58231u);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  for (int s = 0; s < n_samples; ++s) {
    VectorXd w(k);
    for (int i = 0; i < k; ++i) w[i] = U(rng);
    probe(w);
  }
  return worst;
}

}  // namespace invkit

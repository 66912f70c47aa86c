#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "invkit/conic_program.hpp"
#include "invkit/polyhedra.hpp"

namespace invkit {

/// Proof that x^T Q x >= 0 on a polyhedral cone: nonnegative multipliers
/// lambda_ij over unordered row pairs and the PSD remainder
/// Q - sum lambda_ij (a_i a_j^T + a_j a_i^T), with the a_i oriented as
/// a_i^T x >= 0.
struct CopositivityCertificate {
  std::map<std::pair<int, int>, double> lambda;
  SymmetricMatrix psd_witness;
};

/// Handle into a program for one encoded copositivity condition.
struct CopositivityBlock {
  /// Unordered row pair (i, j), i < j, to the scalar index of lambda_ij.
  std::vector<std::pair<std::pair<int, int>, int>> lambda_vars;
  int psd_constraint = -1;
};

/// Emits the sufficient LMI for copositivity of Q_expr over the cone P:
/// one fresh nonnegative lambda per unordered pair of distinct canonical
/// rows plus a single PSD constraint on the remainder. With fewer than two
/// rows the sum is empty and the block is a plain PSD constraint. The
/// condition is sufficient only; deciding copositivity exactly is co-NP
/// complete. Hierarchy levels beyond the first are reserved.
CopositivityBlock encode_copositivity(ConicProgram& prog, const SymExpr& Q_expr,
                                      const HPolyhedron& P, int level = 1,
                                      const std::string& name_prefix = "lambda");

/// Reads multipliers and witness out of a solved program.
CopositivityCertificate extract_certificate(const ConicProgram& prog,
                                            const SolveResult& result,
                                            const CopositivityBlock& block);

/// Min of x^T Q x over sampled nonnegative combinations of the unit cone
/// generators (each generator alone, the all-ones combination, and random
/// weights); stays above -1e-8 whenever a certificate exists.
double verify_copositivity_pointwise(const SymmetricMatrix& Q,
                                     const HPolyhedron& P, int n_samples);

}  // namespace invkit

#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "invkit/conic_program.hpp"
#include "invkit/polyhedra.hpp"
#include "invkit/pwse.hpp"
#include "invkit/solver.hpp"
#include "invkit/systems.hpp"

namespace invkit {

using Json = nlohmann::json;

/// Version tag stamped on every emitted document and required on inputs.
inline constexpr const char* kSchemaTag = "invkit/1";

Json to_json(const MatrixXd& M);
/// cols disambiguates a matrix with zero rows.
MatrixXd matrix_from_json(const Json& j, int cols = -1);

Json to_json(const VectorXd& v);
VectorXd vector_from_json(const Json& j);

Json to_json(const HPolyhedron& P);
HPolyhedron hpolyhedron_from_json(const Json& j);

Json to_json(const SymmetricMatrix& Q);
SymmetricMatrix symmetric_from_json(const Json& j);

/// Pieces only; the neighbor structure is recomputed on load, so a
/// serialized partition always round-trips through build_partition.
Json to_json(const ConicPartition& part);
ConicPartition partition_from_json(const Json& j);

Json to_json(const PiecewiseSemiEllipsoid& S);
PiecewiseSemiEllipsoid pwse_from_json(const Json& j);

/// One mode serializes as A/B/X, several as a modes array; the parser
/// accepts both spellings.
Json to_json(const SwitchedControlSystem& sys);
SwitchedControlSystem system_from_json(const Json& j);

/// Documented dump of the conic program IR: scalar table, matrix table,
/// affine rows as coefficient triplets, PSD blocks entry by entry.
Json to_json(const ConicProgram& prog);

/// Parsed problem file. The partition is kept symbolic because the
/// facet-cone source needs viability iterates of the system.
struct ProblemFile {
  SwitchedControlSystem system;
  HPolyhedron objective;  // defaults to the state constraint polytope
  std::string partition_source = "quadrants";
  std::vector<HPolyhedron> explicit_cones;
  int partition_iterate = 0;
  SolverOptions solver;
  double viability_tol = 1e-8;
  int check_samples = 200;

  ProblemFile(SwitchedControlSystem sys, HPolyhedron objective_in)
      : system(std::move(sys)), objective(std::move(objective_in)) {}
};

ProblemFile problem_from_json(const Json& j);

/// Materializes the partition source: explicit cones verbatim, the 2^n
/// orthants, or the facet cones of the polar of the k-th viability
/// iterate (k = 0 is the safe set itself).
ConicPartition resolve_partition(const ProblemFile& pf);

}  // namespace invkit

#include "invkit/json_io.hpp"

#include <utility>

#include "invkit/errors.hpp"

namespace invkit {
namespace {

void require(bool cond, const std::string& what) {
  if (!cond) fail(ErrorCode::InvalidArgument, "json: " + what);
}

void check_schema(const Json& j) {
  require(j.is_object() && j.contains("schema") && j["schema"] == kSchemaTag,
          std::string("expected a document with schema \"") + kSchemaTag + "\"");
}

const Json& field(const Json& j, const char* key) {
  require(j.is_object() && j.contains(key),
          std::string("missing field \"") + key + "\"");
  return j.at(key);
}

const char* kind_name(VarKind k) {
  switch (k) {
    case VarKind::Free: return "free";
    case VarKind::NonNeg: return "nonneg";
    case VarKind::PsdEntry: return "psd_entry";
  }
  return "unknown";
}

Json expr_to_json(const LinExpr& e) {
  Json terms = Json::array();
  for (const auto& [idx, coeff] : e.terms) terms.push_back({idx, coeff});
  return {{"constant", e.constant}, {"terms", terms}};
}

}  // namespace

Json to_json(const MatrixXd& M) {
  Json rows = Json::array();
  for (int i = 0; i < M.rows(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < M.cols(); ++j) row.push_back(M(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

MatrixXd matrix_from_json(const Json& j, int cols) {
  require(j.is_array(), "matrix must be an array of rows");
  const int m = static_cast<int>(j.size());
  if (m == 0) {
    require(cols >= 0, "empty matrix needs a column count from context");
    return MatrixXd(0, cols);
  }
  require(j[0].is_array(), "matrix row must be an array");
  const int n = static_cast<int>(j[0].size());
  require(cols < 0 || n == cols, "matrix has the wrong number of columns");
  MatrixXd M(m, n);
  for (int i = 0; i < m; ++i) {
    require(j[i].is_array() && static_cast<int>(j[i].size()) == n,
            "matrix rows must have equal length");
    for (int c = 0; c < n; ++c) {
      require(j[i][c].is_number(), "matrix entries must be numbers");
      M(i, c) = j[i][c].get<double>();
    }
  }
  return M;
}

Json to_json(const VectorXd& v) {
  Json out = Json::array();
  for (int i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

VectorXd vector_from_json(const Json& j) {
  require(j.is_array(), "vector must be an array");
  VectorXd v(static_cast<int>(j.size()));
  for (int i = 0; i < v.size(); ++i) {
    require(j[i].is_number(), "vector entries must be numbers");
    v[i] = j[i].get<double>();
  }
  return v;
}

Json to_json(const HPolyhedron& P) {
  return {{"n", P.ambient_dim()}, {"A", to_json(P.A())}, {"b", to_json(P.b())}};
}

HPolyhedron hpolyhedron_from_json(const Json& j) {
  require(j.is_object(), "polyhedron must be an object");
  const int n = field(j, "n").get<int>();
  require(n >= 1, "polyhedron dimension must be positive");
  MatrixXd A = matrix_from_json(field(j, "A"), n);
  VectorXd b = vector_from_json(field(j, "b"));
  require(A.rows() == b.size(), "polyhedron A and b sizes disagree");
  return HPolyhedron(std::move(A), std::move(b));
}

Json to_json(const SymmetricMatrix& Q) { return to_json(Q.dense()); }

SymmetricMatrix symmetric_from_json(const Json& j) {
  const MatrixXd M = matrix_from_json(j);
  require(M.rows() == M.cols(), "symmetric matrix must be square");
  require((M - M.transpose()).cwiseAbs().maxCoeff() <= 1e-9,
          "matrix is not symmetric");
  return SymmetricMatrix::from_dense(M);
}

Json to_json(const ConicPartition& part) {
  Json pieces = Json::array();
  for (const HPolyhedron& P : part.pieces) pieces.push_back(to_json(P));
  return {{"pieces", pieces}, {"covers", part.covers}};
}

ConicPartition partition_from_json(const Json& j) {
  const Json& pieces = field(j, "pieces");
  require(pieces.is_array() && !pieces.empty(),
          "partition needs at least one piece");
  std::vector<HPolyhedron> cones;
  cones.reserve(pieces.size());
  for (const Json& p : pieces) cones.push_back(hpolyhedron_from_json(p));
  return build_partition(std::move(cones), /*allow_partial=*/true);
}

Json to_json(const PiecewiseSemiEllipsoid& S) {
  Json mats = Json::array();
  for (const SymmetricMatrix& Q : S.matrices()) mats.push_back(to_json(Q));
  return {{"schema", kSchemaTag},
          {"type", "pwse"},
          {"partition", to_json(S.partition())},
          {"matrices", mats}};
}

PiecewiseSemiEllipsoid pwse_from_json(const Json& j) {
  check_schema(j);
  require(field(j, "type") == "pwse", "expected a pwse document");
  ConicPartition part = partition_from_json(field(j, "partition"));
  const Json& mats = field(j, "matrices");
  require(mats.is_array() && mats.size() == part.pieces.size(),
          "one matrix per piece required");
  std::vector<SymmetricMatrix> Q;
  Q.reserve(mats.size());
  for (const Json& m : mats) Q.push_back(symmetric_from_json(m));
  return PiecewiseSemiEllipsoid(std::move(part), std::move(Q));
}

Json to_json(const SwitchedControlSystem& sys) {
  if (sys.num_modes() == 1)
    return {{"A", to_json(sys.modes[0].first)},
            {"B", to_json(sys.modes[0].second)},
            {"X", to_json(sys.X)}};
  Json modes = Json::array();
  for (const auto& [A, B] : sys.modes)
    modes.push_back({{"A", to_json(A)}, {"B", to_json(B)}});
  return {{"modes", modes}, {"X", to_json(sys.X)}};
}

SwitchedControlSystem system_from_json(const Json& j) {
  require(j.is_object(), "system must be an object");
  HPolyhedron X = hpolyhedron_from_json(field(j, "X"));
  const int n = X.ambient_dim();
  std::vector<std::pair<MatrixXd, MatrixXd>> modes;
  if (j.contains("modes")) {
    const Json& arr = j.at("modes");
    require(arr.is_array() && !arr.empty(), "modes must be a nonempty array");
    for (const Json& m : arr)
      modes.emplace_back(matrix_from_json(field(m, "A"), n),
                         matrix_from_json(field(m, "B")));
  } else {
    modes.emplace_back(matrix_from_json(field(j, "A"), n),
                       matrix_from_json(field(j, "B")));
  }
  // an autonomous mode may spell B as the empty array
  for (auto& [A, B] : modes)
    if (B.rows() == 0) B = MatrixXd(n, 0);
  return SwitchedControlSystem(std::move(modes), std::move(X));
}

Json to_json(const ConicProgram& prog) {
  Json scalars = Json::array();
  for (const ScalarVarInfo& s : prog.scalars())
    scalars.push_back({{"kind", kind_name(s.kind)},
                       {"name", s.name},
                       {"mat_id", s.mat_id},
                       {"row", s.row},
                       {"col", s.col}});
  Json matrices = Json::array();
  for (const MatrixVarInfo& m : prog.matrices())
    matrices.push_back(
        {{"dim", m.dim}, {"name", m.name}, {"first_scalar", m.first_scalar}});
  Json equalities = Json::array();
  for (const LinExpr& e : prog.equalities()) equalities.push_back(expr_to_json(e));
  Json inequalities = Json::array();
  for (const LinExpr& e : prog.inequalities())
    inequalities.push_back(expr_to_json(e));
  Json blocks = Json::array();
  for (const SymExpr& m : prog.psd_constraints()) {
    Json entries = Json::array();
    for (int r = 0; r < m.dim(); ++r)
      for (int c = r; c < m.dim(); ++c)
        entries.push_back(
            {{"row", r}, {"col", c}, {"expr", expr_to_json(m.at(r, c))}});
    blocks.push_back({{"dim", m.dim()}, {"entries", entries}});
  }
  return {{"schema", kSchemaTag},
          {"type", "conic_program"},
          {"scalars", scalars},
          {"matrices", matrices},
          {"equalities", equalities},
          {"inequalities", inequalities},
          {"psd_constraints", blocks},
          {"objective", expr_to_json(prog.objective())}};
}

ProblemFile problem_from_json(const Json& j) {
  check_schema(j);
  SwitchedControlSystem sys = system_from_json(field(j, "system"));
  HPolyhedron objective =
      j.contains("objective") ? hpolyhedron_from_json(j.at("objective")) : sys.X;
  ProblemFile pf(std::move(sys), std::move(objective));

  if (j.contains("partition")) {
    const Json& p = j.at("partition");
    pf.partition_source = field(p, "source").get<std::string>();
    if (pf.partition_source == "explicit") {
      const Json& cones = field(p, "cones");
      require(cones.is_array() && !cones.empty(),
              "explicit partition needs cones");
      for (const Json& c : cones)
        pf.explicit_cones.push_back(hpolyhedron_from_json(c));
    } else if (pf.partition_source == "facet-cones-of-viability-iterate") {
      pf.partition_iterate = field(p, "k").get<int>();
      require(pf.partition_iterate >= 0, "iterate index must be nonnegative");
    } else {
      require(pf.partition_source == "quadrants",
              "unknown partition source \"" + pf.partition_source + "\"");
    }
  }

  if (j.contains("solver")) {
    const Json& s = j.at("solver");
    if (s.contains("max_iterations"))
      pf.solver.max_iterations = s.at("max_iterations").get<int>();
    if (s.contains("tol_feas")) pf.solver.tol_feas = s.at("tol_feas").get<double>();
    if (s.contains("tol_gap")) pf.solver.tol_gap = s.at("tol_gap").get<double>();
    if (s.contains("tol_infeas"))
      pf.solver.tol_infeas = s.at("tol_infeas").get<double>();
  }
  if (j.contains("tolerances")) {
    const Json& t = j.at("tolerances");
    if (t.contains("viability_tol"))
      pf.viability_tol = t.at("viability_tol").get<double>();
    if (t.contains("check_samples"))
      pf.check_samples = t.at("check_samples").get<int>();
  }
  return pf;
}

ConicPartition resolve_partition(const ProblemFile& pf) {
  const int n = pf.system.state_dim();
  if (pf.partition_source == "explicit")
    return build_partition(pf.explicit_cones);
  if (pf.partition_source == "quadrants") {
    std::vector<HPolyhedron> orthants;
    orthants.reserve(static_cast<size_t>(1) << n);
    for (int mask = 0; mask < (1 << n); ++mask) {
      MatrixXd A = MatrixXd::Zero(n, n);
      for (int i = 0; i < n; ++i) A(i, i) = (mask >> i) & 1 ? 1.0 : -1.0;
      orthants.push_back(HPolyhedron::cone(std::move(A)));
    }
    return build_partition(std::move(orthants));
  }
  // facet cones of the polar of the k-th viability iterate
  require(pf.system.num_modes() == 1,
          "facet-cone partition source needs a single-mode system");
  const LinearControlSystem sys = pf.system.mode_system(0);
  HPolyhedron iterate = sys.X;
  for (int k = 0; k < pf.partition_iterate; ++k)
    iterate = viability_step(sys, iterate);
  return build_partition(facet_cones(polar_polytope(iterate)));
}

}  // namespace invkit

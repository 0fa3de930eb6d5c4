#include "eja/json_io.hpp"

#include <cmath>
#include <string>

#include "eja/error.hpp"

namespace eja {

namespace {

[[noreturn]] void fail(const std::string& what) { throw Error(ErrorCode::kParseError, what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) fail(std::string("expected an object with field '") + key + "'");
  const auto it = j.find(key);
  if (it == j.end()) fail(std::string("missing field '") + key + "'");
  return *it;
}

double number(const Json& j, const char* what) {
  if (!j.is_number()) fail(std::string(what) + " must be a number");
  return j.get<double>();
}

int integer(const Json& j, const char* what) {
  if (!j.is_number_integer()) fail(std::string(what) + " must be an integer");
  return j.get<int>();
}

// Non-finite doubles have no JSON literal; they are written as null.
Json num(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

std::string_view form_name(AutomorphismForm f) {
  switch (f) {
    case AutomorphismForm::kIdentity: return "IDENTITY";
    case AutomorphismForm::kConjugation: return "CONJUGATION";
    case AutomorphismForm::kPermutation: return "PERMUTATION";
    case AutomorphismForm::kSpinOrthogonal: return "SPIN_ORTHOGONAL";
  }
  return "?";
}

AutomorphismForm form_from_name(const std::string& s) {
  for (auto f : {AutomorphismForm::kIdentity, AutomorphismForm::kConjugation,
                 AutomorphismForm::kPermutation, AutomorphismForm::kSpinOrthogonal}) {
    if (form_name(f) == s) return f;
  }
  fail("unknown automorphism form '" + s + "'");
}

Algebra single_block(Kind kind, int n) {
  switch (kind) {
    case Kind::kRN: return Algebra::real_n(n);
    case Kind::kSymN: return Algebra::sym(n);
    case Kind::kHermN: return Algebra::herm(n);
    case Kind::kSpinN: return Algebra::spin(n);
    case Kind::kProduct: break;
  }
  fail("nested products are not supported");
}

Json block_json(const Block& b) {
  Json j;
  j["kind"] = std::string(to_string(b.kind));
  if (b.kind == Kind::kSpinN) {
    j["dim"] = b.n;
  } else {
    j["rank"] = b.n;
  }
  return j;
}

Json checks_json(const std::vector<Check>& checks) {
  Json a = Json::array();
  for (const auto& c : checks) a.push_back(to_json(c));
  return a;
}

Json provenance_json(const Provenance& p) {
  Json j;
  j["kind"] = std::string(to_string(p.kind));
  switch (p.kind) {
    case ProvenanceKind::kSchurProduct: {
      j["correlation"] = matrix_to_json(p.correlation);
      Json frame = Json::array();
      for (const auto& e : p.frame) frame.push_back(vector_to_json(e.coords()));
      j["frame"] = frame;
      break;
    }
    case ProvenanceKind::kDiag: break;
    case ProvenanceKind::kCompletelyPositive: {
      Json kraus = Json::array();
      for (const auto& a : p.kraus) kraus.push_back(complex_matrix_to_json(a));
      j["kraus"] = kraus;
      break;
    }
    case ProvenanceKind::kAutomorphism:
      j["form"] = std::string(form_name(p.form));
      switch (p.form) {
        case AutomorphismForm::kIdentity: break;
        case AutomorphismForm::kConjugation: j["unitary"] = complex_matrix_to_json(p.unitary); break;
        case AutomorphismForm::kPermutation: j["permutation"] = p.permutation; break;
        case AutomorphismForm::kSpinOrthogonal: j["orthogonal"] = matrix_to_json(p.orthogonal); break;
      }
      break;
    case ProvenanceKind::kConvexCombo:
    case ProvenanceKind::kCompose: {
      if (p.kind == ProvenanceKind::kConvexCombo) j["weights"] = p.weights;
      Json parts = Json::array();
      for (const auto& part : p.parts) {
        Json pj;
        pj["matrix"] = matrix_to_json(part.matrix());
        pj["provenance"] = provenance_json(part.provenance());
        parts.push_back(pj);
      }
      j["parts"] = parts;
      break;
    }
    case ProvenanceKind::kRaw:
      j["asserted_positive"] = p.asserted_positive;
      break;
  }
  return j;
}

LinearMap rebuild(const Json& prov, const Algebra& alg, const Json* matrix);

LinearMap rebuild_from_provenance(const Json& prov, const Algebra& alg, const Json* matrix) {
  const ProvenanceKind kind = provenance_from_string(field(prov, "kind").get<std::string>());
  switch (kind) {
    case ProvenanceKind::kSchurProduct: {
      JordanFrame frame{alg, {}};
      for (const auto& e : field(prov, "frame")) frame.idempotents.push_back(element_from_json(e, alg));
      return schur_map(matrix_from_json(field(prov, "correlation")), frame, 1e-9);
    }
    case ProvenanceKind::kDiag: return diag_map(alg);
    case ProvenanceKind::kCompletelyPositive: {
      std::vector<Eigen::MatrixXcd> kraus;
      for (const auto& a : field(prov, "kraus")) kraus.push_back(complex_matrix_from_json(a));
      return cp_map(kraus, alg);
    }
    case ProvenanceKind::kAutomorphism: {
      const std::string form = prov.contains("form") ? prov["form"].get<std::string>() : "IDENTITY";
      switch (form_from_name(form)) {
        case AutomorphismForm::kIdentity: return identity_map(alg);
        case AutomorphismForm::kConjugation:
          return conjugation(alg, complex_matrix_from_json(field(prov, "unitary")));
        case AutomorphismForm::kPermutation:
          return permutation_automorphism(alg, field(prov, "permutation").get<std::vector<int>>());
        case AutomorphismForm::kSpinOrthogonal:
          return spin_orthogonal(alg, matrix_from_json(field(prov, "orthogonal")));
      }
      break;
    }
    case ProvenanceKind::kConvexCombo:
    case ProvenanceKind::kCompose: {
      std::vector<LinearMap> parts;
      for (const auto& part : field(prov, "parts")) parts.push_back(map_from_json(part, alg));
      if (kind == ProvenanceKind::kCompose) return compose_maps(parts);
      const auto weights = field(prov, "weights").get<std::vector<double>>();
      if (weights.size() != parts.size()) fail("weights and parts differ in length");
      return combination(weights, parts);
    }
    case ProvenanceKind::kRaw: {
      if (matrix == nullptr) fail("a RAW map needs its matrix");
      const bool asserted = prov.contains("asserted_positive") && prov["asserted_positive"].get<bool>();
      return LinearMap::raw(alg, matrix_from_json(*matrix), asserted);
    }
  }
  fail("unsupported provenance");
}

LinearMap rebuild(const Json& prov, const Algebra& alg, const Json* matrix) {
  LinearMap t = rebuild_from_provenance(prov, alg, matrix);
  if (matrix != nullptr) {
    const Eigen::MatrixXd given = matrix_from_json(*matrix);
    if (given.rows() != t.matrix().rows() || given.cols() != t.matrix().cols()) {
      fail("map matrix has the wrong size for " + alg.describe());
    }
    const double scale = 1.0 + given.cwiseAbs().maxCoeff();
    const double gap = (given - t.matrix()).cwiseAbs().maxCoeff();
    if (gap > 1e-9 * scale) {
      fail("map matrix disagrees with its provenance (max deviation " + std::to_string(gap) + ")");
    }
    // Keep the document's entries so a parsed map re-serializes unchanged.
    return LinearMap(alg, given, t.provenance_ptr());
  }
  return t;
}

}  // namespace

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    fail(e.what());
  }
}

void require_schema(const Json& doc) {
  if (doc.is_object() && doc.contains("schema") && doc["schema"] != kSchemaVersion) {
    fail("unsupported schema version " + doc["schema"].dump());
  }
}

Json vector_to_json(const Eigen::VectorXd& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(num(v(i)));
  return a;
}

Eigen::VectorXd vector_from_json(const Json& j) {
  if (!j.is_array()) fail("expected an array of numbers");
  Eigen::VectorXd v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = number(j[i], "vector entry");
  return v;
}

Json matrix_to_json(const Eigen::MatrixXd& m) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) a.push_back(vector_to_json(m.row(i).transpose()));
  return a;
}

Eigen::MatrixXd matrix_from_json(const Json& j) {
  if (!j.is_array()) fail("expected a matrix as an array of rows");
  if (j.empty()) return Eigen::MatrixXd(0, 0);
  const std::size_t cols = j[0].is_array() ? j[0].size() : 0;
  Eigen::MatrixXd m(static_cast<Eigen::Index>(j.size()), static_cast<Eigen::Index>(cols));
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_array() || j[i].size() != cols) fail("matrix rows must be arrays of equal length");
    m.row(static_cast<Eigen::Index>(i)) = vector_from_json(j[i]).transpose();
  }
  return m;
}

Json complex_matrix_to_json(const Eigen::MatrixXcd& m) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) {
      row.push_back(num(m(i, k).real()));
      row.push_back(num(m(i, k).imag()));
    }
    a.push_back(row);
  }
  return a;
}

Eigen::MatrixXcd complex_matrix_from_json(const Json& j) {
  const Eigen::MatrixXd flat = matrix_from_json(j);
  if (flat.cols() % 2 != 0) fail("complex matrix rows need interleaved (re, im) pairs");
  Eigen::MatrixXcd m(flat.rows(), flat.cols() / 2);
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index k = 0; k < m.cols(); ++k) m(i, k) = {flat(i, 2 * k), flat(i, 2 * k + 1)};
  return m;
}

Json to_json(const Algebra& algebra) {
  const auto blocks = algebra.blocks();
  if (blocks.size() == 1) return block_json(blocks[0]);
  Json j;
  j["kind"] = "Product";
  Json factors = Json::array();
  for (const auto& b : blocks) factors.push_back(block_json(b));
  j["factors"] = factors;
  return j;
}

Algebra algebra_from_json(const Json& j) {
  const Kind kind = kind_from_string(field(j, "kind").get<std::string>());
  if (kind == Kind::kProduct) {
    std::vector<Algebra> factors;
    for (const auto& f : field(j, "factors")) factors.push_back(algebra_from_json(f));
    if (factors.empty()) fail("a product needs at least one factor");
    return Algebra::product(factors);
  }
  const int n = kind == Kind::kSpinN ? integer(field(j, "dim"), "dim") : integer(field(j, "rank"), "rank");
  const int min_size = kind == Kind::kSpinN ? 2 : 1;
  if (n < min_size || n > 64) fail("algebra size " + std::to_string(n) + " is out of range");
  return single_block(kind, n);
}

Json to_json(const Element& x) {
  Json j;
  j["algebra"] = to_json(x.algebra());
  j["coords"] = vector_to_json(x.coords());
  return j;
}

Element element_from_json(const Json& j) { return element_from_json(j, algebra_from_json(field(j, "algebra"))); }

Element element_from_json(const Json& j, const Algebra& algebra) {
  if (j.is_array()) return Element(algebra, vector_from_json(j));
  if (j.contains("algebra") && !(algebra_from_json(j["algebra"]) == algebra)) {
    throw Error(ErrorCode::kAlgebraMismatch, "element algebra differs from " + algebra.describe());
  }
  Eigen::VectorXd coords;
  if (j.contains("coords")) {
    coords = vector_from_json(j["coords"]);
  } else if (j.contains("matrix")) {
    const Eigen::MatrixXd m = matrix_from_json(j["matrix"]);
    if (algebra.kind() == Kind::kSymN) {
      if (m.rows() != algebra.size() || m.cols() != algebra.size()) fail("matrix has the wrong size");
      coords = from_sym_matrix(m).coords();
    } else if (algebra.kind() == Kind::kHermN) {
      const Eigen::MatrixXcd c = complex_matrix_from_json(j["matrix"]);
      if (c.rows() != algebra.size() || c.cols() != algebra.size()) fail("matrix has the wrong size");
      coords = from_herm_matrix(c).coords();
    } else {
      fail("\"matrix\" input needs SymN or HermN");
    }
  } else if (j.contains("natural")) {
    if (algebra.kind() != Kind::kSpinN) fail("\"natural\" input needs SpinN");
    coords = from_spin_natural(vector_from_json(j["natural"])).coords();
  } else {
    fail("element needs \"coords\", \"matrix\" or \"natural\"");
  }
  if (coords.size() != algebra.dim()) {
    fail("expected " + std::to_string(algebra.dim()) + " coordinates for " + algebra.describe());
  }
  return Element(algebra, coords);
}

Json to_json(const JordanFrame& frame) {
  Json a = Json::array();
  for (const auto& e : frame.idempotents) a.push_back(to_json(e));
  return a;
}

JordanFrame frame_from_json(const Json& j, const Algebra& algebra) {
  if (!j.is_array()) fail("a frame is an array of elements");
  JordanFrame frame{algebra, {}};
  for (const auto& e : j) frame.idempotents.push_back(element_from_json(e, algebra));
  validate_frame(frame, 1e-8);
  return frame;
}

Json to_json(const LinearMap& t) {
  Json j;
  j["algebra"] = to_json(t.algebra());
  j["matrix"] = matrix_to_json(t.matrix());
  j["provenance"] = provenance_json(t.provenance());
  return j;
}

LinearMap map_from_json(const Json& j) { return map_from_json(j, algebra_from_json(field(j, "algebra"))); }

LinearMap map_from_json(const Json& j, const Algebra& algebra) {
  if (j.contains("algebra") && !(algebra_from_json(j["algebra"]) == algebra)) {
    throw Error(ErrorCode::kAlgebraMismatch, "map algebra differs from " + algebra.describe());
  }
  const Json* matrix = j.contains("matrix") ? &j["matrix"] : nullptr;
  if (!j.contains("provenance")) {
    if (matrix == nullptr) fail("map needs \"matrix\" or \"provenance\"");
    return LinearMap::raw(algebra, matrix_from_json(*matrix));
  }
  try {
    return rebuild(j["provenance"], algebra, matrix);
  } catch (const nlohmann::json::exception& e) {
    fail(e.what());
  }
}

Json to_json(const Check& c) {
  Json j;
  j["name"] = c.name;
  j["residual"] = num(c.residual);
  j["threshold"] = num(c.threshold);
  j["ok"] = c.ok;
  return j;
}

Json to_json(const Classification& c) {
  Json j;
  j["unital"] = c.unital;
  j["subunital"] = c.subunital;
  j["trace_preserving"] = c.trace_preserving;
  j["doubly_stochastic"] = c.doubly_stochastic;
  j["positivity"] = std::string(to_string(c.positivity));
  j["asserted_positive"] = c.asserted_positive;
  j["positivity_trials"] = c.positivity_trials;
  j["unit_residual"] = num(c.unit_residual);
  j["trace_residual"] = num(c.trace_residual);
  j["worst_image_eigenvalue"] = num(c.worst_image_eigenvalue);
  return j;
}

Json to_json(const MajorizationProbe& p) {
  Json j;
  j["trials"] = p.trials;
  j["failures"] = p.failures;
  j["worst_slack"] = num(p.worst_slack);
  j["worst_x"] = vector_to_json(p.worst_x);
  return j;
}

Json to_json(const KorovkinReport& r) {
  Json j;
  j["conclusion"] = std::string(to_string(r.conclusion));
  j["hypotheses_ok"] = r.hypotheses_ok;
  j["hypotheses"] = checks_json(r.hypotheses);
  j["residual"] = num(r.residual);
  j["bound"] = num(r.bound);
  j["checks"] = checks_json(r.checks);
  if (!r.note.empty()) j["note"] = r.note;
  if (r.permutation) j["permutation"] = *r.permutation;
  if (r.frame) j["frame"] = to_json(*r.frame);
  if (r.automorphism) j["automorphism"] = to_json(*r.automorphism);
  if (r.frame_matrix) j["frame_matrix"] = matrix_to_json(*r.frame_matrix);
  if (r.ds_certificate) j["ds_certificate"] = to_json(*r.ds_certificate);
  if (r.probe) j["probe"] = to_json(*r.probe);
  if (!r.statements.empty()) {
    j["statements"] = checks_json(r.statements);
    j["statements_agree"] = r.statements_agree;
  }
  return j;
}

Json to_json(const SequenceReport& r) {
  Json steps = Json::array();
  for (const auto& s : r.steps) {
    Json sj;
    sj["k"] = s.k;
    sj["tol"] = num(s.tol);
    sj["hypothesis_residual"] = num(s.hypothesis_residual);
    sj["frame_residual"] = num(s.frame_residual);
    sj["adjoint_residual"] = num(s.adjoint_residual);
    sj["norm"] = num(s.norm);
    sj["unit_image_norm"] = num(s.unit_image_norm);
    sj["hypotheses_ok"] = s.hypotheses_ok;
    steps.push_back(sj);
  }
  Json j;
  j["conclusion"] = std::string(to_string(r.conclusion));
  j["hypotheses_converge"] = r.hypotheses_converge;
  j["frame_converges"] = r.frame_converges;
  j["bounded"] = r.bounded;
  j["bound_constant"] = num(r.bound_constant);
  j["sup_norm"] = num(r.sup_norm);
  j["sup_unit_image"] = num(r.sup_unit_image);
  j["fitted_c"] = num(r.fitted_c);
  j["monotone"] = r.monotone;
  j["max_adjoint_gap"] = num(r.max_adjoint_gap);
  j["frame"] = to_json(r.frame);
  j["steps"] = steps;
  return j;
}

Json to_json(const MajorizationReport& r) {
  Json j;
  j["relation"] = std::string(to_string(r.relation));
  j["partial_sum_slack"] = vector_to_json(r.partial_sum_slack);
  j["total_gap"] = num(r.total_gap);
  j["min_slack"] = num(r.min_slack());
  return j;
}

Json to_json(const SpectralDecomposition& s) {
  Json j;
  j["eigenvalues"] = vector_to_json(s.eigenvalues);
  j["frame"] = to_json(s.frame);
  j["spin_degenerate"] = s.spin_degenerate;
  return j;
}

Json to_json(const InfNormReport& r) {
  Json j;
  j["trials"] = r.trials;
  j["violations"] = r.violations;
  j["worst_margin"] = num(r.worst_margin);
  j["unit_image_norm"] = num(r.unit_image_norm);
  j["empirical_ratio"] = num(r.empirical_ratio);
  j["operator_ratio"] = num(r.operator_ratio);
  return j;
}

Json to_json(const OmegaVertices& v) {
  Json verts = Json::array();
  for (const auto& m : v.vertices) verts.push_back(matrix_to_json(m));
  Json j;
  j["vertex_count"] = v.vertices.size();
  j["vertices"] = verts;
  j["lp_trials"] = v.lp_trials;
  j["max_lp_gap"] = num(v.max_lp_gap);
  j["max_argmax_distance"] = num(v.max_argmax_distance);
  j["complete"] = v.complete;
  j["all_doubly_stochastic"] = v.all_doubly_stochastic;
  return j;
}

Json to_json(const OmegaMembership& m) {
  static constexpr const char* kNames[] = {"e", "p", "p2"};
  Json reports;
  for (std::size_t i = 0; i < m.reports.size(); ++i) reports[kNames[i]] = to_json(m.reports[i]);
  Json j;
  j["member"] = m.member;
  j["min_entry"] = num(m.min_entry);
  j["majorization"] = reports;
  return j;
}

Json to_json(const NonDsReport& r) {
  Json samples = Json::array();
  for (const auto& s : r.samples) {
    Json witnesses = Json::array();
    for (const auto& w : s.witnesses) {
      Json wj;
      wj["column"] = w.column;
      wj["value"] = num(w.value);
      wj["validated"] = w.validated;
      wj["matrix"] = matrix_to_json(w.matrix);
      witnesses.push_back(wj);
    }
    Json sj;
    sj["p"] = vector_to_json(s.p);
    sj["column_min"] = vector_to_json(s.column_min);
    sj["column_max"] = vector_to_json(s.column_max);
    sj["certified_ds"] = s.certified_ds;
    sj["witnesses"] = witnesses;
    samples.push_back(sj);
  }
  Json j;
  j["n"] = r.n;
  j["seed"] = r.seed;
  j["sample_count"] = r.samples.size();
  j["witness_count"] = r.witness_count;
  j["samples"] = samples;
  return j;
}

Json to_json(const BasisDsReport& r) {
  Json j;
  j["all_majorized"] = r.all_majorized;
  j["first_failing_power"] = r.first_failing_power;
  j["column_sum_residual"] = num(r.column_sum_residual);
  j["bound"] = num(r.bound);
  j["bound_holds"] = r.bound_holds;
  j["doubly_stochastic"] = r.doubly_stochastic;
  return j;
}

Json to_json(const KadisonReport& r) {
  Json candidates = Json::array();
  for (const auto& c : r.candidates) {
    Json cj;
    cj["trial"] = c.trial;
    cj["slack"] = num(c.slack);
    cj["reverified"] = num(c.reverified);
    candidates.push_back(cj);
  }
  Json j;
  j["algebra"] = to_json(r.algebra);
  j["trials"] = r.trials;
  j["seed"] = r.seed;
  j["min_slack"] = num(r.min_slack);
  j["witness_trial"] = r.witness_trial;
  j["witness_family"] = r.witness_family;
  if (r.witness_map) j["witness_map"] = to_json(*r.witness_map);
  if (r.witness_x) j["witness_x"] = to_json(*r.witness_x);
  j["candidates"] = candidates;
  return j;
}

Json to_json(const std::vector<BirkhoffTerm>& terms) {
  Json a = Json::array();
  for (const auto& t : terms) {
    Json tj;
    tj["weight"] = num(t.weight);
    tj["permutation"] = t.permutation;
    a.push_back(tj);
  }
  return a;
}

}  // namespace eja

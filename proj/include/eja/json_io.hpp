#pragma once

#include <Eigen/Dense>

#include <string>
#include <vector>

#include <json.hpp>

#include "eja/algebra.hpp"
#include "eja/korovkin.hpp"
#include "eja/linear_map.hpp"
#include "eja/majorization.hpp"
#include "eja/omega.hpp"
#include "eja/positive_maps.hpp"
#include "eja/spectral.hpp"

namespace eja {

/// Keys keep insertion order so documents read top-down; output is still
/// deterministic for a given value.
using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

/// Parses text, mapping syntax errors to PARSE_ERROR.
Json parse_json(const std::string& text);
/// Throws PARSE_ERROR when a "schema" field is present and is not 1.
void require_schema(const Json& doc);

Json vector_to_json(const Eigen::VectorXd& v);
Eigen::VectorXd vector_from_json(const Json& j);
/// Row-major nested arrays.
Json matrix_to_json(const Eigen::MatrixXd& m);
Eigen::MatrixXd matrix_from_json(const Json& j);
/// Rows of interleaved (re, im) pairs.
Json complex_matrix_to_json(const Eigen::MatrixXcd& m);
Eigen::MatrixXcd complex_matrix_from_json(const Json& j);

/// {"kind": "SymN", "rank": 3}; spin factors use {"kind": "SpinN", "dim": d};
/// products {"kind": "Product", "factors": [...]}.
Json to_json(const Algebra& algebra);
Algebra algebra_from_json(const Json& j);

/// {"algebra": ..., "coords": [...]}. Input may give "matrix" (SymN real rows,
/// HermN interleaved rows) or "natural" (SpinN) instead of "coords".
Json to_json(const Element& x);
Element element_from_json(const Json& j);
/// Same, with the algebra supplied by the caller when "algebra" is absent.
Element element_from_json(const Json& j, const Algebra& algebra);

Json to_json(const JordanFrame& frame);
JordanFrame frame_from_json(const Json& j, const Algebra& algebra);

/// {"algebra", "matrix", "provenance"}. Parsing rebuilds the map from its
/// provenance and, when "matrix" is present, rejects a mismatch beyond
/// 1e-9 * (1 + max |entry|) with PARSE_ERROR. An accepted matrix is kept
/// verbatim, so parse-then-emit reproduces the document.
Json to_json(const LinearMap& t);
LinearMap map_from_json(const Json& j);
LinearMap map_from_json(const Json& j, const Algebra& algebra);

Json to_json(const Check& c);
Json to_json(const KorovkinReport& r);
Json to_json(const SequenceReport& r);
Json to_json(const Classification& c);
Json to_json(const MajorizationProbe& p);
Json to_json(const MajorizationReport& r);
Json to_json(const SpectralDecomposition& s);
Json to_json(const InfNormReport& r);
Json to_json(const OmegaVertices& v);
Json to_json(const OmegaMembership& m);
Json to_json(const NonDsReport& r);
Json to_json(const BasisDsReport& r);
Json to_json(const KadisonReport& r);
Json to_json(const std::vector<BirkhoffTerm>& terms);

}  // namespace eja

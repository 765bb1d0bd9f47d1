#pragma once

// JSON documents exchanged by the command-line tool.
//
//   ensemble: {"dim": N, "kind": "pure"|"mixed", "bipartition": [NA, NB]?,
//              "members": [{"weight": w?, "vector": [[re, im], ...]}
//                        | {"weight": w?, "matrix": [[[re, im], ...], ...]}]}
//   unitary:  {"kind": "unitary", "dim": d, "members": [{"weight": w?, "matrix": ...}]}
//   simplex:  {"kind": "simplex", "N": n, "measure": "lebesgue"|"hilbert-schmidt",
//              "order": t, "points": [{"weight": w?, "p": [...]}]}
//
// Missing weights mean uniform. Doubles are written in shortest round-trip
// form, so write -> read reproduces every value bit for bit.

#include <iosfwd>
#include <string>
#include <variant>

#include <json.hpp>

#include "qdesign/moments.hpp"
#include "qdesign/qstate.hpp"
#include "qdesign/simplex.hpp"
#include "qdesign/tolerances.hpp"

namespace qdesign::io {

using Json = nlohmann::json;
using Document = std::variant<Ensemble, UnitarySet, SimplexDesign>;

Json complex_to_json(Complex c);
Complex complex_from_json(const Json& j);
Json vector_to_json(const Vector& v);
Vector vector_from_json(const Json& j);
Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j);

Json to_json(const Ensemble& e);
Json to_json(const UnitarySet& u);
Json to_json(const SimplexDesign& s);
Json to_json(const Document& d);

/// All loaders throw SchemaError on structural problems; state invariants are
/// checked at `tolerance` and reported as InvariantError.
Ensemble ensemble_from_json(const Json& j, double tolerance = tol::kNorm);
UnitarySet unitary_set_from_json(const Json& j, double tolerance = tol::kUnitary);
SimplexDesign simplex_from_json(const Json& j, double tolerance = tol::kWeights);
Document document_from_json(const Json& j, double tolerance = tol::kNorm);

Json to_json(const DesignReport& r);
Json to_json(const FramePotentialReport& r);
Json to_json(const SimplicialReport& r);

/// Parses a JSON document; SchemaError on malformed text.
Json parse(std::istream& in, const std::string& source);

}  // namespace qdesign::io

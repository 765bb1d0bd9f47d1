#include "qdesign/io.hpp"

#include <istream>

#include "qdesign/errors.hpp"

namespace qdesign::io {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    throw SchemaError(std::string("missing field '") + key + "'");
  return j.at(key);
}

int int_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number_integer()) throw SchemaError(std::string("field '") + key + "' must be an integer");
  return v.get<int>();
}

const Json& members_of(const Json& j, const char* key) {
  const Json& m = field(j, key);
  if (!m.is_array() || m.empty()) throw SchemaError(std::string("'") + key + "' must be a non-empty array");
  return m;
}

std::vector<double> weights_of(const Json& members) {
  std::vector<double> w;
  std::size_t with = 0;
  for (const auto& m : members)
    if (m.is_object() && m.contains("weight")) ++with;
  if (with == 0) return w;
  if (with != members.size()) throw SchemaError("either all members carry a weight or none");
  for (const auto& m : members) {
    if (!m.at("weight").is_number()) throw SchemaError("weight must be a number");
    w.push_back(m.at("weight").get<double>());
  }
  return w;
}

std::optional<Bipartition> bipartition_of(const Json& j) {
  if (!j.contains("bipartition")) return std::nullopt;
  const Json& b = j.at("bipartition");
  if (!b.is_array() || b.size() != 2 || !b[0].is_number_integer() || !b[1].is_number_integer())
    throw SchemaError("'bipartition' must be [N_A, N_B]");
  return Bipartition{b[0].get<int>(), b[1].get<int>()};
}

void check_kind(const Json& j, const char* expected) {
  if (j.contains("kind") && j.at("kind") != expected)
    throw SchemaError(std::string("expected a document of kind '") + expected + "'");
}

template <class F>
auto guarded(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Json::exception& e) {
    throw SchemaError(std::string("malformed document: ") + e.what());
  }
}

}  // namespace

Json complex_to_json(Complex c) { return Json::array({c.real(), c.imag()}); }

Complex complex_from_json(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw SchemaError("complex numbers are written as [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

Json vector_to_json(const Vector& v) {
  Json a = Json::array();
  for (Eigen::Index k = 0; k < v.size(); ++k) a.push_back(complex_to_json(v(k)));
  return a;
}

Vector vector_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw SchemaError("a vector must be a non-empty array");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t k = 0; k < j.size(); ++k) v(static_cast<Eigen::Index>(k)) = complex_from_json(j[k]);
  return v;
}

Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(complex_to_json(m(i, k)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw SchemaError("a matrix must be a non-empty array of rows");
  const auto n = static_cast<Eigen::Index>(j.size());
  Matrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Json& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n)
      throw SchemaError("a matrix must be square");
    for (Eigen::Index k = 0; k < n; ++k) m(i, k) = complex_from_json(row[static_cast<std::size_t>(k)]);
  }
  return m;
}

Json to_json(const Ensemble& e) {
  Json j;
  j["dim"] = e.dim();
  j["kind"] = e.kind() == EnsembleKind::pure ? "pure" : "mixed";
  std::optional<Bipartition> bip;
  Json members = Json::array();
  if (e.kind() == EnsembleKind::pure) {
    const auto& ps = e.pure_states();
    bip = ps.front().bipartition();
    for (std::size_t i = 0; i < ps.size(); ++i)
      members.push_back({{"weight", e.weight(i)}, {"vector", vector_to_json(ps[i].amplitudes())}});
  } else {
    const auto& ds = e.densities();
    bip = ds.front().bipartition();
    for (std::size_t i = 0; i < ds.size(); ++i)
      members.push_back({{"weight", e.weight(i)}, {"matrix", matrix_to_json(ds[i].matrix())}});
  }
  if (bip) j["bipartition"] = {bip->dim_a, bip->dim_b};
  j["members"] = std::move(members);
  return j;
}

Json to_json(const UnitarySet& u) {
  Json members = Json::array();
  for (std::size_t i = 0; i < u.size(); ++i)
    members.push_back({{"weight", u.weights[i]}, {"matrix", matrix_to_json(u.unitaries[i])}});
  return {{"kind", "unitary"}, {"dim", u.dim()}, {"members", std::move(members)}};
}

Json to_json(const SimplexDesign& s) {
  Json pts = Json::array();
  for (const auto& p : s.points) pts.push_back({{"weight", p.weight}, {"p", p.p}});
  return {{"kind", "simplex"},
          {"N", s.n},
          {"measure", std::string(measure_name(s.measure))},
          {"order", s.order},
          {"points", std::move(pts)}};
}

Json to_json(const Document& d) {
  return std::visit([](const auto& x) { return to_json(x); }, d);
}

Ensemble ensemble_from_json(const Json& j, double tolerance) {
  return guarded([&] {
    const int dim = int_field(j, "dim");
    const Json& members = members_of(j, "members");
    const auto bip = bipartition_of(j);
    if (bip && bip->total() != dim) throw SchemaError("bipartition does not multiply to dim");
    std::string kind = j.value("kind", "");
    if (kind.empty()) kind = members.front().contains("vector") ? "pure" : "mixed";
    const auto weights = weights_of(members);
    const double wtol = std::max(tolerance, tol::kWeights);

    if (kind == "pure") {
      std::vector<PureState> states;
      for (const auto& m : members) {
        const Vector v = vector_from_json(field(m, "vector"));
        if (v.size() != dim) throw SchemaError("member vector length differs from dim");
        states.emplace_back(v, bip, std::max(tolerance, tol::kNorm));
      }
      return Ensemble::from_pure(std::move(states), weights, wtol);
    }
    if (kind == "mixed") {
      std::vector<DensityMatrix> states;
      for (const auto& m : members) {
        Matrix rho;
        if (m.contains("matrix")) {
          rho = matrix_from_json(m.at("matrix"));
        } else {
          const Vector v = vector_from_json(field(m, "vector"));
          rho = v * v.adjoint();
        }
        if (rho.rows() != dim) throw SchemaError("member matrix size differs from dim");
        states.emplace_back(std::move(rho), std::max(tolerance, tol::kHermitian),
                            std::max(tolerance, tol::kPsd), bip);
      }
      return Ensemble::from_mixed(std::move(states), weights, wtol);
    }
    throw SchemaError("ensemble kind must be 'pure' or 'mixed', got '" + kind + "'");
  });
}

UnitarySet unitary_set_from_json(const Json& j, double tolerance) {
  return guarded([&] {
    check_kind(j, "unitary");
    const Json& members = members_of(j, "members");
    UnitarySet u;
    for (const auto& m : members) u.unitaries.push_back(matrix_from_json(field(m, "matrix")));
    u.weights = weights_of(members);
    if (u.weights.empty()) u.weights.assign(u.unitaries.size(), 1.0 / static_cast<double>(u.unitaries.size()));
    if (j.contains("dim") && int_field(j, "dim") != u.dim())
      throw SchemaError("member matrix size differs from dim");
    double s = 0.0;
    for (double w : u.weights) {
      if (w < 0.0) throw InvariantError("negative weight");
      s += w;
    }
    if (std::abs(s - 1.0) > std::max(tol::kWeights, tolerance)) throw InvariantError("weights do not sum to 1");
    u.validate(std::max(tolerance, tol::kUnitary));
    return u;
  });
}

SimplexDesign simplex_from_json(const Json& j, double tolerance) {
  return guarded([&] {
    check_kind(j, "simplex");
    SimplexDesign s;
    s.n = int_field(j, "N");
    s.measure = parse_measure(j.value("measure", "lebesgue"));
    s.order = j.value("order", 0);
    const Json& pts = members_of(j, "points");
    const auto w = weights_of(pts);
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const Json& p = field(pts[i], "p");
      if (!p.is_array()) throw SchemaError("'p' must be an array");
      s.points.push_back({p.get<std::vector<double>>(),
                          w.empty() ? 1.0 / static_cast<double>(pts.size()) : w[i]});
    }
    s.validate(std::max(tolerance, tol::kWeights));
    return s;
  });
}

Document document_from_json(const Json& j, double tolerance) {
  if (!j.is_object()) throw SchemaError("document must be a JSON object");
  const std::string kind = j.value("kind", "");
  if (kind == "unitary") return unitary_set_from_json(j, std::max(tolerance, tol::kUnitary));
  if (kind == "simplex") return simplex_from_json(j, tolerance);
  return ensemble_from_json(j, tolerance);
}

Json to_json(const DesignReport& r) {
  return {{"t", r.t},
          {"delta", r.delta},
          {"gamma", r.gamma},
          {"cross_term", r.cross_term},
          {"overlap_term", r.overlap_term},
          {"tolerance", r.tolerance},
          {"is_design", r.is_design}};
}

Json to_json(const FramePotentialReport& r) {
  return {{"t", r.t},           {"value", r.value},         {"bound", r.bound},
          {"delta", r.delta},   {"tolerance", r.tolerance}, {"is_design", r.is_design}};
}

Json to_json(const SimplicialReport& r) {
  return {{"t", r.order},
          {"delta", r.max_deviation},
          {"max_deviation_by_degree", r.max_deviation_by_degree},
          {"tolerance", r.tolerance},
          {"is_design", r.is_design}};
}

Json parse(std::istream& in, const std::string& source) {
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw SchemaError("cannot parse JSON from " + source + ": " + e.what());
  }
}

}  // namespace qdesign::io

#include "qdesign/registry.hpp"

#include <regex>

#include "qdesign/constructions.hpp"
#include "qdesign/errors.hpp"

namespace qdesign {

namespace {

io::Document resolve(const io::Json& spec) {
  if (spec.is_string()) return construct_named(spec.get<std::string>());
  if (spec.is_object()) return io::document_from_json(spec);
  throw SchemaError("product config entries must be a construction name or a document");
}

io::Document product_from_config(const io::Json& config) {
  if (!config.contains("simplex") || !config.contains("unitaries"))
    throw SchemaError("product config needs 'simplex' and 'unitaries'");
  auto s = resolve(config.at("simplex"));
  auto u = resolve(config.at("unitaries"));
  auto* simplex = std::get_if<SimplexDesign>(&s);
  auto* unitaries = std::get_if<UnitarySet>(&u);
  if (!simplex) throw SchemaError("product config: 'simplex' is not a simplex design");
  if (!unitaries) throw SchemaError("product config: 'unitaries' is not a unitary set");
  ProductOptions opts;
  opts.t = config.value("t", simplex->order > 0 ? std::min(simplex->order, 5) : 2);
  const SimplexDesign chamber =
      config.value("chamber", true) ? restrict_to_chamber(*simplex) : *simplex;
  return product_design(chamber, *unitaries, opts);
}

}  // namespace

io::Document construct_named(std::string_view name, const io::Json& config) {
  const std::string n(name);
  if (n == "standard-mub-d4") return standard_mub_d4().ensemble();
  if (n == "iso-mub") return iso_mub().mubs.ensemble();
  if (n == "sic-d3") return sic_d3();
  if (n == "binary-tetrahedral") return binary_tetrahedral();
  if (n == "binary-icosahedral") return binary_icosahedral();
  if (n == "iso-mub-local-left") return UnitarySet::uniform(iso_mub().left_factors);
  if (n == "iso-mub-local-right") return UnitarySet::uniform(iso_mub().right_factors);
  if (n == "product") return product_from_config(config);
  if (n.rfind("platonic-", 0) == 0) {
    const double a = config.value("a", platonic_mixing());
    return platonic_design(parse_platonic(n.substr(9)), a);
  }
  static const std::regex interval(R"(interval-(L|HS)-t(\d+)-m(\d+))");
  std::smatch m;
  if (std::regex_match(n, m, interval))
    return interval_design(std::stoi(m[2]), std::stoi(m[3]), parse_measure(m[1].str()));
  throw UnsupportedError("unknown construction '" + n + "'");
}

std::vector<std::string> registry_names() {
  return {"standard-mub-d4",     "iso-mub",           "sic-d3",
          "platonic-tetra",      "platonic-octa",     "platonic-cube",
          "platonic-icosa",      "platonic-dodeca",   "interval-L-t1-m1",
          "interval-L-t3-m2",    "interval-L-t3-m3",  "interval-L-t5-m4",
          "interval-L-t5-m5",    "interval-HS-t3-m2", "interval-HS-t3-m3",
          "interval-HS-t5-m4",   "binary-tetrahedral", "binary-icosahedral",
          "iso-mub-local-left",  "iso-mub-local-right", "product"};
}

}  // namespace qdesign

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "qdesign/io.hpp"

namespace qdesign {

/// Builds a named construction:
///   standard-mub-d4, iso-mub, sic-d3, platonic-{tetra,octa,cube,icosa,dodeca},
///   interval-{L,HS}-t<T>-m<M>, binary-tetrahedral, binary-icosahedral,
///   iso-mub-local-{left,right}, product.
/// `config` is optional. Platonic solids read "a" (mixing); "product" reads
///   {"simplex": name | document, "unitaries": name | document, "t": T,
///    "chamber": true}.
io::Document construct_named(std::string_view name, const io::Json& config = io::Json::object());

std::vector<std::string> registry_names();

}  // namespace qdesign

#pragma once

// Published residuals delta_{2,t} for one-qubit mixed designs (3 significant
// digits) and pinned Monte-Carlo reference values with their provenance.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qdesign::reference {

struct ResidualRow {
  std::string_view label;
  std::string_view construction;  // registry name, empty when ingest-only
  int first_t;
  std::array<double, 5> delta;    // t = first_t, first_t + 1, ...
  int count;
};

// delta_{2,t}, t = 1..5, for reduced two-qubit designs.
inline constexpr std::array<ResidualRow, 5> kReducedDesigns = {{
    {"Standard MUB", "standard-mub-d4", 1, {0, 0, 0, 3.37e-3, 8.42e-3}, 5},
    {"IsoMUB", "iso-mub", 1, {0, 0, 0, 5.88e-5, 1.47e-4}, 5},
    {"IsoSIC", "", 1, {0, 0, 0, 5.39e-4, 1.35e-3}, 5},
    {"Witting Poly", "", 1, {0, 0, 0, 6.25e-4, 1.56e-3}, 5},
    {"Hoggar Ex24", "", 1, {0, 0, 0, 3.37e-3, 8.42e-3}, 5},
}};

// delta_{2,t}, t = 2..5, for the Platonic designs at a = (5 - sqrt 15)/10.
inline constexpr std::array<ResidualRow, 5> kPlatonicDesigns = {{
    {"Tetrahedral", "platonic-tetra", 2, {0, 6e-3, 1.25e-2, 1.69e-2, 0}, 4},
    {"Octahedral", "platonic-octa", 2, {0, 0, 1.14e-3, 2.85e-3, 0}, 4},
    {"Cubic (IsoSIC)", "platonic-cube", 2, {0, 0, 5.39e-4, 1.35e-3, 0}, 4},
    {"Icosahedral", "platonic-icosa", 2, {0, 0, 5.88e-5, 1.47e-4, 0}, 4},
    {"Dodecahedral (IsoMUB)", "platonic-dodeca", 2, {0, 0, 5.88e-5, 1.47e-4, 0}, 4},
}};

inline constexpr double kTableRelativeTolerance = 0.01;
inline constexpr double kTableZeroTolerance = 1e-10;

/// A Monte-Carlo value regenerated bit-for-bit by the recorded configuration.
struct McPin {
  std::string_view what;
  int dim;
  std::uint64_t seed;
  std::size_t count;
  double mean;
  double sigma;
  double exact;
};

/// "p1^2 p3" style label of a simplex monomial.
inline std::string moment_label(const std::vector<int>& exponents) {
  std::string s;
  for (std::size_t k = 0; k < exponents.size(); ++k) {
    if (exponents[k] == 0) continue;
    if (!s.empty()) s += ' ';
    s += "p" + std::to_string(k + 1);
    if (exponents[k] > 1) s += "^" + std::to_string(exponents[k]);
  }
  return s;
}

// HS moments on the 3-simplex, estimate_simplex_moments(3, HS, 3, {3, count, seed}).
inline constexpr std::array<McPin, 4> kMcPins = {{
    {"p1^2", 3, 20240917, 262144, 0.19986323730318048, 6.4025923549366863e-05, 0.2},
    {"p1 p2", 3, 20240917, 262144, 0.066735048015076501, 3.2012961774683946e-05, 1.0 / 15.0},
    {"p1^3", 3, 20240917, 262144, 0.13919947824651754, 8.8958265762587187e-05, 23.0 / 165.0},
    {"p1 p2 p3", 3, 20240917, 262144, 0.006071288958413649, 1.0692296495770307e-05, 1.0 / 165.0},
}};

}  // namespace qdesign::reference

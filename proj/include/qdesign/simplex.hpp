#pragma once

// Weighted point sets in the probability simplex and the maps that produce
// them (dephasing of pure ensembles) or consume them (products with unitary
// designs).

#include <string_view>
#include <vector>

#include "qdesign/moments.hpp"
#include "qdesign/qstate.hpp"

namespace qdesign {

enum class Measure { lebesgue, hilbert_schmidt };

Measure parse_measure(std::string_view s);
std::string_view measure_name(Measure m);

struct SimplexPoint {
  std::vector<double> p;
  double weight = 0.0;
};

struct SimplexDesign {
  int n = 0;
  Measure measure = Measure::lebesgue;
  int order = 0;
  std::vector<SimplexPoint> points;

  /// Checks points lie in the simplex and weights sum to one.
  void validate(double tol = tol::kWeights) const;
};

/// Equal-weight designs on [-1/2, 1/2], as probability vectors (1/2 + x, 1/2 - x).
/// Cataloged (t, M): Lebesgue (1,1) (3,2) (3,3) (5,4) (5,5); HS (3,2) (3,3) (5,4).
SimplexDesign interval_design(int t, int m, Measure measure);

/// E[prod_k p_k^{a_k}] over the simplex for the given measure. Exact for both
/// measures; HS uses the Vandermonde-squared density prod_{i<j} (p_i - p_j)^2.
double simplex_moment(int n, Measure measure, std::span<const int> exponents);

/// Moments of x = p_1 - 1/2 on the interval (n = 2).
double interval_moment(Measure measure, int k);

struct SimplicialReport {
  int order = 0;
  std::vector<double> max_deviation_by_degree;  // index = degree, 0..order
  double max_deviation = 0.0;
  double tolerance = tol::kDesign;
  bool is_design = false;
};

/// Compares every monomial of total degree <= t (t < 0: design.order).
SimplicialReport verify_simplicial(const SimplexDesign& design, int t = -1,
                                   double tolerance = tol::kDesign);

/// |psi> -> (|psi_k|^2)_k with weights preserved; a Lebesgue point set.
SimplexDesign decohere(const Ensemble& ensemble, int order = 0);

/// Keeps points sorted in descending order (ties within `tol` allowed),
/// renormalizing the weights.
SimplexDesign restrict_to_chamber(const SimplexDesign& design, double tol = 1e-9);

/// Merges coincident points, summing weights.
SimplexDesign merge_duplicates(const SimplexDesign& design, double tol = 1e-9);

struct ProductOptions {
  int t = 2;
  double unitary_tolerance = 1e-9;
  double tie_tolerance = 1e-9;
  double merge_tolerance = 1e-10;
};

/// {U_j diag(p_i) U_j^dag} with product weights. Chamber points with tied
/// coordinates (multiplicities k_1, k_2, ...) are reweighted by 1/prod k_r!.
/// Throws InvariantError for points outside the chamber and
/// UnverifiedDesignError if the unitaries fail the order-t frame potential.
/// Coincident output states are merged.
Ensemble product_design(const SimplexDesign& chamber, const UnitarySet& unitaries,
                        ProductOptions opts = {});

}  // namespace qdesign

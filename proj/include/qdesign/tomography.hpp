#pragma once

// Linear-inversion tomography with a mixed-state 2-design used as a POVM.
//
// Effects are rho~_i = N w_i rho_i (N/M rho_i for uniform weights), which sum
// to the identity for any 1-design. From sum_i w_i rho_i (x) rho_i = omega_{N,2}
// one gets  rho = (N^2 + 1) sum_i p_i rho_i - N I  with p_i = Tr(rho~_i rho).

#include <vector>

#include "qdesign/qstate.hpp"
#include "qdesign/tolerances.hpp"

namespace qdesign {

struct Reconstruction {
  Matrix rho;
  double min_eigenvalue = 0.0;
  bool consistent = true;  // false when min_eigenvalue < -1e-6
};

class PovmDesign {
 public:
  /// Verifies the mixed-state 2-design property first; throws
  /// UnverifiedDesignError carrying delta otherwise.
  static PovmDesign from_ensemble(const Ensemble& base, double tolerance = tol::kDesign);

  int dim() const { return base_.dim(); }
  std::size_t size() const { return base_.size(); }
  const Ensemble& base() const { return base_; }
  const std::vector<Matrix>& effects() const { return effects_; }
  double delta() const { return delta_; }

  std::vector<double> probabilities(const DensityMatrix& rho) const;
  Reconstruction reconstruct(const std::vector<double>& p) const;

 private:
  PovmDesign(Ensemble base, double delta);

  Ensemble base_;
  double delta_;
  std::vector<Matrix> effects_;
};

}  // namespace qdesign

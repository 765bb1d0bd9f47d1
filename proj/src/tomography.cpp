#include "qdesign/tomography.hpp"

#include <string>

#include "qdesign/errors.hpp"
#include "qdesign/moments.hpp"

namespace qdesign {

PovmDesign::PovmDesign(Ensemble base, double delta) : base_(std::move(base)), delta_(delta) {
  const double n = base_.dim();
  effects_.reserve(base_.size());
  for (std::size_t i = 0; i < base_.size(); ++i)
    effects_.push_back(n * base_.weight(i) * base_.densities()[i].matrix());
}

PovmDesign PovmDesign::from_ensemble(const Ensemble& base, double tolerance) {
  const DesignReport r = delta_mixed(base, 2, {tolerance, Execution::parallel});
  if (!r.is_design)
    throw UnverifiedDesignError("ensemble is not a mixed-state 2-design (delta_2 = " +
                                    std::to_string(r.delta) + ")",
                                r.delta);
  return PovmDesign(base, r.delta);
}

std::vector<double> PovmDesign::probabilities(const DensityMatrix& rho) const {
  if (rho.dim() != dim()) throw DimensionError("probabilities: state dimension differs from the design");
  std::vector<double> p(effects_.size());
  for (std::size_t i = 0; i < effects_.size(); ++i)
    p[i] = (effects_[i].array() * rho.matrix().array().conjugate()).sum().real();
  return p;
}

Reconstruction PovmDesign::reconstruct(const std::vector<double>& p) const {
  if (p.size() != effects_.size())
    throw DimensionError("reconstruct: expected " + std::to_string(effects_.size()) +
                         " probabilities, got " + std::to_string(p.size()));
  const int n = dim();
  Matrix acc = Matrix::Zero(n, n);
  for (std::size_t i = 0; i < p.size(); ++i) {
    // rho~_i / (N w_i) is rho_i; skip zero-weight members which carry no data
    if (base_.weight(i) > 0.0) acc += p[i] * base_.densities()[i].matrix();
  }
  Reconstruction r;
  r.rho = (n * n + 1.0) * acc - static_cast<double>(n) * Matrix::Identity(n, n);
  r.rho = (0.5 * (r.rho + r.rho.adjoint())).eval();
  Eigen::SelfAdjointEigenSolver<Matrix> es(r.rho, Eigen::EigenvaluesOnly);
  r.min_eigenvalue = es.eigenvalues().minCoeff();
  r.consistent = r.min_eigenvalue >= -1e-6;
  return r;
}

}  // namespace qdesign

#pragma once

#include <cmath>
#include <vector>

#include "qdesign/mc_oracle.hpp"
#include "qdesign/qstate.hpp"

namespace support {

inline double max_abs(const qdesign::Matrix& m) { return m.cwiseAbs().maxCoeff(); }

inline qdesign::Vector ket(std::initializer_list<qdesign::Complex> xs) {
  qdesign::Vector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index k = 0;
  for (auto x : xs) v(k++) = x;
  return v;
}

inline qdesign::Ensemble random_hs_ensemble(qdesign::mc::Rng& rng, int n, int m) {
  std::vector<qdesign::DensityMatrix> rhos;
  for (int i = 0; i < m; ++i) rhos.push_back(qdesign::DensityMatrix::trusted(qdesign::mc::draw_hs(rng, n)));
  std::uniform_real_distribution<double> u(0.1, 1.0);
  std::vector<double> w;
  double s = 0.0;
  for (int i = 0; i < m; ++i) s += w.emplace_back(u(rng));
  for (auto& x : w) x /= s;
  return qdesign::Ensemble::from_mixed(std::move(rhos), std::move(w));
}

}  // namespace support

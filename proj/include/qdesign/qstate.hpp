#pragma once

// Pure states, density matrices and weighted ensembles of them, plus the
// qubit Bloch-ball geometry used throughout the library.
//
// Bloch convention: a qubit state is rho = I/2 + b . sigma with |b| <= 1/2,
// so pure states sit on the sphere of radius 1/2 and purity = 1/2 + 2|b|^2.

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "qdesign/tolerances.hpp"

namespace qdesign {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

struct Bipartition {
  int dim_a = 0;
  int dim_b = 0;

  int total() const { return dim_a * dim_b; }
  bool square() const { return dim_a == dim_b; }
  friend bool operator==(const Bipartition&, const Bipartition&) = default;
};

/// Which subsystem partial_trace removes; Side::B gives Tr_B, i.e. rho_A.
enum class Side { A, B };

class PureState {
 public:
  /// Validates sum |a_k|^2 = 1 within `norm_tol`.
  explicit PureState(Vector amplitudes,
                     std::optional<Bipartition> bipartition = std::nullopt,
                     double norm_tol = tol::kNorm);

  /// Rescales `v` to unit norm before validating.
  static PureState normalized(const Vector& v,
                              std::optional<Bipartition> bipartition = std::nullopt);

  int dim() const { return static_cast<int>(amps_.size()); }
  const Vector& amplitudes() const { return amps_; }
  const std::optional<Bipartition>& bipartition() const { return bip_; }
  PureState with_bipartition(Bipartition b) const;

  /// |psi><psi|
  Matrix projector() const;

 private:
  Vector amps_;
  std::optional<Bipartition> bip_;
};

class DensityMatrix {
 public:
  /// Validates Hermiticity, unit trace and PSD (min eigenvalue >= -psd_tol).
  explicit DensityMatrix(Matrix m, double tolerance = tol::kHermitian,
                         double psd_tol = tol::kPsd,
                         std::optional<Bipartition> bipartition = std::nullopt);

  /// For matrices that are density matrices by construction (partial traces,
  /// sampler outputs). Skips the eigenvalue check.
  static DensityMatrix trusted(Matrix m,
                               std::optional<Bipartition> bipartition = std::nullopt);

  static DensityMatrix maximally_mixed(int n);
  static DensityMatrix from_pure(const PureState& psi);

  int dim() const { return static_cast<int>(m_.rows()); }
  const Matrix& matrix() const { return m_; }
  const std::optional<Bipartition>& bipartition() const { return bip_; }

  /// Ascending eigenvalues.
  RealVector eigenvalues() const;

 private:
  struct TrustedTag {};
  DensityMatrix(Matrix m, std::optional<Bipartition> bip, TrustedTag)
      : m_(std::move(m)), bip_(bip) {}

  Matrix m_;
  std::optional<Bipartition> bip_;
};

enum class EnsembleKind { pure, mixed };

/// Weighted list of states of a common dimension. Weights sum to one.
class Ensemble {
 public:
  /// Empty `weights` means uniform.
  static Ensemble from_pure(std::vector<PureState> states,
                            std::vector<double> weights = {},
                            double weight_tol = tol::kWeights);
  static Ensemble from_mixed(std::vector<DensityMatrix> states,
                             std::vector<double> weights = {},
                             double weight_tol = tol::kWeights);

  EnsembleKind kind() const { return kind_; }
  int dim() const { return dim_; }
  std::size_t size() const { return weights_.size(); }
  std::span<const double> weights() const { return weights_; }
  double weight(std::size_t i) const { return weights_[i]; }

  /// Throws InvariantError for a mixed ensemble.
  const std::vector<PureState>& pure_states() const;
  /// Available for both kinds; projectors for pure ensembles.
  const std::vector<DensityMatrix>& densities() const { return densities_; }

 private:
  Ensemble() = default;

  EnsembleKind kind_ = EnsembleKind::mixed;
  int dim_ = 0;
  std::vector<double> weights_;
  std::vector<PureState> pure_;
  std::vector<DensityMatrix> densities_;
};

struct BlochPoint {
  Eigen::Vector3d coords = Eigen::Vector3d::Zero();
  double weight = 1.0;

  double radius() const { return coords.norm(); }
};

struct AngleClass {
  double cosine = 0.0;
  std::size_t multiplicity = 0;
};

struct AngleSpectrum {
  std::vector<AngleClass> classes;  // ascending cosine
  std::size_t excluded = 0;         // zero-radius points skipped
};

DensityMatrix partial_trace(const PureState& psi, Side traced_out);
DensityMatrix partial_trace(const DensityMatrix& rho, Side traced_out);

/// Reduced ensemble: every member replaced by its partial trace.
Ensemble reduce(const Ensemble& ensemble, Side traced_out);

/// Descending Schmidt coefficients (squared), i.e. the reduced spectrum.
RealVector schmidt_vector(const PureState& psi);

BlochPoint bloch_point(const DensityMatrix& rho, double weight = 1.0);
DensityMatrix from_bloch(const Eigen::Vector3d& b);

double purity(const DensityMatrix& rho);
double overlap(const DensityMatrix& rho, const DensityMatrix& sigma);

/// |<a|b>| >= 1 - tol, i.e. equal as rays.
bool same_ray(const PureState& a, const PureState& b, double tol = tol::kPhase);

/// Pairwise cosines over i < j, grouped within `tolerance`.
AngleSpectrum angle_spectrum(std::span<const BlochPoint> points,
                             double tolerance = tol::kAngle);

/// Merges coincident points (within `tolerance`), summing weights.
std::vector<BlochPoint> merge_points(std::span<const BlochPoint> points,
                                     double tolerance = 1e-9);

}  // namespace qdesign

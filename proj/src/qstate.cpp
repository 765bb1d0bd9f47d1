#include "qdesign/qstate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "qdesign/errors.hpp"

namespace qdesign {

namespace {

void check_weights(std::vector<double>& weights, std::size_t n, double tol) {
  if (n == 0) throw InvariantError("ensemble must have at least one member");
  if (weights.empty()) {
    weights.assign(n, 1.0 / static_cast<double>(n));
    return;
  }
  if (weights.size() != n)
    throw InvariantError("ensemble has " + std::to_string(n) + " members but " +
                         std::to_string(weights.size()) + " weights");
  for (double w : weights)
    if (!(w >= 0.0)) throw InvariantError("ensemble weights must be nonnegative");
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  if (std::abs(total - 1.0) > tol)
    throw InvariantError("ensemble weights sum to " + std::to_string(total) +
                         ", expected 1");
}

Matrix pure_to_matrix(const Vector& amps, const Bipartition& b) {
  Matrix psi(b.dim_a, b.dim_b);
  for (int i = 0; i < b.dim_a; ++i)
    for (int j = 0; j < b.dim_b; ++j) psi(i, j) = amps(i * b.dim_b + j);
  return psi;
}

const Bipartition& require_bipartition(const std::optional<Bipartition>& b) {
  if (!b) throw DimensionError("partial trace requires a bipartition");
  return *b;
}

// Pauli coefficients of a qubit density matrix in the radius-1/2 convention.
Eigen::Vector3d bloch_coords(const Matrix& m) {
  return {m(0, 1).real(), -m(0, 1).imag(), 0.5 * (m(0, 0).real() - m(1, 1).real())};
}

}  // namespace

PureState::PureState(Vector amplitudes, std::optional<Bipartition> bipartition,
                     double norm_tol)
    : amps_(std::move(amplitudes)), bip_(bipartition) {
  if (amps_.size() == 0) throw DimensionError("pure state must have dim >= 1");
  const double n2 = amps_.squaredNorm();
  if (std::abs(n2 - 1.0) > norm_tol)
    throw InvariantError("pure state has squared norm " + std::to_string(n2));
  if (bip_ && bip_->total() != dim())
    throw DimensionError("bipartition " + std::to_string(bip_->dim_a) + "x" +
                         std::to_string(bip_->dim_b) + " does not match dim " +
                         std::to_string(dim()));
}

PureState PureState::normalized(const Vector& v, std::optional<Bipartition> bipartition) {
  const double n = v.norm();
  if (n == 0.0) throw InvariantError("cannot normalize the zero vector");
  return PureState(v / n, bipartition);
}

PureState PureState::with_bipartition(Bipartition b) const {
  return PureState(amps_, b, 1e-9);
}

Matrix PureState::projector() const { return amps_ * amps_.adjoint(); }

DensityMatrix::DensityMatrix(Matrix m, double tolerance, double psd_tol,
                             std::optional<Bipartition> bipartition)
    : m_(std::move(m)), bip_(bipartition) {
  if (m_.rows() == 0 || m_.rows() != m_.cols())
    throw DimensionError("density matrix must be square and non-empty");
  if (bip_ && bip_->total() != dim())
    throw DimensionError("bipartition does not match density matrix dim");
  const double herm = (m_ - m_.adjoint()).cwiseAbs().maxCoeff();
  if (herm > tolerance)
    throw InvariantError("density matrix not Hermitian (deviation " +
                         std::to_string(herm) + ")");
  const Complex tr = m_.trace();
  if (std::abs(tr - Complex(1.0, 0.0)) > tolerance)
    throw InvariantError("density matrix trace is " + std::to_string(tr.real()));
  const double min_ev = eigenvalues()(0);
  if (min_ev < -psd_tol)
    throw InvariantError("density matrix not PSD (min eigenvalue " +
                         std::to_string(min_ev) + ")");
}

DensityMatrix DensityMatrix::trusted(Matrix m, std::optional<Bipartition> bipartition) {
  return DensityMatrix(std::move(m), bipartition, TrustedTag{});
}

DensityMatrix DensityMatrix::maximally_mixed(int n) {
  return trusted(Matrix::Identity(n, n) / static_cast<double>(n));
}

DensityMatrix DensityMatrix::from_pure(const PureState& psi) {
  return trusted(psi.projector(), psi.bipartition());
}

RealVector DensityMatrix::eigenvalues() const {
  // Hermitian part only; the solver reads the lower triangle.
  Eigen::SelfAdjointEigenSolver<Matrix> es(m_, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

Ensemble Ensemble::from_pure(std::vector<PureState> states, std::vector<double> weights,
                             double weight_tol) {
  check_weights(weights, states.size(), weight_tol);
  Ensemble e;
  e.kind_ = EnsembleKind::pure;
  e.dim_ = states.front().dim();
  for (const auto& s : states) {
    if (s.dim() != e.dim_) throw DimensionError("ensemble members differ in dimension");
    e.densities_.push_back(DensityMatrix::from_pure(s));
  }
  e.pure_ = std::move(states);
  e.weights_ = std::move(weights);
  return e;
}

Ensemble Ensemble::from_mixed(std::vector<DensityMatrix> states,
                              std::vector<double> weights, double weight_tol) {
  check_weights(weights, states.size(), weight_tol);
  Ensemble e;
  e.kind_ = EnsembleKind::mixed;
  e.dim_ = states.front().dim();
  for (const auto& s : states)
    if (s.dim() != e.dim_) throw DimensionError("ensemble members differ in dimension");
  e.densities_ = std::move(states);
  e.weights_ = std::move(weights);
  return e;
}

const std::vector<PureState>& Ensemble::pure_states() const {
  if (kind_ != EnsembleKind::pure)
    throw InvariantError("operation requires a pure-state ensemble");
  return pure_;
}

DensityMatrix partial_trace(const PureState& psi, Side traced_out) {
  const Bipartition& b = require_bipartition(psi.bipartition());
  const Matrix m = pure_to_matrix(psi.amplitudes(), b);
  Matrix reduced = traced_out == Side::B ? Matrix(m * m.adjoint())
                                         : Matrix(m.transpose() * m.conjugate());
  return DensityMatrix::trusted(0.5 * (reduced + reduced.adjoint()));
}

DensityMatrix partial_trace(const DensityMatrix& rho, Side traced_out) {
  const Bipartition& b = require_bipartition(rho.bipartition());
  const Matrix& m = rho.matrix();
  const int keep = traced_out == Side::B ? b.dim_a : b.dim_b;
  const int drop = traced_out == Side::B ? b.dim_b : b.dim_a;
  Matrix out = Matrix::Zero(keep, keep);
  for (int i = 0; i < keep; ++i)
    for (int j = 0; j < keep; ++j) {
      Complex s = 0.0;
      for (int k = 0; k < drop; ++k) {
        const int r = traced_out == Side::B ? i * b.dim_b + k : k * b.dim_b + i;
        const int c = traced_out == Side::B ? j * b.dim_b + k : k * b.dim_b + j;
        s += m(r, c);
      }
      out(i, j) = s;
    }
  return DensityMatrix::trusted(0.5 * (out + out.adjoint()));
}

Ensemble reduce(const Ensemble& ensemble, Side traced_out) {
  std::vector<DensityMatrix> out;
  out.reserve(ensemble.size());
  if (ensemble.kind() == EnsembleKind::pure) {
    for (const auto& psi : ensemble.pure_states()) out.push_back(partial_trace(psi, traced_out));
  } else {
    for (const auto& rho : ensemble.densities()) out.push_back(partial_trace(rho, traced_out));
  }
  const auto w = ensemble.weights();
  return Ensemble::from_mixed(std::move(out), std::vector<double>(w.begin(), w.end()));
}

RealVector schmidt_vector(const PureState& psi) {
  const Bipartition& b = require_bipartition(psi.bipartition());
  if (!b.square()) throw UnsupportedError("schmidt_vector requires a square bipartition");
  RealVector ev = partial_trace(psi, Side::B).eigenvalues();
  std::vector<double> v(ev.data(), ev.data() + ev.size());
  for (double& x : v) x = std::max(x, 0.0);
  std::stable_sort(v.begin(), v.end(), std::greater<>());
  const double total = std::accumulate(v.begin(), v.end(), 0.0);
  RealVector out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) out(static_cast<Eigen::Index>(i)) = v[i] / total;
  return out;
}

BlochPoint bloch_point(const DensityMatrix& rho, double weight) {
  if (rho.dim() != 2) throw UnsupportedError("Bloch coordinates need a qubit state");
  return BlochPoint{bloch_coords(rho.matrix()), weight};
}

DensityMatrix from_bloch(const Eigen::Vector3d& b) {
  if (b.squaredNorm() > 0.25 + tol::kBlochRadius)
    throw InvariantError("Bloch vector outside the ball of radius 1/2");
  Matrix m(2, 2);
  m(0, 0) = 0.5 + b.z();
  m(1, 1) = 0.5 - b.z();
  m(0, 1) = Complex(b.x(), -b.y());
  m(1, 0) = Complex(b.x(), b.y());
  return DensityMatrix::trusted(std::move(m));
}

double purity(const DensityMatrix& rho) { return overlap(rho, rho); }

double overlap(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dim() != sigma.dim()) throw DimensionError("overlap of states of different dims");
  // Tr(rho sigma) = sum_kl rho_kl conj(sigma_kl) for Hermitian sigma.
  return (rho.matrix().array() * sigma.matrix().array().conjugate()).sum().real();
}

bool same_ray(const PureState& a, const PureState& b, double tol) {
  if (a.dim() != b.dim()) return false;
  return std::abs(a.amplitudes().dot(b.amplitudes())) >= 1.0 - tol;
}

AngleSpectrum angle_spectrum(std::span<const BlochPoint> points, double tolerance) {
  AngleSpectrum out;
  std::vector<Eigen::Vector3d> dirs;
  for (const auto& p : points) {
    const double r = p.radius();
    if (r < 1e-12) {
      ++out.excluded;
      continue;
    }
    dirs.push_back(p.coords / r);
  }
  if (dirs.size() < 2) throw InvariantError("angle spectrum needs two nonzero points");
  std::vector<double> cosines;
  for (std::size_t i = 0; i < dirs.size(); ++i)
    for (std::size_t j = i + 1; j < dirs.size(); ++j)
      cosines.push_back(std::clamp(dirs[i].dot(dirs[j]), -1.0, 1.0));
  std::sort(cosines.begin(), cosines.end());
  for (double c : cosines) {
    if (!out.classes.empty() && c - out.classes.back().cosine <= tolerance) {
      ++out.classes.back().multiplicity;
    } else {
      out.classes.push_back({c, 1});
    }
  }
  return out;
}

std::vector<BlochPoint> merge_points(std::span<const BlochPoint> points, double tolerance) {
  std::vector<BlochPoint> out;
  for (const auto& p : points) {
    auto it = std::find_if(out.begin(), out.end(), [&](const BlochPoint& q) {
      return (q.coords - p.coords).norm() <= tolerance;
    });
    if (it == out.end()) {
      out.push_back(p);
    } else {
      it->weight += p.weight;
    }
  }
  return out;
}

}  // namespace qdesign

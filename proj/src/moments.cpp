#include "qdesign/moments.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include <unsupported/Eigen/KroneckerProduct>

#include "qdesign/errors.hpp"

namespace qdesign {

namespace {

double ipow(double x, int k) {
  double r = 1.0;
  for (int i = 0; i < k; ++i) r *= x;
  return r;
}

// sum_sigma Tr(O_sigma)^2 over S_t, class reduced.
double omega_normalizer(int n, const std::vector<ConjugacyClass>& classes) {
  double d = 0.0;
  for (const auto& c : classes)
    d += static_cast<double>(c.size) * ipow(static_cast<double>(n), 2 * static_cast<int>(c.cycle_type.size()));
  return d;
}

std::vector<double> power_traces(const DensityMatrix& rho, int t) {
  const RealVector ev = rho.eigenvalues();
  std::vector<double> out(static_cast<std::size_t>(t), 0.0);
  for (Eigen::Index k = 0; k < ev.size(); ++k) {
    double p = 1.0;
    for (int l = 0; l < t; ++l) {
      p *= ev(k);
      out[static_cast<std::size_t>(l)] += p;
    }
  }
  return out;
}

std::vector<Matrix> matrices_of(const Ensemble& e) {
  std::vector<Matrix> out;
  out.reserve(e.size());
  for (const auto& rho : e.densities()) out.push_back(rho.matrix());
  return out;
}

void add_permutation(Matrix& m, const Permutation& sigma, int n, double c) {
  const int t = sigma.order();
  const auto dim = static_cast<std::size_t>(m.rows());
  std::vector<std::size_t> in(static_cast<std::size_t>(t)), out(static_cast<std::size_t>(t));
  const auto un = static_cast<std::size_t>(n);
  for (std::size_t col = 0; col < dim; ++col) {
    std::size_t rest = col;
    for (int k = t - 1; k >= 0; --k) {
      in[static_cast<std::size_t>(k)] = rest % un;
      rest /= un;
    }
    for (int k = 0; k < t; ++k) out[static_cast<std::size_t>(sigma.image(k))] = in[static_cast<std::size_t>(k)];
    std::size_t row = 0;
    for (int k = 0; k < t; ++k) row = row * un + out[static_cast<std::size_t>(k)];
    m(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) += c;
  }
}

bool is_unitary(const Matrix& u, double tol) {
  if (u.rows() != u.cols()) return false;
  return (u.adjoint() * u - Matrix::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff() <= tol;
}

// Length of the longest increasing subsequence (patience sorting).
int longest_increasing(const Permutation& p) {
  std::vector<int> piles;
  for (int k = 0; k < p.order(); ++k) {
    auto it = std::lower_bound(piles.begin(), piles.end(), p.image(k));
    if (it == piles.end()) {
      piles.push_back(p.image(k));
    } else {
      *it = p.image(k);
    }
  }
  return static_cast<int>(piles.size());
}

}  // namespace

double permutation_trace(const Permutation& sigma, int n) {
  require_order(sigma.order());
  return ipow(static_cast<double>(n), sigma.cycle_count());
}

MomentOperator::MomentOperator(int dim, int order, std::vector<Permutation> perms,
                               std::vector<double> coefficients)
    : dim_(dim), order_(order), perms_(std::move(perms)), coeffs_(std::move(coefficients)) {
  if (perms_.size() != coeffs_.size())
    throw DimensionError("moment operator: permutation/coefficient count mismatch");
  for (const auto& p : perms_)
    if (p.order() != order_) throw DimensionError("moment operator: permutation of wrong order");
}

double MomentOperator::coefficient(const Permutation& sigma) const {
  for (std::size_t k = 0; k < perms_.size(); ++k)
    if (perms_[k] == sigma) return coeffs_[k];
  return 0.0;
}

const Matrix& MomentOperator::dense() const& {
  if (!dense_) throw UnsupportedError("moment operator has no dense realization");
  return *dense_;
}

Matrix MomentOperator::dense() && {
  if (!dense_) throw UnsupportedError("moment operator has no dense realization");
  return std::move(*dense_);
}

void MomentOperator::materialize() {
  if (dense_) return;
  const std::size_t d = tensor_dim(dim_, order_, kMaxDenseDim);
  Matrix m = Matrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  for (std::size_t k = 0; k < perms_.size(); ++k) add_permutation(m, perms_[k], dim_, coeffs_[k]);
  dense_ = std::move(m);
}

MomentOperator omega(int n, int t, bool materialize) {
  if (n < 1) throw DimensionError("omega needs N >= 1");
  if (materialize) tensor_dim(n, t, kMaxDenseDim);
  auto perms = all_permutations(t);
  const double denom = omega_normalizer(n, conjugacy_classes(t));
  std::vector<double> coeffs;
  coeffs.reserve(perms.size());
  for (const auto& p : perms) coeffs.push_back(permutation_trace(p, n) / denom);
  MomentOperator op(n, t, std::move(perms), std::move(coeffs));
  if (materialize) op.materialize();
  return op;
}

double gamma(int n, int t) {
  require_order(t);
  const auto classes = conjugacy_classes(t);
  const auto perms = all_permutations(t);
  const double dn = static_cast<double>(n);
  // sum_{sigma,tau} Tr O_sigma Tr O_tau Tr O_{sigma tau}; the inner sum over
  // tau is a class function of sigma.
  double numerator = 0.0;
  for (const auto& cls : classes) {
    double inner = 0.0;
    for (const auto& tau : perms)
      inner += ipow(dn, tau.cycle_count()) * ipow(dn, cls.representative.compose(tau).cycle_count());
    numerator += static_cast<double>(cls.size) * ipow(dn, static_cast<int>(cls.cycle_type.size())) * inner;
  }
  const double denom = omega_normalizer(n, classes);
  return numerator / (denom * denom);
}

double moment_trace(std::span<const double> power_traces, const Permutation& sigma) {
  double r = 1.0;
  for (int len : sigma.cycle_type()) {
    if (static_cast<std::size_t>(len) > power_traces.size())
      throw Error("moment_trace: missing Tr(rho^" + std::to_string(len) + ")");
    r *= power_traces[static_cast<std::size_t>(len - 1)];
  }
  return r;
}

MomentOperator partial_trace_omega(const MomentOperator& op) {
  if (op.order() < 2) throw UnsupportedError("partial_trace_omega needs t >= 2");
  std::map<Permutation, double> reduced;
  for (std::size_t k = 0; k < op.permutations().size(); ++k) {
    const auto& sigma = op.permutations()[k];
    const double factor = sigma.fixes_last() ? static_cast<double>(op.dim()) : 1.0;
    reduced[sigma.without_last()] += factor * op.coefficients()[k];
  }
  std::vector<Permutation> perms;
  std::vector<double> coeffs;
  for (auto& [p, c] : reduced) {
    perms.push_back(p);
    coeffs.push_back(c);
  }
  MomentOperator out(op.dim(), op.order() - 1, std::move(perms), std::move(coeffs));
  if (op.has_dense()) out.materialize();
  return out;
}

DesignReport delta_mixed(const Ensemble& ensemble, int t, VerifyOptions opts) {
  require_order(t);
  const int n = ensemble.dim();
  const auto classes = conjugacy_classes(t);
  const double denom = omega_normalizer(n, classes);

  // Tr(omega rho^{(x)t}) = sum_classes |C| N^{c(C)} prod_cycles Tr(rho^len) / denom
  std::vector<double> class_weight;
  for (const auto& c : classes)
    class_weight.push_back(static_cast<double>(c.size) *
                           ipow(static_cast<double>(n), static_cast<int>(c.cycle_type.size())) / denom);

  const auto& rhos = ensemble.densities();
  const auto w = ensemble.weights();
  const double omega_term = kernels::ordered_sum(
      ensemble.size(),
      [&](std::size_t i) {
        const auto pt = power_traces(rhos[i], t);
        double s = 0.0;
        for (std::size_t c = 0; c < classes.size(); ++c)
          s += class_weight[c] * moment_trace(pt, classes[c].representative);
        return w[i] * s;
      },
      opts.exec);

  const auto mats = matrices_of(ensemble);
  DesignReport r;
  r.t = t;
  r.gamma = gamma(n, t);
  r.cross_term = 2.0 * omega_term;
  r.overlap_term = kernels::trace_overlap_power_sum(mats, w, t, opts.exec);
  r.delta = r.gamma - r.cross_term + r.overlap_term;
  r.tolerance = opts.tolerance;
  r.is_design = r.delta <= opts.tolerance;
  return r;
}

double delta_mixed_dense(const Ensemble& ensemble, int t) {
  const int n = ensemble.dim();
  auto om = omega(n, t, true);
  Matrix s = -om.dense();
  for (std::size_t i = 0; i < ensemble.size(); ++i)
    s += ensemble.weight(i) * tensor_power(ensemble.densities()[i].matrix(), t);
  return s.squaredNorm();
}

double projective_bound(int d, int t) {
  // binom(d+t-1, t)
  double b = 1.0;
  for (int k = 1; k <= t; ++k) b = b * static_cast<double>(d - 1 + k) / static_cast<double>(k);
  return 1.0 / b;
}

FramePotentialReport frame_potential_projective(const Ensemble& ensemble, int t,
                                                VerifyOptions opts) {
  if (t < 1) throw UnsupportedError("frame potential order must be >= 1");
  std::vector<Vector> psis;
  for (const auto& s : ensemble.pure_states()) psis.push_back(s.amplitudes());
  FramePotentialReport r;
  r.t = t;
  r.value = kernels::state_overlap_power_sum(psis, ensemble.weights(), t, opts.exec);
  r.bound = projective_bound(ensemble.dim(), t);
  r.delta = r.value - r.bound;
  r.tolerance = opts.tolerance;
  r.is_design = r.delta <= opts.tolerance;
  return r;
}

UnitarySet UnitarySet::uniform(std::vector<Matrix> us) {
  UnitarySet s;
  s.weights.assign(us.size(), us.empty() ? 0.0 : 1.0 / static_cast<double>(us.size()));
  s.unitaries = std::move(us);
  return s;
}

void UnitarySet::validate(double tol) const {
  if (unitaries.empty()) throw InvariantError("unitary set is empty");
  if (weights.size() != unitaries.size())
    throw InvariantError("unitary set: weight count does not match member count");
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) throw InvariantError("unitary set: negative weight");
    total += w;
  }
  if (std::abs(total - 1.0) > tol::kWeights) throw InvariantError("unitary set: weights do not sum to 1");
  const auto d = unitaries.front().rows();
  for (const auto& u : unitaries) {
    if (u.rows() != d) throw DimensionError("unitary set: members differ in dimension");
    if (!is_unitary(u, tol)) throw InvariantError("unitary set: member is not unitary");
  }
}

double haar_trace_moment(int d, int t) {
  if (t == 0) return 1.0;
  std::size_t count = 0;
  for (const auto& p : all_permutations(t))
    if (longest_increasing(p) <= d) ++count;
  return static_cast<double>(count);
}

FramePotentialReport frame_potential_unitary(const UnitarySet& set, int t,
                                             VerifyOptions opts) {
  set.validate();
  FramePotentialReport r;
  r.t = t;
  r.value = kernels::unitary_trace_power_sum(set.unitaries, set.weights, t, opts.exec);
  r.bound = haar_trace_moment(set.dim(), t);
  r.delta = r.value - r.bound;
  r.tolerance = opts.tolerance;
  r.is_design = r.delta <= opts.tolerance;
  return r;
}

Matrix tensor_power(const Matrix& a, int t) {
  if (t < 1) throw UnsupportedError("tensor power needs t >= 1");
  tensor_dim(static_cast<int>(a.rows()), t, kMaxDenseDim);
  Matrix out = a;
  for (int k = 1; k < t; ++k) out = Eigen::kroneckerProduct(out, a).eval();
  return out;
}

Matrix partial_trace_last(const Matrix& m, int n, int t) {
  const auto outer = static_cast<Eigen::Index>(tensor_dim(n, t - 1, kMaxDenseDim));
  if (m.rows() != outer * n) throw DimensionError("partial_trace_last: size mismatch");
  Matrix out = Matrix::Zero(outer, outer);
  for (Eigen::Index i = 0; i < outer; ++i)
    for (Eigen::Index j = 0; j < outer; ++j)
      for (int k = 0; k < n; ++k) out(i, j) += m(i * n + k, j * n + k);
  return out;
}

}  // namespace qdesign

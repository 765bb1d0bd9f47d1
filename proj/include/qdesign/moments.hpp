#pragma once

// Moment calculus for mixed-state, projective and unitary designs.
//
// The HS-average of rho^{(x)t} is
//
//   omega_{N,t} = sum_sigma Tr(O_sigma) O_sigma / sum_sigma Tr(O_sigma)^2,
//
// a class function of S_t. Because Tr(O_sigma rho^{(x)t}) factorizes into
// prod_{cycles} Tr(rho^len), the design residual is evaluated without ever
// forming an N^t x N^t matrix. The dense route is kept as an independent
// check for N^t <= 4096.

#include <optional>
#include <span>
#include <vector>

#include "qdesign/kernels.hpp"
#include "qdesign/permutation.hpp"
#include "qdesign/qstate.hpp"
#include "qdesign/tolerances.hpp"

namespace qdesign {

inline constexpr std::size_t kMaxDenseDim = 4096;

/// Tr(O_sigma) on (C^n)^{(x)t}, i.e. n^{#cycles}.
double permutation_trace(const Permutation& sigma, int n);

class MomentOperator {
 public:
  MomentOperator(int dim, int order, std::vector<Permutation> perms,
                 std::vector<double> coefficients);

  int dim() const { return dim_; }
  int order() const { return order_; }
  const std::vector<Permutation>& permutations() const { return perms_; }
  const std::vector<double>& coefficients() const { return coeffs_; }
  double coefficient(const Permutation& sigma) const;

  bool has_dense() const { return dense_.has_value(); }
  const Matrix& dense() const&;
  Matrix dense() &&;
  /// Builds sum_sigma c_sigma O_sigma (capacity guarded).
  void materialize();

 private:
  int dim_;
  int order_;
  std::vector<Permutation> perms_;
  std::vector<double> coeffs_;
  std::optional<Matrix> dense_;
};

/// omega_{N,t}. With `materialize`, also builds the dense N^t x N^t matrix.
MomentOperator omega(int n, int t, bool materialize = false);

/// gamma_{N,t} = Tr omega_{N,t}^2 via class-reduced cycle counting.
double gamma(int n, int t);

/// Tr(O_sigma rho^{(x)t}) from power_traces[k-1] = Tr(rho^k).
double moment_trace(std::span<const double> power_traces, const Permutation& sigma);

/// Traces out the last tensor factor, acting on the coefficient map.
MomentOperator partial_trace_omega(const MomentOperator& op);

struct DesignReport {
  int t = 0;
  double delta = 0.0;
  double gamma = 0.0;
  double cross_term = 0.0;    // 2 sum_i w_i Tr(omega rho_i^{(x)t})
  double overlap_term = 0.0;  // sum_ij w_i w_j Tr(rho_i rho_j)^t
  double tolerance = tol::kDesign;
  bool is_design = false;
};

struct VerifyOptions {
  double tolerance = tol::kDesign;
  Execution exec = Execution::parallel;
};

/// Mixed-state design residual delta = gamma - cross + overlap >= 0.
DesignReport delta_mixed(const Ensemble& ensemble, int t, VerifyOptions opts = {});

/// Same residual computed as ||sum_i w_i rho_i^{(x)t} - omega||_F^2 with
/// dense matrices. Capacity guarded by kMaxDenseDim.
double delta_mixed_dense(const Ensemble& ensemble, int t);

struct FramePotentialReport {
  int t = 0;
  double value = 0.0;
  double bound = 0.0;
  double delta = 0.0;
  double tolerance = tol::kDesign;
  bool is_design = false;
};

/// 1 / binom(d+t-1, t).
double projective_bound(int d, int t);

FramePotentialReport frame_potential_projective(const Ensemble& ensemble, int t,
                                                VerifyOptions opts = {});

/// Weighted list of unitaries of a common dimension.
struct UnitarySet {
  std::vector<Matrix> unitaries;
  std::vector<double> weights;

  static UnitarySet uniform(std::vector<Matrix> us);
  int dim() const { return unitaries.empty() ? 0 : static_cast<int>(unitaries.front().rows()); }
  std::size_t size() const { return unitaries.size(); }
  /// Throws InvariantError unless every member is unitary within `tol`.
  void validate(double tol = tol::kUnitary) const;
};

/// Haar moment int |Tr U|^{2t} dU over U(d): the number of permutations in
/// S_t without an increasing subsequence longer than d.
double haar_trace_moment(int d, int t);

FramePotentialReport frame_potential_unitary(const UnitarySet& set, int t,
                                             VerifyOptions opts = {});

/// A^{(x)t}.
Matrix tensor_power(const Matrix& a, int t);

/// Traces out the last of t factors of dimension n.
Matrix partial_trace_last(const Matrix& m, int n, int t);

}  // namespace qdesign

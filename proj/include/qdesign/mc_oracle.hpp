#pragma once

// Monte-Carlo ground truth for the analytic moment formulas.
//
// Samplers: Ginibre G -> GG^dag / Tr (Hilbert-Schmidt), normalized complex
// Gaussian vectors (Fubini-Study), QR of a Ginibre matrix with the phases of
// diag(R) divided out (Haar). None of them touches the permutation calculus.
//
// Reproducibility: the sample index range is cut into fixed blocks; block b
// draws from its own mt19937_64 seeded by mixing (seed, b). Block partial sums
// are merged in block order, so results are bitwise identical for any thread
// count.

#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <vector>

#include "qdesign/qstate.hpp"
#include "qdesign/simplex.hpp"

namespace qdesign::mc {

inline constexpr std::uint64_t kDefaultSeed = 20240917;
inline constexpr std::size_t kBlockSize = 4096;

struct SamplerConfig {
  int dim = 2;
  std::size_t count = 1000;
  std::uint64_t seed = kDefaultSeed;

  void validate() const;
};

using Rng = std::mt19937_64;

/// Independent substream for block `index`.
Rng substream(std::uint64_t seed, std::uint64_t index);

Matrix ginibre(Rng& rng, int rows, int cols);
Matrix draw_hs(Rng& rng, int n);
Vector draw_fs(Rng& rng, int d);
Matrix draw_haar(Rng& rng, int n);

std::vector<DensityMatrix> sample_hs(const SamplerConfig& cfg);
std::vector<PureState> sample_fs(const SamplerConfig& cfg);
std::vector<Matrix> sample_haar(const SamplerConfig& cfg);

struct Estimate {
  double mean = 0.0;
  double sigma = 0.0;  // standard error of the mean
  std::size_t count = 0;

  /// |mean - expected| / sigma; 0 when they agree to rounding (constant
  /// observables have no spread).
  double z(double expected) const;
};

/// Means of f over `count` draws, where f fills `out` (length `width`) for one
/// sample. Deterministic in (seed, count), independent of the thread count.
std::vector<Estimate> blocked_estimate(
    const SamplerConfig& cfg, std::size_t width,
    const std::function<void(Rng&, std::vector<double>& out)>& f);

/// E Tr(rho^k) for k = 1..max_power under the HS measure on dimension cfg.dim.
std::vector<Estimate> hs_power_traces(const SamplerConfig& cfg, int max_power);

/// Mean purity of Tr_B |psi><psi| for FS-random psi in dimension cfg.dim^2.
Estimate fs_reduced_purity(const SamplerConfig& cfg);

/// E |Tr U|^{2t} under Haar on U(cfg.dim).
Estimate haar_trace_moment(const SamplerConfig& cfg, int t);

struct OmegaEstimate {
  Matrix mean;
  Eigen::MatrixXd sigma_re;
  Eigen::MatrixXd sigma_im;
  /// Against a reference, filled by compare().
  double max_deviation = 0.0;
  double max_z = 0.0;

  void compare(const Matrix& reference);
};

/// Entrywise mean of rho^{(x)t} over HS samples (cfg.dim^t <= 4096).
OmegaEstimate estimate_omega(const SamplerConfig& cfg, int t);

struct MomentEntry {
  std::vector<int> exponents;
  Estimate value;
};

/// E[prod p_k^{a_k}] for every exponent vector of total degree 1..degree.
/// HS points are eigenvalue vectors of HS samples, averaged over all N!
/// orderings; Lebesgue points are flat Dirichlet draws.
std::vector<MomentEntry> estimate_simplex_moments(int n, Measure measure, int degree,
                                                  const SamplerConfig& cfg);

}  // namespace qdesign::mc

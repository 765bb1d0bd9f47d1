#include "qdesign/mc_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <string>

#include <Eigen/QR>

#include "qdesign/errors.hpp"
#include "qdesign/moments.hpp"

namespace qdesign::mc {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

constexpr std::size_t kWave = 256;

template <class T>
std::vector<T> blocked_draws(const SamplerConfig& cfg, const std::function<T(Rng&)>& draw) {
  cfg.validate();
  std::vector<T> out(cfg.count);
  const std::size_t blocks = (cfg.count + kBlockSize - 1) / kBlockSize;
  const auto sb = static_cast<std::ptrdiff_t>(blocks);
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t b = 0; b < sb; ++b) {
    Rng rng = substream(cfg.seed, static_cast<std::uint64_t>(b));
    const std::size_t lo = static_cast<std::size_t>(b) * kBlockSize;
    const std::size_t hi = std::min(cfg.count, lo + kBlockSize);
    for (std::size_t i = lo; i < hi; ++i) out[i] = draw(rng);
  }
  return out;
}

}  // namespace

void SamplerConfig::validate() const {
  if (dim < 1) throw InvariantError("sampler: dimension must be positive");
  if (count < 1) throw InvariantError("sampler: count must be at least 1");
}

Rng substream(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(splitmix64(seed)),
                    static_cast<std::uint32_t>(splitmix64(seed) >> 32),
                    static_cast<std::uint32_t>(splitmix64(seed ^ splitmix64(index))),
                    static_cast<std::uint32_t>(splitmix64(seed ^ splitmix64(index)) >> 32)};
  return Rng(seq);
}

Matrix ginibre(Rng& rng, int rows, int cols) {
  std::normal_distribution<double> g(0.0, 1.0);
  Matrix m(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) {
      const double re = g(rng);
      const double im = g(rng);
      m(i, j) = Complex(re, im);
    }
  return m;
}

Matrix draw_hs(Rng& rng, int n) {
  const Matrix g = ginibre(rng, n, n);
  Matrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return 0.5 * (rho + rho.adjoint());
}

Vector draw_fs(Rng& rng, int d) {
  Vector v = ginibre(rng, d, 1).col(0);
  return v / v.norm();
}

Matrix draw_haar(Rng& rng, int n) {
  const Matrix z = ginibre(rng, n, n);
  Eigen::HouseholderQR<Matrix> qr(z);
  Matrix q = qr.householderQ() * Matrix::Identity(n, n);
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int k = 0; k < n; ++k) {
    const Complex d = r(k, k);
    const double a = std::abs(d);
    q.col(k) *= a > 0.0 ? d / a : Complex(1.0);
  }
  return q;
}

std::vector<DensityMatrix> sample_hs(const SamplerConfig& cfg) {
  auto ms = blocked_draws<Matrix>(cfg, [&](Rng& r) { return draw_hs(r, cfg.dim); });
  std::vector<DensityMatrix> out;
  out.reserve(ms.size());
  for (auto& m : ms) out.push_back(DensityMatrix::trusted(std::move(m)));
  return out;
}

std::vector<PureState> sample_fs(const SamplerConfig& cfg) {
  auto vs = blocked_draws<Vector>(cfg, [&](Rng& r) { return draw_fs(r, cfg.dim); });
  std::vector<PureState> out;
  out.reserve(vs.size());
  for (auto& v : vs) out.push_back(PureState::normalized(v));
  return out;
}

std::vector<Matrix> sample_haar(const SamplerConfig& cfg) {
  return blocked_draws<Matrix>(cfg, [&](Rng& r) { return draw_haar(r, cfg.dim); });
}

double Estimate::z(double expected) const {
  const double diff = std::abs(mean - expected);
  if (diff <= 1e-13 * std::max(1.0, std::abs(expected))) return 0.0;
  return sigma > 0.0 ? diff / sigma : std::numeric_limits<double>::infinity();
}

std::vector<Estimate> blocked_estimate(
    const SamplerConfig& cfg, std::size_t width,
    const std::function<void(Rng&, std::vector<double>& out)>& f) {
  cfg.validate();
  const std::size_t blocks = (cfg.count + kBlockSize - 1) / kBlockSize;
  std::vector<double> sum(width, 0.0), sumsq(width, 0.0);

  for (std::size_t wave = 0; wave < blocks; wave += kWave) {
    const std::size_t nb = std::min(kWave, blocks - wave);
    std::vector<std::vector<double>> part_sum(nb, std::vector<double>(width, 0.0));
    std::vector<std::vector<double>> part_sq(nb, std::vector<double>(width, 0.0));
    const auto snb = static_cast<std::ptrdiff_t>(nb);
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t k = 0; k < snb; ++k) {
      const std::size_t b = wave + static_cast<std::size_t>(k);
      Rng rng = substream(cfg.seed, b);
      std::vector<double> out(width);
      auto& s = part_sum[static_cast<std::size_t>(k)];
      auto& q = part_sq[static_cast<std::size_t>(k)];
      const std::size_t lo = b * kBlockSize;
      const std::size_t hi = std::min(cfg.count, lo + kBlockSize);
      for (std::size_t i = lo; i < hi; ++i) {
        f(rng, out);
        for (std::size_t c = 0; c < width; ++c) {
          s[c] += out[c];
          q[c] += out[c] * out[c];
        }
      }
    }
    for (std::size_t k = 0; k < nb; ++k)
      for (std::size_t c = 0; c < width; ++c) {
        sum[c] += part_sum[k][c];
        sumsq[c] += part_sq[k][c];
      }
  }

  const double n = static_cast<double>(cfg.count);
  std::vector<Estimate> est(width);
  for (std::size_t c = 0; c < width; ++c) {
    const double mean = sum[c] / n;
    const double var = cfg.count > 1 ? std::max(0.0, (sumsq[c] - n * mean * mean) / (n - 1.0)) : 0.0;
    est[c] = {mean, std::sqrt(var / n), cfg.count};
  }
  return est;
}

std::vector<Estimate> hs_power_traces(const SamplerConfig& cfg, int max_power) {
  if (max_power < 1) throw InvariantError("power traces: max_power must be positive");
  return blocked_estimate(cfg, static_cast<std::size_t>(max_power),
                          [&](Rng& rng, std::vector<double>& out) {
                            const Matrix rho = draw_hs(rng, cfg.dim);
                            Matrix p = rho;
                            for (int k = 0; k < max_power; ++k) {
                              out[static_cast<std::size_t>(k)] = p.trace().real();
                              p = p * rho;
                            }
                          });
}

Estimate fs_reduced_purity(const SamplerConfig& cfg) {
  const int n = cfg.dim;
  return blocked_estimate(cfg, 1, [&](Rng& rng, std::vector<double>& out) {
    const Vector psi = draw_fs(rng, n * n);
    const PureState s(psi, Bipartition{n, n}, 1e-10);
    out[0] = purity(partial_trace(s, Side::B));
  }).front();
}

Estimate haar_trace_moment(const SamplerConfig& cfg, int t) {
  return blocked_estimate(cfg, 1, [&](Rng& rng, std::vector<double>& out) {
    out[0] = std::pow(std::norm(draw_haar(rng, cfg.dim).trace()), t);
  }).front();
}

void OmegaEstimate::compare(const Matrix& reference) {
  max_deviation = 0.0;
  max_z = 0.0;
  for (Eigen::Index i = 0; i < mean.rows(); ++i)
    for (Eigen::Index j = 0; j < mean.cols(); ++j) {
      const Complex d = mean(i, j) - reference(i, j);
      max_deviation = std::max(max_deviation, std::abs(d));
      Estimate re{mean(i, j).real(), sigma_re(i, j), 0};
      Estimate im{mean(i, j).imag(), sigma_im(i, j), 0};
      max_z = std::max({max_z, re.z(reference(i, j).real()), im.z(reference(i, j).imag())});
    }
}

OmegaEstimate estimate_omega(const SamplerConfig& cfg, int t) {
  if (t < 1) throw InvariantError("estimate_omega: t must be positive");
  const auto d = tensor_dim(cfg.dim, t, kMaxDenseDim);
  const auto dd = static_cast<std::size_t>(d) * static_cast<std::size_t>(d);
  const auto est = blocked_estimate(cfg, 2 * dd, [&](Rng& rng, std::vector<double>& out) {
    const Matrix p = tensor_power(draw_hs(rng, cfg.dim), t);
    for (std::size_t k = 0; k < dd; ++k) {
      const Complex c = p.data()[k];
      out[2 * k] = c.real();
      out[2 * k + 1] = c.imag();
    }
  });
  OmegaEstimate o;
  o.mean.resize(d, d);
  o.sigma_re.resize(d, d);
  o.sigma_im.resize(d, d);
  for (std::size_t k = 0; k < dd; ++k) {
    o.mean.data()[k] = Complex(est[2 * k].mean, est[2 * k + 1].mean);
    o.sigma_re.data()[k] = est[2 * k].sigma;
    o.sigma_im.data()[k] = est[2 * k + 1].sigma;
  }
  return o;
}

std::vector<MomentEntry> estimate_simplex_moments(int n, Measure measure, int degree,
                                                  const SamplerConfig& cfg) {
  if (n < 2 || n > 4) throw UnsupportedError("simplex moment estimates support N in 2..4");
  if (degree < 1 || degree > 6) throw UnsupportedError("simplex moment estimates support degree 1..6");

  std::vector<std::vector<int>> monomials;
  std::function<void(std::vector<int>&, int, int)> gen = [&](std::vector<int>& a, int pos, int left) {
    if (pos == n - 1) {
      a[static_cast<std::size_t>(pos)] = left;
      monomials.push_back(a);
      return;
    }
    for (int k = left; k >= 0; --k) {
      a[static_cast<std::size_t>(pos)] = k;
      gen(a, pos + 1, left - k);
    }
  };
  for (int deg = 1; deg <= degree; ++deg) {
    std::vector<int> a(static_cast<std::size_t>(n));
    gen(a, 0, deg);
  }

  std::vector<std::vector<int>> perms;
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  do perms.push_back(perm);
  while (std::next_permutation(perm.begin(), perm.end()));

  SamplerConfig c = cfg;
  c.dim = n;
  const auto est = blocked_estimate(c, monomials.size(), [&](Rng& rng, std::vector<double>& out) {
    std::vector<double> lam(static_cast<std::size_t>(n));
    if (measure == Measure::hilbert_schmidt) {
      Eigen::SelfAdjointEigenSolver<Matrix> es(draw_hs(rng, n), Eigen::EigenvaluesOnly);
      for (int k = 0; k < n; ++k) lam[static_cast<std::size_t>(k)] = es.eigenvalues()(k);
    } else {
      std::exponential_distribution<double> e(1.0);
      double s = 0.0;
      for (auto& x : lam) s += (x = e(rng));
      for (auto& x : lam) x /= s;
    }
    for (std::size_t m = 0; m < monomials.size(); ++m) {
      double acc = 0.0;
      for (const auto& pi : perms) {
        double v = 1.0;
        for (int k = 0; k < n; ++k)
          v *= std::pow(lam[static_cast<std::size_t>(pi[static_cast<std::size_t>(k)])],
                        monomials[m][static_cast<std::size_t>(k)]);
        acc += v;
      }
      out[m] = acc / static_cast<double>(perms.size());
    }
  });

  std::vector<MomentEntry> table;
  for (std::size_t m = 0; m < monomials.size(); ++m) table.push_back({monomials[m], est[m]});
  return table;
}

}  // namespace qdesign::mc

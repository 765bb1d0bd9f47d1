#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include <omp.h>

#include "qdesign/errors.hpp"
#include "qdesign/mc_oracle.hpp"
#include "qdesign/moments.hpp"
#include "qdesign/permutation.hpp"
#include "qdesign/reference_values.hpp"
#include "qdesign/simplex.hpp"
#include "support.hpp"

using namespace qdesign;

namespace {

struct ThreadScope {
  int saved = omp_get_max_threads();
  explicit ThreadScope(int n) { omp_set_num_threads(n); }
  ~ThreadScope() { omp_set_num_threads(saved); }
};

// Fraction of real and imaginary entries within 3 sigma of the reference,
// and the largest z over all of them.
std::pair<double, double> entry_z(const mc::OmegaEstimate& e, const Matrix& ref) {
  std::size_t within = 0, total = 0;
  double worst = 0.0;
  auto one = [&](double mean, double sigma, double exact) {
    const double z = mc::Estimate{mean, sigma, 0}.z(exact);
    worst = std::max(worst, z);
    within += z <= 3.0;
    ++total;
  };
  for (Eigen::Index i = 0; i < ref.rows(); ++i)
    for (Eigen::Index j = 0; j < ref.cols(); ++j) {
      one(e.mean(i, j).real(), e.sigma_re(i, j), ref(i, j).real());
      one(e.mean(i, j).imag(), e.sigma_im(i, j), ref(i, j).imag());
    }
  return {static_cast<double>(within) / static_cast<double>(total), worst};
}

// Two-sided bound on the max of k standard normals exceeded with probability ~1e-3.
double max_z_bound(std::size_t k) { return std::sqrt(2.0 * std::log(2000.0 * static_cast<double>(k))); }

}  // namespace

TEST_SUITE("mc_oracle") {

TEST_CASE("estimates do not depend on the thread count") {
  const mc::SamplerConfig cfg{3, 3 * mc::kBlockSize + 17, 99};
  std::vector<mc::Estimate> one, many;
  {
    ThreadScope s(1);
    one = mc::hs_power_traces(cfg, 4);
  }
  {
    ThreadScope s(std::max(2, omp_get_num_procs()));
    many = mc::hs_power_traces(cfg, 4);
  }
  for (std::size_t k = 0; k < one.size(); ++k) {
    CHECK(one[k].mean == many[k].mean);
    CHECK(one[k].sigma == many[k].sigma);
  }
  const auto a = mc::sample_hs({2, 10, 5});
  const auto b = mc::sample_hs({2, 10, 5});
  const auto c = mc::sample_hs({2, 10, 6});
  CHECK(a[9].matrix() == b[9].matrix());
  CHECK(a[9].matrix() != c[9].matrix());
}

TEST_CASE("HS samples are states") {
  for (const auto& rho : mc::sample_hs({4, 50, 1})) {
    CHECK(std::abs(rho.matrix().trace().real() - 1.0) < 1e-12);
    CHECK(rho.eigenvalues().minCoeff() >= -1e-12);
  }
  for (const auto& u : mc::sample_haar({3, 50, 1}))
    CHECK(support::max_abs(u.adjoint() * u - Matrix::Identity(3, 3)) < 1e-12);
}

TEST_CASE("qubit HS power traces") {
  const auto est = mc::hs_power_traces({2, 400000, 11}, 3);
  CHECK(est[0].mean == doctest::Approx(1.0));
  CHECK(est[1].z(4.0 / 5.0) < 3.0);
  CHECK(est[2].z(21.0 / 30.0) < 3.0);
}

TEST_CASE("average purity identities for N = 2..4") {
  for (int n : {2, 3, 4}) {
    const auto est = mc::hs_power_traces({n, 200000, 12}, 3);
    const double n2 = n * n;
    CHECK(est[1].z(2.0 * n / (n2 + 1.0)) < 3.0);
    CHECK(est[2].z((5.0 * n2 + 1.0) / ((n2 + 1.0) * (n2 + 2.0))) < 3.0);
  }
}

TEST_CASE("reduced purity of FS states matches the HS value") {
  for (int n : {2, 3}) {
    const auto est = mc::fs_reduced_purity({n, 200000, 13});
    CHECK(est.z(2.0 * n / (n * n + 1.0)) < 3.0);
  }
}

TEST_CASE("qubit HS states fill the Bloch ball uniformly") {
  const std::size_t count = 50000;
  const auto states = mc::sample_hs({2, count, 14});
  std::vector<double> u;
  Matrix mean = Matrix::Zero(2, 2);
  std::array<int, 10> cos_bins{};
  for (const auto& rho : states) {
    const auto b = bloch_point(rho);
    u.push_back(std::pow(2.0 * b.radius(), 3));  // uniform on [0, 1] for a uniform ball
    mean += rho.matrix();
    const double c = b.coords.z() / b.radius();
    ++cos_bins[static_cast<std::size_t>(std::min(9.0, std::floor((c + 1.0) * 5.0)))];
  }
  mean /= static_cast<double>(count);
  CHECK(support::max_abs(mean - Matrix::Identity(2, 2) / 2.0) < 5e-3);

  std::sort(u.begin(), u.end());
  double d = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double n = static_cast<double>(u.size());
    d = std::max({d, std::abs(u[i] - i / n), std::abs((i + 1) / n - u[i])});
  }
  CHECK(d < 1.63 / std::sqrt(static_cast<double>(count)));  // KS at the 1% level

  double chi2 = 0.0;
  const double expected = count / 10.0;
  for (int k : cos_bins) chi2 += (k - expected) * (k - expected) / expected;
  CHECK(chi2 < 21.67);  // chi-square, 9 dof, 1% level
}

TEST_CASE("Haar trace moments") {
  CHECK(mc::haar_trace_moment({2, 200000, 15}, 1).z(1.0) < 3.0);
  CHECK(mc::haar_trace_moment({2, 200000, 15}, 2).z(haar_trace_moment(2, 2)) < 3.0);
  CHECK(mc::haar_trace_moment({3, 200000, 16}, 2).z(haar_trace_moment(3, 2)) < 3.0);
  CHECK(haar_trace_moment(2, 2) == 2.0);
}

TEST_CASE("the moment operator ansatz agrees with sampling") {
  struct Case {
    int n, t;
    std::size_t count;
  };
  for (auto [n, t, count] : {Case{2, 2, 100000}, Case{2, 3, 100000}, Case{2, 4, 50000},
                             Case{3, 2, 100000}, Case{3, 3, 50000}, Case{3, 4, 20000}}) {
    INFO("N = " << n << ", t = " << t);
    auto est = mc::estimate_omega({n, count, 17}, t);
    const Matrix ref = omega(n, t, true).dense();
    est.compare(ref);
    const auto [frac, worst] = entry_z(est, ref);
    CHECK(worst == doctest::Approx(est.max_z));
    CHECK(frac >= 0.99);
    CHECK(worst <= max_z_bound(2 * static_cast<std::size_t>(ref.size())));
    CHECK(est.max_deviation < 10.0 / std::sqrt(static_cast<double>(count)));
  }
}

TEST_CASE("the ansatz is not a generic fit") {
  // Swapping in Haar-projective weights (all coefficients equal) is detected.
  auto est = mc::estimate_omega({2, 100000, 18}, 2);
  Matrix wrong = Matrix::Zero(4, 4);
  const auto op = omega(2, 2);
  for (const auto& s : op.permutations()) wrong += permutation_operator(s, 2);
  wrong /= wrong.trace().real();
  est.compare(wrong);
  CHECK(est.max_z > 10.0);
}

TEST_CASE("simplex moments agree with the exact integrals") {
  // Entries related by a permutation of the exponents are the same symmetrized
  // estimate, so the family-wise bound counts distinct sorted exponent vectors.
  for (Measure mu : {Measure::lebesgue, Measure::hilbert_schmidt})
    for (int n : {2, 3}) {
      INFO(measure_name(mu) << " N = " << n);
      const auto entries = mc::estimate_simplex_moments(n, mu, 4, {n, 100000, 19});
      std::set<std::vector<int>> classes;
      for (const auto& e : entries) {
        auto key = e.exponents;
        std::sort(key.begin(), key.end());
        classes.insert(key);
      }
      for (const auto& e : entries) {
        INFO(reference::moment_label(e.exponents));
        CHECK(e.value.z(simplex_moment(n, mu, e.exponents)) <= max_z_bound(classes.size()));
      }
    }
}

TEST_CASE("pinned Monte-Carlo regression values") {
  for (const auto& pin : reference::kMcPins) {
    INFO(pin.what);
    const auto entries = mc::estimate_simplex_moments(pin.dim, Measure::hilbert_schmidt, 3,
                                                      {pin.dim, pin.count, pin.seed});
    const auto it = std::find_if(entries.begin(), entries.end(), [&](const mc::MomentEntry& e) {
      return reference::moment_label(e.exponents) == pin.what;
    });
    REQUIRE(it != entries.end());
    CHECK(it->value.mean == doctest::Approx(pin.mean).epsilon(1e-12));
    CHECK(it->value.sigma == doctest::Approx(pin.sigma).epsilon(1e-9));
    CHECK(it->value.z(pin.exact) < 3.0);
    CHECK(simplex_moment(pin.dim, Measure::hilbert_schmidt, it->exponents) ==
          doctest::Approx(pin.exact).epsilon(1e-12));
  }
}

TEST_CASE("standard errors shrink like one over root count") {
  const double s1 = mc::hs_power_traces({2, 4 * mc::kBlockSize, 20}, 2)[1].sigma;
  const double s2 = mc::hs_power_traces({2, 64 * mc::kBlockSize, 20}, 2)[1].sigma;
  CHECK(s1 / s2 == doctest::Approx(4.0).epsilon(0.05));
}

TEST_CASE("sampler configuration is validated") {
  CHECK_THROWS_AS(mc::SamplerConfig({0, 10, 1}).validate(), InvariantError);
  CHECK_THROWS_AS(mc::SamplerConfig({2, 0, 1}).validate(), InvariantError);
  CHECK_THROWS_AS(mc::estimate_omega({4, 10, 1}, 7), CapacityError);
}

}  // TEST_SUITE

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qdesign/constructions.hpp"
#include "qdesign/errors.hpp"
#include "qdesign/simplex.hpp"
#include "support.hpp"

using namespace qdesign;

namespace {

double mean_x_power(const SimplexDesign& d, int k) {
  double s = 0.0;
  for (const auto& p : d.points) s += p.weight * std::pow(p.p[0] - 0.5, k);
  return s;
}

PureState qubit_from_angles(double cos_theta, double phi) {
  const double th = std::acos(cos_theta);
  Vector v(2);
  v << std::cos(th / 2), std::polar(std::sin(th / 2), phi);
  return PureState(v, std::nullopt, 1e-12);
}

double binom(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

TEST_SUITE("simplex") {

TEST_CASE("cataloged interval designs pass at their order") {
  const std::vector<std::tuple<int, int, Measure>> catalog{
      {1, 1, Measure::lebesgue}, {3, 2, Measure::lebesgue}, {3, 3, Measure::lebesgue},
      {5, 4, Measure::lebesgue}, {5, 5, Measure::lebesgue}, {3, 2, Measure::hilbert_schmidt},
      {3, 3, Measure::hilbert_schmidt}, {5, 4, Measure::hilbert_schmidt}};
  for (auto [t, m, mu] : catalog) {
    INFO("t = " << t << ", M = " << m << ", " << measure_name(mu));
    const auto d = interval_design(t, m, mu);
    CHECK(d.points.size() == static_cast<std::size_t>(m));
    const auto r = verify_simplicial(d);
    CHECK(r.is_design);
    CHECK(r.max_deviation < 1e-10);
    CHECK_FALSE(verify_simplicial(d, t + 1).is_design);
  }
}

TEST_CASE("interval design coordinates") {
  auto hs2 = interval_design(3, 2, Measure::hilbert_schmidt);
  CHECK(hs2.points[1].p[0] - 0.5 == doctest::Approx(std::sqrt(3.0 / 20.0)));
  CHECK(mean_x_power(hs2, 2) == doctest::Approx(3.0 / 20.0));
  auto l2 = interval_design(3, 2, Measure::lebesgue);
  CHECK(l2.points[1].p[0] - 0.5 == doctest::Approx(1.0 / (2.0 * std::sqrt(3.0))));
  CHECK(mean_x_power(l2, 2) == doctest::Approx(1.0 / 12.0));
  auto hs4 = interval_design(5, 4, Measure::hilbert_schmidt);
  CHECK(hs4.points[3].p[0] - 0.5 == doctest::Approx(std::sqrt(735.0 + 70.0 * std::sqrt(21.0)) / 70.0));
  CHECK(hs4.points[2].p[0] - 0.5 == doctest::Approx(std::sqrt(735.0 - 70.0 * std::sqrt(21.0)) / 70.0));
  CHECK_THROWS_AS(interval_design(2, 2, Measure::lebesgue), UnsupportedError);
  CHECK_THROWS_AS(interval_design(1, 1, Measure::hilbert_schmidt), UnsupportedError);
}

TEST_CASE("the center is a 1-design for both measures") {
  for (Measure mu : {Measure::lebesgue, Measure::hilbert_schmidt}) {
    const SimplexDesign c{2, mu, 1, {{{0.5, 0.5}, 1.0}}};
    CHECK(verify_simplicial(c).max_deviation < 1e-15);
  }
}

TEST_CASE("two-point moments agree with the interval densities") {
  for (Measure mu : {Measure::lebesgue, Measure::hilbert_schmidt})
    for (int k = 0; k <= 8; ++k) {
      // E[(p1 - 1/2)^k] expanded over the monomials p1^j p2^0 ... via p1 = 1/2 + x
      double s = 0.0;
      for (int j = 0; j <= k; ++j) {
        const std::vector<int> a{j, 0};
        s += binom(k, j) * std::pow(-0.5, k - j) * simplex_moment(2, mu, a);
      }
      CHECK(std::abs(s - interval_moment(mu, k)) < 1e-14);
    }
  CHECK(interval_moment(Measure::hilbert_schmidt, 2) == doctest::Approx(3.0 / 20.0));
  CHECK(interval_moment(Measure::lebesgue, 2) == doctest::Approx(1.0 / 12.0));
}

TEST_CASE("simplex moments reproduce the average purity identities") {
  for (int n : {2, 3, 4}) {
    std::vector<int> a(static_cast<std::size_t>(n), 0);
    a[0] = 2;
    const double p2 = n * simplex_moment(n, Measure::hilbert_schmidt, a);
    a[0] = 3;
    const double p3 = n * simplex_moment(n, Measure::hilbert_schmidt, a);
    const double n2 = n * n;
    CHECK(p2 == doctest::Approx(2.0 * n / (n2 + 1.0)).epsilon(1e-12));
    CHECK(p3 == doctest::Approx((5.0 * n2 + 1.0) / ((n2 + 1.0) * (n2 + 2.0))).epsilon(1e-12));
  }
  const std::vector<int> a{2, 0, 0};
  CHECK(simplex_moment(3, Measure::lebesgue, a) == doctest::Approx(1.0 / 6.0));
  const std::vector<int> b{1, 1, 0};
  CHECK(simplex_moment(3, Measure::lebesgue, b) == doctest::Approx(1.0 / 12.0));
}

TEST_CASE("decohered octahedron gives Simpson's rule") {
  std::vector<PureState> oct;
  for (double z : {1.0, -1.0}) oct.push_back(qubit_from_angles(z, 0.0));
  for (double phi : {0.0, 0.5, 1.0, 1.5}) oct.push_back(qubit_from_angles(0.0, phi * std::numbers::pi));
  const auto d = merge_duplicates(decohere(Ensemble::from_pure(oct), 3));
  REQUIRE(d.points.size() == 3);
  std::vector<std::pair<double, double>> got;
  for (const auto& p : d.points) got.emplace_back(p.p[0], p.weight);
  std::sort(got.begin(), got.end());
  CHECK(got[0].first == doctest::Approx(0.0));
  CHECK(got[1].first == doctest::Approx(0.5));
  CHECK(got[2].first == doctest::Approx(1.0));
  CHECK(got[0].second == doctest::Approx(1.0 / 6.0));
  CHECK(got[1].second == doctest::Approx(4.0 / 6.0));
  CHECK(verify_simplicial(d).is_design);
}

TEST_CASE("decohered rotated octahedron gives two-point Gauss-Legendre") {
  std::vector<PureState> oct;
  const double c = 1.0 / std::sqrt(3.0);
  for (int k = 0; k < 3; ++k) {
    oct.push_back(qubit_from_angles(c, 2.0 * std::numbers::pi * k / 3.0));
    oct.push_back(qubit_from_angles(-c, 2.0 * std::numbers::pi * k / 3.0 + std::numbers::pi / 3.0));
  }
  CHECK(frame_potential_projective(Ensemble::from_pure(oct), 3).is_design);
  const auto d = merge_duplicates(decohere(Ensemble::from_pure(oct), 3));
  REQUIRE(d.points.size() == 2);
  for (const auto& p : d.points) {
    CHECK(std::abs(p.p[0] - 0.5) == doctest::Approx(std::sqrt(3.0) / 6.0));
    CHECK(p.weight == doctest::Approx(0.5));
  }
  CHECK(verify_simplicial(d).is_design);
}

TEST_CASE("decohered projective designs are Lebesgue designs") {
  CHECK(verify_simplicial(decohere(sic_d3()), 2).is_design);
  CHECK(verify_simplicial(decohere(standard_mub_d4().ensemble()), 2).is_design);
  CHECK(verify_simplicial(decohere(iso_mub().mubs.ensemble()), 2).is_design);
  CHECK_FALSE(verify_simplicial(decohere(sic_d3()), 3).is_design);
  CHECK_THROWS_AS(decohere(Ensemble::from_mixed({DensityMatrix::maximally_mixed(2)})), InvariantError);
}

TEST_CASE("chamber restriction") {
  const auto c = restrict_to_chamber(interval_design(3, 3, Measure::hilbert_schmidt));
  REQUIRE(c.points.size() == 2);
  for (const auto& p : c.points) {
    CHECK(p.p[0] >= p.p[1]);
    CHECK(p.weight == doctest::Approx(0.5));
  }
}

TEST_CASE("product with a unitary 2-design") {
  SimplexDesign pt{2, Measure::hilbert_schmidt, 2,
                   {{{0.5 + std::sqrt(3.0 / 20.0), 0.5 - std::sqrt(3.0 / 20.0)}, 1.0}}};
  const auto e = product_design(pt, binary_tetrahedral(), {.t = 2});
  CHECK(delta_mixed(e, 2).delta <= 1e-10);
  CHECK(e.size() == 6);  // the z axis orbit under the rotation group is an octahedron
}

TEST_CASE("the degenerate point gives a single maximally mixed state") {
  SimplexDesign pt{2, Measure::hilbert_schmidt, 1, {{{0.5, 0.5}, 1.0}}};
  const auto e = product_design(pt, binary_tetrahedral(), {.t = 1});
  REQUIRE(e.size() == 1);
  CHECK(support::max_abs(e.densities()[0].matrix() - Matrix::Identity(2, 2) / 2.0) < 1e-15);
  CHECK(delta_mixed(e, 1).is_design);
  CHECK_FALSE(delta_mixed(e, 2).is_design);
}

TEST_CASE("boundary points are reweighted") {
  const auto chamber = restrict_to_chamber(interval_design(3, 3, Measure::hilbert_schmidt));
  const auto e = product_design(chamber, binary_icosahedral(), {.t = 3});
  CHECK(delta_mixed(e, 3).delta <= 1e-10);
  double center = 0.0;
  for (std::size_t i = 0; i < e.size(); ++i)
    if (bloch_point(e.densities()[i]).radius() < 1e-12) center += e.weight(i);
  CHECK(center == doctest::Approx(1.0 / 3.0));

  const auto c5 = restrict_to_chamber(interval_design(5, 4, Measure::hilbert_schmidt));
  CHECK(delta_mixed(product_design(c5, binary_icosahedral(), {.t = 5}), 5).delta <= 1e-10);
}

TEST_CASE("product preconditions") {
  SimplexDesign outside{2, Measure::hilbert_schmidt, 2, {{{0.2, 0.8}, 1.0}}};
  CHECK_THROWS_AS(product_design(outside, binary_tetrahedral()), InvariantError);
  SimplexDesign pt{2, Measure::hilbert_schmidt, 2, {{{0.7, 0.3}, 1.0}}};
  CHECK_THROWS_AS(product_design(pt, UnitarySet::uniform({Matrix::Identity(2, 2)})), UnverifiedDesignError);
  CHECK_THROWS_AS(product_design(pt, binary_tetrahedral(), {.t = 4}), UnverifiedDesignError);
}

TEST_CASE("validation") {
  SimplexDesign bad{2, Measure::lebesgue, 1, {{{0.7, 0.4}, 1.0}}};
  CHECK_THROWS_AS(bad.validate(), InvariantError);
  SimplexDesign wrong_len{3, Measure::lebesgue, 1, {{{0.5, 0.5}, 1.0}}};
  CHECK_THROWS_AS(wrong_len.validate(), DimensionError);
  CHECK(parse_measure("HS") == Measure::hilbert_schmidt);
  CHECK_THROWS_AS(parse_measure("bures"), UnsupportedError);
}

}  // TEST_SUITE

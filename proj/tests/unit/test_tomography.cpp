#include <doctest.h>

#include <cmath>

#include "qdesign/constructions.hpp"
#include "qdesign/errors.hpp"
#include "qdesign/mc_oracle.hpp"
#include "qdesign/tomography.hpp"
#include "support.hpp"

using namespace qdesign;
using support::max_abs;

namespace {

void check_round_trip(const PovmDesign& povm, std::uint64_t seed, int count) {
  const auto states = mc::sample_hs({povm.dim(), static_cast<std::size_t>(count), seed});
  double worst = 0.0;
  for (const auto& rho : states) {
    const auto r = povm.reconstruct(povm.probabilities(rho));
    worst = std::max(worst, max_abs(r.rho - rho.matrix()));
    CHECK(r.consistent);
  }
  CHECK(worst < 1e-12);
}

}  // namespace

TEST_SUITE("tomography") {

TEST_CASE("effects resolve the identity") {
  for (const auto& e : {platonic_design(PlatonicSolid::tetrahedron, platonic_mixing()),
                        reduce(iso_mub().mubs.ensemble(), Side::B),
                        reduce(standard_mub_d4().ensemble(), Side::B)}) {
    const auto povm = PovmDesign::from_ensemble(e);
    Matrix s = Matrix::Zero(2, 2);
    for (const auto& m : povm.effects()) {
      s += m;
      CHECK(Eigen::SelfAdjointEigenSolver<Matrix>(m).eigenvalues().minCoeff() >= -1e-14);
    }
    CHECK(max_abs(s - Matrix::Identity(2, 2)) < 1e-14);
  }
}

TEST_CASE("tetrahedral probabilities") {
  const auto povm = PovmDesign::from_ensemble(platonic_design(PlatonicSolid::tetrahedron, platonic_mixing()));
  REQUIRE(povm.size() == 4);
  for (double p : povm.probabilities(DensityMatrix::maximally_mixed(2))) CHECK(p == doctest::Approx(0.25));

  // On |0><0| each outcome is half the (0,0) entry of its member; one member
  // sits on the -z axis with entry (5 - sqrt 15)/10.
  Matrix zero = Matrix::Zero(2, 2);
  zero(0, 0) = 1.0;
  const auto p = povm.probabilities(DensityMatrix(zero));
  double lowest = 1.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    CHECK(p[i] == doctest::Approx(0.5 * povm.base().densities()[i].matrix()(0, 0).real()));
    lowest = std::min(lowest, p[i]);
  }
  CHECK(lowest == doctest::Approx((5.0 - std::sqrt(15.0)) / 20.0).epsilon(1e-12));
}

TEST_CASE("round trips on random states") {
  check_round_trip(PovmDesign::from_ensemble(platonic_design(PlatonicSolid::tetrahedron, platonic_mixing())), 31, 1000);
  check_round_trip(PovmDesign::from_ensemble(reduce(iso_mub().mubs.ensemble(), Side::B)), 32, 1000);
  check_round_trip(PovmDesign::from_ensemble(reduce(standard_mub_d4().ensemble(), Side::B)), 33, 1000);
  check_round_trip(PovmDesign::from_ensemble(platonic_design(PlatonicSolid::octahedron, platonic_mixing())), 34, 200);
}

TEST_CASE("weighted designs keep the inversion formula") {
  // Standard MUB reduction merged: six pure points at weight 1/10 and the center at 4/10.
  std::vector<DensityMatrix> rhos;
  std::vector<double> w;
  for (const auto& v : platonic_vertices(PlatonicSolid::octahedron)) {
    rhos.push_back(from_bloch(0.5 * v));
    w.push_back(0.1);
  }
  rhos.push_back(DensityMatrix::maximally_mixed(2));
  w.push_back(0.4);
  const auto povm = PovmDesign::from_ensemble(Ensemble::from_mixed(rhos, w));
  check_round_trip(povm, 35, 500);
}

TEST_CASE("reconstruction is linear in the statistics") {
  const auto povm = PovmDesign::from_ensemble(reduce(iso_mub().mubs.ensemble(), Side::B));
  const auto states = mc::sample_hs({2, 2, 5});
  const auto pa = povm.probabilities(states[0]);
  const auto pb = povm.probabilities(states[1]);
  std::vector<double> mix(pa.size());
  for (std::size_t i = 0; i < pa.size(); ++i) mix[i] = 0.3 * pa[i] + 0.7 * pb[i];
  const Matrix expected = 0.3 * states[0].matrix() + 0.7 * states[1].matrix();
  CHECK(max_abs(povm.reconstruct(mix).rho - expected) < 1e-13);
}

TEST_CASE("inconsistent statistics are flagged") {
  const auto povm = PovmDesign::from_ensemble(platonic_design(PlatonicSolid::tetrahedron, platonic_mixing()));
  const auto r = povm.reconstruct({1.0, 0.0, 0.0, 0.0});
  CHECK(r.min_eigenvalue < -1e-6);
  CHECK_FALSE(r.consistent);
}

TEST_CASE("non-designs and malformed input are rejected") {
  Matrix zero = Matrix::Zero(2, 2), one = Matrix::Zero(2, 2);
  zero(0, 0) = 1.0;
  one(1, 1) = 1.0;
  const auto not_2design = Ensemble::from_mixed({DensityMatrix(zero), DensityMatrix(one)});
  try {
    (void)PovmDesign::from_ensemble(not_2design);
    FAIL("expected UnverifiedDesignError");
  } catch (const UnverifiedDesignError& e) {
    CHECK(e.delta() > 1e-3);
  }
  const auto povm = PovmDesign::from_ensemble(platonic_design(PlatonicSolid::tetrahedron, platonic_mixing()));
  CHECK_THROWS_AS(povm.reconstruct({0.5, 0.5}), DimensionError);
  CHECK_THROWS_AS(povm.probabilities(DensityMatrix::maximally_mixed(3)), DimensionError);
}

}  // TEST_SUITE

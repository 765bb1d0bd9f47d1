#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qdesign/constructions.hpp"
#include "qdesign/errors.hpp"
#include "support.hpp"

using namespace qdesign;
using support::max_abs;

namespace {

const double kR = std::sqrt(3.0 / 20.0);

bool is_unitary(const Matrix& u, double tol) {
  return max_abs(u.adjoint() * u - Matrix::Identity(u.rows(), u.cols())) <= tol;
}

void check_mub_structure(const MubSet& m) {
  REQUIRE(m.bases.size() == 5);
  int cross = 0;
  for (std::size_t a = 0; a < m.bases.size(); ++a)
    for (std::size_t b = 0; b < m.bases.size(); ++b)
      for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) {
          const double ov = std::norm(m.bases[a][i].amplitudes().dot(m.bases[b][j].amplitudes()));
          if (a == b) {
            CHECK(std::abs(ov - (i == j ? 1.0 : 0.0)) < 1e-12);
          } else if (a < b) {
            CHECK(std::abs(ov - 0.25) < 1e-10);
            ++cross;
          }
        }
  CHECK(cross == 160);
}

// Realignment M[(i1 i2),(j1 j2)] -> R[(i1 j1),(i2 j2)]; rank one iff M = A (x) B.
double second_singular_value_of_realignment(const Matrix& m) {
  Matrix r(4, 4);
  for (int i1 = 0; i1 < 2; ++i1)
    for (int i2 = 0; i2 < 2; ++i2)
      for (int j1 = 0; j1 < 2; ++j1)
        for (int j2 = 0; j2 < 2; ++j2) r(2 * i1 + j1, 2 * i2 + j2) = m(2 * i1 + i2, 2 * j1 + j2);
  Eigen::JacobiSVD<Matrix> svd(r);
  return svd.singularValues()(1);
}

std::vector<double> cosines(const std::vector<Eigen::Vector3d>& dirs) {
  std::vector<double> c;
  for (std::size_t i = 0; i < dirs.size(); ++i)
    for (std::size_t j = i + 1; j < dirs.size(); ++j) c.push_back(dirs[i].normalized().dot(dirs[j].normalized()));
  std::sort(c.begin(), c.end());
  return c;
}

}  // namespace

TEST_SUITE("constructions") {

TEST_CASE("standard MUBs") {
  const auto m = standard_mub_d4();
  check_mub_structure(m);
  for (int k = 0; k < 4; ++k)
    CHECK(max_abs(m.bases[0][static_cast<std::size_t>(k)].amplitudes() - Vector::Unit(4, k).cast<Complex>()) < 1e-15);
  for (std::size_t b = 0; b < 5; ++b)
    for (const auto& psi : m.bases[b]) {
      const RealVector sv = schmidt_vector(psi);
      CHECK(sv(0) == doctest::Approx(b < 3 ? 1.0 : 0.5));
    }
}

TEST_CASE("standard MUBs reduce to an octahedron with a heavy center") {
  const auto red = reduce(standard_mub_d4().ensemble(), Side::B);
  std::vector<BlochPoint> pts;
  for (std::size_t i = 0; i < red.size(); ++i) pts.push_back(bloch_point(red.densities()[i], red.weight(i)));
  const auto merged = merge_points(pts);
  REQUIRE(merged.size() == 7);
  int outer = 0;
  for (const auto& p : merged) {
    if (p.radius() < 1e-12) {
      CHECK(p.weight == doctest::Approx(8.0 / 20.0));
    } else {
      CHECK(p.radius() == doctest::Approx(0.5));
      CHECK(p.weight == doctest::Approx(2.0 / 20.0));
      ++outer;
    }
  }
  CHECK(outer == 6);
}

TEST_CASE("iso-entangled MUBs") {
  const IsoMub iso = iso_mub();
  check_mub_structure(iso.mubs);
  const auto states = iso.mubs.states();
  REQUIRE(states.size() == 20);

  const double s5 = std::sqrt(5.0);
  Vector fid(4);
  fid << Complex(-7 + 3 * s5, 1 + s5), Complex(0, -10), Complex(-6, 8), Complex(-7 - 3 * s5, 1 - s5);
  CHECK(max_abs(states[0].amplitudes() - fid / 20.0) < 1e-15);

  int zeros = 0, quarters = 0;
  for (std::size_t i = 0; i < 20; ++i)
    for (std::size_t j = i + 1; j < 20; ++j) {
      const double ov = std::norm(states[i].amplitudes().dot(states[j].amplitudes()));
      if (std::abs(ov) < 1e-10) ++zeros;
      else if (std::abs(ov - 0.25) < 1e-10) ++quarters;
    }
  CHECK(zeros == 30);
  CHECK(quarters == 160);
}

TEST_CASE("iso-entangled states are equally entangled") {
  for (const auto& psi : iso_mub().mubs.states()) {
    const RealVector sv = schmidt_vector(psi);
    CHECK(std::abs(sv(0) - (0.5 + kR)) < 1e-10);
    CHECK(std::abs(sv(1) - (0.5 - kR)) < 1e-10);
    for (Side side : {Side::A, Side::B}) CHECK(std::abs(bloch_point(partial_trace(psi, side)).radius() - kR) < 1e-10);
  }
}

TEST_CASE("each reduced basis is a regular tetrahedron") {
  for (const auto& basis : iso_mub().mubs.bases) {
    std::vector<BlochPoint> pts;
    for (const auto& psi : basis) pts.push_back(bloch_point(partial_trace(psi, Side::B)));
    const auto s = angle_spectrum(pts);
    REQUIRE(s.classes.size() == 1);
    CHECK(s.classes[0].cosine == doctest::Approx(-1.0 / 3.0).epsilon(1e-10));
  }
}

TEST_CASE("reduced iso-MUB points form a dodecahedron") {
  const auto dodeca = cosines(platonic_vertices(PlatonicSolid::dodecahedron));
  for (Side side : {Side::A, Side::B}) {
    std::vector<Eigen::Vector3d> dirs;
    for (const auto& psi : iso_mub().mubs.states()) dirs.push_back(bloch_point(partial_trace(psi, side)).coords);
    const auto c = cosines(dirs);
    REQUIRE(c.size() == dodeca.size());
    for (std::size_t k = 0; k < c.size(); ++k) CHECK(std::abs(c[k] - dodeca[k]) < 1e-9);
  }
  std::vector<BlochPoint> pts;
  for (const auto& v : platonic_vertices(PlatonicSolid::dodecahedron)) pts.push_back({v, 1.0});
  const auto spec = angle_spectrum(pts);
  const double s5 = std::sqrt(5.0) / 3.0;
  const std::vector<std::pair<double, std::size_t>> expected{
      {-1.0, 10}, {-s5, 30}, {-1.0 / 3.0, 60}, {1.0 / 3.0, 60}, {s5, 30}};
  REQUIRE(spec.classes.size() == expected.size());
  for (std::size_t k = 0; k < expected.size(); ++k) {
    CHECK(spec.classes[k].cosine == doctest::Approx(expected[k].first).epsilon(1e-12));
    CHECK(spec.classes[k].multiplicity == expected[k].second);
  }
}

TEST_CASE("tabulated and transformed constructions agree") {
  const auto table = iso_mub_table();
  const auto transformed = iso_mub_transformed();
  for (std::size_t b = 0; b < 5; ++b)
    for (const auto& psi : table.bases[b]) {
      double best = 0.0;
      for (const auto& phi : transformed.bases[b]) best = std::max(best, std::abs(psi.amplitudes().dot(phi.amplitudes())));
      CHECK(best >= 1.0 - 1e-10);
    }
}

TEST_CASE("group words reach their targets") {
  const IsoMub iso = iso_mub();
  const auto gens = local_generators();
  const auto states = iso.mubs.states();
  REQUIRE(iso.words.size() == 20);
  for (std::size_t k = 0; k < 20; ++k) {
    Matrix m = Matrix::Identity(4, 4);
    for (int l : iso.words[k].letters) m = m * gens[static_cast<std::size_t>(l - 1)].full();
    CHECK(std::abs((m * iso_fiducial().amplitudes()).dot(states[k].amplitudes())) >= 1.0 - 1e-10);
    const Matrix local = LocalOperator{iso.left_factors[k], iso.right_factors[k]}.full();
    CHECK(max_abs(local - m) < 1e-12);
  }
}

TEST_CASE("group word parser") {
  CHECK(parse_group_word("id").letters.empty());
  CHECK(parse_group_word("h2").letters == std::vector<int>{2});
  CHECK(parse_group_word("h1^2h2").letters == std::vector<int>{1, 1, 2});
  CHECK(parse_group_word("(h1h2)^2").letters == std::vector<int>{1, 2, 1, 2});
  CHECK(parse_group_word("(h1h2h1^2h2)^2").letters.size() == 10);
  CHECK_THROWS_AS(parse_group_word("h3"), InvariantError);
  CHECK_THROWS_AS(parse_group_word("(h1"), InvariantError);
  CHECK_THROWS_AS(parse_group_word("h1^0"), InvariantError);
}

TEST_CASE("generators are unitary") {
  for (const auto& g : h_sym_generators()) CHECK(is_unitary(g, 1e-12));
  CHECK(is_unitary(iso_transform(), 1e-12));
  for (const auto& g : local_generators()) {
    CHECK(is_unitary(g.left, 1e-12));
    CHECK(is_unitary(g.right, 1e-12));
  }
}

TEST_CASE("the transform makes the symmetry generators local") {
  const Matrix t = iso_transform();
  for (const auto& g : h_sym_generators())
    CHECK(second_singular_value_of_realignment(t * g * t.adjoint()) < 1e-10);
}

TEST_CASE("the standard MUB symmetry maps the set onto itself") {
  const auto states = standard_mub_d4().states();
  for (const auto& g : h_sym_generators())
    for (const auto& psi : states) {
      const PureState image(g * psi.amplitudes(), std::nullopt, 1e-10);
      bool found = false;
      for (const auto& phi : states) found = found || same_ray(image, phi);
      CHECK(found);
    }
}

TEST_CASE("closure of the local generators") {
  const auto gens = local_generators();
  CHECK(group_closure({gens[0].full(), gens[1].full()}, true).size() == 60);
  const auto left = group_closure({gens[0].left, gens[1].left}, true);
  CHECK(left.size() == 60);
  CHECK(frame_potential_unitary(UnitarySet::uniform(left), 5).is_design);
}

TEST_CASE("SIC in dimension three") {
  const auto sic = sic_d3();
  const auto& s = sic.pure_states();
  REQUIRE(s.size() == 9);
  for (std::size_t i = 0; i < 9; ++i)
    for (std::size_t j = i + 1; j < 9; ++j)
      CHECK(std::abs(std::norm(s[i].amplitudes().dot(s[j].amplitudes())) - 0.25) < 1e-12);
  CHECK(frame_potential_projective(sic, 2).is_design);
}

TEST_CASE("tetrahedral design reproduces the explicit matrices") {
  const double s15 = std::sqrt(15.0);
  const double c = std::sqrt(2.0 / 15.0);
  const Complex w = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);
  auto qubit = [](Complex a, Complex b, Complex cc, Complex d) {
    Matrix m(2, 2);
    m << a, b, cc, d;
    return m;
  };
  const Complex hi = (15.0 + s15) / 30.0, lo = (15.0 - s15) / 30.0;
  // Flipping the sign of the rho_3 coherence breaks the tetrahedron.
  const std::vector<Matrix> expected{qubit((5.0 - s15) / 10.0, 0.0, 0.0, (5.0 + s15) / 10.0),
                                     qubit(hi, std::conj(w) * c, w * c, lo), qubit(hi, c, c, lo),
                                     qubit(hi, w * c, std::conj(w) * c, lo)};
  const auto tetra = platonic_design(PlatonicSolid::tetrahedron, platonic_mixing());
  for (const auto& e : expected) {
    bool found = false;
    for (const auto& rho : tetra.densities()) found = found || max_abs(rho.matrix() - e) < 1e-12;
    CHECK(found);
  }
  auto flipped = expected;
  flipped[2] = qubit(hi, -c, -c, lo);
  std::vector<DensityMatrix> rhos;
  for (const auto& m : flipped) rhos.emplace_back(m);
  CHECK_FALSE(delta_mixed(Ensemble::from_mixed(rhos), 2).is_design);
}

TEST_CASE("Platonic designs") {
  for (auto s : {PlatonicSolid::tetrahedron, PlatonicSolid::octahedron, PlatonicSolid::cube,
                 PlatonicSolid::icosahedron, PlatonicSolid::dodecahedron}) {
    const auto e = platonic_design(s, platonic_mixing());
    for (const auto& rho : e.densities()) CHECK(std::abs(bloch_point(rho).radius() - kR) < 1e-12);
    CHECK(delta_mixed(e, 2).is_design);
    const auto pure = platonic_design(s, 1.0);
    for (const auto& rho : pure.densities()) CHECK(bloch_point(rho).radius() == doctest::Approx(0.5));
  }
  CHECK(platonic_vertices(PlatonicSolid::icosahedron).size() == 12);
  CHECK(platonic_vertices(PlatonicSolid::dodecahedron).size() == 20);
  CHECK_THROWS_AS(parse_platonic("sphere"), UnsupportedError);
  CHECK_THROWS_AS(platonic_design(PlatonicSolid::cube, 1.5), InvariantError);
}

TEST_CASE("binary polyhedral groups") {
  const auto t = binary_tetrahedral();
  const auto i = binary_icosahedral();
  CHECK(t.size() == 24);
  CHECK(i.size() == 120);
  CHECK(group_closure(t.unitaries, false).size() == 24);
  CHECK(group_closure(i.unitaries, false).size() == 120);
  for (int k = 1; k <= 5; ++k) CHECK(frame_potential_unitary(i, k).is_design);
  CHECK(frame_potential_unitary(t, 2).is_design);
  CHECK_FALSE(frame_potential_unitary(t, 3).is_design);
}

}  // TEST_SUITE

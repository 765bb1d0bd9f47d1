#include "qdesign/constructions.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <numbers>
#include <string>

#include "qdesign/errors.hpp"

namespace qdesign {

namespace {

const double kSqrt5 = std::sqrt(5.0);
constexpr Complex kI{0.0, 1.0};

// (re_a + re_b sqrt5) + i (im_a + im_b sqrt5)
struct Surd {
  int re_a, re_b, im_a, im_b;
  Complex value() const {
    return {re_a + re_b * kSqrt5, im_a + im_b * kSqrt5};
  }
};

using SurdRow = std::array<Surd, 4>;

// Iso-entangled MUB coefficients on |00>,|01>,|10>,|11>, scaled by 20.
const std::array<SurdRow, 20> kIsoTable = {{
    {{{-7, 3, 1, 1}, {0, 0, -10, 0}, {-6, 0, 8, 0}, {-7, -3, 1, -1}}},
    {{{-7, 3, 1, 1}, {0, 0, 10, 0}, {6, 0, -8, 0}, {-7, -3, 1, -1}}},
    {{{-7, -3, 1, -1}, {10, 0, 0, 0}, {8, 0, 6, 0}, {-7, 3, 1, 1}}},
    {{{-7, -3, 1, -1}, {-10, 0, 0, 0}, {-8, 0, -6, 0}, {-7, 3, 1, 1}}},
    {{{-2, 1, 11, 2}, {-5, 0, 5, 0}, {7, 0, -1, 0}, {-2, -1, 11, -2}}},
    {{{3, 4, -4, 3}, {-5, 0, -5, 0}, {1, 0, 7, 0}, {3, -4, -4, -3}}},
    {{{3, -2, -4, 1}, {-15, 0, 5, 0}, {-1, 0, -7, 0}, {3, 2, -4, -1}}},
    {{{3, -2, -4, 1}, {5, 0, 5, 0}, {15, 0, 5, 0}, {3, 2, -4, -1}}},
    {{{-2, 1, 11, 2}, {5, 0, -5, 0}, {-7, 0, 1, 0}, {-2, -1, 11, -2}}},
    {{{3, 4, -4, 3}, {5, 0, 5, 0}, {-1, 0, -7, 0}, {3, -4, -4, -3}}},
    {{{3, -2, -4, 1}, {15, 0, -5, 0}, {1, 0, 7, 0}, {3, 2, -4, -1}}},
    {{{3, -2, -4, 1}, {-5, 0, -5, 0}, {-15, 0, -5, 0}, {3, 2, -4, -1}}},
    {{{-2, -1, 11, -2}, {-5, 0, -5, 0}, {-1, 0, -7, 0}, {-2, 1, 11, 2}}},
    {{{3, -4, -4, -3}, {5, 0, -5, 0}, {7, 0, -1, 0}, {3, 4, -4, 3}}},
    {{{3, 2, -4, -1}, {-5, 0, -15, 0}, {-7, 0, 1, 0}, {3, -2, -4, 1}}},
    {{{3, 2, -4, -1}, {-5, 0, 5, 0}, {5, 0, -15, 0}, {3, -2, -4, 1}}},
    {{{-2, -1, 11, -2}, {5, 0, 5, 0}, {1, 0, 7, 0}, {-2, 1, 11, 2}}},
    {{{3, -4, -4, -3}, {-5, 0, 5, 0}, {-7, 0, 1, 0}, {3, 4, -4, 3}}},
    {{{3, 2, -4, -1}, {5, 0, 15, 0}, {7, 0, -1, 0}, {3, -2, -4, 1}}},
    {{{3, 2, -4, -1}, {5, 0, -5, 0}, {-5, 0, 15, 0}, {3, -2, -4, 1}}},
}};

// Group element mapping the fiducial to each tabulated state.
const std::array<const char*, 20> kIsoWords = {
    "id",
    "h2h1^2h2h1h2",
    "h2h1h2h1h2h1^2h2",
    "h1h2h1^2h2h1h2",
    "h1^2h2h1h2",
    "h1h2h1h2h1^2h2",
    "h2h1h2h1^2h2h1h2",
    "h2",
    "h2h1h2h1^2h2h1h2h1^2h2",
    "h2h1h2h1h2",
    "h1h2h1^2h2",
    "h2h1^2h2",
    "h2h1h2",
    "h2h1^2h2h1h2h1^2h2",
    "h1^2h2h1h2h1^2h2",
    "h1h2",
    "(h1h2)^2",
    "h1^2h2",
    "(h1h2h1^2h2)^2",
    "h2h1h2h1^2h2",
};

// The change of basis, scaled by 20.
const std::array<SurdRow, 4> kTransform = {{
    {{{7, -3, -1, -1}, {7, 3, -1, 1}, {7, 3, -1, 1}, {1, 1, 7, -3}}},
    {{{0, 0, 10, 0}, {10, 0, 0, 0}, {-10, 0, 0, 0}, {10, 0, 0, 0}}},
    {{{6, 0, -8, 0}, {8, 0, 6, 0}, {-8, 0, -6, 0}, {-8, 0, -6, 0}}},
    {{{7, 3, -1, 1}, {7, -3, -1, -1}, {7, -3, -1, -1}, {1, -1, 7, 3}}},
}};

Vector vec4(Complex a, Complex b, Complex c, Complex d) {
  Vector v(4);
  v << a, b, c, d;
  return v;
}

Vector kron2(const Vector& a, const Vector& b) {
  Vector v(4);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) v(2 * i + j) = a(i) * b(j);
  return v;
}

Matrix mat2(Complex a, Complex b, Complex c, Complex d) {
  Matrix m(2, 2);
  m << a, b, c, d;
  return m;
}

Matrix kron_mat(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

MubSet make_mub_set(const std::vector<Vector>& vectors, std::vector<std::string> labels) {
  MubSet m;
  m.dim = 4;
  m.labels = std::move(labels);
  const Bipartition two_qubits{2, 2};
  for (std::size_t b = 0; b < vectors.size() / 4; ++b) {
    std::vector<PureState> basis;
    for (std::size_t k = 0; k < 4; ++k)
      basis.push_back(PureState::normalized(vectors[4 * b + k], two_qubits));
    m.bases.push_back(std::move(basis));
  }
  return m;
}

Matrix product_of(const GroupWord& w, const Matrix& g1, const Matrix& g2) {
  Matrix m = Matrix::Identity(g1.rows(), g1.cols());
  for (int l : w.letters) m = m * (l == 1 ? g1 : g2);
  return m;
}

bool same_up_to_phase(const Matrix& a, const Matrix& b, double tol) {
  return std::abs(std::abs((a.adjoint() * b).trace()) - static_cast<double>(a.rows())) <= tol;
}

Matrix quaternion_su2(double a, double b, double c, double d) {
  // a I - i (b X + c Y + d Z)
  return mat2(Complex(a, -d), Complex(-c, -b), Complex(c, -b), Complex(a, d));
}

}  // namespace

std::vector<PureState> MubSet::states() const {
  std::vector<PureState> out;
  for (const auto& b : bases) out.insert(out.end(), b.begin(), b.end());
  return out;
}

Ensemble MubSet::ensemble() const { return Ensemble::from_pure(states()); }

GroupWord parse_group_word(std::string_view text, int target_index) {
  GroupWord w;
  w.text = std::string(text);
  w.target_index = target_index;
  if (text == "id" || text.empty()) return w;

  auto read_power = [&](std::size_t& pos) {
    if (pos < text.size() && text[pos] == '^') {
      ++pos;
      int p = 0;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
        p = 10 * p + (text[pos++] - '0');
      if (p < 1) throw InvariantError("group word: bad exponent in '" + w.text + "'");
      return p;
    }
    return 1;
  };

  std::size_t pos = 0;
  while (pos < text.size()) {
    if (text[pos] == '(') {
      const auto close = text.find(')', pos);
      if (close == std::string_view::npos) throw InvariantError("group word: unbalanced '('");
      const auto inner = parse_group_word(text.substr(pos + 1, close - pos - 1)).letters;
      pos = close + 1;
      const int p = read_power(pos);
      for (int k = 0; k < p; ++k) w.letters.insert(w.letters.end(), inner.begin(), inner.end());
    } else if (text[pos] == 'h' && pos + 1 < text.size() &&
               (text[pos + 1] == '1' || text[pos + 1] == '2')) {
      const int letter = text[pos + 1] - '0';
      pos += 2;
      const int p = read_power(pos);
      w.letters.insert(w.letters.end(), static_cast<std::size_t>(p), letter);
    } else {
      throw InvariantError("group word: unexpected character in '" + w.text + "'");
    }
  }
  return w;
}

Matrix LocalOperator::full() const { return kron_mat(left, right); }

MubSet standard_mub_d4() {
  const Complex one = 1.0;
  const Vector z0 = (Vector(2) << 1.0, 0.0).finished();
  const Vector z1 = (Vector(2) << 0.0, 1.0).finished();
  auto plus = [&](Complex s) { return Vector(z0 + s * z1); };
  std::vector<Vector> v;
  for (int k = 0; k < 4; ++k) v.push_back(Vector::Unit(4, k).cast<Complex>());
  for (Complex s : {one, -one})
    for (Complex r : {one, -one}) v.push_back(kron2(plus(s), plus(r)));
  for (Complex s : {kI, -kI})
    for (Complex r : {kI, -kI}) v.push_back(kron2(plus(s), plus(r)));
  // Maximally entangled bases; coefficients on |00>,|01>,|10>,|11>.
  v.push_back(vec4(1, kI, -1, kI));
  v.push_back(vec4(1, -kI, -1, -kI));
  v.push_back(vec4(1, -kI, 1, kI));
  v.push_back(vec4(1, kI, 1, -kI));
  v.push_back(vec4(1, 1, -kI, kI));
  v.push_back(vec4(1, 1, kI, -kI));
  v.push_back(vec4(1, -1, -kI, -kI));
  v.push_back(vec4(1, -1, kI, kI));
  return make_mub_set(v, {"computational", "X", "Y", "entangled-1", "entangled-2"});
}

std::vector<Matrix> h_sym_generators() {
  Matrix a(4, 4), b(4, 4);
  a << -1, 1, -kI, -kI,
       1, -1, -kI, -kI,
       kI, kI, 1, -1,
       kI, kI, -1, 1;
  b << kI, kI, kI, kI,
       -1, 1, -1, 1,
       -1, -1, 1, 1,
       -kI, kI, kI, -kI;
  return {a / 2.0, b / 2.0};
}

Matrix iso_transform() {
  Matrix t(4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) t(i, j) = kTransform[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].value() / 20.0;
  return t;
}

std::vector<LocalOperator> local_generators() {
  const double s = 1.0 / std::sqrt(50.0);
  const double r5 = kSqrt5;
  LocalOperator h1{
      s * mat2(5.0, Complex(r5, -2 * r5), Complex(-2 * r5, r5), Complex(0, -5)),
      s * mat2(5.0, Complex(r5, 2 * r5), Complex(-2 * r5, -r5), Complex(0, 5))};
  LocalOperator h2{
      mat2(Complex(0, 5 * r5 + 5), Complex(3 * r5 + 5, 4 * r5 - 10),
           Complex(-3 * r5 - 5, 4 * r5 - 10), Complex(0, -(5 * r5 + 5))) / 20.0,
      mat2(Complex(0, 5 * r5 - 5), Complex(3 * r5 - 5, -(4 * r5 + 10)),
           Complex(-3 * r5 + 5, -(4 * r5 + 10)), Complex(0, -5 * r5 + 5)) / 20.0};
  return {h1, h2};
}

PureState iso_fiducial() {
  const Complex a_plus(-7 + 3 * kSqrt5, 1 + kSqrt5);
  const Complex a_minus(-7 - 3 * kSqrt5, 1 - kSqrt5);
  return PureState(vec4(a_plus, Complex(0, -10), Complex(-6, 8), a_minus) / 20.0,
                   Bipartition{2, 2});
}

MubSet iso_mub_table() {
  std::vector<Vector> v;
  for (const auto& row : kIsoTable)
    v.push_back(vec4(row[0].value(), row[1].value(), row[2].value(), row[3].value()) / 20.0);
  return make_mub_set(v, {"iso-1", "iso-2", "iso-3", "iso-4", "iso-5"});
}

MubSet iso_mub_transformed() {
  const Matrix t = iso_transform();
  std::vector<Vector> v;
  for (const auto& psi : standard_mub_d4().states()) v.push_back(t * psi.amplitudes());
  return make_mub_set(v, {"T.computational", "T.X", "T.Y", "T.entangled-1", "T.entangled-2"});
}

IsoMub iso_mub() {
  IsoMub out;
  MubSet table = iso_mub_table();
  const PureState fiducial = iso_fiducial();
  if (!same_ray(fiducial, table.bases[0][0]))
    throw ConstructionError("tabulated first state differs from the fiducial beyond a phase");
  table.bases[0][0] = fiducial;

  const MubSet transformed = iso_mub_transformed();
  for (std::size_t b = 0; b < table.bases.size(); ++b) {
    for (std::size_t k = 0; k < 4; ++k) {
      bool found = false;
      for (const auto& cand : transformed.bases[b]) found = found || same_ray(table.bases[b][k], cand);
      if (!found)
        throw ConstructionError("iso-MUB state " + std::to_string(4 * b + k + 1) +
                                " not found in the transformed basis " + std::to_string(b + 1));
    }
  }

  const auto gens = local_generators();
  const Matrix h1 = gens[0].full();
  const Matrix h2 = gens[1].full();
  const auto states = table.states();
  for (std::size_t k = 0; k < kIsoWords.size(); ++k) {
    GroupWord w = parse_group_word(kIsoWords[k], static_cast<int>(k));
    const PureState image(product_of(w, h1, h2) * fiducial.amplitudes(), Bipartition{2, 2}, 1e-10);
    if (!same_ray(image, states[k]))
      throw ConstructionError("group word '" + w.text + "' does not reach state " +
                              std::to_string(k + 1));
    out.left_factors.push_back(product_of(w, gens[0].left, gens[1].left));
    out.right_factors.push_back(product_of(w, gens[0].right, gens[1].right));
    out.words.push_back(std::move(w));
  }
  out.mubs = std::move(table);
  return out;
}

std::vector<Matrix> group_closure(const std::vector<Matrix>& generators, bool modulo_phase,
                                  std::size_t max_order) {
  if (generators.empty()) throw InvariantError("group closure needs generators");
  const auto d = generators.front().rows();
  std::vector<Matrix> elements{Matrix::Identity(d, d)};
  auto known = [&](const Matrix& m) {
    for (const auto& e : elements) {
      if (modulo_phase ? same_up_to_phase(e, m, 1e-9) : (e - m).cwiseAbs().maxCoeff() <= 1e-9)
        return true;
    }
    return false;
  };
  for (std::size_t frontier = 0; frontier < elements.size(); ++frontier) {
    for (const auto& g : generators) {
      Matrix m = elements[frontier] * g;
      if (!known(m)) {
        elements.push_back(std::move(m));
        if (elements.size() > max_order) throw CapacityError("group closure exceeded max order");
      }
    }
  }
  return elements;
}

Ensemble sic_d3() {
  const double s = 1.0 / std::sqrt(2.0);
  const Vector fid = (Vector(3) << 0.0, s, -s).finished();
  const Complex omega = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);
  std::vector<PureState> states;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      Vector v(3);
      for (int j = 0; j < 3; ++j) v((j + a) % 3) = std::pow(omega, b * j) * fid(j);  // X^a Z^b
      states.emplace_back(v);
    }
  return Ensemble::from_pure(std::move(states));
}

PlatonicSolid parse_platonic(std::string_view name) {
  if (name == "tetra" || name == "tetrahedron") return PlatonicSolid::tetrahedron;
  if (name == "octa" || name == "octahedron") return PlatonicSolid::octahedron;
  if (name == "cube") return PlatonicSolid::cube;
  if (name == "icosa" || name == "icosahedron") return PlatonicSolid::icosahedron;
  if (name == "dodeca" || name == "dodecahedron") return PlatonicSolid::dodecahedron;
  throw UnsupportedError("unknown Platonic solid '" + std::string(name) + "'");
}

std::string_view platonic_name(PlatonicSolid s) {
  switch (s) {
    case PlatonicSolid::tetrahedron: return "tetrahedron";
    case PlatonicSolid::octahedron: return "octahedron";
    case PlatonicSolid::cube: return "cube";
    case PlatonicSolid::icosahedron: return "icosahedron";
    case PlatonicSolid::dodecahedron: return "dodecahedron";
  }
  return "?";
}

std::vector<Eigen::Vector3d> platonic_vertices(PlatonicSolid s) {
  using V = Eigen::Vector3d;
  std::vector<V> v;
  const double phi = (1.0 + kSqrt5) / 2.0;
  switch (s) {
    case PlatonicSolid::tetrahedron: {
      const double st = 2.0 * std::sqrt(2.0) / 3.0;
      v.emplace_back(0, 0, 1);
      for (double az : {-std::numbers::pi / 3.0, std::numbers::pi, std::numbers::pi / 3.0})
        v.emplace_back(st * std::cos(az), st * std::sin(az), -1.0 / 3.0);
      break;
    }
    case PlatonicSolid::octahedron:
      for (int k = 0; k < 3; ++k) {
        v.push_back(V::Unit(k));
        v.push_back(-V::Unit(k));
      }
      break;
    case PlatonicSolid::cube:
      for (int x : {1, -1})
        for (int y : {1, -1})
          for (int z : {1, -1}) v.emplace_back(x, y, z);
      break;
    case PlatonicSolid::icosahedron:
      for (int a : {1, -1})
        for (double b : {phi, -phi}) {
          v.emplace_back(0, a, b);
          v.emplace_back(a, b, 0);
          v.emplace_back(b, 0, a);
        }
      break;
    case PlatonicSolid::dodecahedron:
      for (int x : {1, -1})
        for (int y : {1, -1})
          for (int z : {1, -1}) v.emplace_back(x, y, z);
      for (int a : {1, -1})
        for (int b : {1, -1}) {
          v.emplace_back(0, a / phi, b * phi);
          v.emplace_back(a / phi, b * phi, 0);
          v.emplace_back(b * phi, 0, a / phi);
        }
      break;
  }
  for (auto& x : v) x.normalize();
  return v;
}

double platonic_mixing() { return (5.0 - std::sqrt(15.0)) / 10.0; }

Ensemble platonic_design(PlatonicSolid s, double a) {
  if (!(a >= 0.0 && a <= 1.0)) throw InvariantError("mixing parameter must lie in [0, 1]");
  std::vector<DensityMatrix> rhos;
  for (const auto& n : platonic_vertices(s)) {
    const double theta = std::acos(std::clamp(n.z(), -1.0, 1.0));
    const double phi = std::atan2(n.y(), n.x());
    const Complex e = std::polar(1.0, phi);
    const Vector psi = (Vector(2) << std::cos(theta / 2), e * std::sin(theta / 2)).finished();
    const Vector anti = (Vector(2) << std::sin(theta / 2), -e * std::cos(theta / 2)).finished();
    Matrix m = a * psi * psi.adjoint() + (1.0 - a) * anti * anti.adjoint();
    rhos.push_back(DensityMatrix::trusted(0.5 * (m + m.adjoint())));
  }
  return Ensemble::from_mixed(std::move(rhos));
}

UnitarySet binary_tetrahedral() {
  std::vector<Matrix> us;
  for (int k = 0; k < 4; ++k)
    for (double s : {1.0, -1.0}) {
      std::array<double, 4> q{0, 0, 0, 0};
      q[static_cast<std::size_t>(k)] = s;
      us.push_back(quaternion_su2(q[0], q[1], q[2], q[3]));
    }
  for (int mask = 0; mask < 16; ++mask) {
    auto sg = [&](int bit) { return (mask >> bit) & 1 ? -0.5 : 0.5; };
    us.push_back(quaternion_su2(sg(0), sg(1), sg(2), sg(3)));
  }
  return UnitarySet::uniform(std::move(us));
}

UnitarySet binary_icosahedral() {
  UnitarySet tet = binary_tetrahedral();
  std::vector<Matrix> us = std::move(tet.unitaries);
  const double phi = (1.0 + kSqrt5) / 2.0;
  // (0, 1, 1/phi, phi)/2 with all signs, under the 12 even permutations.
  const std::array<double, 4> base{0.0, 0.5, 0.5 / phi, 0.5 * phi};
  std::array<int, 4> perm{0, 1, 2, 3};
  do {
    int inversions = 0;
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j) inversions += perm[static_cast<std::size_t>(i)] > perm[static_cast<std::size_t>(j)];
    if (inversions % 2) continue;
    for (int mask = 0; mask < 8; ++mask) {
      std::array<double, 4> q{};
      for (int slot = 0; slot < 4; ++slot) q[static_cast<std::size_t>(perm[static_cast<std::size_t>(slot)])] = base[static_cast<std::size_t>(slot)];
      // Flip the three nonzero base entries.
      for (int bit = 0; bit < 3; ++bit)
        if ((mask >> bit) & 1) q[static_cast<std::size_t>(perm[static_cast<std::size_t>(bit + 1)])] *= -1.0;
      us.push_back(quaternion_su2(q[0], q[1], q[2], q[3]));
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return UnitarySet::uniform(std::move(us));
}

}  // namespace qdesign

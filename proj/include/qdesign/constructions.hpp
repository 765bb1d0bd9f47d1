#pragma once

// Named designs: the standard and iso-entangled complete MUBs for two qubits,
// the Weyl-Heisenberg SIC in d = 3, Platonic one-qubit mixed-state designs and
// finite subgroups of SU(2) used as unitary designs.

#include <string>
#include <string_view>
#include <vector>

#include "qdesign/moments.hpp"
#include "qdesign/qstate.hpp"

namespace qdesign {

struct MubSet {
  int dim = 0;
  std::vector<std::vector<PureState>> bases;
  std::vector<std::string> labels;

  std::vector<PureState> states() const;
  /// Uniformly weighted ensemble of all states, in basis order.
  Ensemble ensemble() const;
};

/// Word over {h1, h2}; letters are 1 or 2, applied as the matrix product
/// h_{l0} h_{l1} ... in written order.
struct GroupWord {
  std::string text;
  std::vector<int> letters;
  int target_index = 0;
};

GroupWord parse_group_word(std::string_view text, int target_index = 0);

/// A tensor-product operator left (x) right on C^2 (x) C^2.
struct LocalOperator {
  Matrix left;
  Matrix right;

  Matrix full() const;
};

/// The five bases of the finite-field construction (normalized), d = 4.
MubSet standard_mub_d4();

/// Generators of the symmetry group of the standard MUBs (H_sym pair).
std::vector<Matrix> h_sym_generators();
/// Global change of basis mapping H_sym to local operators.
Matrix iso_transform();
/// The local generators h1, h2 as tensor-factor pairs.
std::vector<LocalOperator> local_generators();

/// The fiducial two-qubit state generating the iso-entangled MUBs.
PureState iso_fiducial();

/// The 20 states as tabulated (rows scaled by 1/20), in five bases.
MubSet iso_mub_table();
/// The transform applied to the standard MUBs, basis by basis.
MubSet iso_mub_transformed();

struct IsoMub {
  MubSet mubs;                     // tabulated order
  std::vector<GroupWord> words;    // words[k] maps the fiducial to state k
  std::vector<Matrix> left_factors;
  std::vector<Matrix> right_factors;
};

/// Builds the iso-entangled MUBs and cross-checks the tabulated states against
/// (a) the transformed standard MUBs (per basis, up to order and phase) and
/// (b) the group words applied to the fiducial. Throws ConstructionError on
/// any mismatch.
IsoMub iso_mub();

/// Closure of `generators` under multiplication. With `modulo_phase`, two
/// elements are identified when |Tr(A^dag B)| = d.
std::vector<Matrix> group_closure(const std::vector<Matrix>& generators,
                                  bool modulo_phase, std::size_t max_order = 10000);

/// The 9 Weyl-Heisenberg covariant states of fiducial (0, 1, -1)/sqrt 2.
Ensemble sic_d3();

enum class PlatonicSolid { tetrahedron, octahedron, cube, icosahedron, dodecahedron };

PlatonicSolid parse_platonic(std::string_view name);
std::string_view platonic_name(PlatonicSolid s);
/// Unit vertex directions (tetrahedron with a vertex on +z).
std::vector<Eigen::Vector3d> platonic_vertices(PlatonicSolid s);
/// (5 - sqrt 15) / 10: places the vertices on the sphere of radius sqrt(3/20).
double platonic_mixing();
/// rho = a |psi><psi| + (1-a) |psi~><psi~| at every vertex direction.
Ensemble platonic_design(PlatonicSolid s, double a);

/// The binary tetrahedral group (24 elements of SU(2)): a unitary 2-design.
UnitarySet binary_tetrahedral();
/// The binary icosahedral group (120 elements of SU(2)): a unitary 5-design.
UnitarySet binary_icosahedral();

}  // namespace qdesign

#pragma once

// Symmetric-group bookkeeping for the moment calculus: explicit S_t
// enumeration, cycle types, conjugacy classes and the dense permutation
// operators O_sigma acting on (C^N)^{(x)t}.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "qdesign/qstate.hpp"

namespace qdesign {

inline constexpr int kMaxPermutationOrder = 8;

/// A permutation of {0, ..., t-1}; image(k) is where k is sent.
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<std::uint8_t> images);
  static Permutation identity(int t);

  int order() const { return static_cast<int>(images_.size()); }
  int image(int k) const { return images_[static_cast<std::size_t>(k)]; }
  const std::vector<std::uint8_t>& images() const { return images_; }

  /// (this * other)(k) = this(other(k)).
  Permutation compose(const Permutation& other) const;
  Permutation inverse() const;

  /// Cycle lengths in descending order; fixed points count as 1-cycles.
  std::vector<int> cycle_type() const;
  int cycle_count() const;

  /// Removes the last point: if sigma(t-1) = t-1 it is dropped, otherwise the
  /// element mapped to t-1 is redirected to sigma(t-1).
  Permutation without_last() const;
  bool fixes_last() const { return image(order() - 1) == order() - 1; }

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  std::vector<std::uint8_t> images_;
};

/// All t! permutations in lexicographic order. Throws CapacityError for t > 8.
std::vector<Permutation> all_permutations(int t);

struct ConjugacyClass {
  std::vector<int> cycle_type;  // descending
  std::size_t size = 0;
  Permutation representative;
};

/// Classes of S_t, i.e. integer partitions of t with their class sizes.
std::vector<ConjugacyClass> conjugacy_classes(int t);

/// Dense O_sigma on (C^N)^{(x)t}: factor k of a product vector is moved to
/// slot sigma(k). The first factor is the most significant index digit.
Matrix permutation_operator(const Permutation& sigma, int n);

/// N^t with overflow/capacity check against `limit`.
std::size_t tensor_dim(int n, int t, std::size_t limit);

void require_order(int t);

}  // namespace qdesign

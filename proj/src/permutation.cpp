#include "qdesign/permutation.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <string>

#include "qdesign/errors.hpp"

namespace qdesign {

void require_order(int t) {
  if (t < 1) throw UnsupportedError("permutation order must be >= 1");
  if (t > kMaxPermutationOrder)
    throw CapacityError("order t = " + std::to_string(t) + " exceeds the S_t limit of " +
                        std::to_string(kMaxPermutationOrder));
}

Permutation::Permutation(std::vector<std::uint8_t> images) : images_(std::move(images)) {
  std::vector<bool> seen(images_.size(), false);
  for (auto v : images_) {
    if (v >= images_.size() || seen[v]) throw InvariantError("not a permutation");
    seen[v] = true;
  }
}

Permutation Permutation::identity(int t) {
  std::vector<std::uint8_t> im(static_cast<std::size_t>(t));
  std::iota(im.begin(), im.end(), std::uint8_t{0});
  return Permutation(std::move(im));
}

Permutation Permutation::compose(const Permutation& other) const {
  if (order() != other.order()) throw DimensionError("composing permutations of different order");
  std::vector<std::uint8_t> im(images_.size());
  for (std::size_t k = 0; k < im.size(); ++k) im[k] = images_[other.images_[k]];
  return Permutation(std::move(im));
}

Permutation Permutation::inverse() const {
  std::vector<std::uint8_t> im(images_.size());
  for (std::size_t k = 0; k < im.size(); ++k) im[images_[k]] = static_cast<std::uint8_t>(k);
  return Permutation(std::move(im));
}

std::vector<int> Permutation::cycle_type() const {
  std::vector<int> lengths;
  std::vector<bool> seen(images_.size(), false);
  for (std::size_t start = 0; start < images_.size(); ++start) {
    if (seen[start]) continue;
    int len = 0;
    for (std::size_t k = start; !seen[k]; k = images_[k]) {
      seen[k] = true;
      ++len;
    }
    lengths.push_back(len);
  }
  std::sort(lengths.begin(), lengths.end(), std::greater<>());
  return lengths;
}

int Permutation::cycle_count() const { return static_cast<int>(cycle_type().size()); }

Permutation Permutation::without_last() const {
  const int last = order() - 1;
  if (last < 1) throw UnsupportedError("cannot remove the last point of S_1");
  std::vector<std::uint8_t> im(images_.begin(), images_.end() - 1);
  for (auto& v : im)
    if (v == last) v = images_[static_cast<std::size_t>(last)];
  return Permutation(std::move(im));
}

std::vector<Permutation> all_permutations(int t) {
  require_order(t);
  std::vector<std::uint8_t> im(static_cast<std::size_t>(t));
  std::iota(im.begin(), im.end(), std::uint8_t{0});
  std::vector<Permutation> out;
  do {
    out.emplace_back(im);
  } while (std::next_permutation(im.begin(), im.end()));
  return out;
}

std::vector<ConjugacyClass> conjugacy_classes(int t) {
  std::map<std::vector<int>, ConjugacyClass, std::greater<>> by_type;
  for (auto& p : all_permutations(t)) {
    auto type = p.cycle_type();
    auto [it, inserted] = by_type.try_emplace(type);
    if (inserted) {
      it->second.cycle_type = type;
      it->second.representative = p;
    }
    ++it->second.size;
  }
  std::vector<ConjugacyClass> out;
  for (auto& [type, cls] : by_type) out.push_back(std::move(cls));
  return out;
}

std::size_t tensor_dim(int n, int t, std::size_t limit) {
  std::size_t d = 1;
  for (int k = 0; k < t; ++k) {
    d *= static_cast<std::size_t>(n);
    if (d > limit)
      throw CapacityError("N^t = " + std::to_string(n) + "^" + std::to_string(t) +
                          " exceeds the dense limit of " + std::to_string(limit) +
                          "; use the cycle-sum path");
  }
  return d;
}

Matrix permutation_operator(const Permutation& sigma, int n) {
  const int t = sigma.order();
  const std::size_t dim = tensor_dim(n, t, 4096);
  Matrix op = Matrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  std::vector<int> in(static_cast<std::size_t>(t)), out(static_cast<std::size_t>(t));
  for (std::size_t col = 0; col < dim; ++col) {
    std::size_t rest = col;
    for (int k = t - 1; k >= 0; --k) {
      in[static_cast<std::size_t>(k)] = static_cast<int>(rest % static_cast<std::size_t>(n));
      rest /= static_cast<std::size_t>(n);
    }
    for (int k = 0; k < t; ++k)
      out[static_cast<std::size_t>(sigma.image(k))] = in[static_cast<std::size_t>(k)];
    std::size_t row = 0;
    for (int k = 0; k < t; ++k) row = row * static_cast<std::size_t>(n) + static_cast<std::size_t>(out[static_cast<std::size_t>(k)]);
    op(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) = 1.0;
  }
  return op;
}

}  // namespace qdesign

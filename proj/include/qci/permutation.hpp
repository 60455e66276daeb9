#pragma once

// Permutations of the generators, their action on exponent vectors, and the
// fixed-point/moved-point partition used by the existence criteria.

#include <string>
#include <string_view>
#include <vector>

#include "qci/algebra.hpp"

namespace qci {

inline constexpr int kDefaultMaxGenerators = 10;

/// A bijection of {0..n-1}; serialized 1-based as "[1,3,2]".
class Permutation {
 public:
  Permutation() = default;
  static Permutation identity(int n);
  /// Throws InvalidInput unless image is a bijection of {0..n-1}.
  static Permutation from_images(std::vector<int> image);
  /// Parses the 1-based one-line form "[1,3,2]"; throws SyntaxError/InvalidInput.
  static Permutation parse(std::string_view text);

  int size() const { return static_cast<int>(image_.size()); }
  int operator()(int i) const { return image_[static_cast<std::size_t>(i)]; }
  const std::vector<int>& images() const { return image_; }

  Permutation inverse() const;
  bool is_identity() const;
  bool is_involution() const;
  std::string to_string() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  explicit Permutation(std::vector<int> image) : image_(std::move(image)) {}
  std::vector<int> image_;
};

/// pi(v)_k = v_{pi^{-1}(k)}, so pi(e_i) = e_{pi(i)}.
ExpVec act(const Permutation& pi, const ExpVec& v);

/// a_{pi(i)} = a_i and q_{pi(i)pi(j)} = q_ji for all i, j.
bool is_compatible(const Presentation& p, const Permutation& pi);

/// Compatible involutions in lexicographic order of image vectors; throws
/// TooManyGenerators when n exceeds max_generators.
std::vector<Permutation> enumerate_compatible_involutions(const Presentation& p,
                                                          int max_generators = kDefaultMaxGenerators);

/// All compatible permutations, involutive or not, in lexicographic order.
std::vector<Permutation> enumerate_compatible_permutations(const Presentation& p,
                                                           int max_generators = kDefaultMaxGenerators);

/// prod_{j<k} bracket(pi(e_k), pi(e_j))^{(a_k-1)(a_j-1)}.
Scalar q_pi(const Presentation& p, const Permutation& pi);

/// Index sets are 0-based and ascending.
struct PartitionReport {
  std::vector<int> fixed;  // I
  std::vector<int> moved;  // J
  // Fixed and moved points split by h_{e_i} = 1 / -1 and the parity of a_i:
  // [0] h = 1, a even; [1] h = 1, a odd; [2] h = -1, a even; [3] h = -1, a odd.
  std::vector<int> fixed_split[4];
  std::vector<int> moved_split[4];
  // Fixed points with h = -1 and a odd, split by (a_i - 1)/2 odd / even.
  std::vector<int> fixed_odd_half;
  std::vector<int> fixed_even_half;
  Scalar q_pi;
  /// In characteristic 2 the h-splits collapse; only fixed/moved are filled.
  bool char_two = false;
};

/// Throws NotCompatible, NotInvolution, or RegimeHypothesisFailed when some
/// h_{e_i} is not +-1.
PartitionReport partition(const Presentation& p, const Permutation& pi);

}  // namespace qci

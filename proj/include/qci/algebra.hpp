#pragma once

// The quantum complete intersection A(q,a): generators x_1..x_n with
// x_i^{a_i} = 0 and x_j x_i = q_ij x_i x_j. Basis monomials are indexed by
// exponent vectors v with 0 <= v_i <= a_i - 1.

#include <array>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "qci/field.hpp"
#include "qci/linalg.hpp"
#include "qci/sparse.hpp"

namespace qci {

using ExpVec = std::vector<int>;

struct ElementTag {};
struct FunctionalTag {};

/// Linear combination of basis monomials x_v.
using Element = Sparse<ExpVec, ElementTag>;
/// Coordinates in the dual basis x_v^*.
using Functional = Sparse<ExpVec, FunctionalTag>;
/// Elements of A (x) A on the basis x_u (x) x_v.
using Tensor = Sparse<std::pair<ExpVec, ExpVec>>;
/// Elements of A (x) A (x) A.
using Tensor3 = Sparse<std::array<ExpVec, 3>>;

inline constexpr std::size_t kDefaultDimLimit = 4096;

/// Unvalidated presentation data as read from a file or built in code.
struct RawPresentation {
  Field field;
  std::vector<long long> a;
  std::vector<std::vector<Scalar>> q;
};

class Presentation {
 public:
  /// Empty placeholder; real presentations come from validate_presentation.
  Presentation() = default;

  const Field& field() const { return field_; }
  int n() const { return static_cast<int>(a_.size()); }
  const std::vector<int>& a() const { return a_; }
  const Scalar& q(int i, int j) const { return q_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]; }
  const std::vector<std::vector<Scalar>>& q_matrix() const { return q_; }

  std::size_t dim() const { return basis_.size(); }
  /// All v in V in mixed-radix lexicographic order (v_1 most significant).
  const std::vector<ExpVec>& basis() const { return basis_; }
  /// Position of v in basis(); v must lie in V.
  std::size_t index_of(const ExpVec& v) const;
  bool in_range(const ExpVec& v) const;

  ExpVec zero_vec() const { return ExpVec(a_.size(), 0); }
  /// a - 1, the exponent of the top monomial.
  ExpVec top() const;
  ExpVec unit(int i) const;

  Element monomial(const ExpVec& v) const;
  Element monomial(const ExpVec& v, const Scalar& coeff) const;
  Element one() const { return monomial(zero_vec()); }

  RawPresentation raw() const { return {field_, {a_.begin(), a_.end()}, q_}; }

  friend bool operator==(const Presentation& x, const Presentation& y) {
    return x.field_ == y.field_ && x.a_ == y.a_ && x.q_ == y.q_;
  }

 private:
  friend Presentation validate_presentation(const RawPresentation& raw, std::size_t dim_limit);

  Field field_;
  std::vector<int> a_;
  std::vector<std::vector<Scalar>> q_;
  std::vector<ExpVec> basis_;
};

/// Throws BadDiagonal, BadReciprocal, BadExponent, TooLarge or InvalidInput.
Presentation validate_presentation(const RawPresentation& raw, std::size_t dim_limit = kDefaultDimLimit);

/// prod_{i<j} q_ij^{u_j v_i}, for arbitrary integer vectors.
Scalar bracket(const Presentation& p, const ExpVec& u, const ExpVec& v);

/// Product of basis monomials: bracket(u,v) x_{u+v}, or nullopt when u+v leaves V.
std::optional<std::pair<ExpVec, Scalar>> mul_basis(const Presentation& p, const ExpVec& u, const ExpVec& v);

Element mul(const Presentation& p, const Element& x, const Element& y);

/// h_v = bracket(a-1-v, v) / bracket(v, a-1-v).
Scalar h_of(const Presentation& p, const ExpVec& v);
/// h_{e_i} for i = 0..n-1.
std::vector<Scalar> h_units(const Presentation& p);

/// The canonical Nakayama automorphism x_v -> h_v x_v.
Element nakayama(const Presentation& p, const Element& x);

bool is_symmetric(const Presentation& p);

/// Order of the canonical Nakayama automorphism: the lcm of the multiplicative
/// orders of the h_{e_i}, or nullopt when some h_{e_i} is not a root of unity.
std::optional<std::uint64_t> nakayama_order(const Presentation& p);

/// A linear map A -> A as the images of the basis vectors, in basis order.
using LinearMap = std::vector<Element>;

Element apply_map(const Presentation& p, const LinearMap& m, const Element& x);

/// N_phi with phi(xy) = phi(y N_phi(x)), solved from the pairing matrix;
/// throws NotFrobenius when the pairing (x, y) -> phi(xy) is degenerate.
LinearMap nakayama_wrt(const Presentation& p, const Functional& phi);

Scalar apply_functional(const Functional& f, const Element& x);

/// Rows u, columns v of (x_u, x_v) -> phi(x_u x_v).
std::vector<SparseRow> pairing_rows(const Presentation& p, const Functional& phi);
Matrix pairing_matrix(const Presentation& p, const Functional& phi);

/// Dual-space actions of A: (a -> f)(x) = f(x a) and (f <- b)(x) = f(b x).
Functional hit_left(const Presentation& p, const Element& a, const Functional& f);
Functional hit_right(const Presentation& p, const Functional& f, const Element& b);

/// Total degree |v|.
int degree(const ExpVec& v);

ExpVec add(const ExpVec& u, const ExpVec& v);
ExpVec sub(const ExpVec& u, const ExpVec& v);

}  // namespace qci

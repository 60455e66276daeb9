#pragma once

// Exhaustive exact verification of bi-Frobenius axioms and the identities
// that follow from them, on a concrete structure.

#include <optional>
#include <string>
#include <vector>

#include "qci/builder.hpp"

namespace qci {

struct Counterexample {
  std::vector<ExpVec> at;  // offending basis vector, or pair
  std::string expected;
  std::string actual;
};

struct CheckResult {
  std::string name;
  bool pass = true;
  std::optional<Counterexample> counterexample;
};

struct VerificationReport {
  std::vector<CheckResult> checks;

  bool overall() const;
  const CheckResult* find(const std::string& name) const;
  void append(const VerificationReport& other);
};

/// Checks, in this order: coassociativity, counit, counit-multiplicative,
/// unit-grouplike, frobenius-algebra, frobenius-coalgebra, antipode-unit,
/// antipode-anti-multiplicative, antipode-counit,
/// antipode-anti-comultiplicative, antipode-definition.
VerificationReport verify_axioms(const BfaStructure& b);

/// Checks, in this order: epsilon-from-phi, phi-of-t, right-integral,
/// left-integral, right-integral-space-dim, unit-from-t, modular-function,
/// modular-element-grouplike, modular-element-trivial (characteristic 0
/// only), antipode-modular-element, nakayama-formula, s4-formula,
/// antipode-graded, antipode-square-nakayama, antipode-fourth-identity,
/// antipode-fixes-t, antipode-permutation, nakayama-involution, witness.
VerificationReport verify_derived(const BfaStructure& b);

/// True iff Delta(x_u x_v) = Delta(x_u) Delta(x_v) for all basis pairs.
bool is_hopf_comultiplication(const BfaStructure& b);

/// dim { x : Delta(x) = 1 (x) x + x (x) 1 }.
std::size_t primitive_space_dim(const Coalgebra& c);

// Coalgebra helpers shared with the tests.

Tensor delta_of(const Coalgebra& c, const Element& x);
Scalar epsilon_of(const Coalgebra& c, const Element& x);
/// Componentwise product in A (x) A.
Tensor tensor_mul(const Presentation& p, const Tensor& x, const Tensor& y);
/// (f * g)(x) = sum f(x_1) g(x_2).
Functional convolve(const Coalgebra& c, const Functional& f, const Functional& g);
/// f -> x = sum x_1 f(x_2) and x <- f = sum f(x_1) x_2.
Element hit_left_co(const Coalgebra& c, const Functional& f, const Element& x);
Element hit_right_co(const Coalgebra& c, const Element& x, const Functional& f);
/// Inverse of a unit of the local algebra A; nullopt when x has no constant term.
std::optional<Element> invert_element(const Presentation& p, const Element& x);
/// Convolution inverse; nullopt when f is not invertible.
std::optional<Functional> invert_functional(const Coalgebra& c, const Functional& f);

}  // namespace qci

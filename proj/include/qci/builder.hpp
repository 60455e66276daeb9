#pragma once

// Existence decision and explicit construction of bi-Frobenius structures
// with permutation antipode on A(q,a).

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qci/algebra.hpp"
#include "qci/permutation.hpp"

namespace qci {

/// Which explicit witness formula applies.
enum class Regime {
  Symmetric,               // all h_{e_i} = 1
  CharTwo,                 // characteristic 2
  ImaginaryEvenFixed,      // sqrt(-1) in K, some fixed i with h = 1 and a_i even
  ImaginaryNegativeFixed,  // sqrt(-1) in K, some fixed i with h = -1 and a_i even
  ImaginaryPairsOnly,      // sqrt(-1) in K, neither of the above, |J_3|/2 even
  RealEvenFixed,           // no sqrt(-1) needed, some fixed i with h = 1 and a_i even
  RealPairsOnly,           // no sqrt(-1) needed, fixed points all h = 1 with a_i odd
};

std::string_view to_string(Regime regime);
std::optional<Regime> regime_from_string(std::string_view name);

/// pi together with c_1..c_n, where S(x_i) = c_i x_{pi(i)}.
struct Witness {
  Permutation pi;
  std::vector<Scalar> c;

  friend bool operator==(const Witness&, const Witness&) = default;
};

/// Both witness conditions: c_i c_{pi(i)} = h_{e_i} and q_pi prod c_i^{a_i-1} = 1.
bool witness_holds(const Presentation& p, const Permutation& pi, const std::vector<Scalar>& c);

/// Uniform search: J-pairs normalized to c_i = 1, c_{pi(i)} = h_{e_i} for
/// i < pi(i); fixed points take +-rho_i with rho_i^2 = h_{e_i}, signs tried in
/// lexicographic order (+ first, lowest index most significant). Throws
/// NotCompatible / NotInvolution.
std::optional<std::vector<Scalar>> solve_c(const Presentation& p, const Permutation& pi);

/// The explicit formula of the given regime; throws RegimeHypothesisFailed
/// when the regime's hypotheses do not hold.
std::vector<Scalar> closed_form_c(const Presentation& p, const Permutation& pi, Regime regime);

/// Keyed by v: the coefficient g_{a-1-v, pi(v)} of x_{a-1-v} (x) x_{pi(v)} in
/// Delta(x_{a-1}).
using GTable = std::map<ExpVec, Scalar>;

/// Throws WitnessInvalid, or InternalCrossCheckFailed if the two closed forms
/// of the table disagree.
GTable g_table(const Presentation& p, const Permutation& pi, const std::vector<Scalar>& c);

/// The second closed form, evaluating the entry g_{a-1-pi(v), v} (stored in
/// the table under pi(v)).
Scalar g_alternative(const Presentation& p, const Permutation& pi, const std::vector<Scalar>& c, const ExpVec& v);

/// Coefficient of x_{pi(v)} in S(x_v).
Scalar antipode_coefficient(const Presentation& p, const Permutation& pi, const std::vector<Scalar>& c,
                            const ExpVec& v);

struct Coalgebra {
  Presentation presentation;
  std::map<ExpVec, Tensor> delta;  // one entry per basis vector
  Functional epsilon;

  friend bool operator==(const Coalgebra&, const Coalgebra&) = default;
};

/// Coefficients g_{u,v} for u, v outside {0, a-1} in Delta(x_{a-1}).
using GeneralG = std::map<std::pair<ExpVec, ExpVec>, Scalar>;

/// Delta(1) = 1(x)1, middle monomials primitive, Delta(x_{a-1}) primitive plus
/// sum g_{u,v} x_u (x) x_v. Throws InvalidInput for keys outside the allowed range.
Coalgebra build_general_coalgebra(const Presentation& p, const GeneralG& g);

struct BfaStructure {
  Presentation presentation;
  Witness witness;
  GTable g;
  Functional phi;  // x_{a-1}^*
  Element t;       // x_{a-1}
  Coalgebra coalgebra;
  std::map<ExpVec, std::pair<ExpVec, Scalar>> s_map;  // S(x_v) = coeff * x_image

  friend bool operator==(const BfaStructure&, const BfaStructure&) = default;
};

/// Throws WitnessInvalid.
BfaStructure build_structure(const Presentation& p, const Permutation& pi, const std::vector<Scalar>& c);

/// Negates g at v both in the table and in Delta(x_{a-1}), leaving S alone.
void negate_g_entry(BfaStructure& b, const ExpVec& v);

/// Element S(x) from the stored monomial table.
Element apply_s(const BfaStructure& b, const Element& x);

struct CandidateEvaluation {
  Permutation pi;
  std::optional<PartitionReport> partition;  // absent when some h_{e_i}^2 != 1
  bool predicate = false;                    // the intrinsic criterion for this pi
  std::optional<Regime> regime;              // formula used when predicate holds
  std::optional<std::vector<Scalar>> solved_c;
};

struct DecisionReport {
  bool yes = false;
  std::string reason;  // first failed necessary condition when !yes
  std::optional<Witness> witness;
  std::optional<Regime> regime;
  std::vector<Scalar> h;
  bool nakayama_order_two = false;  // all h_{e_i}^2 = 1
  std::string criterion;            // which family of criteria was applied
  std::vector<CandidateEvaluation> candidates;
  bool cross_check_agrees = true;
};

/// Intrinsic criterion for a single compatible involution with all h^2 = 1;
/// sets regime when true.
bool intrinsic_predicate(const Presentation& p, const PartitionReport& part, std::optional<Regime>& regime);

/// Throws CrossCheckDisagreement if the intrinsic criterion and solve_c disagree.
DecisionReport decide(const Presentation& p, int max_generators = kDefaultMaxGenerators);

}  // namespace qci

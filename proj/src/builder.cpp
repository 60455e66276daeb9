#include "qci/builder.hpp"

#include <algorithm>

#include "qci/error.hpp"

namespace qci {

std::string_view to_string(Regime regime) {
  switch (regime) {
    case Regime::Symmetric: return "symmetric";
    case Regime::CharTwo: return "char-two";
    case Regime::ImaginaryEvenFixed: return "imaginary-even-fixed";
    case Regime::ImaginaryNegativeFixed: return "imaginary-negative-fixed";
    case Regime::ImaginaryPairsOnly: return "imaginary-pairs-only";
    case Regime::RealEvenFixed: return "real-even-fixed";
    case Regime::RealPairsOnly: return "real-pairs-only";
  }
  return "?";
}

std::optional<Regime> regime_from_string(std::string_view name) {
  for (Regime r : {Regime::Symmetric, Regime::CharTwo, Regime::ImaginaryEvenFixed, Regime::ImaginaryNegativeFixed,
                   Regime::ImaginaryPairsOnly, Regime::RealEvenFixed, Regime::RealPairsOnly})
    if (to_string(r) == name) return r;
  return std::nullopt;
}

namespace {

void require_involution(const Presentation& p, const Permutation& pi) {
  if (!is_compatible(p, pi)) throw Error(ErrorCode::NotCompatible, pi.to_string() + " is not compatible");
  if (!pi.is_involution()) throw Error(ErrorCode::NotInvolution, pi.to_string() + " is not an involution");
}

bool squares_to_one(const std::vector<Scalar>& h) {
  return std::all_of(h.begin(), h.end(), [](const Scalar& x) { return (x * x).is_one(); });
}

Scalar product_condition(const Presentation& p, const Permutation& pi, const std::vector<Scalar>& c) {
  Scalar acc = q_pi(p, pi);
  for (int i = 0; i < p.n(); ++i) acc *= c[static_cast<std::size_t>(i)].pow(p.a()[static_cast<std::size_t>(i)] - 1);
  return acc;
}

// bracket(pi(e_k), pi(e_j)) for j < k, indexed [j][k].
std::vector<std::vector<Scalar>> twisted_brackets(const Presentation& p, const Permutation& pi) {
  const int n = p.n();
  std::vector<std::vector<Scalar>> b(static_cast<std::size_t>(n), std::vector<Scalar>(static_cast<std::size_t>(n), p.field().one()));
  for (int j = 0; j < n; ++j)
    for (int k = j + 1; k < n; ++k)
      b[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)] = bracket(p, p.unit(pi(k)), p.unit(pi(j)));
  return b;
}

// prod_i c_{sigma(i)}^{v_i} * prod_{j<k} B_jk^{sign * v_j v_k}.
Scalar monomial_factor(const Presentation& p, const Permutation& sigma, const std::vector<Scalar>& c,
                       const std::vector<std::vector<Scalar>>& b, const ExpVec& v, int sign) {
  Scalar acc = p.field().one();
  const int n = p.n();
  for (int i = 0; i < n; ++i) {
    const int vi = v[static_cast<std::size_t>(i)];
    if (vi) acc *= c[static_cast<std::size_t>(sigma(i))].pow(vi);
  }
  for (int j = 0; j < n; ++j)
    for (int k = j + 1; k < n; ++k) {
      const long long e = static_cast<long long>(v[static_cast<std::size_t>(j)]) * v[static_cast<std::size_t>(k)];
      if (e) acc *= b[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)].pow(sign * e);
    }
  return acc;
}

void require_witness(const Presentation& p, const Permutation& pi, const std::vector<Scalar>& c) {
  require_involution(p, pi);
  if (c.size() != static_cast<std::size_t>(p.n())) throw Error(ErrorCode::WitnessInvalid, "need one c_i per generator");
  for (const Scalar& ci : c) {
    if (!(ci.field() == p.field())) throw Error(ErrorCode::FieldMismatch, "c_i must lie in " + p.field().to_string());
    if (ci.is_zero()) throw Error(ErrorCode::WitnessInvalid, "c_i must be nonzero");
  }
  if (!witness_holds(p, pi, c))
    throw Error(ErrorCode::WitnessInvalid, "c violates c_i c_pi(i) = h_ei or q_pi prod c_i^(a_i-1) = 1");
}

}  // namespace

bool witness_holds(const Presentation& p, const Permutation& pi, const std::vector<Scalar>& c) {
  if (c.size() != static_cast<std::size_t>(p.n())) return false;
  const auto h = h_units(p);
  for (int i = 0; i < p.n(); ++i)
    if (!(c[static_cast<std::size_t>(i)] * c[static_cast<std::size_t>(pi(i))] == h[static_cast<std::size_t>(i)]))
      return false;
  return product_condition(p, pi, c).is_one();
}

std::optional<std::vector<Scalar>> solve_c(const Presentation& p, const Permutation& pi) {
  require_involution(p, pi);
  const auto h = h_units(p);
  if (!squares_to_one(h)) return std::nullopt;
  const Field& f = p.field();
  const auto root = f.sqrt_minus_one();

  std::vector<Scalar> c(static_cast<std::size_t>(p.n()), f.one());
  std::vector<int> fixed;
  std::vector<Scalar> rho;
  for (int i = 0; i < p.n(); ++i) {
    const int j = pi(i);
    if (j == i) {
      fixed.push_back(i);
      if (h[static_cast<std::size_t>(i)].is_one()) {
        rho.push_back(f.one());
      } else {
        if (!root) return std::nullopt;
        rho.push_back(*root);
      }
    } else if (i < j) {
      c[static_cast<std::size_t>(i)] = f.one();
      c[static_cast<std::size_t>(j)] = h[static_cast<std::size_t>(i)];
    }
  }
  const std::size_t m = fixed.size();
  for (unsigned long long mask = 0; mask < (1ULL << m); ++mask) {
    for (std::size_t k = 0; k < m; ++k) {
      const bool negative = (mask >> (m - 1 - k)) & 1ULL;
      c[static_cast<std::size_t>(fixed[k])] = negative ? -rho[k] : rho[k];
    }
    if (witness_holds(p, pi, c)) return c;
  }
  return std::nullopt;
}

std::vector<Scalar> closed_form_c(const Presentation& p, const Permutation& pi, Regime regime) {
  require_involution(p, pi);
  const Field& f = p.field();
  const int n = p.n();
  const auto h = h_units(p);
  auto fail = [&](const std::string& why) {
    throw Error(ErrorCode::RegimeHypothesisFailed, std::string(to_string(regime)) + ": " + why);
  };
  std::vector<Scalar> c(static_cast<std::size_t>(n), f.one());
  auto fill_pairs = [&] {
    for (int i = 0; i < n; ++i)
      if (pi(i) != i && i > pi(i)) c[static_cast<std::size_t>(i)] = h[static_cast<std::size_t>(i)];
  };
  // c_{i0} = sign * q_pi * prod_{i != i0} c_i^{a_i-1}
  auto close_at = [&](int i0, const Scalar& sign) {
    Scalar acc = sign * q_pi(p, pi);
    for (int i = 0; i < n; ++i)
      if (i != i0) acc *= c[static_cast<std::size_t>(i)].pow(p.a()[static_cast<std::size_t>(i)] - 1);
    c[static_cast<std::size_t>(i0)] = acc;
  };

  switch (regime) {
    case Regime::Symmetric: {
      if (!is_symmetric(p)) fail("the algebra is not symmetric");
      for (int i = 0; i < n; ++i) {
        if (pi(i) != i) continue;
        Scalar acc = f.one();
        for (int j = i; j < n; ++j)
          if (pi(j) == j) acc *= p.q(i, j).pow(p.a()[static_cast<std::size_t>(j)] - 1);
        c[static_cast<std::size_t>(i)] = acc;
      }
      break;
    }
    case Regime::CharTwo: {
      if (f.characteristic() != 2) fail("the characteristic is not 2");
      if (!squares_to_one(h)) fail("some h_ei^2 != 1");
      break;
    }
    default: {
      if (f.characteristic() == 2) fail("the characteristic is 2");
      if (!squares_to_one(h)) fail("some h_ei^2 != 1");
      const PartitionReport part = partition(p, pi);
      const auto& i1 = part.fixed_split[0];
      const auto& i3 = part.fixed_split[2];
      const auto& i4 = part.fixed_split[3];
      const std::size_t j3 = part.moved_split[2].size();
      const bool imaginary = regime == Regime::ImaginaryEvenFixed || regime == Regime::ImaginaryNegativeFixed ||
                             regime == Regime::ImaginaryPairsOnly;
      const auto root = f.sqrt_minus_one();
      if (imaginary && !root) fail("sqrt(-1) is not in the field");
      fill_pairs();
      if (imaginary) {
        for (int i : i3) c[static_cast<std::size_t>(i)] = *root;
        for (int i : i4) c[static_cast<std::size_t>(i)] = *root;
      } else if (!i3.empty() || !i4.empty()) {
        fail("some fixed point has h = -1");
      }
      if (regime == Regime::ImaginaryEvenFixed || regime == Regime::RealEvenFixed) {
        if (i1.empty()) fail("no fixed point with h = 1 and a_i even");
        close_at(i1.front(), f.one());
      } else if (regime == Regime::ImaginaryNegativeFixed) {
        if (i3.empty()) fail("no fixed point with h = -1 and a_i even");
        const int i0 = i3.front();
        const int half = p.a()[static_cast<std::size_t>(i0)] / 2;
        close_at(i0, half % 2 == 0 ? f.one() : -f.one());
      } else {
        if (!i1.empty() || !i3.empty()) fail("a fixed point with a_i even exists");
        if ((j3 / 2) % 2 != 0) fail("|J_3|/2 is odd");
      }
      break;
    }
  }
  if (!witness_holds(p, pi, c))
    throw Error(ErrorCode::InternalCrossCheckFailed,
                std::string(to_string(regime)) + " formula produced an invalid witness for " + pi.to_string());
  return c;
}

Scalar antipode_coefficient(const Presentation& p, const Permutation& pi, const std::vector<Scalar>& c,
                            const ExpVec& v) {
  return monomial_factor(p, Permutation::identity(p.n()), c, twisted_brackets(p, pi), v, 1);
}

Scalar g_alternative(const Presentation& p, const Permutation& pi, const std::vector<Scalar>& c, const ExpVec& v) {
  const ExpVec pv = act(pi, v);
  const ExpVec rest = sub(p.top(), pv);
  return monomial_factor(p, pi, c, twisted_brackets(p, pi), v, -1) / bracket(p, rest, pv);
}

GTable g_table(const Presentation& p, const Permutation& pi, const std::vector<Scalar>& c) {
  require_witness(p, pi, c);
  const auto b = twisted_brackets(p, pi);
  const Permutation id = Permutation::identity(p.n());
  GTable table;
  for (const ExpVec& v : p.basis()) {
    const ExpVec rest = sub(p.top(), v);
    table.emplace(v, monomial_factor(p, id, c, b, v, 1) / bracket(p, rest, v));
  }
  for (const ExpVec& v : p.basis()) {
    const ExpVec pv = act(pi, v);
    const ExpVec rest = sub(p.top(), pv);
    const Scalar alt = monomial_factor(p, pi, c, b, v, -1) / bracket(p, rest, pv);
    if (!(table.at(pv) == alt))
      throw Error(ErrorCode::InternalCrossCheckFailed, "g-table closed forms disagree");
  }
  return table;
}

Coalgebra build_general_coalgebra(const Presentation& p, const GeneralG& g) {
  const Field& f = p.field();
  const ExpVec zero = p.zero_vec();
  const ExpVec top = p.top();
  Coalgebra co;
  co.presentation = p;
  co.epsilon = Functional::single(f, zero, f.one());
  for (const ExpVec& v : p.basis()) {
    Tensor d(f);
    if (v == zero) {
      d.add({zero, zero}, f.one());
    } else {
      d.add({zero, v}, f.one());
      d.add({v, zero}, f.one());
    }
    co.delta.emplace(v, std::move(d));
  }
  auto& top_delta = co.delta.at(top);
  for (const auto& [key, coeff] : g) {
    const auto& [u, v] = key;
    if (!p.in_range(u) || !p.in_range(v) || u == zero || u == top || v == zero || v == top)
      throw Error(ErrorCode::InvalidInput, "g keys must lie outside {0, a-1}");
    top_delta.add(key, coeff);
  }
  return co;
}

BfaStructure build_structure(const Presentation& p, const Permutation& pi, const std::vector<Scalar>& c) {
  BfaStructure b;
  b.presentation = p;
  b.witness = {pi, c};
  b.g = g_table(p, pi, c);
  const Field& f = p.field();
  const ExpVec top = p.top();
  b.phi = Functional::single(f, top, f.one());
  b.t = p.monomial(top);

  GeneralG middle;
  for (const auto& [v, coeff] : b.g) {
    const ExpVec left = sub(top, v);
    const ExpVec right = act(pi, v);
    if (v == p.zero_vec() || v == top) continue;
    middle.emplace(std::make_pair(left, right), coeff);
  }
  b.coalgebra = build_general_coalgebra(p, middle);
  // The v = 0 and v = a-1 terms are the primitive parts 1 (x) t and t (x) 1,
  // whose g-coefficients are 1 for a valid witness.
  if (!b.g.at(p.zero_vec()).is_one() || !b.g.at(top).is_one())
    throw Error(ErrorCode::InternalCrossCheckFailed, "boundary g coefficients are not 1");

  const auto brackets = twisted_brackets(p, pi);
  const Permutation id = Permutation::identity(p.n());
  for (const ExpVec& v : p.basis())
    b.s_map.emplace(v, std::make_pair(act(pi, v), monomial_factor(p, id, c, brackets, v, 1)));
  return b;
}

void negate_g_entry(BfaStructure& b, const ExpVec& v) {
  const Presentation& p = b.presentation;
  auto it = b.g.find(v);
  if (it == b.g.end()) throw Error(ErrorCode::InvalidInput, "no g entry at this exponent");
  const Scalar old = it->second;
  it->second = -old;
  auto& top_delta = b.coalgebra.delta.at(p.top());
  const std::pair<ExpVec, ExpVec> key{sub(p.top(), v), act(b.witness.pi, v)};
  top_delta.add(key, -old - old);
}

Element apply_s(const BfaStructure& b, const Element& x) {
  Element out(b.presentation.field());
  for (const auto& [v, c] : x.terms()) {
    const auto& [image, coeff] = b.s_map.at(v);
    out.add(image, c * coeff);
  }
  return out;
}

bool intrinsic_predicate(const Presentation& p, const PartitionReport& part, std::optional<Regime>& regime) {
  regime.reset();
  const Field& f = p.field();
  if (part.char_two || f.characteristic() == 2) {
    regime = Regime::CharTwo;
    return true;
  }
  if (is_symmetric(p)) {
    regime = Regime::Symmetric;
    return true;
  }
  const std::size_t i1 = part.fixed_split[0].size();
  const std::size_t i3 = part.fixed_split[2].size();
  const std::size_t i4 = part.fixed_split[3].size();
  const bool j3_half_even = (part.moved_split[2].size() / 2) % 2 == 0;
  if (f.sqrt_minus_one()) {
    if (i1 != 0) regime = Regime::ImaginaryEvenFixed;
    else if (i3 != 0) regime = Regime::ImaginaryNegativeFixed;
    else if (j3_half_even) regime = Regime::ImaginaryPairsOnly;
    return regime.has_value();
  }
  if (i3 + i4 != 0) return false;
  if (i1 != 0) regime = Regime::RealEvenFixed;
  else if (j3_half_even) regime = Regime::RealPairsOnly;
  return regime.has_value();
}

DecisionReport decide(const Presentation& p, int max_generators) {
  DecisionReport report;
  const Field& f = p.field();
  report.h = h_units(p);
  report.nakayama_order_two = squares_to_one(report.h);
  if (f.characteristic() == 2) report.criterion = "char-two";
  else if (is_symmetric(p)) report.criterion = "symmetric";
  else if (f.sqrt_minus_one()) report.criterion = "sqrt(-1) in field";
  else report.criterion = "sqrt(-1) not in field";

  for (const Permutation& pi : enumerate_compatible_involutions(p, max_generators)) {
    CandidateEvaluation cand;
    cand.pi = pi;
    if (report.nakayama_order_two) {
      cand.partition = partition(p, pi);
      cand.predicate = intrinsic_predicate(p, *cand.partition, cand.regime);
    }
    cand.solved_c = solve_c(p, pi);
    if (cand.predicate != cand.solved_c.has_value()) report.cross_check_agrees = false;
    report.candidates.push_back(std::move(cand));
  }
  if (!report.cross_check_agrees)
    throw Error(ErrorCode::CrossCheckDisagreement, "intrinsic criterion and witness search disagree");

  if (!report.nakayama_order_two) {
    for (std::size_t i = 0; i < report.h.size(); ++i) {
      if (!(report.h[i] * report.h[i]).is_one()) {
        report.reason = "Nakayama order: h_e" + std::to_string(i + 1) + " = " + report.h[i].to_string() +
                        " does not square to 1";
        break;
      }
    }
    return report;
  }
  if (report.candidates.empty()) {
    report.reason = "no compatible involution";
    return report;
  }
  for (const auto& cand : report.candidates) {
    if (!cand.predicate) continue;
    report.yes = true;
    report.regime = cand.regime;
    report.witness = Witness{cand.pi, closed_form_c(p, cand.pi, *cand.regime)};
    return report;
  }
  report.reason = "no compatible involution satisfies the " + report.criterion + " criterion";
  return report;
}

}  // namespace qci

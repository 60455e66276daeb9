#include "doctest.h"
#include "qci/error.hpp"
#include "qci/reference_examples.hpp"
#include "qci/verifier.hpp"
#include "support.hpp"

using namespace qci;
using qci::testing::Rng;

namespace {

const Field& c8() {
  static const Field f(FieldDescriptor::cyclotomic(8));
  return f;
}

const std::vector<std::string> kAxiomOrder{
    "coassociativity",        "counit",          "counit-multiplicative",        "unit-grouplike",
    "frobenius-algebra",      "frobenius-coalgebra", "antipode-unit",            "antipode-anti-multiplicative",
    "antipode-counit",        "antipode-anti-comultiplicative", "antipode-definition"};

std::vector<std::string> names(const VerificationReport& r) {
  std::vector<std::string> out;
  for (const CheckResult& c : r.checks) out.push_back(c.name);
  return out;
}

std::string failures(const VerificationReport& r) {
  std::string out;
  for (const CheckResult& c : r.checks)
    if (!c.pass) out += c.name + " ";
  return out;
}

// sum phi(t_1 x_v) t_2 with phi = x_{a-1}^*, straight from Delta(t).
Element antipode_oracle(const BfaStructure& b, const ExpVec& v) {
  const Presentation& p = b.presentation;
  Element out(p.field());
  for (const auto& [key, coeff] : b.coalgebra.delta.at(p.top()).terms()) {
    const Element prod = testing::word_product(p, key.first, v);
    out.add(key.second, coeff * prod.coeff(p.top()));
  }
  return out;
}

std::vector<BfaStructure> reference_structures() {
  std::vector<BfaStructure> out;
  out.push_back(reference_structure(ReferenceExample::Symmetric, c8().zeta()));
  out.push_back(reference_structure(ReferenceExample::Twisted, c8().zeta()));
  out.push_back(reference_structure(ReferenceExample::Symmetric, Field().from_int(2)));
  out.push_back(reference_structure(ReferenceExample::Symmetric, Field(FieldDescriptor::prime(7)).from_int(2)));
  out.push_back(reference_structure(ReferenceExample::Twisted, Field(FieldDescriptor::prime(13)).from_int(3)));
  return out;
}

}  // namespace

TEST_CASE("worked examples pass every check") {
  for (const BfaStructure& b : reference_structures()) {
    CAPTURE(b.presentation.field().to_string());
    const VerificationReport axioms = verify_axioms(b);
    CHECK(names(axioms) == kAxiomOrder);
    CHECK(failures(axioms) == "");
    const VerificationReport derived = verify_derived(b);
    CHECK(failures(derived) == "");
    CHECK(derived.find("s4-formula") != nullptr);
    CHECK(derived.find("no-such-check") == nullptr);
    const bool char0 = b.presentation.field().characteristic() == 0;
    CHECK((derived.find("modular-element-trivial") != nullptr) == char0);
    for (const ExpVec& v : b.presentation.basis())
      CHECK(apply_s(b, b.presentation.monomial(v)) == antipode_oracle(b, v));
  }
}

TEST_CASE("antipode identities on the twisted example") {
  const BfaStructure b = reference_structure(ReferenceExample::Twisted, c8().zeta());
  const Presentation& p = b.presentation;
  const Element x2 = p.monomial({0, 1, 0});
  CHECK(apply_s(b, apply_s(b, x2)) == x2.scaled(-c8().one()));
  CHECK(apply_s(b, apply_s(b, x2)) == nakayama(p, x2));
  CHECK(apply_s(b, p.monomial(p.top())) == p.monomial(p.top()));
  const BfaStructure sym = reference_structure(ReferenceExample::Symmetric, c8().zeta());
  for (const ExpVec& v : sym.presentation.basis()) {
    const Element x = sym.presentation.monomial(v);
    CHECK(apply_s(sym, apply_s(sym, apply_s(sym, apply_s(sym, x)))) == x);
  }
}

TEST_CASE("negating one g entry breaks the antipode definition exactly there") {
  for (const BfaStructure& b : reference_structures()) {
    const Presentation& p = b.presentation;
    for (const ExpVec& v : p.basis()) {
      if (v == p.zero_vec() || v == p.top()) continue;
      BfaStructure broken = b;
      negate_g_entry(broken, v);
      const VerificationReport r = verify_axioms(broken);
      const CheckResult* def = r.find("antipode-definition");
      REQUIRE(def != nullptr);
      CHECK_FALSE(def->pass);
      REQUIRE(def->counterexample.has_value());
      CHECK(def->counterexample->at == std::vector<ExpVec>{v});
      CHECK(r.find("coassociativity")->pass);
    }
  }
}

TEST_CASE("other perturbations are detected") {
  const BfaStructure b = reference_structure(ReferenceExample::Twisted, c8().zeta());
  const Presentation& p = b.presentation;

  BfaStructure scaled = b;
  scaled.s_map.at({1, 0, 0}).second *= c8().from_int(2);
  VerificationReport r = verify_axioms(scaled);
  CHECK_FALSE(r.overall());
  CHECK_FALSE(r.find("antipode-definition")->pass);
  CHECK(r.find("antipode-definition")->counterexample->at == std::vector<ExpVec>{{1, 0, 0}});

  BfaStructure extra = b;
  extra.coalgebra.delta.at({1, 0, 0}).add({{1, 0, 0}, {1, 0, 0}}, c8().one());
  r = verify_axioms(extra);
  CHECK_FALSE(r.find("coassociativity")->pass);

  BfaStructure bad_counit = b;
  bad_counit.coalgebra.epsilon.add({0, 1, 0}, c8().one());
  r = verify_axioms(bad_counit);
  CHECK_FALSE(r.find("counit")->pass);

  BfaStructure bad_phi = b;
  bad_phi.phi = Functional::single(p.field(), p.zero_vec(), p.field().one());
  r = verify_axioms(bad_phi);
  CHECK_FALSE(r.find("frobenius-algebra")->pass);
  // Derived checks still run and report failures of their own.
  CHECK_FALSE(verify_derived(bad_phi).overall());
}

TEST_CASE("random structures pass every check") {
  Rng rng(61);
  static const std::vector<Field> fields{Field(FieldDescriptor::prime(13)), Field(FieldDescriptor::cyclotomic(8)),
                                         Field(), Field(FieldDescriptor::prime(3)), Field(FieldDescriptor::prime(2)),
                                         Field(FieldDescriptor::cyclotomic(12))};
  int built = 0;
  while (built < 150) {
    const Field& f = fields[static_cast<std::size_t>(built % 6)];
    const Permutation pi = testing::random_involution(rng, testing::uniform(rng, 2, 3));
    const Presentation p =
        validate_presentation(testing::random_compatible_raw(rng, f, pi, 3, testing::uniform(rng, 0, 1) == 0));
    const auto c = solve_c(p, pi);
    if (!c) continue;
    ++built;
    const BfaStructure b = build_structure(p, pi, *c);
    CAPTURE(f.to_string());
    CAPTURE(p.a());
    REQUIRE(failures(verify_axioms(b)) == "");
    REQUIRE(failures(verify_derived(b)) == "");
    REQUIRE(primitive_space_dim(b.coalgebra) == p.dim() - 2);
  }
}

TEST_CASE("examples are not Hopf algebras") {
  CHECK_FALSE(is_hopf_comultiplication(reference_structure(ReferenceExample::Symmetric, c8().zeta())));
  CHECK_FALSE(is_hopf_comultiplication(reference_structure(ReferenceExample::Twisted, c8().zeta())));
  CHECK_FALSE(is_hopf_comultiplication(reference_structure(ReferenceExample::Symmetric, Field().from_int(2))));

  const Field gf2(FieldDescriptor::prime(2));
  const Presentation p = validate_presentation({gf2, {2, 2}, {{gf2.one(), gf2.one()}, {gf2.one(), gf2.one()}}});
  const BfaStructure b = build_structure(p, Permutation::identity(2), closed_form_c(p, Permutation::identity(2), Regime::CharTwo));
  CHECK_NOTHROW((void)is_hopf_comultiplication(b));
}

TEST_CASE("primitive space dimensions") {
  const Field gf5(FieldDescriptor::prime(5));
  const Presentation p = validate_presentation({gf5, {2, 2}, {{gf5.one(), gf5.from_int(2)}, {gf5.from_int(3), gf5.one()}}});
  CHECK(primitive_space_dim(build_general_coalgebra(p, {})) == 3);
  Rng rng(62);
  const std::vector<ExpVec> middle{{0, 1}, {1, 0}};
  for (int trial = 0; trial < 50; ++trial) {
    GeneralG g;
    for (const ExpVec& u : middle)
      for (const ExpVec& v : middle) g[{u, v}] = gf5.from_int(testing::uniform(rng, 0, 4));
    const std::size_t d = primitive_space_dim(build_general_coalgebra(p, g));
    CHECK(d >= 2);
    CHECK(d == (g.empty() || std::all_of(g.begin(), g.end(), [](const auto& e) { return e.second.is_zero(); }) ? 3u : 2u));
  }
  CHECK(primitive_space_dim(reference_structure(ReferenceExample::Symmetric, c8().zeta()).coalgebra) == 6);
}

TEST_CASE("coalgebra helpers") {
  const BfaStructure b = reference_structure(ReferenceExample::Twisted, c8().zeta());
  const Presentation& p = b.presentation;
  const Element z = p.one() + p.monomial({1, 0, 0});
  CHECK(invert_element(p, z) == p.one() - p.monomial({1, 0, 0}));
  CHECK_FALSE(invert_element(p, p.monomial({1, 0, 0})).has_value());
  const Element w = p.monomial(p.zero_vec(), c8().from_int(3)) + p.monomial({0, 1, 1}) + p.monomial({1, 1, 0}, c8().zeta());
  CHECK(mul(p, w, *invert_element(p, w)) == p.one());

  const Functional& eps = b.coalgebra.epsilon;
  CHECK(convolve(b.coalgebra, eps, b.phi) == b.phi);
  CHECK(invert_functional(b.coalgebra, eps) == eps);
  CHECK_FALSE(invert_functional(b.coalgebra, b.phi).has_value());
  // phi -> t = sum t_1 phi(t_2) is the unit, and so is t <- phi.
  CHECK(hit_left_co(b.coalgebra, b.phi, b.t) == p.one());
  CHECK(hit_right_co(b.coalgebra, b.t, b.phi) == p.one());
  CHECK(epsilon_of(b.coalgebra, z) == c8().one());
  CHECK(delta_of(b.coalgebra, p.monomial({1, 0, 0})) ==
        Tensor::single(c8(), {p.zero_vec(), {1, 0, 0}}, c8().one()) +
            Tensor::single(c8(), {{1, 0, 0}, p.zero_vec()}, c8().one()));
}

TEST_CASE("report bookkeeping") {
  VerificationReport r;
  CHECK(r.overall());
  VerificationReport other;
  other.checks.push_back({"x", false, Counterexample{{{0, 1}}, "1", "2"}});
  r.append(other);
  CHECK_FALSE(r.overall());
  REQUIRE(r.find("x") != nullptr);
  CHECK(r.find("x")->counterexample->expected == "1");
}

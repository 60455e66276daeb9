#include "qci/verifier.hpp"

#include <algorithm>

#include "qci/error.hpp"
#include "qci/format.hpp"

namespace qci {

bool VerificationReport::overall() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

const CheckResult* VerificationReport::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

void VerificationReport::append(const VerificationReport& other) {
  checks.insert(checks.end(), other.checks.begin(), other.checks.end());
}

Tensor delta_of(const Coalgebra& c, const Element& x) {
  Tensor out(x.field());
  for (const auto& [v, coeff] : x.terms()) out += c.delta.at(v).scaled(coeff);
  return out;
}

Scalar epsilon_of(const Coalgebra& c, const Element& x) { return apply_functional(c.epsilon, x); }

Tensor tensor_mul(const Presentation& p, const Tensor& x, const Tensor& y) {
  Tensor out(p.field());
  for (const auto& [kx, cx] : x.terms()) {
    for (const auto& [ky, cy] : y.terms()) {
      auto left = mul_basis(p, kx.first, ky.first);
      if (!left) continue;
      auto right = mul_basis(p, kx.second, ky.second);
      if (!right) continue;
      out.add({left->first, right->first}, cx * cy * left->second * right->second);
    }
  }
  return out;
}

Functional convolve(const Coalgebra& c, const Functional& f, const Functional& g) {
  const Presentation& p = c.presentation;
  Functional out(p.field());
  for (const ExpVec& w : p.basis()) {
    Scalar value = p.field().zero();
    for (const auto& [key, coeff] : c.delta.at(w).terms())
      value += coeff * f.coeff(key.first) * g.coeff(key.second);
    out.add(w, value);
  }
  return out;
}

Element hit_left_co(const Coalgebra& c, const Functional& f, const Element& x) {
  Element out(x.field());
  const Tensor d = delta_of(c, x);
  for (const auto& [key, coeff] : d.terms()) out.add(key.first, coeff * f.coeff(key.second));
  return out;
}

Element hit_right_co(const Coalgebra& c, const Element& x, const Functional& f) {
  Element out(x.field());
  const Tensor d = delta_of(c, x);
  for (const auto& [key, coeff] : d.terms()) out.add(key.second, coeff * f.coeff(key.first));
  return out;
}

std::optional<Element> invert_element(const Presentation& p, const Element& x) {
  const ExpVec zero = p.zero_vec();
  const Scalar c0 = x.coeff(zero);
  if (c0.is_zero()) return std::nullopt;
  // x = c0 (1 + n) with n nilpotent, so x^-1 = c0^-1 sum (-n)^k.
  const Scalar inv0 = c0.inverse();
  Element neg_n = x.scaled(-inv0);
  neg_n.add(zero, p.field().one());
  Element term = p.one();
  Element sum = p.one();
  while (true) {
    term = mul(p, term, neg_n);
    if (term.empty()) break;
    sum += term;
  }
  return sum.scaled(inv0);
}

std::optional<Functional> invert_functional(const Coalgebra& c, const Functional& f) {
  // Solve g * f = epsilon for g: sum_u M[w][u] g_u = epsilon(x_w) with
  // M[w][u] = sum over Delta(x_w) terms x_u (x) x_r of coeff * f(x_r).
  const Presentation& p = c.presentation;
  std::vector<SparseRow> rows(p.dim());
  std::vector<SparseRow> rhs(p.dim());
  for (std::size_t w = 0; w < p.dim(); ++w) {
    const ExpVec& wv = p.basis()[w];
    for (const auto& [key, coeff] : c.delta.at(wv).terms()) {
      const Scalar value = coeff * f.coeff(key.second);
      if (value.is_zero()) continue;
      auto [it, inserted] = rows[w].emplace(p.index_of(key.first), value);
      if (!inserted) {
        it->second += value;
        if (it->second.is_zero()) rows[w].erase(it);
      }
    }
    const Scalar e = c.epsilon.coeff(wv);
    if (!e.is_zero()) rhs[w].emplace(0, e);
  }
  auto solution = sparse_solve(rows, rhs);
  if (!solution) return std::nullopt;
  Functional g(p.field());
  for (std::size_t u = 0; u < p.dim(); ++u) {
    auto it = (*solution)[u].find(0);
    if (it != (*solution)[u].end()) g.add(p.basis()[u], it->second);
  }
  return g;
}

namespace {

using Tensor3Key = std::array<ExpVec, 3>;

std::string format_tensor3(const Tensor3& t) {
  std::string out;
  for (const auto& [key, c] : t.terms()) {
    if (!out.empty()) out += " + ";
    out += "(" + c.to_string() + ")*" + monomial_name(key[0]) + "⊗" + monomial_name(key[1]) + "⊗" +
           monomial_name(key[2]);
  }
  return out.empty() ? "0" : out;
}

CheckResult pass(std::string name) { return {std::move(name), true, std::nullopt}; }

CheckResult fail(std::string name, std::vector<ExpVec> at, std::string expected, std::string actual) {
  return {std::move(name), false, Counterexample{std::move(at), std::move(expected), std::move(actual)}};
}

// Runs body on every basis vector and stops at the first counterexample.
template <class Body>
CheckResult for_each_basis(const Presentation& p, const std::string& name, Body body) {
  for (const ExpVec& v : p.basis()) {
    std::optional<std::pair<std::string, std::string>> bad = body(v);
    if (bad) return fail(name, {v}, bad->first, bad->second);
  }
  return pass(name);
}

template <class Body>
CheckResult for_each_pair(const Presentation& p, const std::string& name, Body body) {
  for (const ExpVec& u : p.basis()) {
    for (const ExpVec& v : p.basis()) {
      std::optional<std::pair<std::string, std::string>> bad = body(u, v);
      if (bad) return fail(name, {u, v}, bad->first, bad->second);
    }
  }
  return pass(name);
}

using Mismatch = std::optional<std::pair<std::string, std::string>>;

Mismatch compare(const Element& expected, const Element& actual) {
  if (expected == actual) return std::nullopt;
  return std::make_pair(format_element(expected), format_element(actual));
}

Mismatch compare(const Tensor& expected, const Tensor& actual) {
  if (expected == actual) return std::nullopt;
  return std::make_pair(format_tensor(expected), format_tensor(actual));
}

Mismatch compare(const Scalar& expected, const Scalar& actual) {
  if (expected == actual) return std::nullopt;
  return std::make_pair(expected.to_string(), actual.to_string());
}

Element product_basis(const Presentation& p, const ExpVec& u, const ExpVec& v) {
  auto prod = mul_basis(p, u, v);
  if (!prod) return Element(p.field());
  return p.monomial(prod->first, prod->second);
}

Tensor swap_tensor(const Tensor& t) {
  Tensor out(t.field());
  for (const auto& [key, c] : t.terms()) out.add({key.second, key.first}, c);
  return out;
}

Tensor s_tensor(const BfaStructure& b, const Tensor& t) {
  Tensor out(t.field());
  for (const auto& [key, c] : t.terms()) {
    const auto& [li, lc] = b.s_map.at(key.first);
    const auto& [ri, rc] = b.s_map.at(key.second);
    out.add({li, ri}, c * lc * rc);
  }
  return out;
}

// sum phi(t_1 x_v) t_2.
Element antipode_from_definition(const BfaStructure& b, const Tensor& dt, const ExpVec& v) {
  const Presentation& p = b.presentation;
  Element out(p.field());
  for (const auto& [key, coeff] : dt.terms()) {
    const Scalar value = apply_functional(b.phi, product_basis(p, key.first, v));
    if (!value.is_zero()) out.add(key.second, coeff * value);
  }
  return out;
}

Element s_power(const BfaStructure& b, Element x, int k) {
  for (int i = 0; i < k; ++i) x = apply_s(b, x);
  return x;
}

// Rank of the rows of a family of elements in basis coordinates.
std::size_t element_rank(const Presentation& p, const std::vector<Element>& elements) {
  std::vector<SparseRow> rows;
  rows.reserve(elements.size());
  for (const Element& e : elements) {
    SparseRow row;
    for (const auto& [v, c] : e.terms()) row.emplace(p.index_of(v), c);
    rows.push_back(std::move(row));
  }
  return sparse_rank(std::move(rows));
}

}  // namespace

VerificationReport verify_axioms(const BfaStructure& b) {
  const Presentation& p = b.presentation;
  const Coalgebra& co = b.coalgebra;
  const Field& f = p.field();
  VerificationReport r;

  r.checks.push_back(for_each_basis(p, "coassociativity", [&](const ExpVec& v) -> Mismatch {
    const Tensor& d = co.delta.at(v);
    Tensor3 left(f);
    Tensor3 right(f);
    for (const auto& [key, c] : d.terms()) {
      for (const auto& [k2, c2] : co.delta.at(key.first).terms())
        left.add(Tensor3Key{k2.first, k2.second, key.second}, c * c2);
      for (const auto& [k2, c2] : co.delta.at(key.second).terms())
        right.add(Tensor3Key{key.first, k2.first, k2.second}, c * c2);
    }
    if (left == right) return std::nullopt;
    return std::make_pair(format_tensor3(left), format_tensor3(right));
  }));

  r.checks.push_back(for_each_basis(p, "counit", [&](const ExpVec& v) -> Mismatch {
    Element left(f);
    Element right(f);
    for (const auto& [key, c] : co.delta.at(v).terms()) {
      left.add(key.second, c * co.epsilon.coeff(key.first));
      right.add(key.first, c * co.epsilon.coeff(key.second));
    }
    const Element x = p.monomial(v);
    if (auto m = compare(x, left)) return m;
    return compare(x, right);
  }));

  {
    const Scalar e1 = epsilon_of(co, p.one());
    if (!e1.is_one()) {
      r.checks.push_back(fail("counit-multiplicative", {p.zero_vec()}, "1", e1.to_string()));
    } else {
      r.checks.push_back(for_each_pair(p, "counit-multiplicative", [&](const ExpVec& u, const ExpVec& v) -> Mismatch {
        return compare(co.epsilon.coeff(u) * co.epsilon.coeff(v), epsilon_of(co, product_basis(p, u, v)));
      }));
    }
  }

  {
    const ExpVec zero = p.zero_vec();
    const Tensor expected = Tensor::single(f, {zero, zero}, f.one());
    const Tensor& actual = co.delta.at(zero);
    if (expected == actual) r.checks.push_back(pass("unit-grouplike"));
    else r.checks.push_back(fail("unit-grouplike", {zero}, format_tensor(expected), format_tensor(actual)));
  }

  {
    const std::size_t rk = sparse_rank(pairing_rows(p, b.phi));
    if (rk == p.dim()) r.checks.push_back(pass("frobenius-algebra"));
    else
      r.checks.push_back(fail("frobenius-algebra", {}, "rank " + std::to_string(p.dim()), "rank " + std::to_string(rk)));
  }

  {
    // Image of the dual basis vector x_w^* under f -> t <- f.
    std::vector<Element> images(p.dim(), Element(f));
    const Tensor dt = delta_of(co, b.t);
    for (const auto& [key, c] : dt.terms()) images[p.index_of(key.first)].add(key.second, c);
    const std::size_t rk = element_rank(p, images);
    if (rk == p.dim()) r.checks.push_back(pass("frobenius-coalgebra"));
    else
      r.checks.push_back(
          fail("frobenius-coalgebra", {}, "rank " + std::to_string(p.dim()), "rank " + std::to_string(rk)));
  }

  {
    const Element s1 = apply_s(b, p.one());
    if (s1 == p.one()) r.checks.push_back(pass("antipode-unit"));
    else r.checks.push_back(fail("antipode-unit", {p.zero_vec()}, "1", format_element(s1)));
  }

  r.checks.push_back(
      for_each_pair(p, "antipode-anti-multiplicative", [&](const ExpVec& u, const ExpVec& v) -> Mismatch {
        const Element lhs = apply_s(b, product_basis(p, u, v));
        const Element rhs = mul(p, apply_s(b, p.monomial(v)), apply_s(b, p.monomial(u)));
        return compare(rhs, lhs);
      }));

  r.checks.push_back(for_each_basis(p, "antipode-counit", [&](const ExpVec& v) -> Mismatch {
    return compare(co.epsilon.coeff(v), epsilon_of(co, apply_s(b, p.monomial(v))));
  }));

  r.checks.push_back(for_each_basis(p, "antipode-anti-comultiplicative", [&](const ExpVec& v) -> Mismatch {
    const Tensor lhs = delta_of(co, apply_s(b, p.monomial(v)));
    const Tensor rhs = s_tensor(b, swap_tensor(co.delta.at(v)));
    return compare(rhs, lhs);
  }));

  const Tensor dt = delta_of(co, b.t);
  r.checks.push_back(for_each_basis(p, "antipode-definition", [&](const ExpVec& v) -> Mismatch {
    return compare(antipode_from_definition(b, dt, v), apply_s(b, p.monomial(v)));
  }));

  return r;
}

VerificationReport verify_derived(const BfaStructure& b) {
  const Presentation& p = b.presentation;
  const Coalgebra& co = b.coalgebra;
  const Field& f = p.field();
  const ExpVec zero = p.zero_vec();
  VerificationReport r;

  r.checks.push_back(for_each_basis(p, "epsilon-from-phi", [&](const ExpVec& v) -> Mismatch {
    return compare(co.epsilon.coeff(v), apply_functional(b.phi, mul(p, b.t, p.monomial(v))));
  }));

  {
    const Scalar value = apply_functional(b.phi, b.t);
    if (value.is_one()) r.checks.push_back(pass("phi-of-t"));
    else r.checks.push_back(fail("phi-of-t", {}, "1", value.to_string()));
  }

  r.checks.push_back(for_each_basis(p, "right-integral", [&](const ExpVec& v) -> Mismatch {
    return compare(b.t.scaled(co.epsilon.coeff(v)), mul(p, b.t, p.monomial(v)));
  }));
  r.checks.push_back(for_each_basis(p, "left-integral", [&](const ExpVec& v) -> Mismatch {
    return compare(b.t.scaled(co.epsilon.coeff(v)), mul(p, p.monomial(v), b.t));
  }));

  {
    // Right integrals y satisfy y x_i = epsilon(x_i) y for every generator;
    // the space is the kernel of y -> (y x_i - epsilon(x_i) y)_i.
    const std::size_t dim = p.dim();
    std::vector<SparseRow> rows(dim);
    for (std::size_t u = 0; u < dim; ++u) {
      const ExpVec& uv = p.basis()[u];
      for (int i = 0; i < p.n(); ++i) {
        const std::size_t offset = static_cast<std::size_t>(i) * dim;
        Element image = product_basis(p, uv, p.unit(i));
        image.add(uv, -co.epsilon.coeff(p.unit(i)));
        for (const auto& [w, c] : image.terms()) rows[u].emplace(offset + p.index_of(w), c);
      }
    }
    const std::size_t kernel = dim - sparse_rank(std::move(rows));
    if (kernel == 1) r.checks.push_back(pass("right-integral-space-dim"));
    else r.checks.push_back(fail("right-integral-space-dim", {}, "1", std::to_string(kernel)));
  }

  {
    const Element unit = hit_right_co(co, b.t, b.phi);
    if (unit == p.one()) r.checks.push_back(pass("unit-from-t"));
    else r.checks.push_back(fail("unit-from-t", {}, "1", format_element(unit)));
  }

  const Functional alpha = hit_left(p, b.t, b.phi);
  if (alpha == co.epsilon) r.checks.push_back(pass("modular-function"));
  else r.checks.push_back(fail("modular-function", {}, format_functional(co.epsilon), format_functional(alpha)));

  const Element modular = hit_left_co(co, b.phi, b.t);
  {
    const Tensor d = delta_of(co, modular);
    Tensor square(f);
    for (const auto& [u, cu] : modular.terms())
      for (const auto& [v, cv] : modular.terms()) square.add({u, v}, cu * cv);
    const Scalar e = epsilon_of(co, modular);
    if (d == square && e.is_one()) r.checks.push_back(pass("modular-element-grouplike"));
    else if (!(d == square))
      r.checks.push_back(fail("modular-element-grouplike", {}, format_tensor(square), format_tensor(d)));
    else r.checks.push_back(fail("modular-element-grouplike", {}, "epsilon = 1", "epsilon = " + e.to_string()));
  }

  if (f.characteristic() == 0) {
    if (modular == p.one()) r.checks.push_back(pass("modular-element-trivial"));
    else r.checks.push_back(fail("modular-element-trivial", {}, "1", format_element(modular)));
  }

  const std::optional<Element> modular_inv = invert_element(p, modular);
  if (!modular_inv) {
    r.checks.push_back(fail("antipode-modular-element", {}, "invertible modular element", format_element(modular)));
  } else {
    const Element s_mod = apply_s(b, modular);
    if (s_mod == *modular_inv) r.checks.push_back(pass("antipode-modular-element"));
    else
      r.checks.push_back(fail("antipode-modular-element", {}, format_element(*modular_inv), format_element(s_mod)));
  }

  const std::optional<Functional> alpha_inv = invert_functional(co, alpha);

  if (!modular_inv) {
    r.checks.push_back(fail("nakayama-formula", {}, "invertible modular element", format_element(modular)));
  } else {
    std::optional<LinearMap> n_phi;
    try {
      n_phi = nakayama_wrt(p, b.phi);
    } catch (const Error&) {
    }
    if (!n_phi) {
      r.checks.push_back(fail("nakayama-formula", {}, "nondegenerate pairing", "degenerate pairing"));
    } else {
      r.checks.push_back(for_each_basis(p, "nakayama-formula", [&](const ExpVec& v) -> Mismatch {
        const Element x = p.monomial(v);
        const Element expected = apply_map(p, *n_phi, x);
        const Element inner = s_power(b, hit_left_co(co, alpha, x), 2);
        return compare(expected, mul(p, mul(p, *modular_inv, inner), modular));
      }));
    }
  }

  if (!modular_inv || !alpha_inv) {
    r.checks.push_back(fail("s4-formula", {}, "invertible modular element and function", "not invertible"));
  } else {
    r.checks.push_back(for_each_basis(p, "s4-formula", [&](const ExpVec& v) -> Mismatch {
      const Element x = p.monomial(v);
      const Element s4 = s_power(b, x, 4);
      const Element first =
          mul(p, mul(p, modular, hit_right_co(co, hit_left_co(co, *alpha_inv, x), alpha)), *modular_inv);
      if (auto m = compare(s4, first)) return m;
      const Element conj = mul(p, mul(p, modular, x), *modular_inv);
      return compare(s4, hit_right_co(co, hit_left_co(co, *alpha_inv, conj), alpha));
    }));
  }

  r.checks.push_back(for_each_basis(p, "antipode-graded", [&](const ExpVec& v) -> Mismatch {
    const Element s = apply_s(b, p.monomial(v));
    for (const auto& [w, c] : s.terms())
      if (degree(w) != degree(v))
        return std::make_pair("degree " + std::to_string(degree(v)), format_element(s));
    return std::nullopt;
  }));

  r.checks.push_back(for_each_basis(p, "antipode-square-nakayama", [&](const ExpVec& v) -> Mismatch {
    const Element x = p.monomial(v);
    return compare(nakayama(p, x), s_power(b, x, 2));
  }));

  r.checks.push_back(for_each_basis(p, "antipode-fourth-identity", [&](const ExpVec& v) -> Mismatch {
    const Element x = p.monomial(v);
    return compare(x, s_power(b, x, 4));
  }));

  {
    const Element st = apply_s(b, b.t);
    if (st == b.t) r.checks.push_back(pass("antipode-fixes-t"));
    else r.checks.push_back(fail("antipode-fixes-t", {p.top()}, format_element(b.t), format_element(st)));
  }

  {
    // S(x_i) must be a nonzero multiple of a single generator x_{pi(i)}, pi
    // an involution, and S(x_v) a multiple of x_{pi(v)}.
    std::vector<int> image(static_cast<std::size_t>(p.n()), -1);
    std::optional<CheckResult> bad;
    for (int i = 0; i < p.n() && !bad; ++i) {
      const Element s = apply_s(b, p.monomial(p.unit(i)));
      if (s.size() == 1) {
        const ExpVec& w = s.terms().begin()->first;
        if (degree(w) == 1) image[static_cast<std::size_t>(i)] = static_cast<int>(std::find(w.begin(), w.end(), 1) - w.begin());
      }
      if (image[static_cast<std::size_t>(i)] < 0)
        bad = fail("antipode-permutation", {p.unit(i)}, "multiple of a generator", format_element(s));
    }
    std::optional<Permutation> pi;
    if (!bad) {
      try {
        pi = Permutation::from_images(image);
      } catch (const Error&) {
        std::string images;
        for (int j : image) images += (images.empty() ? "" : ",") + std::to_string(j + 1);
        bad = fail("antipode-permutation", {}, "bijection on generators", "[" + images + "]");
      }
    }
    if (!bad && !pi->is_involution()) bad = fail("antipode-permutation", {}, "involution", pi->to_string());
    if (!bad && !(act(*pi, p.top()) == p.top()))
      bad = fail("antipode-permutation", {p.top()}, exp_vec_string(p.top()), exp_vec_string(act(*pi, p.top())));
    if (!bad) {
      CheckResult c = for_each_basis(p, "antipode-permutation", [&](const ExpVec& v) -> Mismatch {
        const Element s = apply_s(b, p.monomial(v));
        if (s.size() == 1 && s.terms().begin()->first == act(*pi, v)) return std::nullopt;
        return std::make_pair("multiple of " + monomial_name(act(*pi, v)), format_element(s));
      });
      r.checks.push_back(std::move(c));
    } else {
      r.checks.push_back(std::move(*bad));
    }
  }

  {
    std::optional<CheckResult> bad;
    const auto h = h_units(p);
    for (int i = 0; i < p.n() && !bad; ++i) {
      const Scalar sq = h[static_cast<std::size_t>(i)] * h[static_cast<std::size_t>(i)];
      if (!sq.is_one()) bad = fail("nakayama-involution", {p.unit(i)}, "1", sq.to_string());
    }
    r.checks.push_back(bad ? std::move(*bad) : pass("nakayama-involution"));
  }

  {
    const Witness& w = b.witness;
    bool ok = false;
    try {
      ok = w.pi.size() == p.n() && w.c.size() == static_cast<std::size_t>(p.n()) && witness_holds(p, w.pi, w.c);
    } catch (const Error&) {
      ok = false;
    }
    if (ok) r.checks.push_back(pass("witness"));
    else r.checks.push_back(fail("witness", {}, "c_i c_pi(i) = h_e_i and q_pi prod c_i^(a_i-1) = 1", "violated"));
  }

  return r;
}

bool is_hopf_comultiplication(const BfaStructure& b) {
  const Presentation& p = b.presentation;
  const Coalgebra& co = b.coalgebra;
  for (const ExpVec& u : p.basis()) {
    for (const ExpVec& v : p.basis()) {
      const Tensor lhs = delta_of(co, product_basis(p, u, v));
      const Tensor rhs = tensor_mul(p, co.delta.at(u), co.delta.at(v));
      if (!(lhs == rhs)) return false;
    }
  }
  return true;
}

std::size_t primitive_space_dim(const Coalgebra& c) {
  const Presentation& p = c.presentation;
  const std::size_t dim = p.dim();
  const ExpVec zero = p.zero_vec();
  std::vector<SparseRow> rows(dim);
  for (std::size_t u = 0; u < dim; ++u) {
    const ExpVec& uv = p.basis()[u];
    Tensor image = c.delta.at(uv);
    image.add({zero, uv}, -p.field().one());
    image.add({uv, zero}, -p.field().one());
    for (const auto& [key, coeff] : image.terms())
      rows[u].emplace(p.index_of(key.first) * dim + p.index_of(key.second), coeff);
  }
  return dim - sparse_rank(std::move(rows));
}

}  // namespace qci

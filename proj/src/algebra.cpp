#include "qci/algebra.hpp"

#include <numeric>

#include "qci/error.hpp"

namespace qci {

namespace {
std::string label(int i) { return std::to_string(i + 1); }
}  // namespace

Presentation validate_presentation(const RawPresentation& raw, std::size_t dim_limit) {
  const std::size_t n = raw.a.size();
  if (n < 2) throw Error(ErrorCode::InvalidInput, "at least two generators are required");
  if (raw.q.size() != n) throw Error(ErrorCode::InvalidInput, "q must be an n x n matrix");
  for (const auto& row : raw.q)
    if (row.size() != n) throw Error(ErrorCode::InvalidInput, "q must be an n x n matrix");

  for (std::size_t i = 0; i < n; ++i)
    if (raw.a[i] < 2) throw Error(ErrorCode::BadExponent, "a_" + label(static_cast<int>(i)) + " must be >= 2");

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (!(raw.q[i][j].field() == raw.field))
        throw Error(ErrorCode::FieldMismatch, "q entries must lie in " + raw.field.to_string());

  for (std::size_t i = 0; i < n; ++i)
    if (!raw.q[i][i].is_one())
      throw Error(ErrorCode::BadDiagonal, "q_" + label(static_cast<int>(i)) + label(static_cast<int>(i)) + " must be 1");

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (!(raw.q[i][j] * raw.q[j][i]).is_one())
        throw Error(ErrorCode::BadReciprocal, "q_" + label(static_cast<int>(i)) + label(static_cast<int>(j)) + " * q_" +
                                                  label(static_cast<int>(j)) + label(static_cast<int>(i)) + " must be 1");

  std::size_t dim = 1;
  for (long long ai : raw.a) {
    if (static_cast<unsigned long long>(ai) > dim_limit || dim * static_cast<std::size_t>(ai) > dim_limit)
      throw Error(ErrorCode::TooLarge, "dimension exceeds the limit of " + std::to_string(dim_limit));
    dim *= static_cast<std::size_t>(ai);
  }

  Presentation p;
  p.field_ = raw.field;
  p.a_.assign(raw.a.begin(), raw.a.end());
  p.q_ = raw.q;
  p.basis_.reserve(dim);
  ExpVec v(n, 0);
  for (std::size_t k = 0; k < dim; ++k) {
    p.basis_.push_back(v);
    for (std::size_t i = n; i-- > 0;) {
      if (++v[i] < p.a_[i]) break;
      v[i] = 0;
    }
  }
  return p;
}

std::size_t Presentation::index_of(const ExpVec& v) const {
  std::size_t idx = 0;
  for (std::size_t i = 0; i < a_.size(); ++i) idx = idx * static_cast<std::size_t>(a_[i]) + static_cast<std::size_t>(v[i]);
  return idx;
}

bool Presentation::in_range(const ExpVec& v) const {
  if (v.size() != a_.size()) return false;
  for (std::size_t i = 0; i < a_.size(); ++i)
    if (v[i] < 0 || v[i] >= a_[i]) return false;
  return true;
}

ExpVec Presentation::top() const {
  ExpVec t(a_.size());
  for (std::size_t i = 0; i < a_.size(); ++i) t[i] = a_[i] - 1;
  return t;
}

ExpVec Presentation::unit(int i) const {
  ExpVec e(a_.size(), 0);
  e[static_cast<std::size_t>(i)] = 1;
  return e;
}

Element Presentation::monomial(const ExpVec& v) const { return monomial(v, field_.one()); }

Element Presentation::monomial(const ExpVec& v, const Scalar& coeff) const {
  return Element::single(field_, v, coeff);
}

int degree(const ExpVec& v) { return std::accumulate(v.begin(), v.end(), 0); }

ExpVec add(const ExpVec& u, const ExpVec& v) {
  ExpVec w(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) w[i] = u[i] + v[i];
  return w;
}

ExpVec sub(const ExpVec& u, const ExpVec& v) {
  ExpVec w(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) w[i] = u[i] - v[i];
  return w;
}

Scalar bracket(const Presentation& p, const ExpVec& u, const ExpVec& v) {
  Scalar out = p.field().one();
  const int n = p.n();
  for (int i = 0; i < n; ++i) {
    if (v[static_cast<std::size_t>(i)] == 0) continue;
    for (int j = i + 1; j < n; ++j) {
      const long long e = static_cast<long long>(u[static_cast<std::size_t>(j)]) * v[static_cast<std::size_t>(i)];
      if (e != 0) out *= p.q(i, j).pow(e);
    }
  }
  return out;
}

std::optional<std::pair<ExpVec, Scalar>> mul_basis(const Presentation& p, const ExpVec& u, const ExpVec& v) {
  ExpVec w = add(u, v);
  if (!p.in_range(w)) return std::nullopt;
  return std::make_pair(std::move(w), bracket(p, u, v));
}

Element mul(const Presentation& p, const Element& x, const Element& y) {
  Element out(p.field());
  for (const auto& [u, cu] : x.terms()) {
    for (const auto& [v, cv] : y.terms()) {
      auto prod = mul_basis(p, u, v);
      if (prod) out.add(prod->first, cu * cv * prod->second);
    }
  }
  return out;
}

Scalar h_of(const Presentation& p, const ExpVec& v) {
  const ExpVec rest = sub(p.top(), v);
  return bracket(p, rest, v) / bracket(p, v, rest);
}

std::vector<Scalar> h_units(const Presentation& p) {
  std::vector<Scalar> h;
  h.reserve(static_cast<std::size_t>(p.n()));
  for (int i = 0; i < p.n(); ++i) h.push_back(h_of(p, p.unit(i)));
  return h;
}

Element nakayama(const Presentation& p, const Element& x) {
  Element out(p.field());
  for (const auto& [v, c] : x.terms()) out.add(v, c * h_of(p, v));
  return out;
}

bool is_symmetric(const Presentation& p) {
  for (const Scalar& h : h_units(p))
    if (!h.is_one()) return false;
  return true;
}

std::optional<std::uint64_t> nakayama_order(const Presentation& p) {
  std::uint64_t order = 1;
  for (const Scalar& h : h_units(p)) {
    const auto k = multiplicative_order(h);
    if (!k) return std::nullopt;
    order = std::lcm(order, *k);
  }
  return order;
}

Scalar apply_functional(const Functional& f, const Element& x) {
  Scalar out = x.field().zero();
  for (const auto& [v, c] : x.terms()) {
    auto it = f.terms().find(v);
    if (it != f.terms().end()) out += c * it->second;
  }
  return out;
}

std::vector<SparseRow> pairing_rows(const Presentation& p, const Functional& phi) {
  const auto& basis = p.basis();
  std::vector<SparseRow> rows(basis.size());
  for (std::size_t r = 0; r < basis.size(); ++r) {
    for (const auto& [w, value] : phi.terms()) {
      const ExpVec v = sub(w, basis[r]);
      if (!p.in_range(v)) continue;
      rows[r].emplace(p.index_of(v), bracket(p, basis[r], v) * value);
    }
  }
  return rows;
}

Matrix pairing_matrix(const Presentation& p, const Functional& phi) {
  Matrix b(p.field(), p.dim(), p.dim());
  const auto rows = pairing_rows(p, phi);
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (const auto& [c, value] : rows[r]) b(r, c) = value;
  return b;
}

LinearMap nakayama_wrt(const Presentation& p, const Functional& phi) {
  // phi(x_u x_w) = phi(x_w N(x_u)) for all w reads B N = B^T with B the
  // pairing matrix and column u of N holding N(x_u).
  const auto rows = pairing_rows(p, phi);
  std::vector<SparseRow> transposed(rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (const auto& [c, value] : rows[r]) transposed[c].emplace(r, value);
  auto solution = sparse_solve(rows, transposed);
  if (!solution) throw Error(ErrorCode::NotFrobenius, "the pairing (x, y) -> phi(xy) is degenerate");
  LinearMap images(p.dim(), Element(p.field()));
  for (std::size_t r = 0; r < solution->size(); ++r)
    for (const auto& [c, value] : (*solution)[r]) images[c].add(p.basis()[r], value);
  return images;
}

Element apply_map(const Presentation& p, const LinearMap& m, const Element& x) {
  Element out(p.field());
  for (const auto& [v, c] : x.terms()) out += m[p.index_of(v)].scaled(c);
  return out;
}

Functional hit_left(const Presentation& p, const Element& a, const Functional& f) {
  Functional out(p.field());
  for (const ExpVec& x : p.basis()) out.add(x, apply_functional(f, mul(p, p.monomial(x), a)));
  return out;
}

Functional hit_right(const Presentation& p, const Functional& f, const Element& b) {
  Functional out(p.field());
  for (const ExpVec& x : p.basis()) out.add(x, apply_functional(f, mul(p, b, p.monomial(x))));
  return out;
}

}  // namespace qci

#pragma once

// Random instance generators and brute-force oracles shared by the tests.
// Oracles here deliberately avoid the library routine they check.

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "qci/algebra.hpp"
#include "qci/builder.hpp"
#include "qci/permutation.hpp"

namespace qci::testing {

using Rng = std::mt19937_64;

inline int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

/// A nonzero scalar: any residue in GF(p), a signed power of zeta in Q(zeta_m)
/// (sometimes scaled by a small rational), a small fraction in Q.
inline Scalar random_unit(Rng& rng, const Field& f) {
  switch (f.kind()) {
    case FieldKind::Prime:
      return f.from_int(uniform(rng, 1, static_cast<int>(f.characteristic()) - 1));
    case FieldKind::Cyclotomic: {
      Scalar z = f.zeta_power(uniform(rng, 0, static_cast<int>(f.descriptor().param) - 1));
      if (uniform(rng, 0, 3) == 0) z *= f.from_rational(mpq_class(uniform(rng, 1, 3), uniform(rng, 1, 3)));
      return uniform(rng, 0, 1) ? z : -z;
    }
    case FieldKind::Rational:
      break;
  }
  const int num = uniform(rng, 1, 4) * (uniform(rng, 0, 1) ? 1 : -1);
  return f.from_rational(mpq_class(num, uniform(rng, 1, 3)));
}

/// Any scalar, zero included.
inline Scalar random_scalar(Rng& rng, const Field& f) {
  if (uniform(rng, 0, 5) == 0) return f.zero();
  if (f.kind() == FieldKind::Cyclotomic && uniform(rng, 0, 1)) return random_unit(rng, f) + random_unit(rng, f);
  return random_unit(rng, f);
}

inline Permutation random_involution(Rng& rng, int n) {
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<int> image(static_cast<std::size_t>(n));
  std::iota(image.begin(), image.end(), 0);
  for (std::size_t k = 0; k + 1 < order.size(); k += 2) {
    if (uniform(rng, 0, 2) == 0) continue;
    image[static_cast<std::size_t>(order[k])] = order[k + 1];
    image[static_cast<std::size_t>(order[k + 1])] = order[k];
  }
  return Permutation::from_images(image);
}

/// Generic presentation with reciprocal q.
inline RawPresentation random_raw(Rng& rng, const Field& f, int n, int max_a) {
  RawPresentation raw;
  raw.field = f;
  for (int i = 0; i < n; ++i) raw.a.push_back(uniform(rng, 2, max_a));
  raw.q.assign(static_cast<std::size_t>(n), std::vector<Scalar>(static_cast<std::size_t>(n), f.one()));
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const Scalar q = random_unit(rng, f);
      raw.q[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = q;
      raw.q[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = q.inverse();
    }
  }
  return raw;
}

inline Permutation random_permutation(Rng& rng, int n) {
  std::vector<int> image(static_cast<std::size_t>(n));
  std::iota(image.begin(), image.end(), 0);
  std::shuffle(image.begin(), image.end(), rng);
  return Permutation::from_images(image);
}

/// Presentation for which pi is compatible: a constant on the orbits of pi and
/// q_{pi(i)pi(j)} = q_ji. The pair map (i,j) -> (pi(j),pi(i)) preserves q, so
/// each of its orbits gets one value; orbits containing (j,i) force +-1. With
/// signs_only every entry is drawn from {1, -1}.
inline RawPresentation random_compatible_raw(Rng& rng, const Field& f, const Permutation& pi, int max_a,
                                             bool signs_only = false) {
  const int n = pi.size();
  const auto idx = [](int i) { return static_cast<std::size_t>(i); };
  RawPresentation raw;
  raw.field = f;
  raw.a.assign(idx(n), 0);
  for (int i = 0; i < n; ++i) {
    if (raw.a[idx(i)] != 0) continue;
    const int ai = uniform(rng, 2, max_a);
    for (int k = i; raw.a[idx(k)] == 0; k = pi(k)) raw.a[idx(k)] = ai;
  }
  std::vector<std::vector<bool>> set(idx(n), std::vector<bool>(idx(n), false));
  raw.q.assign(idx(n), std::vector<Scalar>(idx(n), f.one()));
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (set[idx(i)][idx(j)]) continue;
      std::vector<std::pair<int, int>> orbit;
      bool self_dual = false;
      std::pair<int, int> cur{i, j};
      do {
        orbit.push_back(cur);
        self_dual = self_dual || cur == std::pair<int, int>{j, i};
        cur = {pi(cur.second), pi(cur.first)};
      } while (cur != std::pair<int, int>{i, j});
      Scalar x;
      if (signs_only || self_dual) x = uniform(rng, 0, 1) ? f.one() : -f.one();
      else x = random_unit(rng, f);
      for (const auto& [r, c] : orbit) {
        raw.q[idx(r)][idx(c)] = x;
        raw.q[idx(c)][idx(r)] = x.inverse();
        set[idx(r)][idx(c)] = set[idx(c)][idx(r)] = true;
      }
    }
  }
  return raw;
}

/// Product x_u x_v by rewriting the word x_1^{u_1}..x_n^{u_n} x_1^{v_1}..x_n^{v_n}
/// into normal order one adjacent swap at a time (x_j x_i = q_ij x_i x_j).
inline Element word_product(const Presentation& p, const ExpVec& u, const ExpVec& v) {
  std::vector<int> word;
  for (const ExpVec* w : {&u, &v})
    for (int i = 0; i < p.n(); ++i)
      for (int k = 0; k < (*w)[static_cast<std::size_t>(i)]; ++k) word.push_back(i);
  Scalar coeff = p.field().one();
  bool swapped = true;
  while (swapped) {
    swapped = false;
    for (std::size_t k = 0; k + 1 < word.size(); ++k) {
      const int j = word[k];
      const int i = word[k + 1];
      if (j > i) {
        coeff *= p.q(i, j);
        std::swap(word[k], word[k + 1]);
        swapped = true;
      }
    }
  }
  ExpVec w(static_cast<std::size_t>(p.n()), 0);
  for (int g : word) ++w[static_cast<std::size_t>(g)];
  if (!p.in_range(w)) return Element(p.field());
  return p.monomial(w, coeff);
}

/// q_pi by the fixed-point formula prod_{j<k in I} q_kj^{(a_k-1)(a_j-1)}.
inline Scalar q_pi_fixed_points(const Presentation& p, const Permutation& pi) {
  Scalar out = p.field().one();
  for (int j = 0; j < p.n(); ++j)
    for (int k = j + 1; k < p.n(); ++k)
      if (pi(j) == j && pi(k) == k)
        out *= p.q(k, j).pow(static_cast<long long>(p.a()[static_cast<std::size_t>(k)] - 1) *
                             (p.a()[static_cast<std::size_t>(j)] - 1));
  return out;
}

/// Both witness conditions evaluated directly, with h_{e_i} = prod_j q_ij^{a_j-1}.
inline bool witness_conditions(const Presentation& p, const Permutation& pi, const std::vector<Scalar>& c) {
  for (int i = 0; i < p.n(); ++i) {
    Scalar h = p.field().one();
    for (int j = 0; j < p.n(); ++j) h *= p.q(i, j).pow(p.a()[static_cast<std::size_t>(j)] - 1);
    if (!(c[static_cast<std::size_t>(i)] * c[static_cast<std::size_t>(pi(i))] == h)) return false;
  }
  Scalar prod = q_pi_fixed_points(p, pi);
  for (int i = 0; i < p.n(); ++i) prod *= c[static_cast<std::size_t>(i)].pow(p.a()[static_cast<std::size_t>(i)] - 1);
  return prod.is_one();
}

/// Exhaustive search over all of GF(p)^n for a witness; only for prime fields.
inline bool brute_force_witness_exists(const Presentation& p, const Permutation& pi) {
  const int q = static_cast<int>(p.field().characteristic());
  const int n = p.n();
  std::vector<int> digits(static_cast<std::size_t>(n), 1);
  while (true) {
    std::vector<Scalar> c;
    for (int d : digits) c.push_back(p.field().from_int(d));
    if (witness_conditions(p, pi, c)) return true;
    int k = n - 1;
    while (k >= 0 && ++digits[static_cast<std::size_t>(k)] == q) digits[static_cast<std::size_t>(k--)] = 1;
    if (k < 0) return false;
  }
}

inline ExpVec random_int_vec(Rng& rng, int n, int lo, int hi) {
  ExpVec v(static_cast<std::size_t>(n));
  for (int& x : v) x = uniform(rng, lo, hi);
  return v;
}

inline ExpVec random_basis_vec(Rng& rng, const Presentation& p) {
  return p.basis()[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(p.dim()) - 1))];
}

}  // namespace qci::testing

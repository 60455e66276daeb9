#pragma once

// Sparse linear combinations over a field, keyed by basis labels. Zero
// coefficients are never stored, so structural equality is linear equality.

#include <map>
#include <utility>

#include "qci/field.hpp"

namespace qci {

template <class Key, class Tag = void>
class Sparse {
 public:
  using Map = std::map<Key, Scalar>;

  Sparse() = default;
  explicit Sparse(Field field) : field_(std::move(field)) {}

  static Sparse single(const Field& field, const Key& key, const Scalar& coeff) {
    Sparse s(field);
    s.add(key, coeff);
    return s;
  }

  const Field& field() const { return field_; }
  const Map& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  void add(const Key& key, const Scalar& coeff) {
    if (coeff.is_zero()) return;
    auto it = terms_.find(key);
    if (it == terms_.end()) {
      terms_.emplace(key, coeff);
      return;
    }
    it->second += coeff;
    if (it->second.is_zero()) terms_.erase(it);
  }

  void set(const Key& key, const Scalar& coeff) {
    if (coeff.is_zero()) terms_.erase(key);
    else terms_.insert_or_assign(key, coeff);
  }

  Scalar coeff(const Key& key) const {
    auto it = terms_.find(key);
    return it == terms_.end() ? field_.zero() : it->second;
  }

  Sparse scaled(const Scalar& factor) const {
    Sparse out(field_);
    if (factor.is_zero()) return out;
    for (const auto& [k, c] : terms_) out.terms_.emplace_hint(out.terms_.end(), k, c * factor);
    return out;
  }

  Sparse& operator+=(const Sparse& other) {
    for (const auto& [k, c] : other.terms_) add(k, c);
    return *this;
  }
  Sparse& operator-=(const Sparse& other) {
    for (const auto& [k, c] : other.terms_) add(k, -c);
    return *this;
  }
  friend Sparse operator+(Sparse a, const Sparse& b) { return a += b; }
  friend Sparse operator-(Sparse a, const Sparse& b) { return a -= b; }

  friend bool operator==(const Sparse& a, const Sparse& b) { return a.terms_ == b.terms_; }

 private:
  Field field_;
  Map terms_;
};

}  // namespace qci

#pragma once

// Exact arithmetic in the ground field: rationals, prime fields GF(p) and
// cyclotomic fields Q(zeta_m). Scalars are immutable values in a unique
// canonical form, so equality is structural.

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qci {

enum class FieldKind { Rational, Prime, Cyclotomic };

struct FieldDescriptor {
  FieldKind kind = FieldKind::Rational;
  std::uint64_t param = 0;  // p for Prime, m for Cyclotomic, unused for Rational

  static FieldDescriptor rational() { return {FieldKind::Rational, 0}; }
  static FieldDescriptor prime(std::uint64_t p) { return {FieldKind::Prime, p}; }
  static FieldDescriptor cyclotomic(std::uint64_t m) { return {FieldKind::Cyclotomic, m}; }

  /// Accepts "rational", "prime:<p>" and "cyclotomic:<m>".
  static FieldDescriptor parse(std::string_view text);
  std::string to_string() const;

  friend bool operator==(const FieldDescriptor&, const FieldDescriptor&) = default;
};

bool is_prime(std::uint64_t n);

namespace detail {
struct FieldData;
}

class Scalar;

class Field {
 public:
  /// The rational field.
  Field();
  /// Throws NotPrime or InvalidOrder for invalid descriptors.
  explicit Field(const FieldDescriptor& descriptor);

  const FieldDescriptor& descriptor() const;
  FieldKind kind() const { return descriptor().kind; }
  /// 0 for Rational and Cyclotomic, p for Prime(p).
  std::uint64_t characteristic() const;
  /// Degree of the field over its prime field (phi(m) for cyclotomic fields).
  std::size_t degree() const;
  /// Coefficients of the m-th cyclotomic polynomial, constant term first.
  /// Empty unless kind() == Cyclotomic.
  const std::vector<mpq_class>& cyclotomic_polynomial() const;

  Scalar zero() const;
  Scalar one() const;
  Scalar from_int(long long value) const;
  Scalar from_integer(const mpz_class& value) const;
  Scalar from_rational(const mpq_class& value) const;
  /// zeta_m; throws NotInField outside cyclotomic fields.
  Scalar zeta() const;
  /// zeta_m^k for any integer k.
  Scalar zeta_power(long long k) const;
  /// A square root of -1 when one exists: zeta_m^(m/4) when 4 | m, the
  /// least residue s with s^2 = -1 in GF(p), 1 in GF(2).
  std::optional<Scalar> sqrt_minus_one() const;

  /// Parses a scalar literal; see Scalar::to_string for the printed form.
  Scalar parse(std::string_view literal) const;

  std::string to_string() const { return descriptor().to_string(); }

  friend bool operator==(const Field& a, const Field& b);

 private:
  std::shared_ptr<const detail::FieldData> data_;
  friend class Scalar;
};

Field make_field(const FieldDescriptor& descriptor);

class Scalar {
 public:
  /// Zero of the rational field.
  Scalar();

  const Field& field() const { return field_; }

  bool is_zero() const;
  bool is_one() const;

  Scalar operator-() const;
  Scalar operator+(const Scalar& other) const;
  Scalar operator-(const Scalar& other) const;
  Scalar operator*(const Scalar& other) const;
  /// Throws DivisionByZero.
  Scalar operator/(const Scalar& other) const;
  Scalar& operator+=(const Scalar& other) { return *this = *this + other; }
  Scalar& operator-=(const Scalar& other) { return *this = *this - other; }
  Scalar& operator*=(const Scalar& other) { return *this = *this * other; }

  /// Throws DivisionByZero.
  Scalar inverse() const;
  /// Negative exponents invert first; throws DivisionByZero for 0^-k.
  Scalar pow(long long exponent) const;

  /// Canonical printed form, accepted back by Field::parse.
  std::string to_string() const;

  /// Residue for GF(p) scalars.
  std::uint64_t residue() const { return residue_; }
  /// Coefficients in the power basis 1, zeta, ..., zeta^(d-1) (a single
  /// coefficient for rationals). Empty for GF(p).
  const std::vector<mpq_class>& coefficients() const { return coeffs_; }

  friend bool operator==(const Scalar& a, const Scalar& b);

 private:
  friend class Field;
  explicit Scalar(Field field) : field_(std::move(field)) {}
  void require_same_field(const Scalar& other) const;

  Field field_;
  std::uint64_t residue_ = 0;
  std::vector<mpq_class> coeffs_;
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

/// Exponentiation by squaring; exponent >= 0.
Scalar power(const Scalar& base, long long exponent);

/// Smallest k >= 1 with s^k = 1, or nullopt if s is not a root of unity.
std::optional<std::uint64_t> multiplicative_order(const Scalar& s);

}  // namespace qci

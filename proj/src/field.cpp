#include "qci/field.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <numeric>
#include <ostream>

#include "qci/error.hpp"

namespace qci {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotPrime: return "NotPrime";
    case ErrorCode::InvalidOrder: return "InvalidOrder";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::NotInField: return "NotInField";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::FieldMismatch: return "FieldMismatch";
    case ErrorCode::BadDiagonal: return "BadDiagonal";
    case ErrorCode::BadReciprocal: return "BadReciprocal";
    case ErrorCode::BadExponent: return "BadExponent";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::NotFrobenius: return "NotFrobenius";
    case ErrorCode::TooManyGenerators: return "TooManyGenerators";
    case ErrorCode::NotCompatible: return "NotCompatible";
    case ErrorCode::NotInvolution: return "NotInvolution";
    case ErrorCode::RegimeHypothesisFailed: return "RegimeHypothesisFailed";
    case ErrorCode::WitnessInvalid: return "WitnessInvalid";
    case ErrorCode::InternalCrossCheckFailed: return "InternalCrossCheckFailed";
    case ErrorCode::CrossCheckDisagreement: return "CrossCheckDisagreement";
    case ErrorCode::SemanticError: return "SemanticError";
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

namespace {

using Poly = std::vector<mpq_class>;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t p) {
  std::uint64_t result = 1 % p;
  base %= p;
  while (exp > 0) {
    if (exp & 1U) result = mulmod(result, base, p);
    base = mulmod(base, base, p);
    exp >>= 1U;
  }
  return result;
}

void trim(Poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

Poly poly_mul(const Poly& f, const Poly& g) {
  if (f.empty() || g.empty()) return {};
  Poly out(f.size() + g.size() - 1, mpq_class(0));
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f[i] == 0) continue;
    for (std::size_t j = 0; j < g.size(); ++j) out[i + j] += f[i] * g[j];
  }
  trim(out);
  return out;
}

// Quotient and remainder of f by a nonzero g.
std::pair<Poly, Poly> poly_divmod(Poly f, const Poly& g) {
  trim(f);
  const std::size_t dg = g.size() - 1;
  if (f.size() < g.size()) return {Poly{}, f};
  Poly quot(f.size() - dg, mpq_class(0));
  const mpq_class lead = g.back();
  for (std::size_t k = f.size(); k-- > dg;) {
    if (f[k] == 0) continue;
    mpq_class c = f[k] / lead;
    quot[k - dg] = c;
    for (std::size_t j = 0; j <= dg; ++j) f[k - dg + j] -= c * g[j];
  }
  trim(f);
  trim(quot);
  return {quot, f};
}

// Phi_m by dividing x^m - 1 by Phi_d over the proper divisors d of m.
Poly cyclotomic_poly(std::uint64_t m) {
  Poly result(m + 1, mpq_class(0));
  result[0] = -1;
  result[m] = 1;
  for (std::uint64_t d = 1; d < m; ++d) {
    if (m % d != 0) continue;
    auto [q, r] = poly_divmod(result, cyclotomic_poly(d));
    result = std::move(q);
  }
  return result;
}

std::string mpq_str(const mpq_class& q) { return q.get_str(); }

}  // namespace

namespace detail {
struct FieldData {
  FieldDescriptor descriptor;
  Poly phi;  // monic cyclotomic polynomial, constant term first
  std::size_t degree = 1;
};
}  // namespace detail

// ---------------------------------------------------------------------------
// FieldDescriptor

FieldDescriptor FieldDescriptor::parse(std::string_view text) {
  auto number_after = [&](std::size_t colon) {
    std::uint64_t value = 0;
    auto tail = text.substr(colon + 1);
    auto [ptr, ec] = std::from_chars(tail.data(), tail.data() + tail.size(), value);
    if (ec != std::errc() || ptr != tail.data() + tail.size() || tail.empty())
      throw Error(ErrorCode::SyntaxError, "bad field parameter in '" + std::string(text) + "'");
    return value;
  };
  if (text == "rational") return rational();
  auto colon = text.find(':');
  if (colon != std::string_view::npos) {
    auto kind = text.substr(0, colon);
    if (kind == "prime") return prime(number_after(colon));
    if (kind == "cyclotomic") return cyclotomic(number_after(colon));
  }
  throw Error(ErrorCode::SyntaxError,
              "field must be 'rational', 'prime:<p>' or 'cyclotomic:<m>', got '" + std::string(text) + "'");
}

std::string FieldDescriptor::to_string() const {
  switch (kind) {
    case FieldKind::Rational: return "rational";
    case FieldKind::Prime: return "prime:" + std::to_string(param);
    case FieldKind::Cyclotomic: return "cyclotomic:" + std::to_string(param);
  }
  return "?";
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  // Deterministic Miller-Rabin for 64-bit inputs.
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1U) == 0) {
    d >>= 1U;
    ++s;
  }
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Field

namespace {
std::shared_ptr<const detail::FieldData> build_field_data(const FieldDescriptor& descriptor) {
  auto data = std::make_shared<detail::FieldData>();
  data->descriptor = descriptor;
  switch (descriptor.kind) {
    case FieldKind::Rational:
      data->degree = 1;
      break;
    case FieldKind::Prime:
      if (!is_prime(descriptor.param))
        throw Error(ErrorCode::NotPrime, std::to_string(descriptor.param) + " is not prime");
      if (descriptor.param >= (1ULL << 62))
        throw Error(ErrorCode::InvalidInput, "prime fields are limited to p < 2^62");
      data->degree = 1;
      break;
    case FieldKind::Cyclotomic:
      if (descriptor.param == 0) throw Error(ErrorCode::InvalidOrder, "cyclotomic order must be >= 1");
      data->phi = cyclotomic_poly(descriptor.param);
      data->degree = data->phi.size() - 1;
      break;
  }
  return data;
}

const std::shared_ptr<const detail::FieldData>& rational_data() {
  static const auto data = build_field_data(FieldDescriptor::rational());
  return data;
}
}  // namespace

Field::Field() : data_(rational_data()) {}

Field::Field(const FieldDescriptor& descriptor)
    : data_(descriptor.kind == FieldKind::Rational ? rational_data() : build_field_data(descriptor)) {}

Field make_field(const FieldDescriptor& descriptor) { return Field(descriptor); }

const FieldDescriptor& Field::descriptor() const { return data_->descriptor; }

std::uint64_t Field::characteristic() const {
  return kind() == FieldKind::Prime ? descriptor().param : 0;
}

std::size_t Field::degree() const { return data_->degree; }

const std::vector<mpq_class>& Field::cyclotomic_polynomial() const { return data_->phi; }

bool operator==(const Field& a, const Field& b) {
  return a.data_ == b.data_ || a.descriptor() == b.descriptor();
}

Scalar Field::zero() const {
  Scalar s(*this);
  if (kind() != FieldKind::Prime) s.coeffs_.assign(degree(), mpq_class(0));
  return s;
}

Scalar Field::one() const { return from_int(1); }

Scalar Field::from_int(long long value) const { return from_integer(mpz_class(std::to_string(value))); }

Scalar Field::from_integer(const mpz_class& value) const { return from_rational(mpq_class(value)); }

Scalar Field::from_rational(const mpq_class& value) const {
  Scalar s = zero();
  if (kind() == FieldKind::Prime) {
    const std::uint64_t p = descriptor().param;
    mpz_class pz(std::to_string(p));
    mpz_class num = value.get_num() % pz;
    if (num < 0) num += pz;
    mpz_class den = value.get_den() % pz;
    if (den == 0) throw Error(ErrorCode::DivisionByZero, "denominator vanishes in GF(" + std::to_string(p) + ")");
    std::uint64_t n = std::stoull(num.get_str());
    std::uint64_t d = std::stoull(den.get_str());
    s.residue_ = mulmod(n, powmod(d, p - 2, p), p);
  } else {
    s.coeffs_[0] = value;
    s.coeffs_[0].canonicalize();
  }
  return s;
}

Scalar Field::zeta_power(long long k) const {
  if (kind() != FieldKind::Cyclotomic) throw Error(ErrorCode::NotInField, "z is only defined in cyclotomic fields");
  const auto m = static_cast<long long>(descriptor().param);
  long long e = ((k % m) + m) % m;
  Poly f(static_cast<std::size_t>(e) + 1, mpq_class(0));
  f[static_cast<std::size_t>(e)] = 1;
  auto [q, r] = poly_divmod(std::move(f), data_->phi);
  Scalar s = zero();
  for (std::size_t i = 0; i < r.size(); ++i) s.coeffs_[i] = r[i];
  return s;
}

Scalar Field::zeta() const { return zeta_power(1); }

std::optional<Scalar> Field::sqrt_minus_one() const {
  switch (kind()) {
    case FieldKind::Rational: return std::nullopt;
    case FieldKind::Cyclotomic: {
      const std::uint64_t m = descriptor().param;
      if (m % 4 != 0) return std::nullopt;
      return zeta_power(static_cast<long long>(m / 4));
    }
    case FieldKind::Prime: {
      const std::uint64_t p = descriptor().param;
      if (p == 2) return one();
      if (p % 4 != 1) return std::nullopt;
      // g^((p-1)/4) for the least non-residue g is a root of x^2 + 1; the
      // other root is its negative, so the least root is the smaller of both.
      std::uint64_t g = 2;
      while (powmod(g, (p - 1) / 2, p) != p - 1) ++g;
      std::uint64_t s = powmod(g, (p - 1) / 4, p);
      Scalar out = zero();
      out.residue_ = std::min(s, p - s);
      return out;
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Scalar literal parsing
//
//   scalar := term (('+'|'-') term)*
//   term   := rat | rat '*' zpow | zpow
//   zpow   := 'z' ('^' int)?
//   rat    := int ('/' posint)?

namespace {

class LiteralParser {
 public:
  LiteralParser(const Field& field, std::string_view text) : field_(field), text_(text) {}

  Scalar parse() {
    skip_ws();
    if (at_end()) fail("empty literal");
    Scalar acc = term();
    skip_ws();
    while (!at_end()) {
      char op = text_[pos_];
      if (op != '+' && op != '-') fail("expected '+' or '-'");
      ++pos_;
      skip_ws();
      Scalar t = term();
      acc = op == '+' ? acc + t : acc - t;
      skip_ws();
    }
    return acc;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorCode::SyntaxError,
                what + " at position " + std::to_string(pos_) + " in '" + std::string(text_) + "'");
  }
  bool at_end() const { return pos_ >= text_.size(); }
  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }

  Scalar term() {
    // A sign directly in front of 'z' is accepted as shorthand for "-1*z".
    if ((peek() == '-' || peek() == '+') && pos_ + 1 < text_.size()) {
      std::size_t look = pos_ + 1;
      while (look < text_.size() && std::isspace(static_cast<unsigned char>(text_[look]))) ++look;
      if (look < text_.size() && text_[look] == 'z') {
        bool negative = peek() == '-';
        pos_ = look;
        Scalar z = zpow();
        return negative ? -z : z;
      }
    }
    if (peek() == 'z') return zpow();
    Scalar r = rat();
    skip_ws();
    if (peek() == '*') {
      ++pos_;
      skip_ws();
      if (peek() != 'z') fail("expected 'z' after '*'");
      return r * zpow();
    }
    return r;
  }

  Scalar zpow() {
    ++pos_;  // 'z'
    long long exponent = 1;
    skip_ws();
    if (peek() == '^') {
      ++pos_;
      skip_ws();
      mpz_class e = integer(true);
      if (!e.fits_slong_p()) fail("exponent out of range");
      exponent = e.get_si();
    }
    if (field_.kind() != FieldKind::Cyclotomic)
      throw Error(ErrorCode::NotInField, "'z' is not an element of the " + field_.to_string() + " field");
    return field_.zeta_power(exponent);
  }

  Scalar rat() {
    mpz_class num = integer(true);
    skip_ws();
    if (peek() == '/') {
      ++pos_;
      skip_ws();
      mpz_class den = integer(false);
      if (den == 0) throw Error(ErrorCode::DivisionByZero, "zero denominator in '" + std::string(text_) + "'");
      return field_.from_rational(mpq_class(num, den));
    }
    return field_.from_integer(num);
  }

  mpz_class integer(bool allow_sign) {
    std::size_t start = pos_;
    if (allow_sign && (peek() == '-' || peek() == '+')) ++pos_;
    std::size_t digits = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ == digits) fail("expected an integer");
    std::string token(text_.substr(start, pos_ - start));
    if (token[0] == '+') token.erase(0, 1);
    return mpz_class(token);
  }

  const Field& field_;
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Scalar Field::parse(std::string_view literal) const { return LiteralParser(*this, literal).parse(); }

// ---------------------------------------------------------------------------
// Scalar

Scalar::Scalar() : Scalar(Field()) { coeffs_.assign(1, mpq_class(0)); }

void Scalar::require_same_field(const Scalar& other) const {
  if (!(field_ == other.field_))
    throw Error(ErrorCode::FieldMismatch, "cannot combine " + field_.to_string() + " and " + other.field_.to_string());
}

bool Scalar::is_zero() const {
  if (field_.kind() == FieldKind::Prime) return residue_ == 0;
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const mpq_class& c) { return c == 0; });
}

bool Scalar::is_one() const {
  if (field_.kind() == FieldKind::Prime) return residue_ == 1;
  if (coeffs_[0] != 1) return false;
  return std::all_of(coeffs_.begin() + 1, coeffs_.end(), [](const mpq_class& c) { return c == 0; });
}

bool operator==(const Scalar& a, const Scalar& b) {
  if (!(a.field_ == b.field_)) return false;
  if (a.field_.kind() == FieldKind::Prime) return a.residue_ == b.residue_;
  return a.coeffs_ == b.coeffs_;
}

Scalar Scalar::operator-() const {
  Scalar out = *this;
  if (field_.kind() == FieldKind::Prime) {
    const std::uint64_t p = field_.descriptor().param;
    out.residue_ = residue_ == 0 ? 0 : p - residue_;
  } else {
    for (auto& c : out.coeffs_) c = -c;
  }
  return out;
}

Scalar Scalar::operator+(const Scalar& other) const {
  require_same_field(other);
  Scalar out = *this;
  if (field_.kind() == FieldKind::Prime) {
    const std::uint64_t p = field_.descriptor().param;
    out.residue_ = (residue_ + other.residue_) % p;
  } else {
    for (std::size_t i = 0; i < coeffs_.size(); ++i) out.coeffs_[i] += other.coeffs_[i];
  }
  return out;
}

Scalar Scalar::operator-(const Scalar& other) const { return *this + (-other); }

Scalar Scalar::operator*(const Scalar& other) const {
  require_same_field(other);
  Scalar out = *this;
  switch (field_.kind()) {
    case FieldKind::Prime:
      out.residue_ = mulmod(residue_, other.residue_, field_.descriptor().param);
      break;
    case FieldKind::Rational:
      out.coeffs_[0] = coeffs_[0] * other.coeffs_[0];
      break;
    case FieldKind::Cyclotomic: {
      auto product = poly_mul(coeffs_, other.coeffs_);
      auto [q, r] = poly_divmod(std::move(product), field_.cyclotomic_polynomial());
      for (std::size_t i = 0; i < out.coeffs_.size(); ++i) out.coeffs_[i] = i < r.size() ? r[i] : mpq_class(0);
      break;
    }
  }
  return out;
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw Error(ErrorCode::DivisionByZero, "inverse of zero");
  Scalar out = *this;
  switch (field_.kind()) {
    case FieldKind::Prime: {
      const std::uint64_t p = field_.descriptor().param;
      out.residue_ = powmod(residue_, p - 2, p);
      break;
    }
    case FieldKind::Rational:
      out.coeffs_[0] = 1 / coeffs_[0];
      break;
    case FieldKind::Cyclotomic: {
      // Extended Euclid in Q[x] against the irreducible Phi_m.
      Poly r0 = field_.cyclotomic_polynomial();
      Poly r1 = coeffs_;
      trim(r1);
      Poly s0, s1{mpq_class(1)};
      while (!r1.empty()) {
        auto [q, r] = poly_divmod(r0, r1);
        Poly next = s0;
        Poly qs = poly_mul(q, s1);
        next.resize(std::max(next.size(), qs.size()), mpq_class(0));
        for (std::size_t i = 0; i < qs.size(); ++i) next[i] -= qs[i];
        trim(next);
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(next);
      }
      // r0 is a nonzero constant g with s0 * a = g mod Phi_m.
      const mpq_class g = r0[0];
      for (auto& c : s0) c /= g;
      auto [q, r] = poly_divmod(std::move(s0), field_.cyclotomic_polynomial());
      for (std::size_t i = 0; i < out.coeffs_.size(); ++i) out.coeffs_[i] = i < r.size() ? r[i] : mpq_class(0);
      break;
    }
  }
  return out;
}

Scalar Scalar::operator/(const Scalar& other) const {
  require_same_field(other);
  return *this * other.inverse();
}

Scalar power(const Scalar& base, long long exponent) {
  Scalar result = base.field().one();
  Scalar b = base;
  while (exponent > 0) {
    if (exponent & 1) result *= b;
    exponent >>= 1;
    if (exponent > 0) b *= b;
  }
  return result;
}

Scalar Scalar::pow(long long exponent) const {
  if (exponent >= 0) return power(*this, exponent);
  return power(inverse(), -exponent);
}

std::string Scalar::to_string() const {
  switch (field_.kind()) {
    case FieldKind::Prime: return std::to_string(residue_);
    case FieldKind::Rational: return mpq_str(coeffs_[0]);
    case FieldKind::Cyclotomic: break;
  }
  std::string out;
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    const mpq_class& c = coeffs_[k];
    if (c == 0) continue;
    std::string zpart = k == 0 ? "" : (k == 1 ? "z" : "z^" + std::to_string(k));
    if (out.empty()) {
      if (k == 0) out = mpq_str(c);
      else if (c == 1) out = zpart;
      else out = mpq_str(c) + "*" + zpart;
    } else {
      out += c < 0 ? " - " : " + ";
      mpq_class mag = abs(c);
      if (k == 0) out += mpq_str(mag);
      else if (mag == 1) out += zpart;
      else out += mpq_str(mag) + "*" + zpart;
    }
  }
  return out.empty() ? "0" : out;
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.to_string(); }

std::optional<std::uint64_t> multiplicative_order(const Scalar& s) {
  if (s.is_zero()) return std::nullopt;
  const Field& f = s.field();
  // Every root of unity in the field has order dividing this bound.
  std::uint64_t bound = 0;
  switch (f.kind()) {
    case FieldKind::Rational: bound = 2; break;
    case FieldKind::Prime: bound = f.descriptor().param - 1; break;
    case FieldKind::Cyclotomic: bound = std::lcm<std::uint64_t>(2, f.descriptor().param); break;
  }
  if (bound == 0) bound = 1;
  if (!s.pow(static_cast<long long>(bound)).is_one()) return std::nullopt;
  std::uint64_t order = bound;
  std::uint64_t rest = bound;
  for (std::uint64_t factor = 2; factor * factor <= rest; ++factor) {
    if (rest % factor != 0) continue;
    while (rest % factor == 0) rest /= factor;
    while (order % factor == 0 && s.pow(static_cast<long long>(order / factor)).is_one()) order /= factor;
  }
  if (rest > 1) {
    while (order % rest == 0 && s.pow(static_cast<long long>(order / rest)).is_one()) order /= rest;
  }
  return order;
}

}  // namespace qci

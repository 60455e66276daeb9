#include "qci/permutation.hpp"

#include <algorithm>
#include <cctype>
#include <functional>

#include "qci/error.hpp"

namespace qci {

Permutation Permutation::identity(int n) {
  std::vector<int> image(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) image[static_cast<std::size_t>(i)] = i;
  return Permutation(std::move(image));
}

Permutation Permutation::from_images(std::vector<int> image) {
  std::vector<bool> seen(image.size(), false);
  for (int j : image) {
    if (j < 0 || static_cast<std::size_t>(j) >= image.size() || seen[static_cast<std::size_t>(j)])
      throw Error(ErrorCode::InvalidInput, "not a permutation");
    seen[static_cast<std::size_t>(j)] = true;
  }
  return Permutation(std::move(image));
}

Permutation Permutation::parse(std::string_view text) {
  std::size_t pos = 0;
  auto skip = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto fail = [&](const std::string& what) {
    throw Error(ErrorCode::SyntaxError, what + " in permutation '" + std::string(text) + "'");
  };
  skip();
  if (pos >= text.size() || text[pos] != '[') fail("expected '['");
  ++pos;
  std::vector<int> image;
  skip();
  if (pos < text.size() && text[pos] == ']') fail("empty image list");
  while (true) {
    skip();
    std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (start == pos || pos - start > 6) fail("expected a positive integer");
    image.push_back(std::stoi(std::string(text.substr(start, pos - start))) - 1);
    skip();
    if (pos < text.size() && text[pos] == ',') {
      ++pos;
      continue;
    }
    if (pos < text.size() && text[pos] == ']') {
      ++pos;
      break;
    }
    fail("expected ',' or ']'");
  }
  skip();
  if (pos != text.size()) fail("trailing characters");
  return from_images(std::move(image));
}

Permutation Permutation::inverse() const {
  std::vector<int> inv(image_.size());
  for (std::size_t i = 0; i < image_.size(); ++i) inv[static_cast<std::size_t>(image_[i])] = static_cast<int>(i);
  return Permutation(std::move(inv));
}

bool Permutation::is_identity() const {
  for (std::size_t i = 0; i < image_.size(); ++i)
    if (image_[i] != static_cast<int>(i)) return false;
  return true;
}

bool Permutation::is_involution() const {
  for (std::size_t i = 0; i < image_.size(); ++i)
    if (image_[static_cast<std::size_t>(image_[i])] != static_cast<int>(i)) return false;
  return true;
}

std::string Permutation::to_string() const {
  std::string out = "[";
  for (std::size_t i = 0; i < image_.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(image_[i] + 1);
  }
  return out + "]";
}

ExpVec act(const Permutation& pi, const ExpVec& v) {
  ExpVec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[static_cast<std::size_t>(pi(static_cast<int>(i)))] = v[i];
  return out;
}

bool is_compatible(const Presentation& p, const Permutation& pi) {
  const int n = p.n();
  if (pi.size() != n) return false;
  for (int i = 0; i < n; ++i)
    if (p.a()[static_cast<std::size_t>(pi(i))] != p.a()[static_cast<std::size_t>(i)]) return false;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (!(p.q(pi(i), pi(j)) == p.q(j, i))) return false;
  return true;
}

namespace {

std::vector<Permutation> search(const Presentation& p, int max_generators, bool involutions_only) {
  const int n = p.n();
  if (n > max_generators)
    throw Error(ErrorCode::TooManyGenerators,
                std::to_string(n) + " generators exceed the search bound of " + std::to_string(max_generators));
  std::vector<int> image(static_cast<std::size_t>(n), -1);
  std::vector<bool> used(static_cast<std::size_t>(n), false);
  std::vector<Permutation> found;

  // Positions are filled in increasing order with candidates in increasing
  // order, so results come out lexicographically sorted.
  std::function<void(int)> extend = [&](int i) {
    if (i == n) {
      found.push_back(Permutation::from_images(image));
      return;
    }
    for (int j = 0; j < n; ++j) {
      if (used[static_cast<std::size_t>(j)]) continue;
      if (p.a()[static_cast<std::size_t>(j)] != p.a()[static_cast<std::size_t>(i)]) continue;
      if (involutions_only && j < i && image[static_cast<std::size_t>(j)] != i) continue;
      if (involutions_only && j > i) {
        // Some earlier position k may already map to i, forcing pi(i) = k.
        bool forced = false;
        for (int k = 0; k < i; ++k)
          if (image[static_cast<std::size_t>(k)] == i) forced = true;
        if (forced) continue;
      }
      bool ok = p.q(j, j) == p.q(i, i);
      for (int k = 0; k < i && ok; ++k) {
        const int pk = image[static_cast<std::size_t>(k)];
        ok = p.q(j, pk) == p.q(k, i) && p.q(pk, j) == p.q(i, k);
      }
      if (!ok) continue;
      image[static_cast<std::size_t>(i)] = j;
      used[static_cast<std::size_t>(j)] = true;
      extend(i + 1);
      used[static_cast<std::size_t>(j)] = false;
      image[static_cast<std::size_t>(i)] = -1;
    }
  };
  extend(0);
  return found;
}

}  // namespace

std::vector<Permutation> enumerate_compatible_involutions(const Presentation& p, int max_generators) {
  return search(p, max_generators, true);
}

std::vector<Permutation> enumerate_compatible_permutations(const Presentation& p, int max_generators) {
  return search(p, max_generators, false);
}

Scalar q_pi(const Presentation& p, const Permutation& pi) {
  Scalar out = p.field().one();
  const int n = p.n();
  const auto& a = p.a();
  for (int j = 0; j < n; ++j) {
    for (int k = j + 1; k < n; ++k) {
      const long long e = static_cast<long long>(a[static_cast<std::size_t>(k)] - 1) * (a[static_cast<std::size_t>(j)] - 1);
      out *= bracket(p, p.unit(pi(k)), p.unit(pi(j))).pow(e);
    }
  }
  return out;
}

PartitionReport partition(const Presentation& p, const Permutation& pi) {
  if (!is_compatible(p, pi)) throw Error(ErrorCode::NotCompatible, pi.to_string() + " is not compatible");
  if (!pi.is_involution()) throw Error(ErrorCode::NotInvolution, pi.to_string() + " is not an involution");

  PartitionReport report;
  report.q_pi = q_pi(p, pi);
  report.char_two = p.field().characteristic() == 2;
  const auto h = h_units(p);
  const Scalar minus_one = -p.field().one();
  for (int i = 0; i < p.n(); ++i) {
    const bool is_fixed = pi(i) == i;
    (is_fixed ? report.fixed : report.moved).push_back(i);
    if (report.char_two) continue;
    const Scalar& hi = h[static_cast<std::size_t>(i)];
    int sign_part;
    if (hi.is_one()) sign_part = 0;
    else if (hi == minus_one) sign_part = 2;
    else
      throw Error(ErrorCode::RegimeHypothesisFailed,
                  "h_e" + std::to_string(i + 1) + " = " + hi.to_string() + " is not +-1");
    const int ai = p.a()[static_cast<std::size_t>(i)];
    const int slot = sign_part + (ai % 2 == 0 ? 0 : 1);
    (is_fixed ? report.fixed_split : report.moved_split)[slot].push_back(i);
    if (is_fixed && slot == 3) (((ai - 1) / 2) % 2 == 1 ? report.fixed_odd_half : report.fixed_even_half).push_back(i);
  }
  return report;
}

}  // namespace qci

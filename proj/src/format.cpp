#include "qci/format.hpp"

#include <algorithm>

namespace qci {

std::string monomial_name(const ExpVec& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] == 0) continue;
    out += "x" + std::to_string(i + 1);
    if (v[i] > 1) out += "^" + std::to_string(v[i]);
  }
  return out.empty() ? "1" : out;
}

std::string exp_vec_string(const ExpVec& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(v[i]);
  }
  return out + ")";
}

namespace {

// Appends coeff * name to out with sign-aware joining.
void append_term(std::string& out, const Scalar& coeff, const std::string& name) {
  std::string c = coeff.to_string();
  const bool compound = c.find(' ') != std::string::npos;
  bool negative = false;
  if (!compound && c.front() == '-') {
    negative = true;
    c.erase(0, 1);
  }
  if (c.rfind("1*", 0) == 0) c.erase(0, 2);
  std::string body;
  if (c == "1") body = name;
  else if (compound) body = "(" + c + ")*" + name;
  else body = c + "*" + name;
  if (out.empty()) out = negative ? "-" + body : body;
  else out += (negative ? " - " : " + ") + body;
}

}  // namespace

std::string format_element(const Element& x) {
  std::string out;
  for (const auto& [v, c] : x.terms()) append_term(out, c, monomial_name(v));
  return out.empty() ? "0" : out;
}

std::string format_tensor(const Tensor& t) {
  std::string out;
  for (const auto& [key, c] : t.terms())
    append_term(out, c, monomial_name(key.first) + "⊗" + monomial_name(key.second));
  return out.empty() ? "0" : out;
}

std::string format_functional(const Functional& f) {
  std::string out;
  for (const auto& [v, c] : f.terms()) append_term(out, c, monomial_name(v) + "*");
  return out.empty() ? "0" : out;
}

std::vector<ExpVec> graded_basis(const Presentation& p) {
  std::vector<ExpVec> out = p.basis();
  std::stable_sort(out.begin(), out.end(), [](const ExpVec& x, const ExpVec& y) {
    const int dx = degree(x);
    const int dy = degree(y);
    if (dx != dy) return dx < dy;
    return x > y;
  });
  return out;
}

}  // namespace qci

#include "qci/io.hpp"

#include <fstream>
#include <sstream>

#include "qci/error.hpp"

namespace qci {

namespace {

[[noreturn]] void semantic(const std::string& what) { throw Error(ErrorCode::SemanticError, what); }

const Json& member(const Json& j, const char* key) {
  if (!j.is_object()) semantic("expected an object holding \"" + std::string(key) + "\"");
  auto it = j.find(key);
  if (it == j.end()) semantic("missing \"" + std::string(key) + "\"");
  return *it;
}

std::string string_value(const Json& j, const std::string& what) {
  if (!j.is_string()) semantic(what + " must be a string");
  return j.get<std::string>();
}

long long integer_value(const Json& j, const std::string& what) {
  if (!j.is_number_integer()) semantic(what + " must be an integer");
  return j.get<long long>();
}

Scalar scalar_value(const Field& f, const Json& j, const std::string& what) {
  return f.parse(string_value(j, what));
}

std::string label(const ExpVec& v) { return "\"" + exp_vec_key(v) + "\""; }

}  // namespace

Json field_to_json(const FieldDescriptor& d) {
  Json j = Json::object();
  switch (d.kind) {
    case FieldKind::Rational:
      j["kind"] = "rational";
      break;
    case FieldKind::Prime:
      j["kind"] = "prime";
      j["p"] = d.param;
      break;
    case FieldKind::Cyclotomic:
      j["kind"] = "cyclotomic";
      j["order"] = d.param;
      break;
  }
  return j;
}

FieldDescriptor field_from_json(const Json& j) {
  const std::string kind = string_value(member(j, "kind"), "field kind");
  auto param = [&](const char* key) {
    const long long v = integer_value(member(j, key), std::string("field ") + key);
    if (v < 1) semantic(std::string("field ") + key + " must be positive");
    return static_cast<std::uint64_t>(v);
  };
  if (kind == "rational") return FieldDescriptor::rational();
  if (kind == "prime") return FieldDescriptor::prime(param("p"));
  if (kind == "cyclotomic") return FieldDescriptor::cyclotomic(param("order"));
  semantic("unknown field kind \"" + kind + "\"");
}

std::string exp_vec_key(const ExpVec& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(v[i]);
  }
  return out;
}

ExpVec exp_vec_from_key(std::string_view key, int n) {
  ExpVec v;
  std::size_t pos = 0;
  while (pos <= key.size()) {
    const std::size_t comma = std::min(key.find(',', pos), key.size());
    const std::string_view part = key.substr(pos, comma - pos);
    if (part.empty() || part.size() > 9 || part.find_first_not_of("0123456789") != std::string_view::npos)
      semantic("malformed exponent vector \"" + std::string(key) + "\"");
    v.push_back(std::stoi(std::string(part)));
    pos = comma + 1;
  }
  if (static_cast<int>(v.size()) != n)
    semantic("exponent vector \"" + std::string(key) + "\" must have " + std::to_string(n) + " entries");
  return v;
}

Json presentation_to_json(const Presentation& p) {
  Json j = Json::object();
  j["field"] = field_to_json(p.field().descriptor());
  j["n"] = p.n();
  j["a"] = p.a();
  Json q = Json::array();
  for (int i = 0; i < p.n(); ++i) {
    Json row = Json::array();
    for (int k = 0; k < p.n(); ++k) row.push_back(p.q(i, k).to_string());
    q.push_back(std::move(row));
  }
  j["q"] = std::move(q);
  return j;
}

Presentation presentation_from_json(const Json& j, std::size_t dim_limit) {
  RawPresentation raw;
  raw.field = Field(field_from_json(member(j, "field")));
  const long long n = integer_value(member(j, "n"), "n");
  const Json& a = member(j, "a");
  if (!a.is_array()) semantic("\"a\" must be an array");
  for (const Json& ai : a) raw.a.push_back(integer_value(ai, "a entry"));
  if (n < 0 || static_cast<std::size_t>(n) != raw.a.size()) semantic("\"n\" must equal the length of \"a\"");
  const Json& q = member(j, "q");
  if (!q.is_array()) semantic("\"q\" must be an array of rows");
  for (const Json& row : q) {
    if (!row.is_array()) semantic("\"q\" must be an array of rows");
    std::vector<Scalar> parsed;
    for (const Json& entry : row) parsed.push_back(scalar_value(raw.field, entry, "q entry"));
    raw.q.push_back(std::move(parsed));
  }
  return validate_presentation(raw, dim_limit);
}

Json parse_json_text(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    std::size_t line = 1;
    std::size_t column = 1;
    const std::size_t limit = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < limit; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw Error(ErrorCode::SyntaxError, "invalid JSON at line " + std::to_string(line) + ", column " +
                                            std::to_string(column));
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path);
  out << content;
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path);
}

Presentation parse_presentation(std::string_view text, std::size_t dim_limit) {
  return presentation_from_json(parse_json_text(text), dim_limit);
}

Presentation load_presentation(const std::string& path, std::size_t dim_limit) {
  return parse_presentation(read_file(path), dim_limit);
}

Json structure_to_json(const BfaStructure& b) {
  const Presentation& p = b.presentation;
  Json j = Json::object();
  j["presentation"] = presentation_to_json(p);
  Json pi = Json::array();
  for (int i = 0; i < b.witness.pi.size(); ++i) pi.push_back(b.witness.pi(i) + 1);
  j["pi"] = std::move(pi);
  Json c = Json::array();
  for (const Scalar& ci : b.witness.c) c.push_back(ci.to_string());
  j["c"] = std::move(c);
  Json g = Json::object();
  for (const ExpVec& v : p.basis()) g[exp_vec_key(v)] = b.g.at(v).to_string();
  j["g"] = std::move(g);
  Json delta = Json::object();
  for (const ExpVec& v : p.basis()) {
    Json terms = Json::array();
    for (const auto& [key, coeff] : b.coalgebra.delta.at(v).terms())
      terms.push_back(Json::array({exp_vec_key(key.first), exp_vec_key(key.second), coeff.to_string()}));
    delta[exp_vec_key(v)] = std::move(terms);
  }
  j["delta"] = std::move(delta);
  Json s = Json::object();
  for (const ExpVec& v : p.basis()) {
    const auto& [image, coeff] = b.s_map.at(v);
    s[exp_vec_key(v)] = Json::array({exp_vec_key(image), coeff.to_string()});
  }
  j["s"] = std::move(s);
  return j;
}

BfaStructure structure_from_json(const Json& j, std::size_t dim_limit) {
  BfaStructure b;
  b.presentation = presentation_from_json(member(j, "presentation"), dim_limit);
  const Presentation& p = b.presentation;
  const Field& f = p.field();
  const int n = p.n();
  const ExpVec zero = p.zero_vec();
  const ExpVec top = p.top();

  const Json& pi = member(j, "pi");
  if (!pi.is_array()) semantic("\"pi\" must be an image vector");
  std::vector<int> images;
  for (const Json& x : pi) images.push_back(static_cast<int>(integer_value(x, "pi entry")) - 1);
  if (static_cast<int>(images.size()) != n) semantic("\"pi\" must have n entries");
  try {
    b.witness.pi = Permutation::from_images(images);
  } catch (const Error&) {
    semantic("\"pi\" is not a permutation");
  }
  const Json& c = member(j, "c");
  if (!c.is_array() || static_cast<int>(c.size()) != n) semantic("\"c\" must hold n scalars");
  for (const Json& x : c) b.witness.c.push_back(scalar_value(f, x, "c entry"));

  auto require_all_keys = [&](const Json& obj, const char* name) {
    if (!obj.is_object()) semantic(std::string("\"") + name + "\" must be an object keyed by exponent vectors");
    if (obj.size() != p.dim()) semantic(std::string("\"") + name + "\" must have one entry per basis vector");
    for (const auto& [key, value] : obj.items()) {
      const ExpVec v = exp_vec_from_key(key, n);
      if (!p.in_range(v)) semantic(std::string("\"") + name + "\" key \"" + key + "\" lies outside the basis");
    }
  };

  const Json& g = member(j, "g");
  require_all_keys(g, "g");
  for (const auto& [key, value] : g.items()) {
    const ExpVec v = exp_vec_from_key(key, n);
    const Scalar coeff = scalar_value(f, value, "g entry");
    if (coeff.is_zero()) semantic("g entry at " + label(v) + " must be nonzero");
    b.g.emplace(v, coeff);
  }
  if (!b.g.at(zero).is_one()) semantic("g_{a-1,0} must be 1");
  if (!b.g.at(top).is_one()) semantic("g_{0,a-1} must be 1");

  const Json& delta = member(j, "delta");
  require_all_keys(delta, "delta");
  b.coalgebra.presentation = p;
  b.coalgebra.epsilon = Functional::single(f, zero, f.one());
  for (const auto& [key, value] : delta.items()) {
    const ExpVec v = exp_vec_from_key(key, n);
    if (!value.is_array()) semantic("delta entry at " + label(v) + " must be a list of terms");
    Tensor t(f);
    for (const Json& term : value) {
      if (!term.is_array() || term.size() != 3) semantic("delta terms must be [left, right, coefficient]");
      const ExpVec left = exp_vec_from_key(string_value(term[0], "delta term"), n);
      const ExpVec right = exp_vec_from_key(string_value(term[1], "delta term"), n);
      if (!p.in_range(left) || !p.in_range(right)) semantic("delta term at " + label(v) + " lies outside the basis");
      t.add({left, right}, scalar_value(f, term[2], "delta coefficient"));
    }
    b.coalgebra.delta.emplace(v, std::move(t));
  }
  for (const ExpVec& v : p.basis()) {
    if (v == top) continue;
    Tensor expected(f);
    expected.add({zero, v}, f.one());
    if (v != zero) expected.add({v, zero}, f.one());
    if (!(b.coalgebra.delta.at(v) == expected))
      semantic(v == zero ? std::string("Delta(1) must be 1 (x) 1") : "x_" + exp_vec_key(v) + " must be primitive");
  }
  {
    Tensor expected(f);
    for (const auto& [v, coeff] : b.g) expected.add({sub(top, v), act(b.witness.pi, v)}, coeff);
    if (!(b.coalgebra.delta.at(top) == expected)) semantic("Delta(x_{a-1}) must agree with g");
  }

  const Json& s = member(j, "s");
  require_all_keys(s, "s");
  for (const auto& [key, value] : s.items()) {
    const ExpVec v = exp_vec_from_key(key, n);
    if (!value.is_array() || value.size() != 2) semantic("s entries must be [image, coefficient]");
    const ExpVec image = exp_vec_from_key(string_value(value[0], "s image"), n);
    if (image != act(b.witness.pi, v)) semantic("s image at " + label(v) + " must be pi(v)");
    const Scalar coeff = scalar_value(f, value[1], "s coefficient");
    if (coeff.is_zero()) semantic("s coefficient at " + label(v) + " must be nonzero");
    if (v == top && !coeff.is_one()) semantic("S(x_{a-1}) must be x_{a-1}");
    b.s_map.emplace(v, std::make_pair(image, coeff));
  }

  b.phi = Functional::single(f, top, f.one());
  b.t = p.monomial(top);
  return b;
}

std::string structure_to_text(const BfaStructure& b) { return structure_to_json(b).dump(2) + "\n"; }

BfaStructure parse_structure(std::string_view text, std::size_t dim_limit) {
  return structure_from_json(parse_json_text(text), dim_limit);
}

void save_structure(const BfaStructure& b, const std::string& path) { write_file(path, structure_to_text(b)); }

BfaStructure load_structure(const std::string& path, std::size_t dim_limit) {
  return parse_structure(read_file(path), dim_limit);
}

Json report_to_json(const VerificationReport& r) {
  Json checks = Json::array();
  for (const CheckResult& c : r.checks) {
    Json entry = Json::object();
    entry["check"] = c.name;
    entry["status"] = c.pass ? "pass" : "fail";
    if (c.counterexample) {
      Json at = Json::array();
      for (const ExpVec& v : c.counterexample->at) at.push_back(v);
      entry["counterexample"] = {{"at", std::move(at)},
                                 {"expected", c.counterexample->expected},
                                 {"actual", c.counterexample->actual}};
    }
    checks.push_back(std::move(entry));
  }
  Json j = Json::object();
  j["checks"] = std::move(checks);
  j["overall"] = r.overall();
  return j;
}

namespace {

Json scalars_to_json(const std::vector<Scalar>& values) {
  Json out = Json::array();
  for (const Scalar& s : values) out.push_back(s.to_string());
  return out;
}

}  // namespace

Json decision_to_json(const DecisionReport& d) {
  Json j = Json::object();
  j["decision"] = d.yes ? "yes" : "no";
  if (!d.yes) j["reason"] = d.reason;
  j["criterion"] = d.criterion;
  j["h"] = scalars_to_json(d.h);
  j["nakayama_order_two"] = d.nakayama_order_two;
  if (d.witness) {
    j["witness"] = {{"pi", d.witness->pi.to_string()}, {"c", scalars_to_json(d.witness->c)}};
    j["regime"] = std::string(to_string(*d.regime));
  }
  Json candidates = Json::array();
  for (const CandidateEvaluation& cand : d.candidates) {
    Json e = Json::object();
    e["pi"] = cand.pi.to_string();
    e["predicate"] = cand.predicate;
    if (cand.regime) e["regime"] = std::string(to_string(*cand.regime));
    if (cand.solved_c) e["solved_c"] = scalars_to_json(*cand.solved_c);
    else e["solved_c"] = nullptr;
    candidates.push_back(std::move(e));
  }
  j["candidates"] = std::move(candidates);
  j["cross_check_agrees"] = d.cross_check_agrees;
  return j;
}

}  // namespace qci

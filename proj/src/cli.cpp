#include "qci/cli.hpp"

#include <cstdlib>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "qci/error.hpp"
#include "qci/format.hpp"
#include "qci/io.hpp"
#include "qci/reference_examples.hpp"

namespace qci::cli {

namespace {

std::size_t dim_limit_from_env() {
  const char* raw = std::getenv("QCI_DIM_LIMIT");
  if (raw == nullptr || *raw == '\0') return kDefaultDimLimit;
  const std::string text(raw);
  if (text.find_first_not_of("0123456789") != std::string::npos || text.size() > 12)
    throw Error(ErrorCode::InvalidInput, "QCI_DIM_LIMIT must be a positive integer");
  const unsigned long long value = std::stoull(text);
  if (value == 0) throw Error(ErrorCode::InvalidInput, "QCI_DIM_LIMIT must be a positive integer");
  return static_cast<std::size_t>(value);
}

std::string join(const std::vector<Scalar>& values, const std::string& sep = ", ") {
  std::string out;
  for (const Scalar& s : values) out += (out.empty() ? "" : sep) + s.to_string();
  return out;
}

std::string index_set(const std::vector<int>& idx) {
  std::string out = "{";
  for (std::size_t k = 0; k < idx.size(); ++k) out += (k ? "," : "") + std::to_string(idx[k] + 1);
  return out + "}";
}

std::vector<Scalar> parse_scalar_list(const Field& f, const std::string& text) {
  std::vector<Scalar> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    out.push_back(f.parse(text.substr(pos, comma - pos)));
    pos = comma + 1;
  }
  return out;
}

void print_presentation(const Presentation& p, std::ostream& out) {
  out << "field: " << p.field().to_string() << "\n";
  out << "n: " << p.n() << "\n";
  out << "a: (";
  for (int i = 0; i < p.n(); ++i) out << (i ? "," : "") << p.a()[static_cast<std::size_t>(i)];
  out << ")\n";
  out << "dim: " << p.dim() << "\n";
}

void print_structure(const BfaStructure& b, std::ostream& out) {
  const Presentation& p = b.presentation;
  out << "pi: " << b.witness.pi.to_string() << "\n";
  out << "c: (" << join(b.witness.c) << ")\n";
  out << "Delta(" << monomial_name(p.top()) << ") = " << format_tensor(b.coalgebra.delta.at(p.top())) << "\n";
  for (const ExpVec& v : graded_basis(p))
    out << "S(" << monomial_name(v) << ") = " << format_element(apply_s(b, p.monomial(v))) << "\n";
}

// Prints every check; returns true when all pass.
bool print_verification(const BfaStructure& b, bool as_json, std::ostream& out) {
  VerificationReport report = verify_axioms(b);
  report.append(verify_derived(b));
  const bool hopf = is_hopf_comultiplication(b);
  const std::size_t primitive = primitive_space_dim(b.coalgebra);
  if (as_json) {
    Json j = report_to_json(report);
    j["hopf_comultiplication"] = hopf;
    j["primitive_dim"] = primitive;
    out << j.dump(2) << "\n";
  } else {
    for (const CheckResult& c : report.checks) {
      out << (c.pass ? "pass " : "FAIL ") << c.name;
      if (c.counterexample) {
        const Counterexample& ce = *c.counterexample;
        if (!ce.at.empty()) {
          out << " at";
          for (const ExpVec& v : ce.at) out << " " << exp_vec_string(v);
        }
        out << ": expected " << ce.expected << ", actual " << ce.actual;
      }
      out << "\n";
    }
    out << "hopf comultiplication: " << (hopf ? "yes" : "no") << "\n";
    out << "primitive dimension: " << primitive << "\n";
    out << "overall: " << (report.overall() ? "pass" : "FAIL") << "\n";
  }
  return report.overall();
}

int cmd_validate(const std::string& file, std::ostream& out) {
  const Presentation p = load_presentation(file, dim_limit_from_env());
  out << "valid\n";
  print_presentation(p, out);
  return kExitOk;
}

int cmd_analyze(const std::string& file, std::ostream& out) {
  const Presentation p = load_presentation(file, dim_limit_from_env());
  print_presentation(p, out);
  const auto h = h_units(p);
  for (std::size_t i = 0; i < h.size(); ++i) out << "h_e" << i + 1 << ": " << h[i].to_string() << "\n";
  out << "symmetric: " << (is_symmetric(p) ? "yes" : "no") << "\n";
  const auto order = nakayama_order(p);
  out << "nakayama order: " << (order ? std::to_string(*order) : "infinite") << "\n";
  const auto perms = enumerate_compatible_permutations(p);
  out << "compatible permutations: " << perms.size() << "\n";
  for (const Permutation& pi : perms) out << "  " << pi.to_string() << (pi.is_involution() ? " involution" : "") << "\n";
  return kExitOk;
}

int cmd_search(const std::string& file, bool all, std::ostream& out) {
  const Presentation p = load_presentation(file, dim_limit_from_env());
  if (all) {
    const auto perms = enumerate_compatible_permutations(p);
    out << "compatible permutations: " << perms.size() << "\n";
    for (const Permutation& pi : perms)
      out << pi.to_string() << (pi.is_involution() ? " involution" : "") << "\n";
    return kExitOk;
  }
  const auto invs = enumerate_compatible_involutions(p);
  out << "compatible involutions: " << invs.size() << "\n";
  for (const Permutation& pi : invs) {
    out << pi.to_string() << " q_pi = " << q_pi(p, pi).to_string();
    try {
      const PartitionReport part = partition(p, pi);
      out << " I = " << index_set(part.fixed) << " J = " << index_set(part.moved);
      if (!part.char_two) {
        for (int k = 0; k < 4; ++k) out << " I" << k + 1 << " = " << index_set(part.fixed_split[k]);
        for (int k = 0; k < 4; ++k) out << " J" << k + 1 << " = " << index_set(part.moved_split[k]);
      }
    } catch (const Error& e) {
      if (e.code() != ErrorCode::RegimeHypothesisFailed) throw;
      out << " (some h_e_i is not +-1)";
    }
    out << "\n";
  }
  return kExitOk;
}

int cmd_decide(const std::string& file, bool as_json, std::ostream& out) {
  const Presentation p = load_presentation(file, dim_limit_from_env());
  const DecisionReport d = decide(p);
  if (as_json) {
    out << decision_to_json(d).dump(2) << "\n";
    return kExitOk;
  }
  if (d.yes) {
    out << "Yes: pi = " << d.witness->pi.to_string() << ", c = (" << join(d.witness->c)
        << "), regime = " << to_string(*d.regime) << "\n";
  } else {
    out << "No: " << d.reason << "\n";
  }
  out << "criterion: " << d.criterion << "\n";
  out << "h: (" << join(d.h) << ")\n";
  for (const CandidateEvaluation& c : d.candidates) {
    out << "candidate " << c.pi.to_string() << ": " << (c.predicate ? "criterion holds" : "criterion fails");
    if (c.solved_c) out << ", search c = (" << join(*c.solved_c) << ")";
    else out << ", search finds no c";
    out << "\n";
  }
  return kExitOk;
}

int cmd_construct(const std::string& file, const std::string& pi_text, const std::string& c_text,
                  const std::string& out_path, std::ostream& out, std::ostream& err) {
  const Presentation p = load_presentation(file, dim_limit_from_env());
  Witness w;
  if (!pi_text.empty() || !c_text.empty()) {
    if (pi_text.empty() || c_text.empty()) throw Error(ErrorCode::InvalidInput, "--pi and --c must be given together");
    w.pi = Permutation::parse(pi_text);
    w.c = parse_scalar_list(p.field(), c_text);
    if (w.pi.size() != p.n() || static_cast<int>(w.c.size()) != p.n())
      throw Error(ErrorCode::InvalidInput, "--pi and --c must have n entries");
  } else {
    const DecisionReport d = decide(p);
    if (!d.yes) {
      err << "no structure to construct: " << d.reason << "\n";
      return kExitInputError;
    }
    w = *d.witness;
  }
  const BfaStructure b = build_structure(p, w.pi, w.c);
  save_structure(b, out_path);
  print_structure(b, out);
  out << "written: " << out_path << "\n";
  return kExitOk;
}

int cmd_verify(const std::string& file, bool as_json, std::ostream& out) {
  const BfaStructure b = load_structure(file, dim_limit_from_env());
  return print_verification(b, as_json, out) ? kExitOk : kExitVerificationFailed;
}

int cmd_example(const std::string& which, const std::string& b_text, const std::string& field_text,
                const std::string& out_path, std::ostream& out) {
  ReferenceExample ex;
  if (which == "6.9") ex = ReferenceExample::Symmetric;
  else if (which == "6.10") ex = ReferenceExample::Twisted;
  else throw Error(ErrorCode::InvalidInput, "unknown example \"" + which + "\" (expected 6.9 or 6.10)");
  const Field f(FieldDescriptor::parse(field_text));
  const Scalar b = f.parse(b_text);
  if (b.is_zero()) throw Error(ErrorCode::InvalidInput, "b must be nonzero");
  const BfaStructure s = reference_structure(ex, b);
  print_presentation(s.presentation, out);
  out << "b: " << b.to_string() << "\n";
  const auto h = h_units(s.presentation);
  out << "h: (" << join(h) << ")\n";
  out << "symmetric: " << (is_symmetric(s.presentation) ? "yes" : "no") << "\n";
  print_structure(s, out);
  if (!out_path.empty()) {
    save_structure(s, out_path);
    out << "written: " << out_path << "\n";
  }
  return print_verification(s, false, out) ? kExitOk : kExitVerificationFailed;
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) out += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return out + "\"";
}

int cmd_enumerate(const std::string& field_text, int n, const std::string& a_text, std::uint64_t max_p,
                  const std::string& out_path, std::ostream& out) {
  const FieldDescriptor d = FieldDescriptor::parse(field_text);
  if (d.kind != FieldKind::Prime) throw Error(ErrorCode::InvalidInput, "enumerate expects --field prime:<p>");
  if (d.param > max_p)
    throw Error(ErrorCode::InvalidInput, "p = " + std::to_string(d.param) + " exceeds --max-p " + std::to_string(max_p));
  if (n != 2 && n != 3) throw Error(ErrorCode::InvalidInput, "enumerate supports n = 2 or 3");
  const Field f(d);
  std::vector<long long> a;
  {
    std::size_t pos = 0;
    while (pos <= a_text.size()) {
      const std::size_t comma = std::min(a_text.find(',', pos), a_text.size());
      const std::string part = a_text.substr(pos, comma - pos);
      if (part.empty() || part.size() > 6 || part.find_first_not_of("0123456789") != std::string::npos)
        throw Error(ErrorCode::InvalidInput, "--a must be a comma-separated list of integers");
      a.push_back(std::stoll(part));
      pos = comma + 1;
    }
  }
  if (static_cast<int>(a.size()) != n) throw Error(ErrorCode::InvalidInput, "--a must have n entries");

  std::vector<std::pair<int, int>> slots;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) slots.emplace_back(i, j);

  std::ostringstream csv;
  for (const auto& [i, j] : slots) csv << "q" << i + 1 << j + 1 << ",";
  for (int i = 0; i < n; ++i) csv << "h" << i + 1 << ",";
  csv << "nakayama_order_two,compatible_involutions,decision,witness_pi,regime\n";

  const std::uint64_t p = d.param;
  std::vector<std::uint64_t> values(slots.size(), 1);
  bool done = false;
  while (!done) {
    RawPresentation raw;
    raw.field = f;
    raw.a = a;
    raw.q.assign(static_cast<std::size_t>(n), std::vector<Scalar>(static_cast<std::size_t>(n), f.one()));
    for (std::size_t k = 0; k < slots.size(); ++k) {
      const auto [i, j] = slots[k];
      const Scalar q = f.from_int(static_cast<long long>(values[k]));
      raw.q[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = q;
      raw.q[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = q.inverse();
    }
    const Presentation pres = validate_presentation(raw, dim_limit_from_env());
    const DecisionReport dec = decide(pres);
    for (std::uint64_t v : values) csv << v << ",";
    for (const Scalar& h : dec.h) csv << h.to_string() << ",";
    csv << (dec.nakayama_order_two ? "yes" : "no") << "," << dec.candidates.size() << ","
        << (dec.yes ? "yes" : "no") << ",";
    if (dec.yes) csv << csv_quote(dec.witness->pi.to_string()) << "," << to_string(*dec.regime);
    else csv << ",";
    csv << "\n";

    done = true;
    for (std::size_t k = slots.size(); k-- > 0;) {
      if (++values[k] < p) {
        done = false;
        break;
      }
      values[k] = 1;
    }
  }
  if (out_path.empty()) {
    out << csv.str();
  } else {
    write_file(out_path, csv.str());
    out << "written: " << out_path << "\n";
  }
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bi-Frobenius structures on quantum complete intersections"};
  app.name("qci");
  app.require_subcommand(1);

  std::string file;
  bool flag_all = false;
  bool flag_json = false;
  std::string pi_text;
  std::string c_text;
  std::string out_path;
  std::string example_id;
  std::string b_text;
  std::string field_text = "cyclotomic:8";
  int n = 0;
  std::string a_text;
  std::uint64_t max_p = 13;

  auto* validate = app.add_subcommand("validate", "Check a presentation file");
  validate->add_option("file", file, "Presentation file")->required();
  auto* analyze = app.add_subcommand("analyze", "Nakayama data and compatible permutations");
  analyze->add_option("file", file, "Presentation file")->required();
  auto* search = app.add_subcommand("search", "List compatible involutions");
  search->add_option("file", file, "Presentation file")->required();
  search->add_flag("--all-permutations", flag_all, "Include non-involutive permutations");
  auto* decide_cmd = app.add_subcommand("decide", "Decide existence of a structure with permutation antipode");
  decide_cmd->add_option("file", file, "Presentation file")->required();
  decide_cmd->add_flag("--json", flag_json, "JSON output");
  auto* construct = app.add_subcommand("construct", "Build a structure file");
  construct->add_option("file", file, "Presentation file")->required();
  construct->add_option("--pi", pi_text, "Permutation, e.g. \"[1,3,2]\"");
  construct->add_option("--c", c_text, "Scalars c1,c2,...");
  construct->add_option("--out", out_path, "Output structure file")->required();
  auto* verify = app.add_subcommand("verify", "Verify a structure file");
  verify->add_option("file", file, "Structure file")->required();
  verify->add_flag("--json", flag_json, "JSON output");
  auto* example = app.add_subcommand("example", "Build and verify a built-in example");
  example->add_option("id", example_id, "6.9 or 6.10")->required();
  example->add_option("--b", b_text, "Scalar literal for b")->required();
  example->add_option("--field", field_text, "Field, e.g. cyclotomic:8");
  example->add_option("--out", out_path, "Output structure file");
  auto* enumerate = app.add_subcommand("enumerate", "Decide every q over a small prime field");
  enumerate->add_option("--field", field_text, "prime:<p>")->required();
  enumerate->add_option("--n", n, "Number of generators (2 or 3)")->required();
  enumerate->add_option("--a", a_text, "Exponents a1,a2[,a3]")->required();
  enumerate->add_option("--max-p", max_p, "Largest prime accepted");
  enumerate->add_option("--out", out_path, "Output CSV file");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputError;
  }

  try {
    if (validate->parsed()) return cmd_validate(file, out);
    if (analyze->parsed()) return cmd_analyze(file, out);
    if (search->parsed()) return cmd_search(file, flag_all, out);
    if (decide_cmd->parsed()) return cmd_decide(file, flag_json, out);
    if (construct->parsed()) return cmd_construct(file, pi_text, c_text, out_path, out, err);
    if (verify->parsed()) return cmd_verify(file, flag_json, out);
    if (example->parsed()) return cmd_example(example_id, b_text, field_text, out_path, out);
    if (enumerate->parsed()) return cmd_enumerate(field_text, n, a_text, max_p, out_path, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.is_internal() ? kExitInternalError : kExitInputError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternalError;
  }
  return kExitInputError;
}

}  // namespace qci::cli

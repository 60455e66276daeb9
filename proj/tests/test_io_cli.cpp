#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "doctest.h"
#include "qci/cli.hpp"
#include "qci/error.hpp"
#include "qci/io.hpp"
#include "qci/reference_examples.hpp"
#include "support.hpp"

using namespace qci;
using qci::testing::Rng;

namespace {

const Field& c8() {
  static const Field f(FieldDescriptor::cyclotomic(8));
  return f;
}

std::string tmp_path(const std::string& name) {
  const char* base = std::getenv("QCI_TEST_TMP");
  std::filesystem::path dir = base ? std::filesystem::path(base) : std::filesystem::temp_directory_path();
  dir /= "qci_io_cli";
  std::filesystem::create_directories(dir);
  return (dir / name).string();
}

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

Error error_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e;
  }
  FAIL("expected an error");
  return Error(ErrorCode::InvalidInput, "");
}

std::string structure_text(ReferenceExample which) {
  return structure_to_text(reference_structure(which, c8().zeta()));
}

std::string presentation_file(const std::string& name, const std::string& json) {
  const std::string path = tmp_path(name);
  write_file(path, json);
  return path;
}

const char* kFifthRoot = R"({"field": {"kind": "cyclotomic", "order": 5}, "n": 2, "a": [2, 2],
  "q": [["1", "z"], ["z^4", "1"]]})";
const char* kTwisted = R"({"field": {"kind": "cyclotomic", "order": 8}, "n": 3, "a": [2, 2, 2],
  "q": [["1", "z", "z^-1"], ["z^-1", "1", "-z"], ["z", "-z^-1", "1"]]})";
const char* kMinusOneRational = R"({"field": {"kind": "rational"}, "n": 2, "a": [2, 2],
  "q": [["1", "-1"], ["-1", "1"]]})";

}  // namespace

TEST_CASE("presentation files round-trip") {
  Rng rng(71);
  for (const Field& f : {Field(), Field(FieldDescriptor::prime(13)), Field(FieldDescriptor::cyclotomic(12))}) {
    for (int trial = 0; trial < 50; ++trial) {
      const Presentation p = validate_presentation(testing::random_raw(rng, f, testing::uniform(rng, 2, 4), 4));
      const Json j = presentation_to_json(p);
      CHECK(presentation_from_json(parse_json_text(j.dump())) == p);
    }
  }
  const Presentation tw = parse_presentation(kTwisted);
  CHECK(tw == reference_presentation(ReferenceExample::Twisted, c8().zeta()));
}

TEST_CASE("malformed presentation files") {
  CHECK(error_of([] { parse_presentation(R"({"field": {"kind": "rational"}, "n": 3, "a": [2, 2],
    "q": [["1", "1"], ["1", "1"]]})"); }).code() == ErrorCode::SemanticError);
  CHECK(error_of([] { parse_presentation(R"({"field": {"kind": "real"}, "n": 2, "a": [2, 2],
    "q": [["1", "1"], ["1", "1"]]})"); }).code() == ErrorCode::SemanticError);
  CHECK(error_of([] { parse_presentation(R"({"field": {"kind": "rational"}, "n": 2, "a": [2, 2],
    "q": [[1, "1"], ["1", "1"]]})"); }).code() == ErrorCode::SemanticError);
  CHECK(error_of([] { parse_presentation(R"({"field": {"kind": "prime", "p": 6}, "n": 2, "a": [2, 2],
    "q": [["1", "1"], ["1", "1"]]})"); }).code() == ErrorCode::NotPrime);
  CHECK(error_of([] { parse_presentation(R"({"field": {"kind": "rational"}, "n": 2, "a": [2, 2],
    "q": [["1", "2"], ["2", "1"]]})"); }).code() == ErrorCode::BadReciprocal);
  CHECK(error_of([] { parse_presentation(R"({"field": {"kind": "rational"}, "a": [2, 2]})"); }).code() ==
        ErrorCode::SemanticError);
  const Error e = error_of([] { parse_presentation("{\n  \"n\": 2,\n  \"a\": [2, \n"); });
  CHECK(e.code() == ErrorCode::SyntaxError);
  CHECK(e.detail() == "invalid JSON at line 4, column 1");
  CHECK(error_of([] { load_presentation(tmp_path("missing.json")); }).code() == ErrorCode::IoError);
}

TEST_CASE("structure files round-trip") {
  for (ReferenceExample which : {ReferenceExample::Symmetric, ReferenceExample::Twisted}) {
    const BfaStructure b = reference_structure(which, c8().zeta());
    const std::string path = tmp_path("roundtrip.json");
    save_structure(b, path);
    const BfaStructure loaded = load_structure(path);
    CHECK(loaded == b);
    CHECK(structure_to_text(loaded) == read_file(path));
  }
  Rng rng(72);
  for (int trial = 0; trial < 40; ++trial) {
    const Field f(FieldDescriptor::prime(13));
    const Permutation pi = testing::random_involution(rng, testing::uniform(rng, 2, 3));
    const Presentation p = validate_presentation(testing::random_compatible_raw(rng, f, pi, 3, true));
    const auto c = solve_c(p, pi);
    if (!c) continue;
    const BfaStructure b = build_structure(p, pi, *c);
    CHECK(parse_structure(structure_to_text(b)) == b);
  }
}

TEST_CASE("structure files violating invariants") {
  const Json good = parse_json_text(structure_text(ReferenceExample::Symmetric));
  auto expect = [&](auto&& mutate, const std::string& fragment) {
    Json j = good;
    mutate(j);
    const Error e = error_of([&] { structure_from_json(j); });
    CHECK(e.code() == ErrorCode::SemanticError);
    CHECK_MESSAGE(e.detail().find(fragment) != std::string::npos, e.detail());
  };
  expect([](Json& j) { j["g"]["0,0,0"] = "2"; }, "g_{a-1,0}");
  expect([](Json& j) { j["g"]["1,1,1"] = "2"; }, "g_{0,a-1}");
  expect([](Json& j) { j["g"]["1,0,0"] = "0"; }, "nonzero");
  expect([](Json& j) { j["g"]["1,0,0"] = "5"; }, "agree with g");
  expect([](Json& j) { j["g"].erase("1,0,0"); }, "one entry per basis vector");
  expect([](Json& j) { j["delta"]["1,0,0"].push_back(Json::array({"1,0,0", "1,0,0", "1"})); }, "primitive");
  expect([](Json& j) { j["delta"]["0,0,0"] = Json::array(); }, "Delta(1)");
  expect([](Json& j) { j["s"]["1,1,0"][0] = "1,1,0"; }, "pi(v)");
  expect([](Json& j) { j["s"]["1,0,0"][1] = "0"; }, "nonzero");
  expect([](Json& j) { j["s"]["1,1,1"][1] = "-1"; }, "S(x_{a-1})");
  expect([](Json& j) { j["pi"] = Json::array({1, 1, 2}); }, "permutation");
  expect([](Json& j) { j["g"]["2,0,0"] = "1"; j["g"].erase("1,0,0"); }, "outside the basis");
  expect([](Json& j) { j.erase("s"); }, "missing \"s\"");

  const std::string text = structure_text(ReferenceExample::Symmetric);
  const Error truncated = error_of([&] { parse_structure(text.substr(0, text.size() / 2)); });
  CHECK(truncated.code() == ErrorCode::SyntaxError);
  CHECK(truncated.detail().find("line") != std::string::npos);
}

TEST_CASE("report JSON") {
  BfaStructure b = reference_structure(ReferenceExample::Symmetric, c8().zeta());
  negate_g_entry(b, {1, 0, 0});
  const Json j = report_to_json(verify_axioms(b));
  CHECK(j["overall"] == false);
  bool saw = false;
  for (const Json& c : j["checks"]) {
    if (c["check"] != "antipode-definition") continue;
    saw = true;
    CHECK(c["status"] == "fail");
    CHECK(c["counterexample"]["at"] == Json::parse("[[1,0,0]]"));
  }
  CHECK(saw);

  const Json d = decision_to_json(decide(reference_presentation(ReferenceExample::Twisted, c8().zeta())));
  CHECK(d["decision"] == "yes");
  CHECK(d["witness"]["pi"] == "[1,3,2]");
  CHECK(d["cross_check_agrees"] == true);
}

TEST_CASE("cli: worked example tables") {
  const Run r = run({"example", "6.10", "--b", "z", "--field", "cyclotomic:8"});
  CHECK(r.code == cli::kExitOk);
  for (const char* line : {"S(1) = 1\n", "S(x1) = -x1\n", "S(x2) = z^2*x3\n", "S(x3) = z^2*x2\n",
                           "S(x1x2) = -z*x1x3\n", "S(x1x3) = -z^3*x1x2\n", "S(x2x3) = -x2x3\n",
                           "S(x1x2x3) = x1x2x3\n", "overall: pass\n", "hopf comultiplication: no\n"})
    CHECK_MESSAGE(r.out.find(line) != std::string::npos, line);

  const Run sym = run({"example", "6.9", "--b", "2", "--field", "rational"});
  CHECK(sym.code == cli::kExitOk);
  CHECK(sym.out.find("S(x1x2) = 1/2*x1x3\n") != std::string::npos);
  CHECK(sym.out.find("S(x1x3) = 2*x1x2\n") != std::string::npos);
  CHECK(sym.out.find("primitive dimension: 6\n") != std::string::npos);

  CHECK(run({"example", "6.10", "--b", "2", "--field", "rational"}).code == cli::kExitInputError);
  CHECK(run({"example", "6.11", "--b", "2"}).code == cli::kExitInputError);
  CHECK(run({"example", "6.9", "--b", "0"}).code == cli::kExitInputError);
}

TEST_CASE("cli: decide") {
  const Run fifth = run({"decide", presentation_file("fifth.json", kFifthRoot)});
  CHECK(fifth.code == cli::kExitOk);
  CHECK(fifth.out.rfind("No: Nakayama order", 0) == 0);

  const Run tw = run({"decide", presentation_file("twisted.json", kTwisted)});
  CHECK(tw.code == cli::kExitOk);
  CHECK(tw.out.rfind("Yes: pi = [1,3,2], c = (", 0) == 0);

  const Run minus = run({"decide", "--json", presentation_file("minus.json", kMinusOneRational)});
  CHECK(minus.code == cli::kExitOk);
  const Json j = Json::parse(minus.out);
  CHECK(j["decision"] == "no");
  CHECK(j["candidates"].size() == 2);
}

TEST_CASE("cli: construct and verify") {
  const std::string pres = presentation_file("twisted.json", kTwisted);
  const std::string built = tmp_path("twisted_structure.json");
  Run r = run({"construct", pres, "--out", built});
  CHECK(r.code == cli::kExitOk);
  CHECK(load_structure(built).witness.pi.to_string() == "[1,3,2]");
  r = run({"verify", built});
  CHECK(r.code == cli::kExitOk);
  CHECK(r.out.find("overall: pass") != std::string::npos);

  const std::string explicit_path = tmp_path("explicit.json");
  r = run({"construct", pres, "--pi", "[1,3,2]", "--c", "-1,z^2,z^2", "--out", explicit_path});
  CHECK(r.code == cli::kExitOk);
  CHECK(load_structure(explicit_path) == reference_structure(ReferenceExample::Twisted, c8().zeta()));
  CHECK(run({"construct", pres, "--pi", "[1,3,2]", "--c", "1,1,1", "--out", explicit_path}).code ==
        cli::kExitInputError);
  CHECK(run({"construct", pres, "--pi", "[1,3,2]", "--out", explicit_path}).code == cli::kExitInputError);
  CHECK(run({"construct", presentation_file("minus.json", kMinusOneRational), "--out", explicit_path}).code ==
        cli::kExitInputError);

  BfaStructure broken = reference_structure(ReferenceExample::Twisted, c8().zeta());
  negate_g_entry(broken, {0, 1, 0});
  const std::string broken_path = tmp_path("broken.json");
  save_structure(broken, broken_path);
  r = run({"verify", broken_path});
  CHECK(r.code == cli::kExitVerificationFailed);
  CHECK(r.out.find("FAIL antipode-definition at (0,1,0)") != std::string::npos);
  r = run({"verify", "--json", broken_path});
  CHECK(r.code == cli::kExitVerificationFailed);
  CHECK(Json::parse(r.out)["overall"] == false);

  const std::string text = read_file(broken_path);
  write_file(broken_path, text.substr(0, text.size() - 40));
  CHECK(run({"verify", broken_path}).code == cli::kExitInputError);
}

TEST_CASE("cli: validate, analyze, search") {
  const std::string tw = presentation_file("twisted.json", kTwisted);
  Run r = run({"validate", tw});
  CHECK(r.code == cli::kExitOk);
  CHECK(r.out.rfind("valid\n", 0) == 0);
  r = run({"analyze", tw});
  CHECK(r.out.find("h_e2: -1\n") != std::string::npos);
  CHECK(r.out.find("symmetric: no\n") != std::string::npos);
  CHECK(r.out.find("nakayama order: 2\n") != std::string::npos);
  CHECK(r.out.find("[1,3,2] involution") != std::string::npos);
  r = run({"analyze", presentation_file("fifth.json", kFifthRoot)});
  CHECK(r.out.find("nakayama order: 5\n") != std::string::npos);
  r = run({"search", tw});
  CHECK(r.out.find("[1,3,2] q_pi = 1 I = {1} J = {2,3} I1 = {1}") != std::string::npos);
  CHECK(r.out.find("J3 = {2,3}") != std::string::npos);
  r = run({"search", "--all-permutations", tw});
  CHECK(r.code == cli::kExitOk);

  CHECK(run({"validate", tmp_path("nope.json")}).code == cli::kExitInputError);
  CHECK(run({"validate", presentation_file("bad.json", "{\"n\": ")}).code == cli::kExitInputError);
  CHECK(run({"frobnicate"}).code == cli::kExitInputError);
  CHECK(run({}).code == cli::kExitInputError);
  CHECK(run({"--help"}).code == cli::kExitOk);
}

TEST_CASE("cli: dimension cap from the environment") {
  const std::string tw = presentation_file("twisted.json", kTwisted);
  setenv("QCI_DIM_LIMIT", "4", 1);
  const Run capped = run({"validate", tw});
  setenv("QCI_DIM_LIMIT", "8", 1);
  const Run fits = run({"validate", tw});
  setenv("QCI_DIM_LIMIT", "lots", 1);
  const Run junk = run({"validate", tw});
  unsetenv("QCI_DIM_LIMIT");
  CHECK(capped.code == cli::kExitInputError);
  CHECK(capped.err.find("TooLarge") != std::string::npos);
  CHECK(fits.code == cli::kExitOk);
  CHECK(junk.code == cli::kExitInputError);
}

TEST_CASE("cli: enumerate") {
  Run r = run({"enumerate", "--field", "prime:5", "--n", "2", "--a", "2,2"});
  CHECK(r.code == cli::kExitOk);
  std::istringstream lines(r.out);
  std::string header;
  std::getline(lines, header);
  CHECK(header == "q12,h1,h2,nakayama_order_two,compatible_involutions,decision,witness_pi,regime");
  std::vector<std::string> rows;
  for (std::string line; std::getline(lines, line);) rows.push_back(line);
  REQUIRE(rows.size() == 4);
  CHECK(rows[3] == "4,4,4,yes,2,yes,\"[1,2]\",imaginary-negative-fixed");

  r = run({"enumerate", "--field", "prime:3", "--n", "3", "--a", "2,2,2"});
  CHECK(r.code == cli::kExitOk);
  CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 1 + 8);

  const std::string csv = tmp_path("grid.csv");
  r = run({"enumerate", "--field", "prime:7", "--n", "2", "--a", "2,3", "--out", csv});
  CHECK(r.code == cli::kExitOk);
  CHECK(read_file(csv).rfind("q12,", 0) == 0);

  CHECK(run({"enumerate", "--field", "prime:17", "--n", "2", "--a", "2,2"}).code == cli::kExitInputError);
  CHECK(run({"enumerate", "--field", "prime:17", "--n", "2", "--a", "2,2", "--max-p", "17"}).code == cli::kExitOk);
  CHECK(run({"enumerate", "--field", "rational", "--n", "2", "--a", "2,2"}).code == cli::kExitInputError);
  CHECK(run({"enumerate", "--field", "prime:5", "--n", "4", "--a", "2,2,2,2"}).code == cli::kExitInputError);
  CHECK(run({"enumerate", "--field", "prime:5", "--n", "2", "--a", "2"}).code == cli::kExitInputError);
}

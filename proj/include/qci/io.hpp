#pragma once

// JSON files for presentations and structures, and JSON renderings of the
// decision and verification reports.

#include <string>
#include <string_view>

#include "json.hpp"
#include "qci/builder.hpp"
#include "qci/verifier.hpp"

namespace qci {

using Json = nlohmann::ordered_json;

Json field_to_json(const FieldDescriptor& d);
/// Accepts {"kind":"rational"}, {"kind":"prime","p":p}, {"kind":"cyclotomic","order":m}.
FieldDescriptor field_from_json(const Json& j);

/// "1,0,1" and back.
std::string exp_vec_key(const ExpVec& v);
ExpVec exp_vec_from_key(std::string_view key, int n);

Json presentation_to_json(const Presentation& p);
/// Throws SyntaxError/SemanticError for malformed content, plus the
/// validate_presentation errors.
Presentation presentation_from_json(const Json& j, std::size_t dim_limit = kDefaultDimLimit);

/// Parses text; SyntaxError messages carry "line L, column C".
Json parse_json_text(std::string_view text);
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

Presentation parse_presentation(std::string_view text, std::size_t dim_limit = kDefaultDimLimit);
Presentation load_presentation(const std::string& path, std::size_t dim_limit = kDefaultDimLimit);

Json structure_to_json(const BfaStructure& b);
/// Throws SemanticError naming the violated invariant: boundary g values
/// equal 1, g entries nonzero, Delta(1) = 1 (x) 1, middle monomials
/// primitive, Delta(x_{a-1}) agreeing with g, S(x_v) a nonzero multiple of
/// x_{pi(v)}, and S(x_{a-1}) = x_{a-1}.
BfaStructure structure_from_json(const Json& j, std::size_t dim_limit = kDefaultDimLimit);

/// Canonical text: two-space indentation and a trailing newline.
std::string structure_to_text(const BfaStructure& b);
BfaStructure parse_structure(std::string_view text, std::size_t dim_limit = kDefaultDimLimit);
void save_structure(const BfaStructure& b, const std::string& path);
BfaStructure load_structure(const std::string& path, std::size_t dim_limit = kDefaultDimLimit);

Json report_to_json(const VerificationReport& r);
Json decision_to_json(const DecisionReport& d);

}  // namespace qci

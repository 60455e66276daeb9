#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qci::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitVerificationFailed = 2;
inline constexpr int kExitInternalError = 3;

/// Runs one subcommand; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qci::cli

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace forminv::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitInputError = 2;

/// Runs one command line (without the program name). Reads the map from
/// `in` when no --map file is given.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, std::istream& in);

}  // namespace forminv::cli

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qdesign::cli {

/// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kFailure = 1;
inline constexpr int kSchema = 2;
inline constexpr int kUnverified = 3;
inline constexpr int kCapacity = 4;

/// Runs the tool on `args` (without the program name). "-" as a path means
/// `in` / `out`.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err);

}  // namespace qdesign::cli

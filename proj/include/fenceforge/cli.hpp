#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fenceforge {

/// Exit codes: 0 success, 1 assumption violation or malformed input,
/// 2 internal consistency failure.
inline constexpr int kExitOk = 0;
inline constexpr int kExitAssumption = 1;
inline constexpr int kExitConsistency = 2;

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int cli_main(int argc, char** argv);

}  // namespace fenceforge

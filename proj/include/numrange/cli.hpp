#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace numrange {

inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitInput = 2;

/// Command-line entry point: compute, verify, demo, plot. Returns the exit
/// status; errors go to `err` as one JSON object per line.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace numrange

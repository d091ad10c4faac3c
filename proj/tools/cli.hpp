#pragma once

#include <string>
#include <vector>

namespace hfm::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kInvalid = 1;         // bad flags, config or data; evaluation errors
inline constexpr int kOutOfTolerance = 2;  // check or constant outside tolerance, verdict false
inline constexpr int kOutsideHypotheses = 3;

// Runs `hfm <args...>` (args excludes the program name) and returns the exit
// code. Messages go to stderr, a one-line summary to stdout.
int run(const std::vector<std::string>& args);

}  // namespace hfm::cli

#pragma once

#include <iosfwd>

namespace s2t::cli {

enum ExitCode : int {
  kSuccess = 0,
  kUsage = 2,  // parse or config errors
  kHypothesis = 3,
  kGoodness = 4,
  kIo = 5,
};

/// Entry point of the `s2t` tool; returns the process exit code.
int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace s2t::cli

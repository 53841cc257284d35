#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ctrlsynth::cli {

/// Exit statuses shared by every subcommand.
enum Exit : int {
  kOk = 0,
  kUsage = 1,      // bad flags, unreadable files, malformed input
  kInternal = 2,   // a pipeline invariant did not hold
  kVerifyFail = 3, // verification found counterexamples
};

/// Runs `ctrlsynth <args...>` (args excludes the program name).
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace ctrlsynth::cli

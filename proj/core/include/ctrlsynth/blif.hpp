/// @file  blif.hpp
/// @brief Single-output, on-set-only BLIF covers as controller relations
///
/// Accepted dialect, one directive per logical line (a trailing backslash
/// continues a line, `#` starts a comment):
///
///     .model <name>
///     .inputs <name>...
///     .outputs <name>
///     .names <every input, in declared order> <the output>
///     <pattern over 0/1/-> 1
///     ...
///     .end
///
/// Anything else is rejected with a BlifError carrying the line number.

#pragma once

#include "ctrlsynth/solver.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace ctrlsynth {

struct BlifModel {
  std::string name;
  std::vector<std::string> inputs;
  std::string output;
  /// On-set rows; cubes[i][j] in {'0', '1', '-'} constrains inputs[j].
  std::vector<std::string> cubes;

  friend bool operator==(const BlifModel &, const BlifModel &) = default;
};

BlifModel parse_blif(std::string_view text);
std::string render_blif(const BlifModel &model);

/// Builds K as the disjunction of the cubes over a manager whose variable
/// order is the input declaration order. Throws InputError for unknown,
/// missing or doubly-listed names.
ControllerSpec build_spec(const BlifModel &model, const std::vector<std::string> &state_names,
                          const std::vector<std::string> &action_names);

} // namespace ctrlsynth

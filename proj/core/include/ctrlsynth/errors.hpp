#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ctrlsynth {

/// Malformed user input: bad files, unknown names, inconsistent flags.
class InputError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// BLIF rejection, always tied to a source line (1-based).
class BlifError : public InputError {
public:
  BlifError(std::size_t line, const std::string &what)
      : InputError("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

/// A structural guarantee of the pipeline did not hold.
class InvariantError : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

} // namespace ctrlsynth

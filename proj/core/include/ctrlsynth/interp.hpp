/// @file  interp.hpp
/// @brief Direct execution of block programs with exact step counting

#pragma once

#include "ctrlsynth/codegen.hpp"

#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

namespace ctrlsynth {

struct RunTrace {
  bool result_bit = false;
  /// Blocks executed, Return included; always visited_labels.size().
  std::size_t steps = 0;
  std::vector<NodeId> visited_labels;
  /// Complemented else-edges taken.
  std::size_t flips = 0;
};

struct ControllerRun {
  std::vector<std::uint8_t> u;
  std::size_t total_steps = 0;
};

/// Executes a program the way the emitted C would. One step is one block.
/// The program must outlive the interpreter.
class BlockInterpreter {
public:
  explicit BlockInterpreter(const BlockProgram &program);

  /// `K_bits(x, action)`. Throws std::out_of_range for a bad action index or
  /// state width, InvariantError for an undefined label or a run longer than
  /// the program (control flow that cannot terminate).
  RunTrace run_kbits(std::span<const std::uint8_t> x, std::size_t action) const;
  /// `K(x, u)`.
  ControllerRun run_controller(std::span<const std::uint8_t> x) const;

private:
  const BlockProgram &program_;
  std::unordered_map<NodeId, std::size_t> index_;
};

inline RunTrace run_kbits(const BlockProgram &program, std::span<const std::uint8_t> x,
                          std::size_t action) {
  return BlockInterpreter(program).run_kbits(x, action);
}

inline ControllerRun run_controller(const BlockProgram &program,
                                    std::span<const std::uint8_t> x) {
  return BlockInterpreter(program).run_controller(x);
}

} // namespace ctrlsynth

/// @file  codegen.hpp
/// @brief Branch programs with cross-function node sharing, and their C rendering

#pragma once

#include "ctrlsynth/cobdd.hpp"
#include "ctrlsynth/solver.hpp"

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

namespace ctrlsynth {

/// `if (x[input] == 1) goto then_label; else { [ret_b = !ret_b;] goto else_label; }`
struct Branch {
  VarId var;
  /// Position of `var` within the state vector, i.e. the C array index.
  std::size_t input = 0;
  NodeId then_label;
  NodeId else_label;
  bool flip_on_else = false;

  friend bool operator==(const Branch &, const Branch &) = default;
};

/// `return ret_b;`
struct Return {
  friend bool operator==(const Return &, const Return &) = default;
};

struct Block {
  NodeId label;
  std::variant<Branch, Return> body;

  bool is_return() const noexcept { return std::holds_alternative<Return>(body); }
  friend bool operator==(const Block &, const Block &) = default;
};

/// Where `K_bits(x, i)` starts: `ret_b = init_bit; goto entry_label;`
struct Entry {
  bool init_bit = false;
  NodeId label;

  friend bool operator==(const Entry &, const Entry &) = default;
};

struct BlockProgram {
  std::vector<Block> blocks;
  std::vector<Entry> entries;
  std::size_t n = 0;
  std::size_t r = 0;

  /// Index into `blocks`, or blocks.size() when the label is absent.
  std::size_t find(NodeId label) const noexcept;
  /// Longest entry-to-Return path length in blocks, per entry (Return counted).
  std::vector<std::size_t> step_bounds() const;

  friend bool operator==(const BlockProgram &, const BlockProgram &) = default;
};

/// Translates f_1..f_r by depth-first traversal (node, then-subtree,
/// else-subtree) with one visited set shared across all roots, so every node
/// becomes exactly one block. Throws InvariantError when a function tests a
/// variable outside the state vector.
BlockProgram generate_program(const ControllerSpec &spec, const SolvedController &solved);

/// Renders `int K_bits(int *x, int action)` and `void K(int *x, int *u)`.
/// Byte-deterministic.
std::string emit_c_source(const BlockProgram &program);

/// Label spelling used in emitted C: the terminal is `L_1`, others `L_n<id>`.
std::string c_label(NodeId id);

struct SynthReport {
  std::size_t n = 0;
  std::size_t r = 0;
  std::size_t k_nodes = 0;
  std::size_t f_unshared = 0;
  std::size_t sw_blocks = 0;
  double gain_percent = 0.0;
  std::vector<std::uint32_t> heights;
  std::size_t wcet_steps_bound = 0;
};

SynthReport compute_stats(const ControllerSpec &spec, const SolvedController &solved,
                          const BlockProgram &program);

} // namespace ctrlsynth

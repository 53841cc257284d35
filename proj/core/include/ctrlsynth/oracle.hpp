/// @file  oracle.hpp
/// @brief Brute-force ground truth for relations, solvers and block programs

#pragma once

#include "ctrlsynth/blif.hpp"
#include "ctrlsynth/codegen.hpp"
#include "ctrlsynth/solver.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace ctrlsynth {

inline constexpr std::size_t kExhaustiveCap = 24;
inline constexpr std::uint64_t kDefaultSeed = 0x5eed2011;

/// Evaluates K(x, u) straight from a cube list, without any decision diagram.
class CubeRelation {
public:
  CubeRelation(const BlifModel &model, const std::vector<std::string> &state_names,
               const std::vector<std::string> &action_names);

  std::size_t n() const noexcept { return state_pos_.size(); }
  std::size_t r() const noexcept { return action_pos_.size(); }

  bool holds(std::span<const std::uint8_t> x, std::span<const std::uint8_t> u) const;
  /// Over model inputs in declaration order.
  bool holds_on_inputs(std::span<const std::uint8_t> inputs) const;
  /// exists u . K(x, u), by enumerating all 2^r actions.
  bool controllable(std::span<const std::uint8_t> x) const;

private:
  std::vector<std::string> cubes_;
  std::size_t width_ = 0;
  std::vector<std::size_t> state_pos_;
  std::vector<std::size_t> action_pos_;
};

/// Row i assigns bit (i >> (k-1-j)) & 1 to vars[j]: the last variable varies
/// fastest. Variables outside `vars` are left unassigned, so `vars` must cover
/// the support. Throws std::invalid_argument beyond `max_vars`.
std::vector<std::uint8_t> truth_table(const Manager &manager, FuncHandle f,
                                      std::span<const VarId> vars,
                                      std::size_t max_vars = kExhaustiveCap);
/// K over all manager variables in declaration order.
std::vector<std::uint8_t> truth_table(const ControllerSpec &spec,
                                      std::size_t max_vars = kExhaustiveCap);
/// Cube semantics over model inputs in declaration order.
std::vector<std::uint8_t> truth_table(const BlifModel &model,
                                      std::size_t max_vars = kExhaustiveCap);

enum class VerifyMode { Auto, Exhaustive, Sampled };

struct VerifyOptions {
  VerifyMode mode = VerifyMode::Auto;
  std::size_t samples = 10000;
  std::uint64_t seed = kDefaultSeed;
  std::size_t exhaustive_cap = kExhaustiveCap;
  std::size_t max_counterexamples = 16;
};

struct Counterexample {
  std::vector<std::uint8_t> x;
  std::vector<std::uint8_t> u;
  std::string reason;
  std::vector<std::vector<NodeId>> traces;
};

struct Verdict {
  bool pass = true;
  bool exhaustive = true;
  std::uint64_t seed = 0;
  std::size_t states_checked = 0;
  std::size_t states_in_domain = 0;
  std::size_t states_failed = 0;
  std::size_t max_total_steps = 0;
  std::size_t step_bound = 0;
  std::vector<std::string> warnings;
  std::vector<Counterexample> counterexamples;
};

/// For each checked state x: (a) x controllable implies K(x, F(x)) by the
/// cube oracle, and the solver's dom agrees with the oracle; (b) the program
/// computes exactly f_1(x)..f_r(x); (c) every K_bits run takes at most
/// height(v_i) + 1 steps and the whole controller at most r(n+1).
Verdict verify_controller(const ControllerSpec &spec, const SolvedController &solved,
                          const BlockProgram &program, const CubeRelation &relation,
                          const VerifyOptions &options = {});

std::string to_text(const Verdict &verdict);

enum class MutationKind { FlipToggle, TargetSwap, InitToggle };

struct Mutation {
  MutationKind kind;
  /// Block index for FlipToggle/TargetSwap, entry index for InitToggle.
  std::size_t index = 0;
};

/// Every single edit that changes the program: one flip toggle per branch,
/// one then/else swap per branch with distinct targets, one init toggle per
/// entry.
std::vector<Mutation> single_edit_mutations(const BlockProgram &program);
BlockProgram apply_mutation(BlockProgram program, const Mutation &mutation);
/// Parses "flip:<i>", "swap:<i>" or "init:<i>"; throws InputError.
Mutation parse_mutation(const std::string &text);
std::string to_string(const Mutation &mutation);

} // namespace ctrlsynth

/// @file  solver.hpp
/// @brief Solving K(x, u) = 1 for u as functions of the state x

#pragma once

#include "ctrlsynth/cobdd.hpp"

#include <vector>

namespace ctrlsynth {

/// A controller relation together with its state/action partition. The
/// action order u_1..u_r is the bit priority used by the solver.
struct ControllerSpec {
  Manager manager;
  FuncHandle k;
  std::vector<VarId> state_vars;
  std::vector<VarId> action_vars;

  std::size_t n() const noexcept { return state_vars.size(); }
  std::size_t r() const noexcept { return action_vars.size(); }
};

/// Throws std::invalid_argument if the partition is empty on either side,
/// overlaps, repeats a variable, or misses part of the support of `k`.
void validate(const ControllerSpec &spec);

struct SolvedController {
  /// f_1..f_r, one per action bit, each over state variables only.
  std::vector<FuncHandle> functions;
  /// Characteristic function of the controllable states (exists u. K).
  FuncHandle dom;
};

FuncHandle compute_dom(ControllerSpec &spec);

/// f_i = exists u_{i+1}..u_r . K(x, f_1, .., f_{i-1}, 1, u_{i+1}, .., u_r).
/// Earlier action bits are greedily set to 1 whenever that stays satisfiable.
SolvedController solve_functional_eq(ControllerSpec &spec);

} // namespace ctrlsynth

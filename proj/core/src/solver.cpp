#include "ctrlsynth/solver.hpp"

#include "ctrlsynth/errors.hpp"

#include <algorithm>
#include <stdexcept>

namespace ctrlsynth {

void validate(const ControllerSpec &spec) {
  const auto &m = spec.manager;
  if (!m.owns(spec.k))
    throw std::invalid_argument("relation handle does not belong to the spec's manager");
  if (spec.state_vars.empty())
    throw std::invalid_argument("controller needs at least one state variable");
  if (spec.action_vars.empty())
    throw std::invalid_argument("controller needs at least one action variable");

  std::vector<int> role(m.var_count(), 0);
  auto mark = [&](const std::vector<VarId> &vars, int tag) {
    for (auto v : vars) {
      if (v.index >= m.var_count())
        throw std::invalid_argument("variable index " + std::to_string(v.index) + " out of range");
      if (role[v.index] != 0)
        throw std::invalid_argument("variable '" + m.var_name(v) +
                                    "' listed more than once in the state/action partition");
      role[v.index] = tag;
    }
  };
  mark(spec.state_vars, 1);
  mark(spec.action_vars, 2);
  for (auto v : m.support(spec.k))
    if (role[v.index] == 0)
      throw std::invalid_argument("relation depends on '" + m.var_name(v) +
                                  "', which is neither a state nor an action variable");
}

FuncHandle compute_dom(ControllerSpec &spec) {
  return spec.manager.exists_many(spec.k, spec.action_vars);
}

SolvedController solve_functional_eq(ControllerSpec &spec) {
  validate(spec);
  auto &m = spec.manager;
  const auto &u = spec.action_vars;

  SolvedController solved;
  solved.functions.reserve(u.size());
  std::vector<Manager::Substitution> subs;
  subs.reserve(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    subs.push_back({u[i], m.one()});
    const auto fixed = m.compose_many(spec.k, subs);
    const std::span<const VarId> later(u.begin() + static_cast<std::ptrdiff_t>(i) + 1, u.end());
    const auto fi = m.exists_many(fixed, later);

    for (auto v : m.support(fi))
      if (std::find(u.begin(), u.end(), v) != u.end())
        throw InvariantError("solved function for '" + m.var_name(u[i]) +
                             "' depends on action variable '" + m.var_name(v) + "'");
    subs.back().replacement = fi;
    solved.functions.push_back(fi);
  }
  solved.dom = compute_dom(spec);
  return solved;
}

} // namespace ctrlsynth

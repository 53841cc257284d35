#include "ctrlsynth/oracle.hpp"

#include "ctrlsynth/errors.hpp"
#include "ctrlsynth/interp.hpp"

#include <algorithm>
#include <random>
#include <sstream>
#include <stdexcept>

namespace ctrlsynth {

namespace {

std::size_t position_of(const std::vector<std::string> &names, const std::string &n) {
  const auto it = std::find(names.begin(), names.end(), n);
  if (it == names.end())
    throw InputError("'" + n + "' is not a model input");
  return static_cast<std::size_t>(it - names.begin());
}

bool cube_matches(const std::string &cube, std::span<const std::uint8_t> inputs) {
  for (std::size_t j = 0; j < cube.size(); ++j) {
    if (cube[j] == '-')
      continue;
    if ((cube[j] == '1') != (inputs[j] != 0))
      return false;
  }
  return true;
}

void check_width(std::size_t k, std::size_t max_vars) {
  if (k > max_vars || k >= 63)
    throw std::invalid_argument("truth table over " + std::to_string(k) +
                                " variables exceeds the cap of " + std::to_string(max_vars));
}

std::string bits(std::span<const std::uint8_t> v) {
  std::string s;
  for (auto b : v)
    s.push_back(b ? '1' : '0');
  return s;
}

} // namespace

CubeRelation::CubeRelation(const BlifModel &model, const std::vector<std::string> &state_names,
                           const std::vector<std::string> &action_names)
    : cubes_(model.cubes), width_(model.inputs.size()) {
  for (const auto &n : state_names)
    state_pos_.push_back(position_of(model.inputs, n));
  for (const auto &n : action_names)
    action_pos_.push_back(position_of(model.inputs, n));
}

bool CubeRelation::holds_on_inputs(std::span<const std::uint8_t> inputs) const {
  if (inputs.size() != width_)
    throw std::invalid_argument("expected " + std::to_string(width_) + " input bits");
  return std::any_of(cubes_.begin(), cubes_.end(),
                     [&](const std::string &c) { return cube_matches(c, inputs); });
}

bool CubeRelation::holds(std::span<const std::uint8_t> x, std::span<const std::uint8_t> u) const {
  if (x.size() != n() || u.size() != r())
    throw std::invalid_argument("state/action width mismatch");
  std::vector<std::uint8_t> in(width_, 0);
  for (std::size_t i = 0; i < x.size(); ++i)
    in[state_pos_[i]] = x[i];
  for (std::size_t i = 0; i < u.size(); ++i)
    in[action_pos_[i]] = u[i];
  return holds_on_inputs(in);
}

bool CubeRelation::controllable(std::span<const std::uint8_t> x) const {
  std::vector<std::uint8_t> u(r(), 0);
  const std::uint64_t rows = std::uint64_t{1} << r();
  for (std::uint64_t a = 0; a < rows; ++a) {
    for (std::size_t i = 0; i < r(); ++i)
      u[i] = static_cast<std::uint8_t>((a >> (r() - 1 - i)) & 1);
    if (holds(x, u))
      return true;
  }
  return false;
}

std::vector<std::uint8_t> truth_table(const Manager &manager, FuncHandle f,
                                      std::span<const VarId> vars, std::size_t max_vars) {
  const auto k = vars.size();
  check_width(k, max_vars);
  std::vector<std::uint8_t> assignment(manager.var_count(), 2);
  std::vector<std::uint8_t> out(std::size_t{1} << k);
  for (std::size_t row = 0; row < out.size(); ++row) {
    for (std::size_t j = 0; j < k; ++j)
      assignment.at(vars[j].index) = static_cast<std::uint8_t>((row >> (k - 1 - j)) & 1);
    out[row] = manager.eval(f, assignment) ? 1 : 0;
  }
  return out;
}

std::vector<std::uint8_t> truth_table(const ControllerSpec &spec, std::size_t max_vars) {
  std::vector<VarId> all;
  for (std::uint32_t i = 0; i < spec.manager.var_count(); ++i)
    all.push_back(VarId{i});
  return truth_table(spec.manager, spec.k, all, max_vars);
}

std::vector<std::uint8_t> truth_table(const BlifModel &model, std::size_t max_vars) {
  const auto k = model.inputs.size();
  check_width(k, max_vars);
  std::vector<std::uint8_t> in(k);
  std::vector<std::uint8_t> out(std::size_t{1} << k);
  for (std::size_t row = 0; row < out.size(); ++row) {
    for (std::size_t j = 0; j < k; ++j)
      in[j] = static_cast<std::uint8_t>((row >> (k - 1 - j)) & 1);
    out[row] = std::any_of(model.cubes.begin(), model.cubes.end(),
                           [&](const std::string &c) { return cube_matches(c, in); })
                   ? 1
                   : 0;
  }
  return out;
}

Verdict verify_controller(const ControllerSpec &spec, const SolvedController &solved,
                          const BlockProgram &program, const CubeRelation &relation,
                          const VerifyOptions &options) {
  const auto &m = spec.manager;
  const auto n = spec.n();
  const auto r = spec.r();
  if (relation.n() != n || relation.r() != r)
    throw std::invalid_argument("relation oracle shape differs from the spec");
  if (solved.functions.size() != r)
    throw std::invalid_argument("solved controller has the wrong number of functions");

  Verdict v;
  v.seed = options.seed;
  switch (options.mode) {
  case VerifyMode::Auto:
    v.exhaustive = n + r <= options.exhaustive_cap;
    break;
  case VerifyMode::Exhaustive:
    if (n + r > options.exhaustive_cap)
      throw InputError("n + r = " + std::to_string(n + r) +
                                  " exceeds the exhaustive cap of " +
                                  std::to_string(options.exhaustive_cap));
    v.exhaustive = true;
    break;
  case VerifyMode::Sampled:
    v.exhaustive = false;
    break;
  }

  std::vector<std::uint32_t> bit_bounds;
  for (const auto &f : solved.functions) {
    bit_bounds.push_back(m.height(f.node()) + 1);
    v.step_bound += bit_bounds.back();
  }
  const auto coarse_bound = r * (n + 1);

  const BlockInterpreter interp(program);
  std::vector<std::uint8_t> x(n, 0);
  std::vector<std::uint8_t> full(m.var_count(), 0);

  auto check_state = [&] {
    ++v.states_checked;
    for (std::size_t i = 0; i < n; ++i)
      full[spec.state_vars[i].index] = x[i];

    Counterexample cex;
    cex.x = x;
    auto fail = [&](std::string reason) {
      if (!cex.reason.empty())
        cex.reason += "; ";
      cex.reason += std::move(reason);
    };

    const bool in_dom = relation.controllable(x);
    if (in_dom)
      ++v.states_in_domain;
    if (m.eval(solved.dom, full) != in_dom)
      fail("solver domain disagrees with the cube oracle");

    std::vector<std::uint8_t> expected(r);
    for (std::size_t i = 0; i < r; ++i)
      expected[i] = m.eval(solved.functions[i], full) ? 1 : 0;

    std::vector<std::uint8_t> got(r, 0);
    std::size_t total = 0;
    try {
      for (std::size_t i = 0; i < r; ++i) {
        const auto t = interp.run_kbits(x, i);
        got[i] = t.result_bit ? 1 : 0;
        total += t.steps;
        cex.traces.push_back(t.visited_labels);
        if (t.steps > bit_bounds[i])
          fail("K_bits(x, " + std::to_string(i) + ") took " + std::to_string(t.steps) +
               " steps, bound " + std::to_string(bit_bounds[i]));
      }
      v.max_total_steps = std::max(v.max_total_steps, total);
      if (total > coarse_bound)
        fail("controller took " + std::to_string(total) + " steps, bound r(n+1) = " +
             std::to_string(coarse_bound));
      if (got != expected)
        fail("program output " + bits(got) + " differs from solved functions " + bits(expected));
    } catch (const InvariantError &e) {
      fail(std::string("program fault: ") + e.what());
    }
    cex.u = got;
    if (in_dom && !relation.holds(x, got))
      fail("K(x, u) = 0 for a controllable state");
    if (in_dom && !relation.holds(x, expected))
      fail("K(x, F(x)) = 0 for a controllable state");

    if (!cex.reason.empty()) {
      v.pass = false;
      ++v.states_failed;
      if (v.counterexamples.size() < options.max_counterexamples)
        v.counterexamples.push_back(std::move(cex));
    }
  };

  if (v.exhaustive) {
    const std::uint64_t rows = std::uint64_t{1} << n;
    for (std::uint64_t s = 0; s < rows; ++s) {
      for (std::size_t i = 0; i < n; ++i)
        x[i] = static_cast<std::uint8_t>((s >> (n - 1 - i)) & 1);
      check_state();
    }
  } else {
    std::mt19937_64 rng(options.seed);
    for (std::size_t k = 0; k < options.samples; ++k) {
      for (std::size_t i = 0; i < n; ++i)
        x[i] = static_cast<std::uint8_t>(rng() >> 63);
      check_state();
    }
  }

  if (v.states_in_domain == 0)
    v.warnings.push_back(v.exhaustive ? "empty domain: no state is controllable"
                                      : "no sampled state is controllable");
  return v;
}

std::string to_text(const Verdict &v) {
  std::ostringstream os;
  os << (v.pass ? "PASS" : "FAIL") << ' ' << (v.states_checked - v.states_failed) << '/'
     << v.states_checked << " states verified\n";
  os << "mode=" << (v.exhaustive ? "exhaustive" : "sampled") << '\n';
  if (!v.exhaustive)
    os << "seed=" << v.seed << '\n';
  os << "states_checked=" << v.states_checked << '\n';
  os << "states_in_domain=" << v.states_in_domain << '\n';
  os << "states_failed=" << v.states_failed << '\n';
  os << "max_total_steps=" << v.max_total_steps << '\n';
  os << "step_bound=" << v.step_bound << '\n';
  for (const auto &w : v.warnings)
    os << "warning=" << w << '\n';
  for (const auto &c : v.counterexamples) {
    os << "counterexample x=" << bits(c.x) << " u=" << bits(c.u) << " reason=" << c.reason << '\n';
    for (std::size_t i = 0; i < c.traces.size(); ++i) {
      os << "  trace[" << i << "]=";
      for (std::size_t j = 0; j < c.traces[i].size(); ++j)
        os << (j ? " " : "") << c_label(c.traces[i][j]);
      os << '\n';
    }
  }
  return os.str();
}

std::vector<Mutation> single_edit_mutations(const BlockProgram &program) {
  std::vector<Mutation> out;
  for (std::size_t i = 0; i < program.blocks.size(); ++i) {
    const auto *br = std::get_if<Branch>(&program.blocks[i].body);
    if (br == nullptr)
      continue;
    out.push_back({MutationKind::FlipToggle, i});
    if (br->then_label != br->else_label)
      out.push_back({MutationKind::TargetSwap, i});
  }
  for (std::size_t i = 0; i < program.entries.size(); ++i)
    out.push_back({MutationKind::InitToggle, i});
  return out;
}

BlockProgram apply_mutation(BlockProgram program, const Mutation &mutation) {
  if (mutation.kind == MutationKind::InitToggle) {
    auto &e = program.entries.at(mutation.index);
    e.init_bit = !e.init_bit;
    return program;
  }
  auto *br = std::get_if<Branch>(&program.blocks.at(mutation.index).body);
  if (br == nullptr)
    throw std::invalid_argument("block " + std::to_string(mutation.index) + " is not a branch");
  if (mutation.kind == MutationKind::FlipToggle)
    br->flip_on_else = !br->flip_on_else;
  else
    std::swap(br->then_label, br->else_label);
  return program;
}

Mutation parse_mutation(const std::string &text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos)
    throw InputError("mutation must look like <flip|swap|init>:<index>, got '" + text + "'");
  const auto kind = text.substr(0, colon);
  const auto num = text.substr(colon + 1);
  if (num.empty() || num.find_first_not_of("0123456789") != std::string::npos)
    throw InputError("bad mutation index '" + num + "'");
  Mutation m{MutationKind::FlipToggle, std::stoul(num)};
  if (kind == "flip")
    m.kind = MutationKind::FlipToggle;
  else if (kind == "swap")
    m.kind = MutationKind::TargetSwap;
  else if (kind == "init")
    m.kind = MutationKind::InitToggle;
  else
    throw InputError("unknown mutation kind '" + kind + "'");
  return m;
}

std::string to_string(const Mutation &mutation) {
  const char *kind = mutation.kind == MutationKind::FlipToggle   ? "flip"
                     : mutation.kind == MutationKind::TargetSwap ? "swap"
                                                                 : "init";
  return std::string(kind) + ":" + std::to_string(mutation.index);
}

} // namespace ctrlsynth

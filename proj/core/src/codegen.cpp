#include "ctrlsynth/codegen.hpp"

#include "ctrlsynth/errors.hpp"

#include <array>
#include <limits>
#include <numeric>
#include <sstream>
#include <unordered_map>

namespace ctrlsynth {

namespace {

constexpr std::size_t kNoInput = std::numeric_limits<std::size_t>::max();

class Translator {
public:
  Translator(const Manager &m, std::vector<std::size_t> input_of, BlockProgram &out)
      : m_(m), input_of_(std::move(input_of)), visited_(m.node_count() + 2, false), out_(out) {}

  void translate(NodeId v) {
    const auto raw = to_underlying(v);
    if (visited_[raw])
      return;
    visited_[raw] = true;
    if (v == kTerminal) {
      out_.blocks.push_back({v, Return{}});
      return;
    }
    const auto &rec = m_.node(v);
    const auto input = input_of_[rec.var.index];
    if (input == kNoInput)
      throw InvariantError("node " + std::to_string(raw) + " tests non-state variable '" +
                           m_.var_name(rec.var) + "'");
    out_.blocks.push_back({v, Branch{rec.var, input, rec.high, rec.low, rec.flip}});
    translate(rec.high);
    translate(rec.low);
  }

private:
  const Manager &m_;
  std::vector<std::size_t> input_of_;
  std::vector<bool> visited_;
  BlockProgram &out_;
};

} // namespace

std::size_t BlockProgram::find(NodeId label) const noexcept {
  for (std::size_t i = 0; i < blocks.size(); ++i)
    if (blocks[i].label == label)
      return i;
  return blocks.size();
}

std::vector<std::size_t> BlockProgram::step_bounds() const {
  std::unordered_map<NodeId, std::size_t> index;
  for (std::size_t i = 0; i < blocks.size(); ++i)
    index.emplace(blocks[i].label, i);

  // 0 = unvisited, 1 = on stack, 2 = done
  std::vector<int> state(blocks.size(), 0);
  std::vector<std::size_t> longest(blocks.size(), 0);
  auto lookup = [&](NodeId label) {
    auto it = index.find(label);
    if (it == index.end())
      throw InvariantError("jump to undefined label " + c_label(label));
    return it->second;
  };
  auto visit = [&](auto &self, std::size_t i) -> std::size_t {
    if (state[i] == 2)
      return longest[i];
    if (state[i] == 1)
      throw InvariantError("cycle through block " + c_label(blocks[i].label));
    state[i] = 1;
    std::size_t len = 1;
    if (const auto *br = std::get_if<Branch>(&blocks[i].body))
      len += std::max(self(self, lookup(br->then_label)), self(self, lookup(br->else_label)));
    state[i] = 2;
    longest[i] = len;
    return len;
  };

  std::vector<std::size_t> out;
  out.reserve(entries.size());
  for (const auto &e : entries)
    out.push_back(visit(visit, lookup(e.label)));
  return out;
}

std::string c_label(NodeId id) {
  if (id == kTerminal)
    return "L_1";
  return "L_n" + std::to_string(to_underlying(id));
}

BlockProgram generate_program(const ControllerSpec &spec, const SolvedController &solved) {
  const auto &m = spec.manager;
  std::vector<std::size_t> input_of(m.var_count(), kNoInput);
  for (std::size_t j = 0; j < spec.state_vars.size(); ++j)
    input_of.at(spec.state_vars[j].index) = j;

  BlockProgram program;
  program.n = spec.n();
  program.r = solved.functions.size();
  Translator t(m, std::move(input_of), program);
  for (const auto &f : solved.functions) {
    program.entries.push_back({!f.flip(), f.node()});
    t.translate(f.node());
  }
  return program;
}

std::string emit_c_source(const BlockProgram &program) {
  const auto bounds = program.step_bounds();
  const auto total = std::accumulate(bounds.begin(), bounds.end(), std::size_t{0});

  std::ostringstream os;
  os << "/* Generated controller: n=" << program.n << " state bits, r=" << program.r
     << " action bits, " << program.blocks.size() << " blocks, wcet_steps_bound=" << total
     << ". */\n";
  os << "/* Contract: x[0.." << (program.n == 0 ? 0 : program.n - 1)
     << "] hold 0 or 1; K(x, u) is guaranteed only when x is in the controllable domain;"
        " K_bits requires 0 <= action < "
     << program.r << ". */\n";

  os << "int K_bits(int *x, int action) { int ret_b;\n";
  os << "  switch(action) {";
  for (std::size_t i = 0; i < program.entries.size(); ++i) {
    const auto &e = program.entries[i];
    os << (i == 0 ? " " : "\n                   ") << "case " << i
       << ": ret_b = " << (e.init_bit ? 1 : 0) << "; goto " << c_label(e.label) << ";";
  }
  os << " }\n";

  for (const auto &b : program.blocks) {
    os << "  " << c_label(b.label) << ": ";
    if (b.is_return()) {
      os << "return ret_b;\n";
      continue;
    }
    const auto &br = std::get<Branch>(b.body);
    os << "if (x[" << br.input << "] == 1) goto " << c_label(br.then_label) << ";\n";
    os << "    else ";
    if (br.flip_on_else)
      os << "{ ret_b = !ret_b; goto " << c_label(br.else_label) << "; }\n";
    else
      os << "goto " << c_label(br.else_label) << ";\n";
  }
  os << "}\n\n";

  os << "void K(int *x, int *u) { int i; for(i = 0; i < " << program.r << "; i++)\n"
     << "    u[i] = K_bits(x, i); }\n";
  return os.str();
}

SynthReport compute_stats(const ControllerSpec &spec, const SolvedController &solved,
                          const BlockProgram &program) {
  const auto &m = spec.manager;
  SynthReport rep;
  rep.n = spec.n();
  rep.r = solved.functions.size();
  const std::array<FuncHandle, 1> k{spec.k};
  rep.k_nodes = m.reachable_set(k).size();
  for (const auto &f : solved.functions) {
    const std::array<FuncHandle, 1> root{f};
    rep.f_unshared += m.reachable_set(root).size();
    const auto h = m.height(f.node());
    rep.heights.push_back(h);
    rep.wcet_steps_bound += h + 1;
  }
  rep.sw_blocks = program.blocks.size();
  if (rep.f_unshared > 0)
    rep.gain_percent =
        (1.0 - static_cast<double>(rep.sw_blocks) / static_cast<double>(rep.f_unshared)) * 100.0;
  return rep;
}

} // namespace ctrlsynth

#include "ctrlsynth/interp.hpp"

#include "ctrlsynth/errors.hpp"

#include <stdexcept>

namespace ctrlsynth {

BlockInterpreter::BlockInterpreter(const BlockProgram &program) : program_(program) {
  for (std::size_t i = 0; i < program.blocks.size(); ++i)
    index_.emplace(program.blocks[i].label, i);
}

RunTrace BlockInterpreter::run_kbits(std::span<const std::uint8_t> x, std::size_t action) const {
  if (action >= program_.entries.size())
    throw std::out_of_range("action index " + std::to_string(action) + " out of range");
  if (x.size() != program_.n)
    throw std::out_of_range("state vector has " + std::to_string(x.size()) + " bits, expected " +
                            std::to_string(program_.n));

  const auto &entry = program_.entries[action];
  RunTrace trace;
  bool ret_b = entry.init_bit;
  NodeId label = entry.label;
  for (;;) {
    if (trace.visited_labels.size() > program_.blocks.size())
      throw InvariantError("block program does not terminate");
    auto it = index_.find(label);
    if (it == index_.end())
      throw InvariantError("jump to undefined label " + c_label(label));
    trace.visited_labels.push_back(label);
    const auto &block = program_.blocks[it->second];
    const auto *br = std::get_if<Branch>(&block.body);
    if (br == nullptr)
      break;
    if (br->input >= x.size())
      throw InvariantError("block " + c_label(label) + " reads x[" + std::to_string(br->input) + "]");
    if (x[br->input] == 1) {
      label = br->then_label;
    } else {
      if (br->flip_on_else) {
        ret_b = !ret_b;
        ++trace.flips;
      }
      label = br->else_label;
    }
  }
  trace.result_bit = ret_b;
  trace.steps = trace.visited_labels.size();
  return trace;
}

ControllerRun BlockInterpreter::run_controller(std::span<const std::uint8_t> x) const {
  ControllerRun run;
  run.u.reserve(program_.entries.size());
  for (std::size_t i = 0; i < program_.entries.size(); ++i) {
    const auto t = run_kbits(x, i);
    run.u.push_back(t.result_bit ? 1 : 0);
    run.total_steps += t.steps;
  }
  return run;
}

} // namespace ctrlsynth

#include "ctrlsynth/random_instance.hpp"

#include <random>

namespace ctrlsynth {

RandomInstance random_instance(const RandomModelOptions &options) {
  RandomInstance inst;
  for (std::size_t i = 0; i < options.n; ++i)
    inst.state_names.push_back("x" + std::to_string(i));
  for (std::size_t i = 0; i < options.r; ++i)
    inst.action_names.push_back("u" + std::to_string(i));

  auto &m = inst.model;
  m.name = "random";
  m.output = "k";
  if (options.actions_first) {
    m.inputs = inst.action_names;
    m.inputs.insert(m.inputs.end(), inst.state_names.begin(), inst.state_names.end());
  } else {
    m.inputs = inst.state_names;
    m.inputs.insert(m.inputs.end(), inst.action_names.begin(), inst.action_names.end());
  }

  // Raw engine bits: std:: distributions differ between standard libraries.
  std::mt19937_64 rng(options.seed);
  auto constrained = [&] { return static_cast<double>(rng() >> 11) * 0x1.0p-53 < options.literal_density; };
  auto polarity = [&] { return (rng() >> 63) != 0; };
  m.cubes.reserve(options.cubes);
  for (std::size_t c = 0; c < options.cubes; ++c) {
    std::string row(m.inputs.size(), '-');
    for (auto &ch : row)
      if (constrained())
        ch = polarity() ? '1' : '0';
    m.cubes.push_back(std::move(row));
  }
  return inst;
}

} // namespace ctrlsynth

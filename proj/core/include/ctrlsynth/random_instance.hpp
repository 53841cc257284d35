#pragma once

#include "ctrlsynth/blif.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace ctrlsynth {

struct RandomModelOptions {
  std::size_t n = 3;
  std::size_t r = 1;
  std::size_t cubes = 8;
  /// Each input is constrained with this probability.
  double literal_density = 0.5;
  /// Declare u0..u{r-1} before x0..x{n-1} (changes the variable order).
  bool actions_first = false;
  std::uint64_t seed = 1;
};

struct RandomInstance {
  BlifModel model;
  std::vector<std::string> state_names;
  std::vector<std::string> action_names;
};

/// Seeded random cover over states x0.. and actions u0..; deterministic.
RandomInstance random_instance(const RandomModelOptions &options);

} // namespace ctrlsynth

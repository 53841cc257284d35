#pragma once

#include "ctrlsynth/cobdd.hpp"

#include <span>
#include <string>

namespace ctrlsynth {

/// Graphviz rendering of the nodes reachable from `roots`. Then-edges are
/// solid, regular else-edges dashed, complemented else-edges dotted. `labels`
/// (optional, one per root) annotate the root nodes together with the root's
/// flipping bit.
std::string emit_dot(const Manager &manager, std::span<const FuncHandle> roots,
                     std::span<const std::string> labels = {});

} // namespace ctrlsynth

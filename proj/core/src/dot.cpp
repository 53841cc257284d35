#include "ctrlsynth/dot.hpp"

#include <map>
#include <sstream>
#include <stdexcept>

namespace ctrlsynth {

namespace {

std::string quoted(const std::string &s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\')
      out.push_back('\\');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::string dot_id(NodeId id) { return "n" + std::to_string(to_underlying(id)); }

} // namespace

std::string emit_dot(const Manager &manager, std::span<const FuncHandle> roots,
                     std::span<const std::string> labels) {
  if (!labels.empty() && labels.size() != roots.size())
    throw std::invalid_argument("emit_dot: one label per root expected");

  std::map<NodeId, std::string> root_notes;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    auto &note = root_notes[roots[i].node()];
    if (!note.empty())
      note += ", ";
    note += labels[i] + (roots[i].flip() ? " (b=1)" : " (b=0)");
  }

  std::ostringstream os;
  os << "digraph cobdd {\n";
  const auto nodes = manager.reachable_set(roots);
  for (auto id : nodes) {
    os << "  " << dot_id(id) << " [";
    if (id == kTerminal)
      os << "shape=box, label=\"1\"";
    else
      os << "shape=circle, label=" << quoted(manager.var_name(manager.node(id).var));
    if (auto it = root_notes.find(id); it != root_notes.end())
      os << ", xlabel=" << quoted(it->second);
    os << "];\n";
  }
  for (auto id : nodes) {
    if (id == kTerminal)
      continue;
    const auto &rec = manager.node(id);
    os << "  " << dot_id(id) << " -> " << dot_id(rec.high) << " [style=solid];\n";
    os << "  " << dot_id(id) << " -> " << dot_id(rec.low)
       << (rec.flip ? " [style=dotted];\n" : " [style=dashed];\n");
  }
  os << "}\n";
  return os.str();
}

} // namespace ctrlsynth

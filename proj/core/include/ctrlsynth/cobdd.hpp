/// @file  cobdd.hpp
/// @brief Reduced ordered BDDs with complemented else-edges

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace ctrlsynth {

/// Position of a variable in the manager's total order (0-based).
struct VarId {
  std::uint32_t index = 0;

  friend constexpr bool operator==(VarId, VarId) = default;
  friend constexpr auto operator<=>(VarId, VarId) = default;
};

/// Stable node label. Ids are handed out consecutively in creation order and
/// are never reused; the terminal node is always `kTerminal`.
enum class NodeId : std::uint32_t {};

inline constexpr NodeId kTerminal{1};

constexpr std::uint32_t to_underlying(NodeId id) noexcept {
  return static_cast<std::uint32_t>(id);
}

/// Internal node: `var ? high : (flip ? ~low : low)`.
struct NodeRecord {
  VarId var;
  NodeId high;
  NodeId low;
  bool flip = false;
  /// Longest path to the terminal, fixed at creation.
  std::uint32_t height = 0;
};

/// The pair (node, flipping bit). The function it denotes is the node's
/// semantics under the given parity; the terminal under parity b is !b.
class FuncHandle {
public:
  FuncHandle() = default;

  NodeId node() const noexcept { return node_; }
  bool flip() const noexcept { return flip_; }
  bool is_constant() const noexcept { return node_ == kTerminal; }

  friend bool operator==(const FuncHandle &, const FuncHandle &) = default;

private:
  friend class Manager;
  friend FuncHandle negate(FuncHandle f) noexcept;

  FuncHandle(NodeId node, bool flip, std::uint32_t owner) noexcept
      : node_(node), flip_(flip), owner_(owner) {}

  NodeId node_ = kTerminal;
  bool flip_ = false;
  std::uint32_t owner_ = 0;
};

/// Complement. Constant time, never allocates a node.
inline FuncHandle negate(FuncHandle f) noexcept {
  return FuncHandle(f.node_, !f.flip_, f.owner_);
}

enum class BoolOp : std::uint8_t { And, Or, Xor };

/// Result of walking one root-to-terminal path.
struct EvalResult {
  bool value = false;
  /// Nodes visited, terminal included.
  std::size_t visited = 0;
};

/// Canonical node store. Creating operations need exclusive access; the
/// read-only queries (`eval`, `height`, `reachable_set`, `node`) may run
/// concurrently once no creator is active.
class Manager {
public:
  /// Variables are ordered as given. Throws std::invalid_argument on an empty
  /// or duplicate name.
  explicit Manager(std::vector<std::string> variable_names);

  Manager(Manager &&) noexcept = default;
  Manager &operator=(Manager &&) noexcept = default;
  Manager(const Manager &) = delete;
  Manager &operator=(const Manager &) = delete;

  std::size_t var_count() const noexcept { return names_.size(); }
  const std::string &var_name(VarId v) const;
  std::optional<VarId> find_var(std::string_view name) const;

  /// Node records stored, terminal included.
  std::size_t node_count() const noexcept { return nodes_.size() - 1; }
  /// Throws std::out_of_range for an unknown id or the terminal.
  const NodeRecord &node(NodeId id) const;
  /// Top variable; the terminal sorts after every variable (index == var_count).
  VarId top_var(NodeId id) const;
  VarId top_var(FuncHandle f) const { return top_var(f.node()); }

  FuncHandle one() const noexcept { return {kTerminal, false, serial_}; }
  FuncHandle zero() const noexcept { return {kTerminal, true, serial_}; }
  FuncHandle constant(bool value) const noexcept { return value ? one() : zero(); }
  /// The function denoted by node `id` under flipping bit `flip`.
  FuncHandle function(NodeId id, bool flip) const;
  /// The projection function of `v`.
  FuncHandle var(VarId v);

  /// Handle for `v ? then_f : else_f`. Requires `v` strictly above the top
  /// variables of both cofactors (std::invalid_argument otherwise).
  FuncHandle mk_node(VarId v, FuncHandle then_f, FuncHandle else_f);

  /// Throws std::invalid_argument unless every variable on the path is
  /// assigned (entries other than 0/1, or missing entries, count as unassigned).
  bool eval(FuncHandle f, std::span<const std::uint8_t> assignment) const {
    return evaluate(f, assignment).value;
  }
  EvalResult evaluate(FuncHandle f, std::span<const std::uint8_t> assignment) const;

  FuncHandle apply(BoolOp op, FuncHandle f, FuncHandle g);
  FuncHandle ite(FuncHandle cond, FuncHandle then_f, FuncHandle else_f);
  FuncHandle cofactor(FuncHandle f, VarId v, bool value);
  FuncHandle exists_many(FuncHandle f, std::span<const VarId> vars);

  struct Substitution {
    VarId target;
    FuncHandle replacement;
  };
  /// Simultaneous substitution. Rejects repeated targets and any target that
  /// occurs in the support of some replacement.
  FuncHandle compose_many(FuncHandle f, std::span<const Substitution> subs);

  /// Variables `f` depends on, ascending.
  std::vector<VarId> support(FuncHandle f) const;
  /// Union of the nodes reachable from `roots`, terminal included, ascending.
  std::vector<NodeId> reachable_set(std::span<const FuncHandle> roots) const;
  std::uint32_t height(NodeId id) const;

  /// Identifier of this manager; handles remember it.
  std::uint32_t serial() const noexcept { return serial_; }
  bool owns(FuncHandle f) const noexcept { return f.owner_ == serial_; }

private:
  struct NodeKey {
    std::uint32_t var;
    std::uint32_t high;
    std::uint32_t low;
    bool flip;
    friend bool operator==(const NodeKey &, const NodeKey &) = default;
  };
  struct NodeKeyHash {
    std::size_t operator()(const NodeKey &k) const noexcept;
  };
  struct OpKey {
    std::uint64_t a;
    std::uint64_t b;
    std::uint32_t c;
    friend bool operator==(const OpKey &, const OpKey &) = default;
  };
  struct OpKeyHash {
    std::size_t operator()(const OpKey &k) const noexcept;
  };
  using OpCache = std::unordered_map<OpKey, FuncHandle, OpKeyHash>;

  static std::uint64_t pack(FuncHandle f) noexcept {
    return (std::uint64_t{to_underlying(f.node())} << 1) | (f.flip() ? 1u : 0u);
  }
  FuncHandle handle(NodeId node, bool flip) const noexcept { return {node, flip, serial_}; }
  void check_owned(FuncHandle f) const;
  void check_var(VarId v) const;
  /// Cofactors of `f` with respect to `v` (f itself when v is not its top).
  std::pair<FuncHandle, FuncHandle> branches(FuncHandle f, VarId v) const;

  FuncHandle and_rec(FuncHandle f, FuncHandle g);
  FuncHandle xor_rec(FuncHandle f, FuncHandle g);
  FuncHandle cofactor_rec(FuncHandle f, VarId v, bool value);
  FuncHandle exists_rec(FuncHandle f, std::span<const VarId> vars, std::uint32_t set_id);
  std::uint32_t intern_var_set(std::vector<VarId> vars);

  std::vector<std::string> names_;
  std::unordered_map<std::string, VarId> name_index_;
  // Slot 0 is unused so that NodeId values index the table directly.
  std::vector<NodeRecord> nodes_;
  std::unordered_map<NodeKey, NodeId, NodeKeyHash> unique_;
  OpCache and_cache_;
  OpCache xor_cache_;
  OpCache cofactor_cache_;
  OpCache exists_cache_;
  std::vector<std::vector<VarId>> var_sets_;
  std::uint32_t serial_ = 0;
};

} // namespace ctrlsynth

template <> struct std::hash<ctrlsynth::FuncHandle> {
  std::size_t operator()(const ctrlsynth::FuncHandle &f) const noexcept {
    return std::hash<std::uint64_t>{}((std::uint64_t{ctrlsynth::to_underlying(f.node())} << 1) |
                                      (f.flip() ? 1u : 0u));
  }
};

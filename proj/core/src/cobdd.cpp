#include "ctrlsynth/cobdd.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <stdexcept>

namespace ctrlsynth {

namespace {

std::atomic<std::uint32_t> next_serial{1};

inline void hash_combine(std::size_t &seed, std::uint64_t v) noexcept {
  seed ^= std::hash<std::uint64_t>{}(v) + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
}

} // namespace

std::size_t Manager::NodeKeyHash::operator()(const NodeKey &k) const noexcept {
  std::size_t seed = k.var;
  hash_combine(seed, k.high);
  hash_combine(seed, (std::uint64_t{k.low} << 1) | (k.flip ? 1u : 0u));
  return seed;
}

std::size_t Manager::OpKeyHash::operator()(const OpKey &k) const noexcept {
  std::size_t seed = k.c;
  hash_combine(seed, k.a);
  hash_combine(seed, k.b);
  return seed;
}

Manager::Manager(std::vector<std::string> variable_names)
    : names_(std::move(variable_names)), serial_(next_serial.fetch_add(1)) {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i].empty())
      throw std::invalid_argument("empty variable name at position " + std::to_string(i));
    auto [it, inserted] = name_index_.emplace(names_[i], VarId{static_cast<std::uint32_t>(i)});
    if (!inserted)
      throw std::invalid_argument("duplicate variable name '" + names_[i] + "'");
  }
  const auto terminal_var = VarId{static_cast<std::uint32_t>(names_.size())};
  nodes_.resize(2, NodeRecord{terminal_var, kTerminal, kTerminal, false, 0});
}

const std::string &Manager::var_name(VarId v) const {
  check_var(v);
  return names_[v.index];
}

std::optional<VarId> Manager::find_var(std::string_view name) const {
  auto it = name_index_.find(std::string(name));
  if (it == name_index_.end())
    return std::nullopt;
  return it->second;
}

const NodeRecord &Manager::node(NodeId id) const {
  const auto raw = to_underlying(id);
  if (raw <= to_underlying(kTerminal) || raw >= nodes_.size())
    throw std::out_of_range("no internal node with id " + std::to_string(raw));
  return nodes_[raw];
}

VarId Manager::top_var(NodeId id) const {
  const auto raw = to_underlying(id);
  if (raw == 0 || raw >= nodes_.size())
    throw std::out_of_range("no node with id " + std::to_string(raw));
  return nodes_[raw].var;
}

std::uint32_t Manager::height(NodeId id) const {
  const auto raw = to_underlying(id);
  if (raw == 0 || raw >= nodes_.size())
    throw std::out_of_range("no node with id " + std::to_string(raw));
  return nodes_[raw].height;
}

void Manager::check_owned(FuncHandle f) const {
  if (f.owner_ != serial_)
    throw std::invalid_argument("function handle belongs to a different manager");
}

void Manager::check_var(VarId v) const {
  if (v.index >= names_.size())
    throw std::out_of_range("variable index " + std::to_string(v.index) + " out of range");
}

FuncHandle Manager::function(NodeId id, bool flip) const {
  const auto raw = to_underlying(id);
  if (raw == 0 || raw >= nodes_.size())
    throw std::out_of_range("no node with id " + std::to_string(raw));
  return handle(id, flip);
}

FuncHandle Manager::var(VarId v) { return mk_node(v, one(), zero()); }

FuncHandle Manager::mk_node(VarId v, FuncHandle then_f, FuncHandle else_f) {
  check_var(v);
  check_owned(then_f);
  check_owned(else_f);
  if (!(v < top_var(then_f)) || !(v < top_var(else_f)))
    throw std::invalid_argument("variable order violated: '" + names_[v.index] +
                                "' must precede the top variables of both cofactors");
  if (then_f == else_f)
    return then_f;

  const bool record_flip = then_f.flip() != else_f.flip();
  const NodeKey key{v.index, to_underlying(then_f.node()), to_underlying(else_f.node()), record_flip};
  if (auto it = unique_.find(key); it != unique_.end())
    return handle(it->second, then_f.flip());

  const auto id = NodeId{static_cast<std::uint32_t>(nodes_.size())};
  const auto h = 1 + std::max(nodes_[key.high].height, nodes_[key.low].height);
  nodes_.push_back(NodeRecord{v, then_f.node(), else_f.node(), record_flip, h});
  unique_.emplace(key, id);
  return handle(id, then_f.flip());
}

std::pair<FuncHandle, FuncHandle> Manager::branches(FuncHandle f, VarId v) const {
  const auto &rec = nodes_[to_underlying(f.node())];
  if (f.is_constant() || rec.var != v)
    return {f, f};
  return {handle(rec.high, f.flip()), handle(rec.low, f.flip() != rec.flip)};
}

EvalResult Manager::evaluate(FuncHandle f, std::span<const std::uint8_t> assignment) const {
  check_owned(f);
  EvalResult result;
  auto node = f.node();
  bool parity = f.flip();
  while (node != kTerminal) {
    ++result.visited;
    const auto &rec = nodes_[to_underlying(node)];
    const auto idx = rec.var.index;
    if (idx >= assignment.size() || assignment[idx] > 1)
      throw std::invalid_argument("assignment does not cover variable '" + names_[idx] + "'");
    if (assignment[idx] != 0) {
      node = rec.high;
    } else {
      parity = parity != rec.flip;
      node = rec.low;
    }
  }
  ++result.visited;
  result.value = !parity;
  return result;
}

FuncHandle Manager::apply(BoolOp op, FuncHandle f, FuncHandle g) {
  check_owned(f);
  check_owned(g);
  switch (op) {
  case BoolOp::And:
    return and_rec(f, g);
  case BoolOp::Or:
    return negate(and_rec(negate(f), negate(g)));
  case BoolOp::Xor:
    return xor_rec(f, g);
  }
  throw std::invalid_argument("unknown boolean operator");
}

FuncHandle Manager::and_rec(FuncHandle f, FuncHandle g) {
  if (f == g)
    return f;
  if (f == negate(g))
    return zero();
  if (f == one())
    return g;
  if (g == one())
    return f;
  if (f == zero() || g == zero())
    return zero();
  if (pack(f) > pack(g))
    std::swap(f, g);

  const OpKey key{pack(f), pack(g), 0};
  if (auto it = and_cache_.find(key); it != and_cache_.end())
    return it->second;

  const VarId v = std::min(top_var(f), top_var(g));
  const auto [f1, f0] = branches(f, v);
  const auto [g1, g0] = branches(g, v);
  const auto hi = and_rec(f1, g1);
  const auto lo = and_rec(f0, g0);
  const auto result = mk_node(v, hi, lo);
  and_cache_.emplace(key, result);
  return result;
}

FuncHandle Manager::xor_rec(FuncHandle f, FuncHandle g) {
  // xor(~a, b) == ~xor(a, b): work on regular handles and re-apply the parity.
  const bool parity = f.flip() != g.flip();
  f = handle(f.node(), false);
  g = handle(g.node(), false);
  auto with_parity = [parity](FuncHandle h) { return parity ? negate(h) : h; };

  if (f == g)
    return with_parity(zero());
  if (f.is_constant())
    return with_parity(negate(g));
  if (g.is_constant())
    return with_parity(negate(f));
  if (pack(f) > pack(g))
    std::swap(f, g);

  const OpKey key{pack(f), pack(g), 0};
  if (auto it = xor_cache_.find(key); it != xor_cache_.end())
    return with_parity(it->second);

  const VarId v = std::min(top_var(f), top_var(g));
  const auto [f1, f0] = branches(f, v);
  const auto [g1, g0] = branches(g, v);
  const auto hi = xor_rec(f1, g1);
  const auto lo = xor_rec(f0, g0);
  const auto result = mk_node(v, hi, lo);
  xor_cache_.emplace(key, result);
  return with_parity(result);
}

FuncHandle Manager::ite(FuncHandle cond, FuncHandle then_f, FuncHandle else_f) {
  const auto a = apply(BoolOp::And, cond, then_f);
  const auto b = apply(BoolOp::And, negate(cond), else_f);
  return apply(BoolOp::Or, a, b);
}

FuncHandle Manager::cofactor(FuncHandle f, VarId v, bool value) {
  check_owned(f);
  check_var(v);
  return cofactor_rec(f, v, value);
}

FuncHandle Manager::cofactor_rec(FuncHandle f, VarId v, bool value) {
  const VarId top = top_var(f);
  if (v < top)
    return f;
  if (top == v) {
    const auto [f1, f0] = branches(f, v);
    return value ? f1 : f0;
  }
  // Restriction commutes with complement, so cache on the regular handle.
  const bool parity = f.flip();
  const auto regular = handle(f.node(), false);
  const OpKey key{pack(regular), (std::uint64_t{v.index} << 1) | (value ? 1u : 0u), 0};
  FuncHandle result;
  if (auto it = cofactor_cache_.find(key); it != cofactor_cache_.end()) {
    result = it->second;
  } else {
    const auto [f1, f0] = branches(regular, top);
    const auto hi = cofactor_rec(f1, v, value);
    const auto lo = cofactor_rec(f0, v, value);
    result = mk_node(top, hi, lo);
    cofactor_cache_.emplace(key, result);
  }
  return parity ? negate(result) : result;
}

std::uint32_t Manager::intern_var_set(std::vector<VarId> vars) {
  for (std::size_t i = 0; i < var_sets_.size(); ++i)
    if (var_sets_[i] == vars)
      return static_cast<std::uint32_t>(i);
  var_sets_.push_back(std::move(vars));
  return static_cast<std::uint32_t>(var_sets_.size() - 1);
}

FuncHandle Manager::exists_many(FuncHandle f, std::span<const VarId> vars) {
  check_owned(f);
  std::vector<VarId> sorted(vars.begin(), vars.end());
  for (auto v : sorted)
    check_var(v);
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  if (sorted.empty())
    return f;
  const auto id = intern_var_set(sorted);
  // intern_var_set may reallocate var_sets_; take the span afterwards.
  return exists_rec(f, var_sets_[id], id);
}

FuncHandle Manager::exists_rec(FuncHandle f, std::span<const VarId> vars, std::uint32_t set_id) {
  if (f.is_constant())
    return f;
  const VarId top = top_var(f);
  while (!vars.empty() && vars.front() < top)
    vars = vars.subspan(1);
  if (vars.empty())
    return f;

  const OpKey key{pack(f), set_id, 0};
  if (auto it = exists_cache_.find(key); it != exists_cache_.end())
    return it->second;

  const auto [f1, f0] = branches(f, top);
  FuncHandle result;
  if (vars.front() == top) {
    const auto rest = vars.subspan(1);
    const auto hi = exists_rec(f1, rest, set_id);
    result = hi == one() ? hi : negate(and_rec(negate(hi), negate(exists_rec(f0, rest, set_id))));
  } else {
    const auto hi = exists_rec(f1, vars, set_id);
    const auto lo = exists_rec(f0, vars, set_id);
    result = mk_node(top, hi, lo);
  }
  exists_cache_.emplace(key, result);
  return result;
}

FuncHandle Manager::compose_many(FuncHandle f, std::span<const Substitution> subs) {
  check_owned(f);
  std::vector<VarId> targets;
  targets.reserve(subs.size());
  for (const auto &s : subs) {
    check_var(s.target);
    check_owned(s.replacement);
    if (std::find(targets.begin(), targets.end(), s.target) != targets.end())
      throw std::invalid_argument("variable '" + names_[s.target.index] + "' substituted twice");
    targets.push_back(s.target);
  }
  for (const auto &s : subs) {
    for (auto v : support(s.replacement)) {
      if (std::find(targets.begin(), targets.end(), v) != targets.end())
        throw std::invalid_argument("substitution target '" + names_[v.index] +
                                    "' occurs in the support of a replacement");
    }
  }
  for (const auto &s : subs) {
    const auto hi = cofactor_rec(f, s.target, true);
    const auto lo = cofactor_rec(f, s.target, false);
    f = ite(s.replacement, hi, lo);
  }
  return f;
}

std::vector<VarId> Manager::support(FuncHandle f) const {
  check_owned(f);
  const std::array<FuncHandle, 1> roots{f};
  std::vector<bool> seen(names_.size(), false);
  for (auto id : reachable_set(roots))
    if (id != kTerminal)
      seen[nodes_[to_underlying(id)].var.index] = true;
  std::vector<VarId> out;
  for (std::uint32_t i = 0; i < seen.size(); ++i)
    if (seen[i])
      out.push_back(VarId{i});
  return out;
}

std::vector<NodeId> Manager::reachable_set(std::span<const FuncHandle> roots) const {
  std::vector<bool> visited(nodes_.size(), false);
  std::vector<std::uint32_t> stack;
  for (auto r : roots) {
    check_owned(r);
    stack.push_back(to_underlying(r.node()));
  }
  while (!stack.empty()) {
    const auto id = stack.back();
    stack.pop_back();
    if (visited[id])
      continue;
    visited[id] = true;
    if (id != to_underlying(kTerminal)) {
      stack.push_back(to_underlying(nodes_[id].high));
      stack.push_back(to_underlying(nodes_[id].low));
    }
  }
  std::vector<NodeId> out;
  for (std::uint32_t i = 1; i < visited.size(); ++i)
    if (visited[i])
      out.push_back(NodeId{i});
  return out;
}

} // namespace ctrlsynth

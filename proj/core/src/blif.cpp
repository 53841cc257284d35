#include "ctrlsynth/blif.hpp"

#include "ctrlsynth/errors.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <sstream>

namespace ctrlsynth {

namespace {

struct LogicalLine {
  std::size_t number = 0;
  std::vector<std::string> tokens;
};

std::vector<std::string> split(std::string_view s) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r'))
      ++i;
    const auto start = i;
    while (i < s.size() && s[i] != ' ' && s[i] != '\t' && s[i] != '\r')
      ++i;
    if (i > start)
      out.emplace_back(s.substr(start, i - start));
  }
  return out;
}

std::vector<LogicalLine> logical_lines(std::string_view text) {
  std::vector<LogicalLine> out;
  std::string pending;
  std::size_t pending_start = 0;
  std::size_t number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto eol = text.find('\n', pos);
    if (eol == std::string_view::npos)
      eol = text.size();
    std::string_view raw = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++number;

    if (auto hash = raw.find('#'); hash != std::string_view::npos)
      raw = raw.substr(0, hash);
    while (!raw.empty() && (raw.back() == ' ' || raw.back() == '\t' || raw.back() == '\r'))
      raw.remove_suffix(1);
    if (pending.empty())
      pending_start = number;
    const bool continued = !raw.empty() && raw.back() == '\\';
    if (continued)
      raw.remove_suffix(1);
    pending.append(raw);
    pending.push_back(' ');
    if (continued)
      continue;
    auto tokens = split(pending);
    if (!tokens.empty())
      out.push_back({pending_start, std::move(tokens)});
    pending.clear();
  }
  if (!split(pending).empty())
    throw BlifError(pending_start, "line continuation at end of input");
  return out;
}

} // namespace

BlifModel parse_blif(std::string_view text) {
  BlifModel model;
  bool have_model = false, have_inputs = false, have_outputs = false, have_names = false;
  std::optional<std::size_t> end_line;

  for (const auto &line : logical_lines(text)) {
    const auto &tok = line.tokens;
    const auto &head = tok.front();
    auto fail = [&](const std::string &what) -> void { throw BlifError(line.number, what); };

    if (end_line)
      fail("content after .end");

    if (head.front() != '.') {
      if (!have_names)
        fail("cover row outside a .names block");
      if (tok.size() != 2)
        fail("cover row must be '<pattern> <output>'");
      const auto &pattern = tok[0];
      if (pattern.size() != model.inputs.size())
        fail("pattern '" + pattern + "' has " + std::to_string(pattern.size()) +
             " positions, expected " + std::to_string(model.inputs.size()));
      if (pattern.find_first_not_of("01-") != std::string::npos)
        fail("pattern '" + pattern + "' contains characters other than 0, 1, -");
      if (tok[1] == "0")
        fail("off-set rows (output 0) are not supported");
      if (tok[1] != "1")
        fail("row output must be 1, got '" + tok[1] + "'");
      model.cubes.push_back(pattern);
      continue;
    }

    if (head == ".model") {
      if (have_model)
        fail("more than one .model");
      if (tok.size() != 2)
        fail(".model takes exactly one name");
      model.name = tok[1];
      have_model = true;
    } else if (head == ".inputs") {
      if (!have_model)
        fail(".inputs before .model");
      if (have_inputs)
        fail("repeated .inputs");
      if (tok.size() < 2)
        fail(".inputs needs at least one name");
      model.inputs.assign(tok.begin() + 1, tok.end());
      std::set<std::string> seen;
      for (const auto &n : model.inputs)
        if (!seen.insert(n).second)
          fail("duplicate input '" + n + "'");
      have_inputs = true;
    } else if (head == ".outputs") {
      if (!have_inputs)
        fail(".outputs before .inputs");
      if (have_outputs)
        fail("repeated .outputs");
      if (tok.size() != 2)
        fail("exactly one output is supported, got " + std::to_string(tok.size() - 1));
      model.output = tok[1];
      if (std::find(model.inputs.begin(), model.inputs.end(), model.output) != model.inputs.end())
        fail("output '" + model.output + "' is also an input");
      have_outputs = true;
    } else if (head == ".names") {
      if (!have_outputs)
        fail(".names before .outputs");
      if (have_names)
        fail("only one .names block is supported");
      if (tok.size() < 2 || tok.back() != model.output)
        fail(".names must drive the declared output '" + model.output + "'");
      const std::vector<std::string> ins(tok.begin() + 1, tok.end() - 1);
      if (ins != model.inputs)
        fail(".names must list every declared input in declaration order");
      have_names = true;
    } else if (head == ".end") {
      if (tok.size() != 1)
        fail(".end takes no arguments");
      end_line = line.number;
    } else {
      fail("unsupported directive '" + head + "'");
    }
  }

  // Truncation is reported at the last line of the input.
  const auto eof_line = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n')) +
             (!text.empty() && text.back() != '\n' ? 1 : 0));
  if (!have_model)
    throw BlifError(eof_line, "missing .model");
  if (!have_names)
    throw BlifError(eof_line, "missing .names block");
  if (!end_line)
    throw BlifError(eof_line, "missing .end");
  return model;
}

std::string render_blif(const BlifModel &model) {
  std::ostringstream os;
  os << ".model " << model.name << "\n.inputs";
  for (const auto &n : model.inputs)
    os << ' ' << n;
  os << "\n.outputs " << model.output << "\n.names";
  for (const auto &n : model.inputs)
    os << ' ' << n;
  os << ' ' << model.output << '\n';
  for (const auto &c : model.cubes)
    os << c << " 1\n";
  os << ".end\n";
  return os.str();
}

ControllerSpec build_spec(const BlifModel &model, const std::vector<std::string> &state_names,
                          const std::vector<std::string> &action_names) {
  const std::set<std::string> inputs(model.inputs.begin(), model.inputs.end());
  std::set<std::string> listed;
  auto take = [&](const std::vector<std::string> &names, const char *what) {
    for (const auto &n : names) {
      if (!inputs.count(n))
        throw InputError(std::string(what) + " variable '" + n + "' is not a model input");
      if (!listed.insert(n).second)
        throw InputError("variable '" + n + "' listed more than once");
    }
  };
  take(state_names, "state");
  take(action_names, "action");
  for (const auto &n : model.inputs)
    if (!listed.count(n))
      throw InputError("input '" + n + "' is neither a state nor an action variable");
  if (state_names.empty())
    throw InputError("at least one state variable is required");
  if (action_names.empty())
    throw InputError("at least one action variable is required");

  Manager m(model.inputs);
  auto k = m.zero();
  for (const auto &cube : model.cubes) {
    auto term = m.one();
    for (std::size_t j = cube.size(); j-- > 0;) {
      const VarId v{static_cast<std::uint32_t>(j)};
      if (cube[j] == '1')
        term = m.mk_node(v, term, m.zero());
      else if (cube[j] == '0')
        term = m.mk_node(v, m.zero(), term);
    }
    k = m.apply(BoolOp::Or, k, term);
  }

  ControllerSpec spec{std::move(m), k, {}, {}};
  for (const auto &n : state_names)
    spec.state_vars.push_back(*spec.manager.find_var(n));
  for (const auto &n : action_names)
    spec.action_vars.push_back(*spec.manager.find_var(n));
  return spec;
}

} // namespace ctrlsynth

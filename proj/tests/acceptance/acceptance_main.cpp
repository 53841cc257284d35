// Runs every acceptance criterion once and prints one verdict line each.
// Exit status is nonzero when any criterion fails; skips do not count.
#include "cli.hpp"

#include "ctrlsynth/interp.hpp"
#include "ctrlsynth/oracle.hpp"
#include "ctrlsynth/random_instance.hpp"

#include "support/c_harness.hpp"
#include "support/expr.hpp"
#include "support/worked_example.hpp"

#include <sys/resource.h>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

using namespace ctrlsynth;
using namespace ctrlsynth::testing;
namespace fs = std::filesystem;

namespace {

enum class Status { Pass, Fail, Skip };

struct Outcome {
  Status status;
  std::string detail;
};

Outcome pass(std::string d) { return {Status::Pass, std::move(d)}; }
Outcome fail(std::string d) { return {Status::Fail, std::move(d)}; }
Outcome expect(bool ok, std::string d) { return {ok ? Status::Pass : Status::Fail, std::move(d)}; }

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char *f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

std::vector<std::uint8_t> bits(std::uint64_t value, std::size_t width) {
  std::vector<std::uint8_t> x(width);
  for (std::size_t i = 0; i < width; ++i)
    x[i] = (value >> (width - 1 - i)) & 1;
  return x;
}

struct Instance {
  RandomInstance source;
  ControllerSpec spec;
  SolvedController solved;
  BlockProgram program;
};

// The seeded desk-scale family shared by the contract and bound checks.
Instance desk_instance(std::uint64_t seed) {
  RandomModelOptions opts;
  opts.n = 1 + seed % 6;
  opts.r = 1 + (seed / 6) % 3;
  opts.cubes = 1 + (seed * 7) % 16;
  opts.literal_density = 0.3 + 0.1 * static_cast<double>(seed % 6);
  opts.actions_first = (seed / 18) % 2 == 1;
  opts.seed = seed;
  auto src = random_instance(opts);
  auto spec = build_spec(src.model, src.state_names, src.action_names);
  auto solved = solve_functional_eq(spec);
  auto program = generate_program(spec, solved);
  return {std::move(src), std::move(spec), std::move(solved), std::move(program)};
}

constexpr std::uint64_t kDeskInstances = 500;

std::string slurp(const fs::path &p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string without_resource_lines(const std::string &report) {
  std::istringstream in(report);
  std::string kept;
  for (std::string line; std::getline(in, line);)
    if (line.rfind("cpu_seconds=", 0) != 0 && line.rfind("peak_mem_bytes=", 0) != 0)
      kept += line + '\n';
  return kept;
}

std::string join(const std::vector<std::string> &names) {
  std::string s;
  for (const auto &n : names)
    s += (s.empty() ? "" : ",") + n;
  return s;
}

int run_cli(const std::vector<std::string> &args, std::string *out = nullptr) {
  std::ostringstream o, e;
  const int status = cli::run(args, o, e);
  if (out != nullptr)
    *out = o.str() + e.str();
  return status;
}

// ---------------------------------------------------------------------------

Outcome worked_example_equivalence() {
  const auto t0 = std::chrono::steady_clock::now();
  for (bool actions_first : {false, true}) {
    auto w = make_worked_example(actions_first);
    const auto &sv = w.spec.state_vars;
    const auto t1 = truth_table(w.spec.manager, w.solved.functions.at(0), sv);
    const auto t2 = truth_table(w.spec.manager, w.solved.functions.at(1), sv);
    for (unsigned row = 0; row < 8; ++row) {
      const bool x0 = row & 4, x1 = row & 2, x2 = row & 1;
      if ((t1[row] != 0) != f1_formula(x0, x1, x2) || (t2[row] != 0) != f2_formula(x0, x1, x2))
        return fail("row " + std::to_string(row) + (actions_first ? " (actions first)" : ""));
    }
  }
  const double s = seconds_since(t0);
  return expect(s < 1.0, "f1, f2 match on 8/8 rows in both variable orders, " + fmt("%.3f s", s));
}

Outcome codegen_fidelity() {
  auto w = make_worked_example();
  if (w.program.blocks.size() != 7)
    return fail(std::to_string(w.program.blocks.size()) + " blocks");
  if (const auto why = match_reference_listing(w.program))
    return fail("structure: " + *why);
  const BlockInterpreter interp(w.program);
  std::size_t checks = 0;
  std::vector<std::uint8_t> full(5, 0);
  for (unsigned s = 0; s < 8; ++s) {
    const auto x = bits(s, 3);
    for (std::size_t i = 0; i < 3; ++i)
      full[w.spec.state_vars[i].index] = x[i];
    for (std::size_t a = 0; a < 2; ++a, ++checks)
      if (interp.run_kbits(x, a).result_bit != w.spec.manager.eval(w.solved.functions[a], full))
        return fail("interpreter differs at state " + std::to_string(s) + " bit " + std::to_string(a));
  }
  return pass("7 blocks, reference structure matched, interpreter = eval on " +
              std::to_string(checks) + "/16 runs");
}

Outcome sharing_statistics() {
  auto w = make_worked_example();
  const auto rep = compute_stats(w.spec, w.solved, w.program);
  const auto gain = fmt("%.2f", rep.gain_percent);
  if (rep.k_nodes != 11 || rep.f_unshared != 9 || rep.sw_blocks != 7 || gain != "22.22")
    return fail("|K|=" + std::to_string(rep.k_nodes) + " |F_unsh|=" + std::to_string(rep.f_unshared) +
                " |Sw|=" + std::to_string(rep.sw_blocks) + " gain=" + gain);

  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto inst = random_instance(
        {.n = 2 + seed % 5, .r = 1, .cubes = 4 + seed, .literal_density = 0.6, .seed = seed});
    auto spec = build_spec(inst.model, inst.state_names, inst.action_names);
    const auto solved = solve_functional_eq(spec);
    const auto r1 = compute_stats(spec, solved, generate_program(spec, solved));
    if (r1.gain_percent != 0.0)
      return fail("r=1 seed " + std::to_string(seed) + " gain " + fmt("%.17g", r1.gain_percent));
  }
  return pass("|K|=11 |F_unsh|=9 |Sw|=7 gain=22.22%; r=1 gain exactly 0 on 20 instances");
}

Outcome functional_equation_contract() {
  const auto t0 = std::chrono::steady_clock::now();
  std::size_t states = 0, in_domain = 0, failures = 0;
  for (std::uint64_t seed = 1; seed <= kDeskInstances; ++seed) {
    auto inst = desk_instance(seed);
    const CubeRelation rel(inst.source.model, inst.source.state_names, inst.source.action_names);
    const auto n = inst.spec.n(), r = inst.spec.r();
    std::vector<std::uint8_t> full(n + r, 0), u(r);
    for (std::uint64_t s = 0; s < (1u << n); ++s, ++states) {
      const auto x = bits(s, n);
      for (std::size_t i = 0; i < n; ++i)
        full[inst.spec.state_vars[i].index] = x[i];
      const bool dom = inst.spec.manager.eval(inst.solved.dom, full);
      if (dom != rel.controllable(x)) {
        ++failures;
        continue;
      }
      if (!dom)
        continue;
      ++in_domain;
      for (std::size_t i = 0; i < r; ++i)
        u[i] = inst.spec.manager.eval(inst.solved.functions[i], full);
      failures += rel.holds(x, u) ? 0 : 1;
    }
  }
  const double s = seconds_since(t0);
  return expect(failures == 0 && s < 60.0 && in_domain > 0,
                std::to_string(kDeskInstances) + " instances, " + std::to_string(in_domain) + "/" +
                    std::to_string(states) + " states in domain, " + std::to_string(failures) +
                    " failures, " + fmt("%.2f s", s));
}

Outcome wcet_bound() {
  // Exact bounds on the worked example.
  {
    auto w = make_worked_example();
    const auto rep = compute_stats(w.spec, w.solved, w.program);
    if (w.program.step_bounds() != std::vector<std::size_t>{4, 4} || rep.wcet_steps_bound != 8)
      return fail("worked example bounds differ from 4 per bit / 8 total");
  }
  std::size_t runs = 0;
  auto check = [&](const ControllerSpec &spec, const SolvedController &solved,
                   const BlockProgram &p) -> std::optional<std::string> {
    const BlockInterpreter interp(p);
    const auto n = spec.n(), r = spec.r();
    for (std::uint64_t s = 0; s < (1u << n); ++s) {
      const auto x = bits(s, n);
      std::size_t total = 0;
      for (std::size_t i = 0; i < r; ++i, ++runs) {
        const auto t = interp.run_kbits(x, i);
        if (t.steps > spec.manager.height(solved.functions[i].node()) + 1u)
          return "bit bound exceeded";
        total += t.steps;
      }
      if (total > r * (n + 1) || interp.run_controller(x).total_steps != total)
        return "total bound exceeded";
    }
    return std::nullopt;
  };
  {
    auto w = make_worked_example();
    if (auto why = check(w.spec, w.solved, w.program))
      return fail("worked example: " + *why);
  }
  for (std::uint64_t seed = 1; seed <= kDeskInstances; ++seed) {
    auto inst = desk_instance(seed);
    if (auto why = check(inst.spec, inst.solved, inst.program))
      return fail("seed " + std::to_string(seed) + ": " + *why);
  }

  // Scalability smoke test through the synth command.
  const auto dir = fs::temp_directory_path() / "ctrlsynth_acceptance_scale";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const auto inst = random_instance({.n = 20, .r = 4, .cubes = 400, .literal_density = 0.5, .seed = 2011});
  std::ofstream(dir / "k.blif") << render_blif(inst.model);
  const auto t0 = std::chrono::steady_clock::now();
  std::string log;
  const int status = run_cli({"synth", (dir / "k.blif").string(), "--state", join(inst.state_names),
                              "--action", join(inst.action_names), "--out", (dir / "k.c").string(),
                              "--report", (dir / "k.txt").string()},
                             &log);
  const double wall = seconds_since(t0);
  rusage usage{};
  getrusage(RUSAGE_SELF, &usage);
  const double peak_mb = static_cast<double>(usage.ru_maxrss) / 1024.0;
  const auto report = slurp(dir / "k.txt");
  fs::remove_all(dir);
  if (status != 0)
    return fail("synth exited " + std::to_string(status) + ": " + log);
  std::size_t k_nodes = 0;
  if (const auto pos = report.find("k_nodes="); pos != std::string::npos)
    k_nodes = std::stoul(report.substr(pos + 8));
  return expect(k_nodes >= 10000 && wall < 10.0 && peak_mb < 500.0,
                std::to_string(runs) + " runs within per-bit and total bounds; worked example 4/8; "
                "n=20 r=4 |K|=" + std::to_string(k_nodes) + " in " + fmt("%.2f s", wall) +
                    ", peak RSS " + fmt("%.1f MB", peak_mb));
}

Outcome canonicity_and_complementation() {
  std::mt19937_64 rng(20110101);
  std::size_t pairs = 0, equal = 0, handles = 0;
  for (; pairs < 2000; ++pairs) {
    const std::size_t nvars = 1 + rng() % 6;
    Manager m(var_names(nvars));
    const auto e1 = random_expr(rng, nvars, 1 + static_cast<int>(rng() % 4));
    const auto e2 = random_expr(rng, nvars, 1 + static_cast<int>(rng() % 4));
    const auto h1 = e1->build(m), h2 = e2->build(m);
    const auto t1 = e1->table(nvars), t2 = e2->table(nvars);
    if ((t1 == t2) != (h1 == h2))
      return fail("canonicity broken at pair " + std::to_string(pairs));
    equal += t1 == t2;
    std::vector<VarId> vars;
    for (std::uint32_t v = 0; v < nvars; ++v)
      vars.push_back(VarId{v});
    for (auto [h, t] : {std::pair{h1, &t1}, std::pair{h2, &t2}}) {
      ++handles;
      const auto direct = truth_table(m, h, vars);
      const auto negated = truth_table(m, negate(h), vars);
      for (std::size_t row = 0; row < t->size(); ++row)
        if (direct[row] != (*t)[row] || negated[row] != 1 - (*t)[row])
          return fail("negation broken at pair " + std::to_string(pairs));
    }
  }
  return pass(std::to_string(pairs) + " pairs (" + std::to_string(equal) +
              " semantically equal), negation exact on " + std::to_string(handles) + " handles");
}

Outcome determinism() {
  const auto dir = fs::temp_directory_path() / "ctrlsynth_acceptance_det";
  fs::remove_all(dir);
  fs::create_directories(dir);
  std::ofstream(dir / "k.blif") << kWorkedExampleBlif;
  const auto big = random_instance({.n = 12, .r = 3, .cubes = 80, .literal_density = 0.5, .seed = 77});
  std::ofstream(dir / "big.blif") << render_blif(big.model);

  struct Case {
    std::string blif;
    std::string states;
    std::string actions;
  };
  const std::vector<Case> cases{{"k", "x0,x1,x2", "u0,u1"},
                                {"big", join(big.state_names), join(big.action_names)}};
  for (const auto &c : cases) {
    for (const char *tag : {"a", "b"}) {
      const auto base = (dir / (c.blif + tag)).string();
      if (run_cli({"synth", (dir / (c.blif + ".blif")).string(), "--state", c.states, "--action",
                   c.actions, "--out", base + ".c", "--report", base + ".txt"}) != 0)
        return fail("synth failed on " + c.blif);
    }
    const auto stem = (dir / c.blif).string();
    if (slurp(stem + "a.c") != slurp(stem + "b.c"))
      return fail("C output differs on " + c.blif);
    if (without_resource_lines(slurp(stem + "a.txt")) !=
        without_resource_lines(slurp(stem + "b.txt")))
      return fail("report differs on " + c.blif);
  }
  const bool golden = slurp(dir / "ka.c") == slurp(fs::path(CTRLSYNTH_TEST_DATA) / "worked_example.c");
  fs::remove_all(dir);
  return expect(golden, "byte-identical C and reports over 2 runs on 2 inputs; golden C matched");
}

Outcome mutation_sensitivity() {
  auto w = make_worked_example();
  const CubeRelation rel(w.model, kStates, kActions);
  const auto edits = single_edit_mutations(w.program);
  std::size_t detected = 0;
  for (const auto &e : edits)
    detected += verify_controller(w.spec, w.solved, apply_mutation(w.program, e), rel).pass ? 0 : 1;
  const bool baseline = verify_controller(w.spec, w.solved, w.program, rel).pass;
  return expect(baseline && !edits.empty() && detected == edits.size(),
                std::to_string(detected) + "/" + std::to_string(edits.size()) +
                    " single-edit mutations detected; unmutated program passes");
}

Outcome compiled_c_agreement() {
  if (kCompiler.empty())
    return {Status::Skip, "no system C compiler"};
  const auto root = fs::temp_directory_path() / "ctrlsynth_acceptance_cc";
  fs::remove_all(root);
  std::size_t programs = 0, states = 0;
  auto run_one = [&](const BlockProgram &p, const std::string &tag) -> std::optional<std::string> {
    const auto out = compile_and_run(p, root / tag);
    if (!out)
      return "compile/run failed for " + tag;
    if (*out != expected_output(p))
      return "output differs for " + tag;
    ++programs;
    states += std::size_t{1} << p.n;
    return std::nullopt;
  };
  if (auto why = run_one(make_worked_example().program, "worked"))
    return fail(*why);
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto inst = random_instance({.n = seed, .r = 1 + seed % 4, .cubes = 4 + 3 * seed,
                                       .literal_density = 0.5, .actions_first = seed % 2 == 0,
                                       .seed = 900 + seed});
    auto spec = build_spec(inst.model, inst.state_names, inst.action_names);
    const auto p = generate_program(spec, solve_functional_eq(spec));
    if (auto why = run_one(p, "n" + std::to_string(seed)))
      return fail(*why);
  }
  fs::remove_all(root);
  return pass(std::to_string(programs) + " compiled controllers agree with the interpreter on " +
              std::to_string(states) + " states (n <= 10)");
}

} // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"worked-example equivalence", worked_example_equivalence},
      {"code-generation fidelity", codegen_fidelity},
      {"sharing statistics", sharing_statistics},
      {"functional-equation contract", functional_equation_contract},
      {"WCET bound and scalability", wcet_bound},
      {"canonicity and complementation", canonicity_and_complementation},
      {"determinism", determinism},
      {"mutation sensitivity", mutation_sensitivity},
      {"compiled C agreement", compiled_c_agreement},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception &e) {
      o = fail(std::string("exception: ") + e.what());
    }
    const char *tag = o.status == Status::Pass ? "PASS" : o.status == Status::Fail ? "FAIL" : "SKIP";
    failed += o.status == Status::Fail;
    std::cout << "[" << tag << "] " << (i + 1) << " " << criteria[i].first << ": " << o.detail
              << std::endl;
  }
  std::cout << (failed == 0 ? "all criteria met" : std::to_string(failed) + " criteria failed")
            << std::endl;
  return failed == 0 ? 0 : 1;
}

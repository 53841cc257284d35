#include "cli.hpp"

#include "ctrlsynth/blif.hpp"
#include "ctrlsynth/codegen.hpp"
#include "ctrlsynth/dot.hpp"
#include "ctrlsynth/errors.hpp"
#include "ctrlsynth/oracle.hpp"
#include "ctrlsynth/solver.hpp"

#include <CLI11.hpp>

#include <sys/resource.h>

#include <algorithm>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace ctrlsynth::cli {

namespace {

std::vector<std::string> split_names(const std::string &list, const char *flag) {
  std::vector<std::string> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (item.empty())
      throw InputError(std::string("empty name in ") + flag + " list '" + list + "'");
    out.push_back(item);
  }
  if (out.empty())
    throw InputError(std::string(flag) + " needs at least one name");
  return out;
}

std::string read_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw InputError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string &path, const std::string &text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out || !(out << text) || !out.flush())
    throw InputError("cannot write '" + path + "'");
}

class Stopwatch {
public:
  Stopwatch() : start_(std::clock()) {}
  double cpu_seconds() const { return static_cast<double>(std::clock() - start_) / CLOCKS_PER_SEC; }

private:
  std::clock_t start_;
};

long long peak_mem_bytes() {
  rusage usage{};
  getrusage(RUSAGE_SELF, &usage);
  return static_cast<long long>(usage.ru_maxrss) * 1024;
}

struct Pipeline {
  BlifModel model;
  ControllerSpec spec;
  SolvedController solved;
  BlockProgram program;
};

Pipeline synthesize(const std::string &blif_path, const std::vector<std::string> &state,
                    const std::vector<std::string> &action) {
  auto model = parse_blif(read_file(blif_path));
  auto spec = build_spec(model, state, action);
  auto solved = solve_functional_eq(spec);
  auto program = generate_program(spec, solved);

  const auto shared = spec.manager.reachable_set(solved.functions);
  if (program.blocks.size() != shared.size())
    throw InvariantError("generated " + std::to_string(program.blocks.size()) +
                         " blocks for " + std::to_string(shared.size()) + " distinct nodes");
  if (std::count_if(program.blocks.begin(), program.blocks.end(),
                    [](const Block &b) { return b.is_return(); }) != 1)
    throw InvariantError("program must contain exactly one return block");
  return {std::move(model), std::move(spec), std::move(solved), std::move(program)};
}

std::string fixed2(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string sci2(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2e", v);
  return buf;
}

std::string report_text(const SynthReport &rep, double cpu, long long mem) {
  std::ostringstream os;
  os << "n=" << rep.n << '\n';
  os << "r=" << rep.r << '\n';
  os << "k_nodes=" << rep.k_nodes << '\n';
  os << "f_unshared=" << rep.f_unshared << '\n';
  os << "sw_blocks=" << rep.sw_blocks << '\n';
  os << "gain_percent=" << fixed2(rep.gain_percent) << '\n';
  os << "heights=";
  for (std::size_t i = 0; i < rep.heights.size(); ++i)
    os << (i ? "," : "") << rep.heights[i];
  os << '\n';
  os << "wcet_steps_bound=" << rep.wcet_steps_bound << '\n';
  os << "cpu_seconds=" << cpu << '\n';
  os << "peak_mem_bytes=" << mem << '\n';
  return os.str();
}

struct CommonFlags {
  std::string blif;
  std::string state;
  std::string action;
};

void add_common(CLI::App *cmd, CommonFlags &f) {
  cmd->add_option("blif", f.blif, "BLIF file holding the controller relation K")->required();
  cmd->add_option("--state", f.state, "Comma-separated state variables, x_1 first")->required();
  cmd->add_option("--action", f.action, "Comma-separated action variables in bit priority order")
      ->required();
}

} // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  CLI::App app{"Synthesize WCET-bounded C controllers from boolean relations", "ctrlsynth"};
  app.require_subcommand(1);

  CommonFlags synth_flags, verify_flags, stats_flags;
  std::string out_path, dot_path, report_path;
  auto *synth = app.add_subcommand("synth", "Solve K and emit C code");
  add_common(synth, synth_flags);
  synth->add_option("--out", out_path, "Output C file")->required();
  synth->add_option("--dot", dot_path, "Write the COBDDs of f_1..f_r as Graphviz");
  synth->add_option("--report", report_path, "Write key=value synthesis statistics");

  bool exhaustive = false;
  std::optional<std::size_t> samples;
  std::uint64_t seed = kDefaultSeed;
  std::string mutation;
  auto *verify = app.add_subcommand("verify", "Check the synthesized controller against K");
  add_common(verify, verify_flags);
  auto *ex_flag = verify->add_flag("--exhaustive", exhaustive, "Enumerate every state");
  verify->add_option("--samples", samples, "Check N random states instead")->excludes(ex_flag);
  verify->add_option("--seed", seed, "Seed for --samples");
  verify->add_option("--inject-mutation", mutation,
                     "Test hook: corrupt the program first (flip:<i>, swap:<i>, init:<i>)")
      ->group("");

  auto *stats = app.add_subcommand("stats", "Print node-count statistics");
  add_common(stats, stats_flags);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp &) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp &) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError &e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kUsage;
  }

  try {
    const Stopwatch clock;
    if (synth->parsed()) {
      auto p = synthesize(synth_flags.blif, split_names(synth_flags.state, "--state"),
                          split_names(synth_flags.action, "--action"));
      write_file(out_path, emit_c_source(p.program));
      if (!dot_path.empty()) {
        std::vector<std::string> labels;
        for (std::size_t i = 0; i < p.solved.functions.size(); ++i)
          labels.push_back("f" + std::to_string(i + 1));
        write_file(dot_path, emit_dot(p.spec.manager, p.solved.functions, labels));
      }
      const auto rep = compute_stats(p.spec, p.solved, p.program);
      if (!report_path.empty())
        write_file(report_path, report_text(rep, clock.cpu_seconds(), peak_mem_bytes()));
      out << "wrote " << out_path << " (" << rep.sw_blocks << " blocks)\n";
      return kOk;
    }

    if (verify->parsed()) {
      const auto state = split_names(verify_flags.state, "--state");
      const auto action = split_names(verify_flags.action, "--action");
      auto p = synthesize(verify_flags.blif, state, action);
      if (!mutation.empty()) {
        try {
          p.program = apply_mutation(std::move(p.program), parse_mutation(mutation));
        } catch (const std::logic_error &e) {
          throw InputError(std::string("--inject-mutation: ") + e.what());
        }
      }
      VerifyOptions opts;
      opts.seed = seed;
      if (exhaustive)
        opts.mode = VerifyMode::Exhaustive;
      if (samples) {
        opts.mode = VerifyMode::Sampled;
        opts.samples = *samples;
      }
      const CubeRelation relation(p.model, state, action);
      const auto verdict = verify_controller(p.spec, p.solved, p.program, relation, opts);
      out << to_text(verdict);
      return verdict.pass ? kOk : kVerifyFail;
    }

    if (stats->parsed()) {
      auto p = synthesize(stats_flags.blif, split_names(stats_flags.state, "--state"),
                          split_names(stats_flags.action, "--action"));
      const auto rep = compute_stats(p.spec, p.solved, p.program);
      out << "r CPU MEM |K| |F_unsh| |Sw| %\n";
      out << rep.r << ' ' << sci2(clock.cpu_seconds()) << ' '
          << sci2(static_cast<double>(peak_mem_bytes())) << ' ' << rep.k_nodes << ' '
          << rep.f_unshared << ' ' << rep.sw_blocks << ' ' << fixed2(rep.gain_percent) << '\n';
      return kOk;
    }
  } catch (const InputError &e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const InvariantError &e) {
    err << "internal error: " << e.what() << '\n';
    return kInternal;
  } catch (const std::exception &e) {
    err << "internal error: " << e.what() << '\n';
    return kInternal;
  }
  return kUsage;
}

} // namespace ctrlsynth::cli

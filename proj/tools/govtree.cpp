// Command-line front end: runs register-machine programs with or without
// governance, checks safety, runs differentials and fuzz campaigns, and
// prints the demonstration reports.
//
// Exit codes: 0 pass, 1 property failure, 2 usage or parse error.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "govtree/campaign.hpp"
#include "govtree/environment.hpp"
#include "govtree/equivalence.hpp"
#include "govtree/governance.hpp"
#include "govtree/machines.hpp"
#include "govtree/policy.hpp"
#include "govtree/provenance.hpp"
#include "govtree/reports.hpp"
#include "govtree/safety.hpp"
#include "govtree/trace.hpp"

using namespace govtree;

namespace {

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

OracleProgram load_program(const std::string& path) {
  try {
    return parse_assembly(read_file(path));
  } catch (const AsmError& e) {
    throw UsageError(path + ": " + e.what());
  }
}

PolicyPtr load_policy(const std::string& path) {
  try {
    return parse_policy(read_file(path));
  } catch (const ParseError& e) {
    throw UsageError(path + ": " + e.what());
  }
}

std::vector<std::uint64_t> parse_regs(const std::string& s) {
  std::vector<std::uint64_t> out;
  if (s.empty()) return out;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, ',');) {
    if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos) {
      throw UsageError("--regs expects comma-separated non-negative integers, got '" + s + "'");
    }
    out.push_back(std::stoull(item));
  }
  return out;
}

std::uint64_t effective_seed(std::uint64_t flag) {
  const char* env = std::getenv("GOVTREE_SEED");
  if (!env || !*env) return flag;
  const std::string s(env);
  if (s.find_first_not_of("0123456789") != std::string::npos) {
    throw UsageError("GOVTREE_SEED must be a non-negative integer, got '" + s + "'");
  }
  return std::stoull(s);
}

// Trace budget ample for `machine_fuel` steps: at most three directives per
// step plus the final read, each expanded by governance.
std::uint64_t trace_fuel(std::uint64_t machine_fuel) {
  return (machine_fuel + 2) * 8 * kGovernedFuelFactor;
}

void print_trace(const Trace& tr) {
  for (const auto& line : tr.lines()) std::cout << line << '\n';
}

struct RunArgs {
  std::string file;
  bool governed = false;
  std::string policy;
  std::string trust = "system";
  std::uint64_t fuel = 10'000;
  std::uint64_t seed = 1;
  std::string regs;
  bool quiet = false;
  std::string provenance;
};

int cmd_run(const RunArgs& a) {
  const auto program = load_program(a.file);
  Environment env(effective_seed(a.seed));
  env.set_registers(parse_regs(a.regs));
  const auto tree = translate_oracle_program(program, a.fuel, 0);
  const std::uint64_t budget = trace_fuel(a.fuel);

  if (!a.governed) {
    auto run = run_trace(interp<Directive, IoEvent, ExecOutcome>(passthrough(), tree),
                         io_responder(env), budget);
    if (!a.quiet) print_trace(run.trace);
    std::cout << "result: " << (run.value ? render_result(*run.value) : "suspended") << '\n';
    return kPass;
  }

  GovConfig cfg = full_config();
  const auto trust = parse_trust(a.trust);
  if (!trust) throw UsageError("unknown trust level '" + a.trust + "'");
  cfg.actor_trust = *trust;
  if (!a.policy.empty()) cfg.policy = load_policy(a.policy);

  ProvenanceLog log;
  auto run = run_trace(interp<Directive, GovIo, ExecOutcome>(gov_wrap(passthrough()), tree),
                       config_responder(cfg, env, &log), budget);
  if (!a.quiet) print_trace(run.trace);
  if (!a.provenance.empty()) {
    std::ofstream out(a.provenance);
    if (!out) throw UsageError("cannot write " + a.provenance);
    log.write(out);
  }
  if (run.value) {
    std::cout << "result: " << render_result(*run.value) << '\n';
  } else if (run.diverged()) {
    std::cout << "result: denied\n";
  } else {
    std::cout << "result: suspended\n";
  }
  std::cout << "provenance: " << log.count(Decision::Permitted) << " permitted, "
            << log.count(Decision::Denied) << " denied\n";
  if (auto i = first_unmediated_io(run.trace); i != std::string::npos) {
    std::cout << "unmediated I/O at entry " << i << '\n';
    return kFail;
  }
  return kPass;
}

int cmd_check_safety(const std::string& file, std::uint64_t depth, std::uint64_t fuel, bool bare) {
  if (depth == 0) throw UsageError("--depth must be at least 1");
  const auto program = load_program(file);
  const auto tree = translate_oracle_program(program, fuel, 0);
  SafetyVerdict v;
  if (bare) {
    v = check_safety(translate_events<IoEvent, GovIo, ExecOutcome>(
                         [](const IoEvent& e) { return io_side(e); },
                         interp<Directive, IoEvent, ExecOutcome>(passthrough(), tree)),
                     depth);
  } else {
    v = check_governed(passthrough(), tree, depth);
  }
  if (v.violation) {
    std::cout << "violation at path length " << v.path.size() << '\n';
    for (const auto& line : render_path(v)) std::cout << line << '\n';
    return kFail;
  }
  std::cout << "safe within depth " << depth << " (" << v.explored << " nodes explored"
            << (v.budget_exhausted ? ", node budget exhausted" : "") << ")\n";
  return kPass;
}

int cmd_diff(const std::string& file, std::uint64_t seed, std::uint64_t fuel,
             const std::string& regs, bool quiet) {
  const auto program = load_program(file);
  Environment env(effective_seed(seed));
  env.set_registers(parse_regs(regs));
  const auto tree = translate_oracle_program(program, fuel, 0);
  auto d = run_differential(tree, passthrough(), env, trace_fuel(fuel));
  if (!quiet) {
    std::cout << "governed (erased):\n";
    print_trace(erase_gov(d.governed.trace));
    std::cout << "ungoverned:\n";
    print_trace(d.ungoverned.trace);
  }
  std::cout << "verdict: " << verdict_name(d.verdict.kind);
  if (!d.verdict.equivalent()) {
    std::cout << " at entry " << d.verdict.index << ": " << d.verdict.witness;
  }
  std::cout << '\n';
  return d.verdict.distinct() ? kFail : kPass;
}

int cmd_fuzz(std::uint64_t trials, std::uint64_t seed, unsigned jobs, std::size_t max_len,
             std::int64_t replay) {
  if (trials == 0) throw UsageError("--trials must be at least 1");
  seed = effective_seed(seed);
  CampaignOptions opts;
  opts.jobs = jobs;
  opts.max_len = max_len;
  if (replay >= 0) {
    const auto i = static_cast<std::uint64_t>(replay);
    const auto r = run_trial(i, trial_seed(seed, i), opts);
    std::cout << "trial " << i << " seed " << trial_seed(seed, i) << '\n';
    std::cout << "governed:\n" << r.governed_trace << "ungoverned:\n" << r.ungoverned_trace;
    for (const auto& f : r.failures) std::cout << "failure " << f.kind << ": " << f.detail << '\n';
    return r.failures.empty() ? kPass : kFail;
  }
  const auto report = fuzz_campaign(trials, seed, opts);
  std::cout << report.text();
  std::cout << "elapsed: " << report.elapsed.count() << " ms\n";
  return report.passed() ? kPass : kFail;
}

int cmd_eval_policy(const std::string& file) {
  const auto p = load_policy(file);
  std::cout << render_policy(*p) << '\n';
  std::cout << (eval_policy(p) ? "true" : "false") << '\n';
  return kPass;
}

int cmd_demo(const std::string& which, std::uint64_t trials, std::uint64_t seed) {
  seed = effective_seed(seed);
  std::vector<Report> reports;
  if (which == "halting") {
    reports.push_back(demo_halting_separation());
  } else if (which == "minimality") {
    reports.push_back(demo_minimality(seed));
  } else if (which == "subsumption") {
    reports.push_back(demo_subsumption(trials, seed));
  } else {
    reports = capstone_report(trials, seed);
  }
  bool ok = true;
  std::size_t passed = 0;
  for (const auto& r : reports) {
    std::cout << r.text() << '\n';
    ok = ok && r.passed();
    passed += r.passed() ? 1 : 0;
  }
  if (reports.size() > 1) {
    std::cout << passed << "/" << reports.size() << " sections pass\n";
  }
  return ok ? kPass : kFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"govtree: governed interaction trees"};
  app.require_subcommand(1);

  RunArgs run;
  auto* run_cmd = app.add_subcommand("run", "Run a register-machine program");
  run_cmd->add_option("file", run.file, "Assembly file")->required();
  run_cmd->add_flag("--governed", run.governed, "Wrap every directive in governance");
  run_cmd->add_option("--policy", run.policy, "Policy file (governed runs)");
  run_cmd->add_option("--trust", run.trust, "Actor trust level (governed runs)");
  run_cmd->add_option("--fuel", run.fuel, "Machine step budget");
  run_cmd->add_option("--seed", run.seed, "Environment seed");
  run_cmd->add_option("--regs", run.regs, "Initial registers r0,r1,...");
  run_cmd->add_flag("--quiet", run.quiet, "Print only the result");
  run_cmd->add_option("--provenance", run.provenance, "Write the provenance log here");

  std::string safety_file;
  std::uint64_t depth = 1'000;
  std::uint64_t safety_fuel = 100;
  bool bare = false;
  auto* safety_cmd = app.add_subcommand("check-safety", "Bounded search for unauthorized I/O");
  safety_cmd->add_option("file", safety_file, "Assembly file")->required();
  safety_cmd->add_option("--depth", depth, "Search depth")->required();
  safety_cmd->add_option("--fuel", safety_fuel, "Machine step budget");
  safety_cmd->add_flag("--bare", bare, "Check the ungoverned lowering instead");

  std::string diff_file;
  std::uint64_t diff_seed = 1;
  std::uint64_t diff_fuel = 10'000;
  std::string diff_regs;
  bool diff_quiet = false;
  auto* diff_cmd = app.add_subcommand("diff", "Governed vs ungoverned differential");
  diff_cmd->add_option("file", diff_file, "Assembly file")->required();
  diff_cmd->add_option("--seed", diff_seed, "Environment seed");
  diff_cmd->add_option("--fuel", diff_fuel, "Machine step budget");
  diff_cmd->add_option("--regs", diff_regs, "Initial registers r0,r1,...");
  diff_cmd->add_flag("--quiet", diff_quiet, "Print only the verdict");

  std::uint64_t trials = 1'000;
  std::uint64_t fuzz_seed = 1;
  unsigned jobs = 1;
  std::size_t max_len = 50;
  std::int64_t replay = -1;
  auto* fuzz_cmd = app.add_subcommand("fuzz", "Differential fuzz campaign");
  fuzz_cmd->add_option("--trials", trials, "Number of trials");
  fuzz_cmd->add_option("--seed", fuzz_seed, "Campaign seed");
  fuzz_cmd->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
  fuzz_cmd->add_option("--max-len", max_len, "Maximum directives per program")
      ->check(CLI::PositiveNumber);
  fuzz_cmd->add_option("--replay", replay, "Replay one trial by index and print its traces");

  std::string policy_file;
  auto* policy_cmd = app.add_subcommand("eval-policy", "Parse and evaluate a policy");
  policy_cmd->add_option("file", policy_file, "Policy file")->required();

  std::string demo_name;
  std::uint64_t demo_trials = 1'000;
  std::uint64_t demo_seed = 1;
  auto* demo_cmd = app.add_subcommand("demo", "Print a demonstration report");
  demo_cmd->add_option("name", demo_name, "halting | minimality | subsumption | capstone")
      ->required()
      ->check(CLI::IsMember({"halting", "minimality", "subsumption", "capstone"}));
  demo_cmd->add_option("--trials", demo_trials, "Trials per section");
  demo_cmd->add_option("--seed", demo_seed, "Seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kUsage;
  }

  try {
    if (*run_cmd) return cmd_run(run);
    if (*safety_cmd) return cmd_check_safety(safety_file, depth, safety_fuel, bare);
    if (*diff_cmd) return cmd_diff(diff_file, diff_seed, diff_fuel, diff_regs, diff_quiet);
    if (*fuzz_cmd) return cmd_fuzz(trials, fuzz_seed, jobs, max_len, replay);
    if (*policy_cmd) return cmd_eval_policy(policy_file);
    if (*demo_cmd) return cmd_demo(demo_name, demo_trials, demo_seed);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

#include "govtree/reports.hpp"

#include <set>
#include <sstream>

#include "govtree/campaign.hpp"
#include "govtree/environment.hpp"
#include "govtree/equivalence.hpp"
#include "govtree/generators.hpp"
#include "govtree/machines.hpp"
#include "govtree/rng.hpp"
#include "govtree/safety.hpp"
#include "govtree/trace.hpp"

namespace govtree {

bool Report::passed() const {
  for (const auto& c : clauses) {
    if (!c.passed) return false;
  }
  return true;
}

void Report::add(std::string name, bool ok, std::string detail) {
  clauses.push_back({std::move(name), ok, std::move(detail)});
}

std::string Report::text() const {
  std::ostringstream out;
  out << title << '\n';
  out << "seed: " << seed << '\n';
  for (const auto& c : clauses) {
    out << (c.passed ? "  PASS " : "  FAIL ") << c.name;
    if (!c.detail.empty()) out << " (" << c.detail << ')';
    out << '\n';
  }
  out << "result: " << (passed() ? "PASS" : "FAIL") << '\n';
  return out.str();
}

namespace {

template <class R>
std::optional<Directive> first_event(Tree<Directive, R> t, std::uint64_t max_taus = 1'000) {
  for (std::uint64_t i = 0; i <= max_taus; ++i) {
    if (t.is_spin()) return std::nullopt;
    auto n = t.observe();
    if (auto* v = std::get_if<VisNode<Directive, R>>(&n)) return v->event;
    if (auto* tn = std::get_if<TauNode<Directive, R>>(&n)) {
      t = tn->rest;
      continue;
    }
    return std::nullopt;
  }
  return std::nullopt;
}

// Capability classes of the I/O entries of a trace, read back from the
// constructor name that starts each rendering.
std::set<CapabilityClass> trace_classes(const Trace& tr) {
  std::set<CapabilityClass> out;
  for (const auto& e : tr.entries) {
    if (e.side != Side::Io) continue;
    const auto ctor = e.event.substr(0, e.event.find(' '));
    if (auto k = parse_kind_name(ctor)) out.insert(classify(*k));
  }
  return out;
}

bool subset_of(const std::set<CapabilityClass>& a, const std::set<CapabilityClass>& b) {
  for (auto c : a) {
    if (!b.count(c)) return false;
  }
  return true;
}

std::string class_list(const std::set<CapabilityClass>& s) {
  std::string out = "{";
  for (auto c : s) {
    if (out.size() > 1) out += ",";
    out += class_name(c);
  }
  return out + "}";
}

Trace run_directives(const Tree<Directive, ExecOutcome>& t, Environment env, std::uint64_t fuel) {
  return run_trace(interp<Directive, IoEvent, ExecOutcome>(passthrough(), t), io_responder(env),
                   fuel)
      .trace;
}

// Oracle answers that parse as small numbers, so queried machines keep
// computing on meaningful values.
void script_oracle(Environment& env, SplitMix64& rng, std::size_t n) {
  std::vector<Value> answers;
  for (std::size_t i = 0; i < n; ++i) answers.push_back(Value::text(std::to_string(rng.below(6))));
  env.script_kind(DirectiveKind::LLMCall, std::move(answers));
}

constexpr std::uint64_t kMachineFuel = 200;
constexpr std::uint64_t kTraceFuel = 100'000;

}  // namespace

Report demo_halting_separation(std::uint64_t max_loop_fuel) {
  Report r;
  r.title = "halting separation: [INC 0 1] vs [INC 0 0]";
  const RmProgram halting = inc_then_halt();
  const RmProgram looping = looping_program();

  const auto e1 = first_event(translate_instruction(halting.instrs[0]));
  const bool e1_mem = e1 && e1->kind() == DirectiveKind::MemoryOp;
  r.add("INC 0 1 first event is MemoryOp", e1_mem, e1 ? render(*e1) : "no event");

  const auto e2 = first_event(translate_instruction(looping.instrs[0]));
  const bool same = e1 && e2 && e2->kind() == e1->kind() && classify(*e2) == classify(*e1);
  r.add("INC 0 0 first event has the same constructor and class", same,
        e2 ? render(*e2) + " / " + std::string(class_name(classify(*e2))) : "no event");

  const bool halts = rm_halts(halting, 2, initial_state());
  r.add("[INC 0 1] halts with fuel 2", halts);

  std::uint64_t first_halt = 0;
  bool never = true;
  for (std::uint64_t n = 0; n <= max_loop_fuel; ++n) {
    if (rm_halts(looping, n, initial_state())) {
      never = false;
      first_halt = n;
      break;
    }
  }
  r.add("[INC 0 0] does not halt for any fuel n <= " + std::to_string(max_loop_fuel), never,
        never ? "" : "halted at fuel " + std::to_string(first_halt));
  return r;
}

Report demo_minimality(std::uint64_t seed, std::size_t witnesses) {
  Report r;
  r.title = "capability minimality";
  r.seed = seed;

  using Pred = bool (*)(const Directive&);
  const std::array<std::pair<CapabilityClass, Pred>, 5> preds = {{
      {CapabilityClass::Code, is_code_event},
      {CapabilityClass::Memory, is_memory_event},
      {CapabilityClass::Reason, is_reason_event},
      {CapabilityClass::Call, is_call_event},
      {CapabilityClass::Observe, is_observe_event},
  }};

  bool partition = true;
  std::string bad;
  for (const auto& d : sample_directives()) {
    int hits = 0;
    for (const auto& [cls, pred] : preds) {
      if (pred(d)) {
        ++hits;
        if (cls != classify(d)) partition = false;
      }
    }
    if (hits != 1) {
      partition = false;
      bad = render(d);
    }
  }
  r.add("each of the 13 constructors is in exactly one class", partition, bad);

  bool pairwise = true;
  for (std::size_t i = 0; i < preds.size(); ++i) {
    for (std::size_t j = 0; j < preds.size(); ++j) {
      if (i == j) continue;
      for (const auto& d : sample_directives()) {
        if (preds[i].second(d) && preds[j].second(d)) pairwise = false;
      }
    }
  }
  r.add("class membership excludes every other class", pairwise);

  bool inc_mem = true;
  for (Reg reg = 0; reg < 4; ++reg) {
    for (Label l = 0; l < 4; ++l) {
      auto e = first_event(translate_instruction(RmInstr{Inc{reg, l}}));
      if (!e || !is_memory_event(*e)) inc_mem = false;
    }
  }
  r.add("translated INC starts with a Memory event", inc_mem);

  const Directive q = llm("p");
  r.add("LLMCall is Reason and not Memory", is_reason_event(q) && !is_memory_event(q));
  const Directive c = call_machine("api", "x");
  r.add("CallMachine is Call and neither Memory nor Reason",
        is_call_event(c) && !is_memory_event(c) && !is_reason_event(c));

  // Witness traces for the four nested levels.
  SplitMix64 rng(seed);
  const std::set<CapabilityClass> lvl_code = {CapabilityClass::Code};
  const std::set<CapabilityClass> lvl_mem = {CapabilityClass::Code, CapabilityClass::Memory};
  const std::set<CapabilityClass> lvl_reason = {CapabilityClass::Code, CapabilityClass::Memory,
                                                CapabilityClass::Reason};
  const std::set<CapabilityClass> lvl_call = {CapabilityClass::Code, CapabilityClass::Memory,
                                              CapabilityClass::Reason, CapabilityClass::Call};
  bool code_ok = true, mem_ok = true, reason_ok = true, call_ok = true;
  std::set<CapabilityClass> seen_code, seen_mem, seen_reason, seen_call;
  for (std::size_t i = 0; i < witnesses; ++i) {
    ProgramShape shape;
    shape.allowed = {DirectiveKind::ComputeOp};
    auto prog = gen_program(rng.next(), 20, shape);
    Environment env(rng.next());
    auto tr = run_trace(interp<Directive, IoEvent, Value>(passthrough(), prog), io_responder(env),
                        kTraceFuel)
                  .trace;
    auto cls = trace_classes(tr);
    seen_code.insert(cls.begin(), cls.end());
    if (!subset_of(cls, lvl_code)) code_ok = false;

    auto rm = gen_rm_program(rng);
    Environment env_rm(rng.next());
    env_rm.set_registers(gen_registers(rng));
    cls = trace_classes(run_directives(translate_program(rm, kMachineFuel, 0), env_rm, kTraceFuel));
    seen_mem.insert(cls.begin(), cls.end());
    if (!subset_of(cls, lvl_mem) || !cls.count(CapabilityClass::Memory)) mem_ok = false;

    auto oracle = gen_oracle_program(rng);
    if (oracle.instrs.empty()) oracle.instrs.push_back(Query{0, 1});
    oracle.instrs[0] = Query{rng.below(4), rng.below(oracle.instrs.size() + 1)};
    Environment env_o(rng.next());
    script_oracle(env_o, rng, kMachineFuel);
    cls = trace_classes(
        run_directives(translate_oracle_program(oracle, kMachineFuel, 0), env_o, kTraceFuel));
    seen_reason.insert(cls.begin(), cls.end());
    if (!subset_of(cls, lvl_reason) || !cls.count(CapabilityClass::Reason)) reason_ok = false;

    // A workflow: hand off to another machine, then run an oracle machine.
    auto workflow = bind<Directive, Value, ExecOutcome>(
        trigger(call_machine("worker", std::to_string(i))),
        [oracle](const Value&) { return translate_oracle_program(oracle, kMachineFuel, 0); });
    Environment env_w(rng.next());
    script_oracle(env_w, rng, kMachineFuel);
    cls = trace_classes(run_directives(workflow, env_w, kTraceFuel));
    seen_call.insert(cls.begin(), cls.end());
    if (!subset_of(cls, lvl_call) || !cls.count(CapabilityClass::Call)) call_ok = false;
  }
  r.add("Code level: ComputeOp-only traces stay in " + class_list(lvl_code), code_ok,
        "seen " + class_list(seen_code));
  r.add("Memory level: register-machine traces use Memory, no Reason or Call", mem_ok,
        "seen " + class_list(seen_mem));
  r.add("Reason level: oracle-machine traces contain a Reason event", reason_ok,
        "seen " + class_list(seen_reason));
  r.add("Call level: workflow traces contain a Call event", call_ok,
        "seen " + class_list(seen_call));
  const bool strict = seen_code == lvl_code && subset_of(seen_mem, lvl_mem) &&
                      seen_mem.count(CapabilityClass::Memory) &&
                      !seen_mem.count(CapabilityClass::Reason) &&
                      seen_reason.count(CapabilityClass::Reason) &&
                      !seen_reason.count(CapabilityClass::Call) &&
                      seen_call.count(CapabilityClass::Call);
  r.add("each level adds a class absent from the levels below", strict);
  return r;
}

Report demo_subsumption(std::uint64_t trials, std::uint64_t seed) {
  Report r;
  r.title = "subsumption of content filtering";
  r.seed = seed;
  const auto filter = content_filter(redact_digits);

  std::uint64_t violations = 0;
  for (std::uint64_t i = 0; i < trials; ++i) {
    auto prog = gen_program(trial_seed(seed, i), 50);
    if (check_governed(filter, prog, 1'000).violation) ++violations;
  }
  r.add("governed content filter is safe on " + std::to_string(trials) + " random programs",
        violations == 0, std::to_string(violations) + " violations");

  const Directive d = llm("p");
  auto bare = translate_events<IoEvent, GovIo, Value>(
      [](const IoEvent& e) { return io_side(e); },
      interp<Directive, IoEvent, Value>(filter, trigger(d)));
  auto v = check_safety(bare, 1'000);
  std::string path;
  for (const auto& line : render_path(v)) path += line;
  r.add("ungoverned content filter violates at path length 1", v.violation && v.path.size() == 1,
        path);
  r.add("structural safety subsumes content filtering, not conversely",
        violations == 0 && v.violation, "structural \u2283 content");
  return r;
}

std::vector<Report> capstone_report(std::uint64_t trials, std::uint64_t seed) {
  std::vector<Report> out;
  const std::uint64_t depth = 1'000;

  {
    Report r;
    r.title = "[1] governed register machines: safe and faithful";
    r.seed = seed;
    SplitMix64 rng(mix_seed(seed, 1));
    std::uint64_t unsafe = 0, mismatched = 0;
    for (std::uint64_t i = 0; i < trials; ++i) {
      auto rm = gen_rm_program(rng);
      auto regs = gen_registers(rng);
      auto prog = translate_program(rm, kMachineFuel, 0);
      if (check_governed(passthrough(), prog, depth).violation) ++unsafe;
      Environment env(rng.next());
      env.set_registers(regs);
      auto diff = run_differential(prog, passthrough(), env, kTraceFuel);
      const auto expect = simulate(rm, kMachineFuel, initial_state(regs));
      if (!diff.verdict.equivalent() || !diff.governed.value || *diff.governed.value != expect) {
        ++mismatched;
      }
    }
    r.add("no unauthorized I/O at depth 1000", unsafe == 0, std::to_string(unsafe) + " unsafe");
    r.add("governed result equals direct simulation", mismatched == 0,
          std::to_string(mismatched) + " mismatches");
    out.push_back(std::move(r));
  }

  {
    Report r;
    r.title = "[2] governed oracle machines: safe and faithful";
    r.seed = seed;
    SplitMix64 rng(mix_seed(seed, 2));
    std::uint64_t unsafe = 0, mismatched = 0;
    for (std::uint64_t i = 0; i < trials; ++i) {
      auto p = gen_oracle_program(rng);
      auto regs = gen_registers(rng);
      auto prog = translate_oracle_program(p, kMachineFuel, 0);
      if (check_governed(passthrough(), prog, depth).violation) ++unsafe;
      Environment env(rng.next());
      env.set_registers(regs);
      script_oracle(env, rng, kMachineFuel);
      Environment oracle_env = env;
      auto diff = run_differential(prog, passthrough(), env, kTraceFuel);
      const auto expect =
          simulate_oracle(p, kMachineFuel, initial_state(regs), [&oracle_env](std::uint64_t v) {
            return oracle_env.answer(lower(llm(std::to_string(v)))).as_text();
          });
      if (!diff.verdict.equivalent() || !diff.governed.value || *diff.governed.value != expect) {
        ++mismatched;
      }
    }
    r.add("no unauthorized I/O at depth 1000", unsafe == 0, std::to_string(unsafe) + " unsafe");
    r.add("governed result equals simulation with the same oracle answers", mismatched == 0,
          std::to_string(mismatched) + " mismatches");
    out.push_back(std::move(r));
  }

  {
    Report r;
    r.title = "[3] policy closure and the halting boundary";
    r.seed = seed;
    SplitMix64 rng(mix_seed(seed, 3));
    std::uint64_t bad = 0;
    for (std::uint64_t i = 0; i < trials; ++i) {
      auto p = gen_policy(rng, 1 + rng.below(100));
      auto q = gen_policy(rng, 1 + rng.below(10));
      const bool vp = eval_policy(p), vq = eval_policy(q);
      if (eval_policy(pol_not(pol_not(p))) != vp) ++bad;
      if (eval_policy(pol_not(pol_and(p, q))) != eval_policy(pol_or(pol_not(p), pol_not(q)))) ++bad;
      if (eval_policy(pol_and(p, q)) != (vp && vq)) ++bad;
      if (eval_policy(pol_or(p, q)) != (vp || vq)) ++bad;
    }
    r.add("policy evaluation is total and closed under and/or/not", bad == 0,
          std::to_string(bad) + " failures");
    auto h = demo_halting_separation();
    r.add("first-event inspection cannot separate halting from looping", h.passed());
    out.push_back(std::move(r));
  }

  {
    Report r;
    r.title = "[4] goal preservation";
    r.seed = seed;
    auto goal = [](const Value& v) {
      return (v.is_nat() && v.as_nat() % 2 == 0) || (v.is_text() && !v.as_text().empty());
    };
    std::uint64_t reached = 0, lost = 0;
    for (std::uint64_t i = 0; i < trials; ++i) {
      SplitMix64 rng(trial_seed(mix_seed(seed, 4), i));
      auto prog = gen_program(rng.next(), 50);
      Environment env(rng.next());
      auto diff = run_differential(prog, passthrough(), env, kTraceFuel);
      if (diff.ungoverned.value && goal(*diff.ungoverned.value)) {
        ++reached;
        if (!diff.governed.value || !(*diff.governed.value == *diff.ungoverned.value)) ++lost;
      }
    }
    r.add("every goal reached ungoverned is reached governed with the same value", lost == 0,
          std::to_string(reached) + " goals reached, " + std::to_string(lost) + " lost");
    out.push_back(std::move(r));
  }

  {
    Report r = demo_minimality(seed);
    r.title = "[5] " + r.title;
    out.push_back(std::move(r));
  }
  {
    Report r = demo_subsumption(trials, seed);
    r.title = "[6] " + r.title;
    out.push_back(std::move(r));
  }
  {
    Report r;
    r.title = "[7] transparency campaign";
    r.seed = seed;
    auto c = fuzz_campaign(trials, seed);
    r.add("no erased-trace disagreements", c.disagreements == 0,
          std::to_string(c.disagreements) + " of " + std::to_string(c.trials));
    r.add("no safety violations", c.violations == 0, std::to_string(c.violations));
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace govtree

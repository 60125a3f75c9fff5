#include <gtest/gtest.h>

#include <sstream>

#include "govtree/equivalence.hpp"
#include "govtree/generators.hpp"
#include "govtree/governance.hpp"
#include "govtree/hash.hpp"
#include "govtree/provenance.hpp"
#include "govtree/trace.hpp"

using namespace govtree;

namespace {

// Answers GovCheck events from a fixed list (then true), I/O from env.
Responder<GovIo> scripted_checks(std::vector<bool> answers, Environment& env) {
  auto queue = std::make_shared<std::vector<bool>>(std::move(answers));
  auto next = std::make_shared<std::size_t>(0);
  return [queue, next, &env](const GovIo& e) {
    if (e.is_io()) return env.answer(e.io());
    const bool v = *next < queue->size() ? (*queue)[*next] : true;
    ++*next;
    return Value::boolean(v);
  };
}

std::vector<std::string> gov_stages(const Trace& tr) {
  std::vector<std::string> out;
  for (const auto& e : tr.entries) {
    if (e.side == Side::Gov) out.push_back(e.event.substr(9, e.event.find(' ', 9) - 9));
  }
  return out;
}

std::size_t io_count(const Trace& tr) { return tr.count(Side::Io); }

}  // namespace

TEST(Gov, PreStagesAllTrue) {
  Environment env(0);
  auto r = run_trace(pre_governance(mem_read(0)), permissive_responder(io_responder(env)), 100);
  ASSERT_TRUE(r.value);
  EXPECT_TRUE(*r.value);
  EXPECT_EQ(r.trace.count(Side::Gov), 4u);
  EXPECT_EQ(gov_stages(r.trace),
            (std::vector<std::string>{"TrustCheck", "PermissionCheck", "PhaseValidation",
                                      "PreHooks"}));
}

TEST(Gov, PreStagesShortCircuit) {
  for (std::size_t fail_at = 0; fail_at < 4; ++fail_at) {
    std::vector<bool> answers(4, true);
    answers[fail_at] = false;
    Environment env(0);
    auto r = run_trace(pre_governance(llm("p")), scripted_checks(answers, env), 100);
    ASSERT_TRUE(r.value);
    EXPECT_FALSE(*r.value);
    EXPECT_EQ(r.trace.count(Side::Gov), fail_at + 1);
  }
}

TEST(Gov, PostStagesThreadResult) {
  for (const auto& d : sample_directives()) {
    Environment env(0);
    const Value result = Value::text("r");
    auto r = run_trace(post_governance(d, result), scripted_checks({false, false, false}, env), 100);
    ASSERT_TRUE(r.value);
    EXPECT_EQ(*r.value, result);
    EXPECT_EQ(gov_stages(r.trace),
              (std::vector<std::string>{"Guardrails", "ProvenanceRecord", "EventBroadcast"}));
  }
}

TEST(Gov, GovernedTriggerShape) {
  for (const auto& d : sample_directives()) {
    Environment env(2);
    auto t = interp<Directive, GovIo, Value>(gov_wrap(passthrough()), trigger(d));
    auto r = run_trace(t, permissive_responder(io_responder(env)), 1000);
    ASSERT_TRUE(r.value);
    ASSERT_EQ(r.trace.entries.size(), 8u);
    for (std::size_t i = 0; i < 8; ++i) {
      EXPECT_EQ(r.trace.entries[i].side, i == 4 ? Side::Io : Side::Gov);
    }
    EXPECT_EQ(r.trace.entries[4].event, render(d));
    EXPECT_EQ(r.trace.entries[0].event, "GovCheck TrustCheck " +
                                            std::string(class_name(classify(d))) + " " +
                                            std::string(kind_name(d.kind())));
    EXPECT_EQ(*r.value, r.trace.entries[4].answer);
  }
}

TEST(Gov, PermittedResultEqualsHandlerResult) {
  auto filter = content_filter(redact_digits);
  Environment env(0);
  env.script("LLMCall \"p\"", {Value::text("a1b2")});
  auto t = interp<Directive, GovIo, Value>(gov_wrap(filter), trigger(llm("p")));
  auto r = run_trace(t, permissive_responder(io_responder(env)), 1000);
  ASSERT_TRUE(r.value);
  EXPECT_EQ(*r.value, Value::text("a#b#"));
}

TEST(Gov, DenialDivergesWithoutIo) {
  for (std::size_t fail_at = 0; fail_at < 4; ++fail_at) {
    std::vector<bool> answers(4, true);
    answers[fail_at] = false;
    Environment env(0);
    auto t = interp<Directive, GovIo, Value>(gov_wrap(passthrough()), trigger(exec("rm")));
    auto r = run_trace(t, scripted_checks(answers, env), 1'000'000);
    EXPECT_FALSE(r.returned());
    EXPECT_TRUE(r.diverged());
    EXPECT_EQ(io_count(r.trace), 0u);
    EXPECT_TRUE(trace_shows_denial(r.trace));
  }
}

TEST(Gov, PermissiveAnswersTrue) {
  Environment env(0);
  auto p = permissive_responder(io_responder(env));
  for (const auto& d : sample_directives()) {
    for (auto s : {GovStage::TrustCheck, GovStage::Guardrails, GovStage::EventBroadcast}) {
      EXPECT_EQ(p(gov_side(GovEvent{s, d})), Value::boolean(true));
    }
  }
  env.write(4, 11);
  EXPECT_EQ(p(io_side(lower(mem_read(4)))), Value::nat(11));
}

TEST(Gov, FullConfigActsPermissive) {
  for (std::uint64_t s = 0; s < 50; ++s) {
    auto prog = gen_program(s, 40);
    auto t = interp<Directive, GovIo, Value>(gov_wrap(passthrough()), prog);
    Environment a(s), b(s);
    auto v = eutt_check(t, t, 1'000'000, config_responder(full_config(), a),
                        permissive_responder(io_responder(b)));
    EXPECT_TRUE(v.equivalent()) << v.witness;
  }
}

TEST(Gov, MissingCallCapabilitySuspendsCallMachine) {
  Environment env(0);
  auto t = interp<Directive, GovIo, Value>(gov_wrap(passthrough()), trigger(call_machine("a", "b")));
  auto r = run_trace(t, config_responder(config_denying(CapabilityClass::Call), env), 10'000);
  EXPECT_TRUE(r.diverged());
  EXPECT_EQ(io_count(r.trace), 0u);
  EXPECT_EQ(r.trace.entries.back().event, "GovCheck PermissionCheck Call CallMachine");
}

TEST(Gov, StageDecisions) {
  GovConfig cfg = full_config();
  cfg.actor_trust = TrustLevel::Standard;
  EXPECT_TRUE(stage_decision(cfg, GovStage::TrustCheck, llm("p")));
  EXPECT_FALSE(stage_decision(cfg, GovStage::TrustCheck, exec("x")));
  EXPECT_FALSE(stage_decision(cfg, GovStage::PermissionCheck, exec("x")));
  cfg.policy = pol_trust(TrustLevel::Low, TrustLevel::System);
  EXPECT_FALSE(stage_decision(cfg, GovStage::PermissionCheck, llm("p")));
  cfg = full_config();
  cfg.phase = Phase::Planning;
  cfg.phase_table[Phase::Planning] = {CapabilityClass::Reason};
  EXPECT_TRUE(stage_decision(cfg, GovStage::PhaseValidation, llm("p")));
  EXPECT_FALSE(stage_decision(cfg, GovStage::PhaseValidation, mem_read(0)));
  cfg.pre_hook = [](const Directive& d) { return d.kind() != DirectiveKind::DBOp; };
  EXPECT_FALSE(stage_decision(cfg, GovStage::PreHooks, db("q")));
  EXPECT_TRUE(stage_decision(cfg, GovStage::ProvenanceRecord, db("q")));
}

TEST(Provenance, PermittedRecordPerDirective) {
  for (std::uint64_t s = 0; s < 100; ++s) {
    auto prog = gen_program(s, 40);
    Environment plain(s);
    auto ungoverned = run_trace(prog, directive_responder(plain), 1'000'000);
    Environment env(s);
    ProvenanceLog log;
    auto t = interp<Directive, GovIo, Value>(gov_wrap(passthrough()), prog);
    auto r = run_trace(t, config_responder(full_config(), env, &log), 16'000'000);
    ASSERT_TRUE(r.returned());
    EXPECT_EQ(log.count(Decision::Permitted), ungoverned.trace.entries.size());
    EXPECT_EQ(log.count(Decision::Denied), 0u);
    for (std::size_t i = 0; i < log.entries().size(); ++i) {
      const auto& e = log.entries()[i];
      EXPECT_EQ(e.seq, i);
      EXPECT_EQ(e.constructor, ungoverned.trace.entries[i].event.substr(0, e.constructor.size()));
      EXPECT_EQ(e.answer_digest, hex64(fnv1a(render(ungoverned.trace.entries[i].answer))));
    }
  }
}

TEST(Provenance, DeniedRecordHasZeroDigest) {
  Environment env(0);
  ProvenanceLog log;
  GovConfig cfg = full_config();
  cfg.actor_trust = TrustLevel::Low;
  auto prog = then(trigger(mem_read(0)), [](const Value&) { return trigger(llm("p")); });
  auto t = interp<Directive, GovIo, Value>(gov_wrap(passthrough()), prog);
  auto r = run_trace(t, config_responder(cfg, env, &log), 10'000);
  EXPECT_TRUE(r.diverged());
  ASSERT_EQ(log.entries().size(), 2u);
  EXPECT_EQ(log.entries()[0].decision, Decision::Permitted);
  EXPECT_EQ(log.entries()[1].decision, Decision::Denied);
  EXPECT_EQ(log.entries()[1].answer_digest, kZeroDigest);
  EXPECT_EQ(render_provenance(log.entries()[1]),
            "1\t1\tLLMCall\tReason\tDenied\t0000000\t0000000000000000");
  EXPECT_EQ(render_provenance(log.entries()[0]),
            "0\t1\tMemoryOp\tMemory\tPermitted\t1111111\t" + hex64(fnv1a("0")));
  std::ostringstream out;
  log.write(out);
  const std::string text = out.str();
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 2);
}

TEST(Provenance, GuardrailOutcomeIsRecorded) {
  Environment env(0);
  ProvenanceLog log;
  GovConfig cfg = full_config();
  cfg.guardrail = [](const Directive&) { return false; };
  auto t = interp<Directive, GovIo, Value>(gov_wrap(passthrough()), trigger(mem_read(0)));
  auto r = run_trace(t, config_responder(cfg, env, &log), 1000);
  ASSERT_TRUE(r.returned());
  ASSERT_EQ(log.entries().size(), 1u);
  EXPECT_EQ(log.entries()[0].decision, Decision::Permitted);
  const std::string line = render_provenance(log.entries()[0]);
  EXPECT_EQ(line.substr(0, line.rfind('\t')), "0\t1\tMemoryOp\tMemory\tPermitted\t1111011");
}

TEST(Hashing, Fnv1aKnownValues) {
  EXPECT_EQ(fnv1a(""), 0xcbf29ce484222325ull);
  EXPECT_EQ(fnv1a("a"), 0xaf63dc4c8601ec8cull);
  EXPECT_EQ(hex64(fnv1a("foobar")), "85944171f73967e8");
}

#include <gtest/gtest.h>

#include "govtree/equivalence.hpp"
#include "govtree/generators.hpp"
#include "govtree/machines.hpp"
#include "govtree/safety.hpp"

using namespace govtree;

namespace {

// Reference run through the rm_step oracle alone.
ExecOutcome step_oracle(const RmProgram& p, std::uint64_t fuel, RmState s) {
  while (s.pc < p.instrs.size() && fuel > 0) {
    s = rm_step(p, s);
    --fuel;
  }
  return {s.pc < p.instrs.size() ? ExecOutcome::Status::OutOfFuel : ExecOutcome::Status::Halted,
          s.reg(0)};
}

ExecOutcome run_translated(const Tree<Directive, ExecOutcome>& t, Environment env) {
  auto r = run_trace(interp<Directive, IoEvent, ExecOutcome>(passthrough(), t), io_responder(env),
                     10'000'000);
  EXPECT_TRUE(r.value);
  return r.value.value_or(ExecOutcome{});
}

std::size_t reason_events(const Trace& tr) {
  std::size_t n = 0;
  for (const auto& e : tr.entries) n += e.event.rfind("LLMCall ", 0) == 0;
  return n;
}

}  // namespace

TEST(RmStep, Examples) {
  auto s = rm_step(inc_then_halt(), initial_state());
  EXPECT_EQ(s.pc, 1u);
  EXPECT_EQ(s.reg(0), 1u);

  auto l = rm_step(looping_program(), initial_state({4}));
  EXPECT_EQ(l.pc, 0u);
  EXPECT_EQ(l.reg(0), 5u);

  RmProgram dec{{Dec{0, 5, 9}}};
  auto z = rm_step(dec, initial_state());
  EXPECT_EQ(z.pc, 9u);
  EXPECT_EQ(z, (RmState{9, {}}));

  EXPECT_THROW(rm_step(inc_then_halt(), RmState{1, {}}), std::out_of_range);
}

TEST(RmHalts, Examples) {
  EXPECT_TRUE(rm_halts(inc_then_halt(), 2, initial_state()));
  EXPECT_TRUE(rm_halts(inc_then_halt(), 1, initial_state()));
  EXPECT_FALSE(rm_halts(inc_then_halt(), 0, initial_state()));
  EXPECT_TRUE(rm_halts(inc_then_halt(), 0, RmState{1, {}}));
  for (std::uint64_t n = 0; n <= 10'000; ++n) {
    ASSERT_FALSE(rm_halts(looping_program(), n, initial_state())) << n;
  }
}

TEST(Translate, FirstEventIsMemoryRead) {
  for (const RmProgram& p : {inc_then_halt(), looping_program()}) {
    auto n = translate_instruction(p.instrs[0]).observe();
    auto* v = std::get_if<VisNode<Directive, Label>>(&n);
    ASSERT_NE(v, nullptr);
    EXPECT_EQ(render(v->event), "MemoryOp Read 0");
  }
}

TEST(Translate, QueryEmitsOneReasonEvent) {
  OracleProgram p{{Query{0, 1}}};
  Environment env(0);
  auto r = run_trace(interp<Directive, IoEvent, Label>(passthrough(),
                                                       translate_instruction(p.instrs[0])),
                     io_responder(env), 100);
  EXPECT_EQ(reason_events(r.trace), 1u);
  EXPECT_EQ(r.trace.entries.size(), 3u);
}

TEST(Translate, ReferencePrograms) {
  Environment env(0);
  auto halt = run_translated(translate_program(inc_then_halt(), 2, 0), env);
  EXPECT_EQ(halt, (ExecOutcome{ExecOutcome::Status::Halted, 1}));

  auto loop = run_translated(translate_program(looping_program(), 50, 0), env);
  EXPECT_EQ(loop.status, ExecOutcome::Status::OutOfFuel);
  EXPECT_EQ(loop.output, 50u);

  Environment add_env(0);
  add_env.set_registers({2, 3});
  EXPECT_EQ(run_translated(translate_program(addition_program(), 200, 0), add_env),
            (ExecOutcome{ExecOutcome::Status::Halted, 5}));

  for (std::uint64_t a = 0; a < 6; ++a) {
    for (std::uint64_t b = 0; b < 6; ++b) {
      Environment mul_env(0);
      mul_env.set_registers({0, a, b});
      auto out = run_translated(translate_program(multiplication_program(), 10'000, 0), mul_env);
      EXPECT_EQ(out, (ExecOutcome{ExecOutcome::Status::Halted, a * b}));
      EXPECT_EQ(out, step_oracle(multiplication_program(), 10'000, initial_state({0, a, b})));
    }
  }
}

TEST(Translate, RandomProgramsMatchStepOracle) {
  SplitMix64 rng(3);
  for (int i = 0; i < 500; ++i) {
    auto p = gen_rm_program(rng);
    auto regs = gen_registers(rng);
    const std::uint64_t fuel = rng.below(60);
    Environment env(rng.next());
    env.set_registers(regs);
    const auto want = step_oracle(p, fuel, initial_state(regs));
    EXPECT_EQ(simulate(p, fuel, initial_state(regs)), want);
    EXPECT_EQ(run_translated(translate_program(p, fuel, 0), env), want);
  }
}

TEST(Oracle, ScriptedAnswer) {
  OracleProgram p{{Query{0, 1}}};
  Environment env(0);
  env.script_kind(DirectiveKind::LLMCall, {Value::text("42")});
  EXPECT_EQ(run_translated(translate_oracle_program(p, 10, 0), env),
            (ExecOutcome{ExecOutcome::Status::Halted, 42}));

  Environment junk(0);
  junk.script_kind(DirectiveKind::LLMCall, {Value::text("not a number")});
  EXPECT_EQ(run_translated(translate_oracle_program(p, 10, 0), junk).output, 0u);
}

TEST(Oracle, EmbeddingMatchesPlainTranslation) {
  SplitMix64 rng(4);
  for (int i = 0; i < 200; ++i) {
    auto p = gen_rm_program(rng);
    auto regs = gen_registers(rng);
    Environment a(1), b(1);
    a.set_registers(regs);
    b.set_registers(regs);
    auto ta = run_trace(translate_program(p, 40, 0), directive_responder(a), 1'000'000);
    auto tb = run_trace(translate_oracle_program(embed(p), 40, 0), directive_responder(b), 1'000'000);
    EXPECT_EQ(ta.trace, tb.trace);
  }
}

TEST(Oracle, RandomProgramsMatchOracleSimulation) {
  SplitMix64 rng(5);
  for (int i = 0; i < 300; ++i) {
    auto p = gen_oracle_program(rng);
    auto regs = gen_registers(rng);
    Environment env(rng.next());
    env.set_registers(regs);
    Environment oracle_env = env;
    const auto want = simulate_oracle(p, 80, initial_state(regs), [&oracle_env](std::uint64_t v) {
      return oracle_env.answer(lower(llm(std::to_string(v)))).as_text();
    });
    EXPECT_EQ(run_translated(translate_oracle_program(p, 80, 0), env), want);
  }
}

TEST(Assembly, ParseAndRender) {
  const char* text =
      "# r0 := r0 + r1\n"
      "DEC 1 1 2   # loop\n"
      "\n"
      "INC 0 0\n"
      "QRY 3 0\n";
  auto p = parse_assembly(text);
  ASSERT_EQ(p.instrs.size(), 3u);
  EXPECT_EQ(std::get<Dec>(p.instrs[0]), (Dec{1, 1, 2}));
  EXPECT_EQ(std::get<Inc>(p.instrs[1]), (Inc{0, 0}));
  EXPECT_EQ(std::get<Query>(p.instrs[2]), (Query{3, 0}));
  EXPECT_EQ(render_assembly(p), "DEC 1 1 2\nINC 0 0\nQRY 3 0\n");
  EXPECT_TRUE(has_query(p));
  EXPECT_THROW(as_plain(p), AsmError);

  auto plain = as_plain(parse_assembly("DEC 1 1 2\nINC 0 0\n"));
  EXPECT_EQ(plain.instrs.size(), 2u);
}

TEST(Assembly, Errors) {
  struct Case {
    const char* text;
    std::size_t line;
  };
  for (const Case& c : {Case{"INC 0\n", 1}, Case{"INC 0 1\nJMP 2\n", 2}, Case{"\n\nDEC a 1 2\n", 3},
                        Case{"INC 0 -1\n", 1}, Case{"QRY 1 2 3\n", 1},
                        Case{"INC 0 99999999999999999999999\n", 1}}) {
    try {
      parse_assembly(c.text);
      ADD_FAILURE() << "accepted: " << c.text;
    } catch (const AsmError& e) {
      EXPECT_EQ(e.line(), c.line) << c.text;
    }
  }
}

TEST(Assembly, RoundTripRandom) {
  SplitMix64 rng(6);
  for (int i = 0; i < 500; ++i) {
    auto p = gen_oracle_program(rng);
    auto q = parse_assembly(render_assembly(p));
    EXPECT_EQ(render_assembly(q), render_assembly(p));
    EXPECT_EQ(q.instrs, p.instrs);
  }
}

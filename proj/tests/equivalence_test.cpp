#include <gtest/gtest.h>

#include "govtree/equivalence.hpp"
#include "govtree/generators.hpp"
#include "govtree/machines.hpp"
#include "govtree/safety.hpp"
#include "support.hpp"

using namespace govtree;

TEST(Eutt, TauInsensitive) {
  auto a = tau(tau(ret<Directive, Value>(Value::nat(5))));
  EXPECT_TRUE(eutt_check(a, ret<Directive, Value>(Value::nat(5)), 100).equivalent());
  EXPECT_TRUE(eutt_check(a, ret<Directive, Value>(Value::nat(6)), 100).distinct());
}

TEST(Eutt, SpinAgainstRet) {
  for (std::uint64_t v : {0u, 1u, 42u}) {
    auto r = eutt_check(spin<Directive, Value>(), ret<Directive, Value>(Value::nat(v)), 1000);
    EXPECT_TRUE(r.distinct());
  }
  EXPECT_TRUE(eutt_check(spin<Directive, Value>(), spin<Directive, Value>(), 10).equivalent());
}

TEST(Eutt, Reflexive) {
  for (std::uint64_t s = 0; s < 200; ++s) {
    auto t = testing_support::random_tree(s, 6);
    Environment a(s), b(s);
    auto v = eutt_check(t, t, 10'000, directive_responder(a), directive_responder(b));
    EXPECT_TRUE(v.equivalent()) << v.witness;
  }
}

TEST(Eutt, DetectsDifferentEvents) {
  Environment a(0), b(0);
  auto v = eutt_check(trigger(mem_read(0)), trigger(mem_read(1)), 100, directive_responder(a),
                      directive_responder(b));
  EXPECT_TRUE(v.distinct());
  EXPECT_EQ(v.index, 0u);
}

TEST(Eutt, FuelExhaustionIsUnknown) {
  auto deep = ret<Directive, Value>(Value::unit());
  for (int i = 0; i < 50; ++i) deep = tau(deep);
  auto v = eutt_check(deep, ret<Directive, Value>(Value::unit()), 10);
  EXPECT_TRUE(v.unknown());
}

TEST(Transparency, MotivatingWorkflow) {
  auto prog = then(trigger(llm("p")), [](const Value&) { return trigger(mem_write(0, 0)); });
  for (std::uint64_t s = 0; s < 20; ++s) {
    EXPECT_TRUE(check_transparency(prog, passthrough(), Environment(s), 1000).equivalent());
  }
}

TEST(Transparency, AdditionProgram) {
  Environment env(0);
  env.set_registers({2, 3});
  auto d = run_differential(translate_program(addition_program(), 200, 0), passthrough(), env,
                            100'000);
  EXPECT_TRUE(d.verdict.equivalent());
  ASSERT_TRUE(d.governed.value && d.ungoverned.value);
  EXPECT_EQ(d.governed.value->output, 5u);
  EXPECT_EQ(d.ungoverned.value->output, 5u);
}

TEST(Transparency, RandomProgramsBothHandlers) {
  for (std::uint64_t s = 0; s < 300; ++s) {
    auto prog = gen_program(s, 50);
    for (const auto& h : {passthrough(), content_filter(redact_digits)}) {
      auto d = run_differential(prog, h, Environment(s), 100'000);
      EXPECT_TRUE(d.verdict.equivalent()) << s << ": " << d.verdict.witness;
    }
  }
}

TEST(Transparency, GoalPreservation) {
  auto goal = [](const Value& v) { return v.is_text() && !v.as_text().empty(); };
  int reached = 0;
  for (std::uint64_t s = 0; s < 300; ++s) {
    auto d = run_differential(gen_program(s, 30), passthrough(), Environment(s), 100'000);
    if (d.ungoverned.value && goal(*d.ungoverned.value)) {
      ++reached;
      ASSERT_TRUE(d.governed.value);
      EXPECT_EQ(*d.governed.value, *d.ungoverned.value);
    }
  }
  EXPECT_GT(reached, 0);
}

TEST(Transparency, BrokenWrapperIsCaught) {
  // A wrapper that drops the answer is not transparent.
  Handler<Directive, GovIo> lying = [](const Directive& d) {
    auto lifted = translate_events<IoEvent, GovIo, Value>(
        [](const IoEvent& e) { return io_side(e); }, passthrough()(d));
    return bind<GovIo, Value, Value>(lifted, [d](const Value& v) {
      if (v.is_text()) return ret<GovIo, Value>(Value::text(v.as_text() + "!"));
      return ret<GovIo, Value>(v);
    });
  };
  bool any_distinct = false;
  for (std::uint64_t s = 0; s < 50 && !any_distinct; ++s) {
    any_distinct = run_differential(gen_program(s, 30), lying, passthrough(), Environment(s), 100'000)
                       .verdict.distinct();
  }
  EXPECT_TRUE(any_distinct);
}

TEST(Denial, CallMachineWithoutCallCapability) {
  auto prog = then(trigger(call_machine("api", "x")), [](const Value& v) {
    return ret<Directive, Value>(v);
  });
  ProvenanceLog log;
  EXPECT_TRUE(check_denial(prog, passthrough(), config_denying(CapabilityClass::Call), Environment(1),
                           1000, &log));
  EXPECT_EQ(log.count(Decision::Denied), 1u);
  EXPECT_FALSE(check_denial(prog, passthrough(), full_config(), Environment(1), 1000));
}

TEST(Denial, DeniedRunIsNotRet) {
  auto prog = trigger(exec("ls"));
  auto t = interp<Directive, GovIo, Value>(gov_wrap(passthrough()), prog);
  for (const auto& v : {Value::text(""), Value::text("x"), Value::unit()}) {
    Environment env(0);
    Responder<GovIo> none = [](const GovIo&) -> Value { throw std::logic_error("no events"); };
    auto r = eutt_check(t, ret<GovIo, Value>(v), 10'000,
                        config_responder(config_denying(CapabilityClass::Call), env), none);
    EXPECT_TRUE(r.distinct());
  }
}

TEST(Mediation, EveryIoHasATrustCheck) {
  for (std::uint64_t s = 0; s < 100; ++s) {
    auto prog = gen_program(s, 40);
    Environment env(s);
    auto r = run_trace(interp<Directive, GovIo, Value>(gov_wrap(passthrough()), prog),
                       permissive_responder(io_responder(env)), 10'000'000);
    EXPECT_EQ(first_unmediated_io(r.trace), std::string::npos);
  }
  Environment env(0);
  auto bare = run_trace(bare_io(mem_read(0)), permissive_responder(io_responder(env)), 10);
  EXPECT_EQ(first_unmediated_io(bare.trace), 0u);
}

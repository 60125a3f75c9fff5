#include <gtest/gtest.h>

#include <set>

#include "govtree/campaign.hpp"
#include "govtree/generators.hpp"
#include "govtree/reports.hpp"
#include "govtree/rng.hpp"
#include "govtree/trace.hpp"
#include "support.hpp"

using namespace govtree;

namespace {

// Events performed on one concrete run.
std::size_t events_on_run(const Tree<Directive, Value>& t, std::uint64_t seed) {
  Environment env(seed);
  return run_trace(t, directive_responder(env), 1'000'000).trace.entries.size();
}

Handler<Directive, GovIo> skip_pre(Handler<Directive, IoEvent> h) {
  return [h](const Directive& d) {
    auto lifted = translate_events<IoEvent, GovIo, Value>(
        [](const IoEvent& e) { return io_side(e); }, h(d));
    return bind<GovIo, Value, Value>(lifted, [d](const Value& r) { return post_governance(d, r); });
  };
}

}  // namespace

TEST(SplitMix, KnownValues) {
  SplitMix64 a(0);
  EXPECT_EQ(a.next(), 0xe220a8397b1dcdafull);
  EXPECT_EQ(a.next(), 0x6e789e6aa1b965f4ull);
  SplitMix64 b(1234567);
  EXPECT_EQ(b.next(), 6457827717110365317ull);
  EXPECT_EQ(b.next(), 3203168211198807973ull);
  EXPECT_EQ(mix_seed(5, 0), SplitMix64(5).next());
}

TEST(Generators, Deterministic) {
  for (std::uint64_t s = 0; s < 100; ++s) {
    Environment a(s), b(s);
    auto ta = run_trace(gen_program(s, 50), directive_responder(a), 1'000'000);
    auto tb = run_trace(gen_program(s, 50), directive_responder(b), 1'000'000);
    EXPECT_EQ(ta.trace.to_text(), tb.trace.to_text());
  }
  SplitMix64 r1(9), r2(9);
  for (int i = 0; i < 50; ++i) {
    EXPECT_EQ(gen_rm_program(r1).instrs, gen_rm_program(r2).instrs);
    EXPECT_EQ(render_policy(*gen_policy(r1, 5)), render_policy(*gen_policy(r2, 5)));
  }
}

TEST(Generators, CoverAllConstructors) {
  std::set<DirectiveKind> seen;
  for (std::uint64_t s = 0; s < 10'000; ++s) {
    for (auto k : constructors_used(*gen_script(s, 50))) seen.insert(k);
  }
  EXPECT_EQ(seen.size(), 13u);
}

TEST(Generators, RespectLengthAndShape) {
  ProgramShape mem_only;
  mem_only.allowed = {DirectiveKind::MemoryOp};
  for (std::uint64_t s = 0; s < 500; ++s) {
    auto script = gen_script(s, 20);
    EXPECT_LE(events_on_run(compile_script(script), s), 20u);
    for (auto k : constructors_used(*gen_script(s, 20, mem_only))) {
      EXPECT_EQ(k, DirectiveKind::MemoryOp);
    }
  }
  EXPECT_THROW(gen_script(3, 0), std::invalid_argument);
}

TEST(Generators, PolicyDepth) {
  SplitMix64 rng(2);
  for (std::size_t d = 1; d <= 40; ++d) {
    EXPECT_EQ(policy_depth(*gen_policy(rng, d)), d);
  }
}

TEST(Campaign, Reproducible) {
  auto a = fuzz_campaign(100, 1);
  auto b = fuzz_campaign(100, 1);
  EXPECT_EQ(a.text(), b.text());
  EXPECT_TRUE(a.passed()) << a.text();
  EXPECT_EQ(a.trials, 100u);
}

TEST(Campaign, ParallelMatchesSerial) {
  CampaignOptions par;
  par.jobs = 4;
  EXPECT_EQ(fuzz_campaign(200, 7).text(), fuzz_campaign(200, 7, par).text());
}

TEST(Campaign, TrialReplay) {
  for (std::uint64_t i = 0; i < 20; ++i) {
    auto a = run_trial(i, trial_seed(3, i));
    auto b = run_trial(i, trial_seed(3, i));
    EXPECT_EQ(a.governed_trace, b.governed_trace);
    EXPECT_EQ(a.ungoverned_trace, b.ungoverned_trace);
    EXPECT_EQ(trial_seed(3, i), mix_seed(3, i));
  }
}

TEST(Campaign, MutantWithoutPreChecksIsCaught) {
  CampaignOptions mutant;
  mutant.wrap = skip_pre;
  auto r = fuzz_campaign(100, 1, mutant);
  EXPECT_GT(r.violations, 0u);
  ASSERT_FALSE(r.failures.empty());
  // A reported failure replays from its index alone.
  const auto& f = r.failures.front();
  auto again = run_trial(f.trial, f.trial_seed, mutant);
  EXPECT_FALSE(again.failures.empty());
}

TEST(Reports, HaltingSeparation) {
  auto r = demo_halting_separation(10'000);
  EXPECT_TRUE(r.passed()) << r.text();
  ASSERT_EQ(r.clauses.size(), 4u);
  const std::string text = r.text();
  EXPECT_EQ(text.rfind("halting separation", 0), 0u);
  EXPECT_NE(text.find("result: PASS"), std::string::npos);
}

TEST(Reports, MinimalityAndSubsumption) {
  auto m = demo_minimality(1, 20);
  EXPECT_TRUE(m.passed()) << m.text();
  auto s = demo_subsumption(50, 1);
  EXPECT_TRUE(s.passed()) << s.text();
  EXPECT_EQ(s.clauses.back().detail, "structural ⊃ content");
}

TEST(Reports, FailingClauseFailsReport) {
  Report r;
  r.title = "t";
  r.add("a", true);
  r.add("b", false, "why");
  EXPECT_FALSE(r.passed());
  EXPECT_EQ(r.text(), "t\nseed: 0\n  PASS a\n  FAIL b (why)\nresult: FAIL\n");
}

TEST(Reports, CapstoneSmall) {
  auto reports = capstone_report(20, 1);
  ASSERT_EQ(reports.size(), 7u);
  for (std::size_t i = 0; i < reports.size(); ++i) {
    EXPECT_EQ(reports[i].title.rfind("[" + std::to_string(i + 1) + "] ", 0), 0u);
    EXPECT_TRUE(reports[i].passed()) << reports[i].text();
  }
}

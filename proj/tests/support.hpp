#pragma once

// Shared helpers for the test binaries: random finite trees, a trace-based
// equality oracle, and a second policy evaluator independent of eval_policy.

#include <cstdint>
#include <vector>

#include "govtree/directives.hpp"
#include "govtree/environment.hpp"
#include "govtree/hash.hpp"
#include "govtree/policy.hpp"
#include "govtree/rng.hpp"
#include "govtree/trace.hpp"
#include "govtree/tree.hpp"

namespace testing_support {

using namespace govtree;
using DTree = Tree<Directive, Value>;

// Random finite tree over MemoryOp / LLMCall events. Continuations are pure
// functions of (seed, answer), so the same tree can be walked repeatedly.
inline DTree random_tree(std::uint64_t seed, int depth) {
  SplitMix64 rng(seed);
  const auto pick = rng.below(depth <= 0 ? 1 : 5);
  if (pick == 0) {
    return ret<Directive, Value>(rng.chance(1, 2) ? Value::nat(rng.below(10))
                                                  : Value::text(rng.chance(1, 2) ? "a" : ""));
  }
  if (pick == 1) return tau(random_tree(rng.next(), depth - 1));
  const Directive d = rng.chance(1, 2) ? mem_read(rng.below(3)) : llm("q" + std::to_string(rng.below(3)));
  const std::uint64_t k_seed = rng.next();
  return vis<Directive, Value>(d, [k_seed, depth](const Value& a) {
    return random_tree(mix_seed(k_seed, fnv1a(render(a))), depth - 1);
  });
}

// Random continuation A -> Tree, deterministic in (seed, argument).
inline std::function<DTree(const Value&)> random_cont(std::uint64_t seed, int depth) {
  return [seed, depth](const Value& v) { return random_tree(mix_seed(seed, fnv1a(render(v))), depth); };
}

// Runs a directive tree against a fresh environment built from `env_seed`.
template <class R>
Trace run_in(const Tree<Directive, R>& t, std::uint64_t env_seed, std::uint64_t fuel = 100'000) {
  Environment env(env_seed);
  return run_trace(t, directive_responder(env), fuel).trace;
}

inline Trace run_io(const Tree<IoEvent, Value>& t, std::uint64_t env_seed,
                    std::uint64_t fuel = 100'000) {
  Environment env(env_seed);
  return run_trace(t, io_responder(env), fuel).trace;
}

// Trace text without the trailing suspension fuel, which differs when Tau
// counts differ.
inline std::vector<std::string> observable(const Trace& t) {
  std::vector<std::string> out;
  for (const auto& e : t.entries) out.push_back(render_entry(e));
  out.push_back(t.outcome.returned() ? "RET " + t.outcome.value
                                     : (t.outcome.diverged ? "DIVERGED" : "SUSP"));
  return out;
}

// Second evaluator: iterative post-order over an explicit stack, with its own
// trust order and minimum-trust table.
inline int trust_rank(TrustLevel t) {
  switch (t) {
    case TrustLevel::Untrusted: return 0;
    case TrustLevel::Low: return 1;
    case TrustLevel::Standard: return 2;
    case TrustLevel::Elevated: return 3;
    case TrustLevel::System: return 4;
  }
  return -1;
}

inline int needed_rank(Capability c) {
  switch (c) {
    case Capability::Compute:
    case Capability::Observe: return 0;
    case Capability::Memory: return 1;
    case Capability::Reason: return 2;
    case Capability::Call: return 3;
  }
  return 99;
}

inline bool oracle_eval(const GovPolicy& root) {
  struct Item {
    const GovPolicy* p;
    bool expanded;
  };
  std::vector<Item> work{{&root, false}};
  std::vector<bool> values;
  while (!work.empty()) {
    Item it = work.back();
    work.pop_back();
    const auto& term = it.p->term();
    if (const auto* t = std::get_if<PolTrust>(&term)) {
      values.push_back(trust_rank(t->have) >= trust_rank(t->need));
    } else if (const auto* c = std::get_if<PolCapability>(&term)) {
      bool member = false;
      for (auto d : c->declared) member = member || d == c->cap;
      values.push_back(member && trust_rank(c->trust) >= needed_rank(c->cap));
    } else if (!it.expanded) {
      work.push_back({it.p, true});
      if (const auto* a = std::get_if<PolAnd>(&term)) {
        work.push_back({a->rhs.get(), false});
        work.push_back({a->lhs.get(), false});
      } else if (const auto* o = std::get_if<PolOr>(&term)) {
        work.push_back({o->rhs.get(), false});
        work.push_back({o->lhs.get(), false});
      } else {
        work.push_back({std::get<PolNot>(term).inner.get(), false});
      }
    } else if (std::holds_alternative<PolNot>(term)) {
      values.back() = !values.back();
    } else {
      const bool r = values.back();
      values.pop_back();
      const bool l = values.back();
      values.pop_back();
      values.push_back(std::holds_alternative<PolAnd>(term) ? (l && r) : (l || r));
    }
  }
  return values.back();
}

}  // namespace testing_support

#include "govtree/generators.hpp"

#include <algorithm>
#include <set>

namespace govtree {

namespace {

std::string gen_text(SplitMix64& rng) {
  static constexpr std::string_view alphabet = "ab7 x\"\\\n";
  const std::size_t len = rng.below(5);
  std::string s;
  for (std::size_t i = 0; i < len; ++i) s.push_back(alphabet[rng.below(alphabet.size())]);
  return s;
}

Value gen_value(SplitMix64& rng) {
  switch (rng.below(4)) {
    case 0: return Value::unit();
    case 1: return Value::boolean(rng.below(2) == 1);
    case 2: return Value::nat(rng.below(10));
    default: return Value::text(gen_text(rng));
  }
}

const std::vector<DirectiveKind>& all_kinds() {
  static const std::vector<DirectiveKind> kinds = [] {
    std::vector<DirectiveKind> k;
    for (std::size_t i = 0; i < kDirectiveKindCount; ++i) k.push_back(static_cast<DirectiveKind>(i));
    return k;
  }();
  return kinds;
}

class ScriptGenerator {
 public:
  ScriptGenerator(std::uint64_t seed, const ProgramShape& shape)
      : rng_(seed), kinds_(shape.allowed.empty() ? all_kinds() : shape.allowed),
        branching_(shape.branching) {}

  ScriptPtr gen(std::size_t budget) {
    auto s = std::make_shared<ProgramScript>();
    if (budget == 0) {
      s->kind = ProgramScript::Kind::Return;
      if (rng_.below(3) == 0) {
        s->result = ProgramScript::Result::Constant;
        s->constant = gen_value(rng_);
      }
      return s;
    }
    if (branching_ && budget >= 2 && rng_.below(10) < 2) {
      s->kind = ProgramScript::Kind::Branch;
      const std::size_t left = rng_.below(budget + 1);
      s->then_branch = gen(left);
      s->else_branch = gen(budget - left);
      return s;
    }
    s->kind = ProgramScript::Kind::Emit;
    s->directive = gen_directive(rng_, kinds_[rng_.below(kinds_.size())]);
    s->uses_prev = rng_.below(3) == 0;
    s->rest = gen(budget - 1);
    return s;
  }

  std::uint64_t length(std::size_t max_len) { return 1 + rng_.below(max_len); }

 private:
  SplitMix64 rng_;
  std::vector<DirectiveKind> kinds_;
  bool branching_;
};

bool branch_taken(const Value& prev) {
  switch (prev.kind()) {
    case ValueKind::Unit: return true;
    case ValueKind::Bool: return prev.as_bool();
    case ValueKind::Nat: return prev.as_nat() % 2 == 0;
    case ValueKind::Text: return prev.as_text().empty();
  }
  return true;
}

Tree<Directive, Value> compile_from(const ScriptPtr& s, const Value& prev) {
  switch (s->kind) {
    case ProgramScript::Kind::Return:
      return ret<Directive, Value>(s->result == ProgramScript::Result::Constant ? s->constant
                                                                                : prev);
    case ProgramScript::Kind::Branch:
      return compile_from(branch_taken(prev) ? s->then_branch : s->else_branch, prev);
    case ProgramScript::Kind::Emit: {
      Directive d = s->uses_prev ? adapt_to_answer(s->directive, prev) : s->directive;
      ScriptPtr rest = s->rest;
      return bind<Directive, Value, Value>(trigger(std::move(d)), [rest](const Value& answer) {
        return compile_from(rest, answer);
      });
    }
  }
  return ret<Directive, Value>(prev);
}

void collect_kinds(const ProgramScript& s, std::set<DirectiveKind>& out) {
  switch (s.kind) {
    case ProgramScript::Kind::Return: return;
    case ProgramScript::Kind::Emit:
      out.insert(s.directive.kind());
      collect_kinds(*s.rest, out);
      return;
    case ProgramScript::Kind::Branch:
      collect_kinds(*s.then_branch, out);
      collect_kinds(*s.else_branch, out);
      return;
  }
}

std::string answer_text(const Value& v) {
  switch (v.kind()) {
    case ValueKind::Text: return v.as_text();
    case ValueKind::Nat: return std::to_string(v.as_nat());
    default: return render(v);
  }
}

std::uint64_t answer_nat(const Value& v) {
  switch (v.kind()) {
    case ValueKind::Nat: return v.as_nat();
    case ValueKind::Text: return v.as_text().size();
    case ValueKind::Bool: return v.as_bool() ? 1 : 0;
    case ValueKind::Unit: return 0;
  }
  return 0;
}

}  // namespace

Directive gen_directive(SplitMix64& rng, DirectiveKind kind) {
  switch (kind) {
    case DirectiveKind::ComputeOp: return compute(rng.below(8), gen_value(rng));
    case DirectiveKind::MemoryOp:
      return rng.below(2) == 0 ? mem_read(rng.below(4)) : mem_write(rng.below(4), rng.below(10));
    case DirectiveKind::DBOp: return db(gen_text(rng));
    case DirectiveKind::FileOp:
      return file(gen_text(rng), rng.below(2) == 0 ? op::FileMode::Read : op::FileMode::Write,
                  gen_text(rng));
    case DirectiveKind::LLMCall: return llm(gen_text(rng));
    case DirectiveKind::LLMCallStream: return llm_stream(gen_text(rng));
    case DirectiveKind::CallMachine: return call_machine(gen_text(rng), gen_text(rng));
    case DirectiveKind::HTTPRequest:
      return http(gen_text(rng), rng.below(2) == 0 ? "GET" : "POST", gen_text(rng));
    case DirectiveKind::ExecOp: return exec(gen_text(rng));
    case DirectiveKind::GraphQLRequest: return graphql(gen_text(rng), gen_text(rng));
    case DirectiveKind::WebSocketOp: return websocket(gen_text(rng), gen_text(rng));
    case DirectiveKind::MCPCall: return mcp(gen_text(rng), gen_text(rng));
    case DirectiveKind::ObserveEmit: return observe_emit(gen_text(rng));
  }
  return observe_emit("");
}

Directive adapt_to_answer(const Directive& d, const Value& prev) {
  const std::string t = answer_text(prev);
  return std::visit(
      [&](auto o) -> Directive {
        using T = std::decay_t<decltype(o)>;
        if constexpr (std::is_same_v<T, op::ComputeOp>) {
          o.input = prev;
        } else if constexpr (std::is_same_v<T, op::MemoryOp>) {
          if (o.access == op::MemAccess::Read) {
            o.key = answer_nat(prev) % 4;
          } else {
            o.value = answer_nat(prev);
          }
        } else if constexpr (std::is_same_v<T, op::DBOp>) {
          o.query += t;
        } else if constexpr (std::is_same_v<T, op::FileOp>) {
          o.payload += t;
        } else if constexpr (std::is_same_v<T, op::LLMCall> || std::is_same_v<T, op::LLMCallStream>) {
          o.prompt += t;
        } else if constexpr (std::is_same_v<T, op::CallMachine>) {
          o.payload += t;
        } else if constexpr (std::is_same_v<T, op::HTTPRequest>) {
          o.body += t;
        } else if constexpr (std::is_same_v<T, op::ExecOp>) {
          o.command += t;
        } else if constexpr (std::is_same_v<T, op::GraphQLRequest>) {
          o.query += t;
        } else if constexpr (std::is_same_v<T, op::WebSocketOp>) {
          o.message += t;
        } else if constexpr (std::is_same_v<T, op::MCPCall>) {
          o.args += t;
        } else {
          o.message += t;
        }
        return Directive{o};
      },
      d.payload);
}

ScriptPtr gen_script(std::uint64_t seed, std::size_t max_len, const ProgramShape& shape) {
  if (max_len == 0) throw std::invalid_argument("gen_script: max_len must be at least 1");
  ScriptGenerator g(seed, shape);
  return g.gen(g.length(max_len));
}

Tree<Directive, Value> compile_script(const ScriptPtr& script) {
  return compile_from(script, Value::unit());
}

Tree<Directive, Value> gen_program(std::uint64_t seed, std::size_t max_len,
                                   const ProgramShape& shape) {
  return compile_script(gen_script(seed, max_len, shape));
}

std::size_t count_emits(const ProgramScript& s) {
  switch (s.kind) {
    case ProgramScript::Kind::Return: return 0;
    case ProgramScript::Kind::Emit: return 1 + count_emits(*s.rest);
    case ProgramScript::Kind::Branch: return count_emits(*s.then_branch) + count_emits(*s.else_branch);
  }
  return 0;
}

std::vector<DirectiveKind> constructors_used(const ProgramScript& s) {
  std::set<DirectiveKind> kinds;
  collect_kinds(s, kinds);
  return {kinds.begin(), kinds.end()};
}

RmProgram gen_rm_program(SplitMix64& rng, std::size_t max_instrs, std::uint64_t max_reg) {
  return as_plain([&] {
    OracleProgram p;
    const std::size_t n = 1 + rng.below(max_instrs);
    for (std::size_t i = 0; i < n; ++i) {
      const Reg r = rng.below(max_reg + 1);
      if (rng.below(2) == 0) {
        p.instrs.push_back(Inc{r, rng.below(n + 1)});
      } else {
        p.instrs.push_back(Dec{r, rng.below(n + 1), rng.below(n + 1)});
      }
    }
    return p;
  }());
}

OracleProgram gen_oracle_program(SplitMix64& rng, std::size_t max_instrs, std::uint64_t max_reg) {
  OracleProgram p;
  const std::size_t n = 1 + rng.below(max_instrs);
  for (std::size_t i = 0; i < n; ++i) {
    const Reg r = rng.below(max_reg + 1);
    switch (rng.below(4)) {
      case 0: p.instrs.push_back(Query{r, rng.below(n + 1)}); break;
      case 1: p.instrs.push_back(Dec{r, rng.below(n + 1), rng.below(n + 1)}); break;
      default: p.instrs.push_back(Inc{r, rng.below(n + 1)}); break;
    }
  }
  return p;
}

std::vector<std::uint64_t> gen_registers(SplitMix64& rng, std::size_t count,
                                         std::uint64_t max_value) {
  std::vector<std::uint64_t> regs(count);
  for (auto& r : regs) r = rng.below(max_value + 1);
  return regs;
}

namespace {

TrustLevel gen_trust(SplitMix64& rng) { return static_cast<TrustLevel>(rng.below(5)); }
Capability gen_cap(SplitMix64& rng) { return static_cast<Capability>(rng.below(5)); }

PolicyPtr gen_leaf(SplitMix64& rng) {
  if (rng.below(2) == 0) return pol_trust(gen_trust(rng), gen_trust(rng));
  std::vector<Capability> declared;
  for (std::size_t i = 0; i < 5; ++i) {
    if (rng.below(2) == 0) declared.push_back(static_cast<Capability>(i));
  }
  return pol_capability(gen_trust(rng), gen_cap(rng), std::move(declared));
}

}  // namespace

PolicyPtr gen_policy(SplitMix64& rng, std::size_t depth) {
  if (depth <= 1) return gen_leaf(rng);
  switch (rng.below(3)) {
    case 0: return pol_not(gen_policy(rng, depth - 1));
    default: {
      const bool is_and = rng.below(2) == 0;
      PolicyPtr deep = gen_policy(rng, depth - 1);
      PolicyPtr shallow = gen_policy(rng, 1 + rng.below(std::min<std::size_t>(depth - 1, 3)));
      if (rng.below(2) == 0) std::swap(deep, shallow);
      return is_and ? pol_and(deep, shallow) : pol_or(deep, shallow);
    }
  }
}

std::size_t policy_depth(const GovPolicy& p) {
  return std::visit(
      [](const auto& x) -> std::size_t {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, PolNot>) {
          return 1 + policy_depth(*x.inner);
        } else if constexpr (std::is_same_v<T, PolAnd> || std::is_same_v<T, PolOr>) {
          return 1 + std::max(policy_depth(*x.lhs), policy_depth(*x.rhs));
        } else {
          return 1;
        }
      },
      p.term());
}

GovConfig gen_config(SplitMix64& rng) {
  GovConfig cfg;
  cfg.actor_trust = gen_trust(rng);
  for (std::size_t i = 0; i < 5; ++i) {
    if (rng.below(4) != 0) cfg.declared_caps.push_back(static_cast<Capability>(i));
  }
  cfg.policy = gen_policy(rng, 1 + rng.below(4));
  cfg.phase = kAllPhases[rng.below(kAllPhases.size())];
  for (Phase p : kAllPhases) {
    auto& admitted = cfg.phase_table[p];
    for (CapabilityClass c : kAllClasses) {
      if (rng.below(5) != 0) admitted.insert(c);
    }
  }
  std::set<DirectiveKind> hooked;
  std::set<DirectiveKind> guarded;
  for (std::size_t i = 0; i < kDirectiveKindCount; ++i) {
    if (rng.below(13) == 0) hooked.insert(static_cast<DirectiveKind>(i));
    if (rng.below(13) == 0) guarded.insert(static_cast<DirectiveKind>(i));
  }
  cfg.pre_hook = [hooked](const Directive& d) { return hooked.count(d.kind()) == 0; };
  cfg.guardrail = [guarded](const Directive& d) { return guarded.count(d.kind()) == 0; };
  return cfg;
}

std::string redact_digits(const std::string& s) {
  std::string out = s;
  std::replace_if(out.begin(), out.end(), [](char c) { return c >= '0' && c <= '9'; }, '#');
  return out;
}

}  // namespace govtree

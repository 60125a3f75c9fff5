#include "govtree/environment.hpp"

#include "govtree/hash.hpp"
#include "govtree/rng.hpp"

namespace govtree {

const std::vector<std::string>& Environment::text_pool() {
  static const std::vector<std::string> pool = {"", "x", "0", "1", "7", "42", "ok", "yes"};
  return pool;
}

std::uint64_t Environment::read(std::uint64_t key) const {
  auto it = memory_.find(key);
  return it == memory_.end() ? 0 : it->second;
}

void Environment::set_registers(const std::vector<std::uint64_t>& regs) {
  for (std::size_t i = 0; i < regs.size(); ++i) memory_[i] = regs[i];
}

void Environment::script(const std::string& rendering, std::vector<Value> answers) {
  auto& q = scripts_[rendering];
  q.insert(q.end(), answers.begin(), answers.end());
}

void Environment::script_kind(DirectiveKind kind, std::vector<Value> answers) {
  auto& q = kind_scripts_[kind];
  q.insert(q.end(), answers.begin(), answers.end());
}

Value apply_morphism(std::uint64_t morphism, const Value& input) {
  switch (input.kind()) {
    case ValueKind::Unit: return Value::unit();
    case ValueKind::Bool: return Value::boolean(morphism % 2 == 1 ? !input.as_bool() : input.as_bool());
    case ValueKind::Nat: return Value::nat(input.as_nat() * (morphism % 5 + 1) + morphism);
    case ValueKind::Text: return Value::text(input.as_text() + std::to_string(morphism % 10));
  }
  return input;
}

Value Environment::answer(const IoEvent& e) {
  ++clock_;
  const Directive& d = e.op;
  const std::string rendering = render(d);
  const std::uint64_t occurrence = occurrences_[rendering]++;

  if (auto it = scripts_.find(rendering); it != scripts_.end() && !it->second.empty()) {
    Value v = it->second.front();
    it->second.pop_front();
    return v;
  }
  if (auto it = kind_scripts_.find(d.kind()); it != kind_scripts_.end() && !it->second.empty()) {
    Value v = it->second.front();
    it->second.pop_front();
    return v;
  }

  switch (d.kind()) {
    case DirectiveKind::MemoryOp: {
      const auto& m = std::get<op::MemoryOp>(d.payload);
      if (m.access == op::MemAccess::Read) return Value::nat(read(m.key));
      memory_[m.key] = m.value;
      return Value::nat(m.value);
    }
    case DirectiveKind::ComputeOp: {
      const auto& c = std::get<op::ComputeOp>(d.payload);
      return apply_morphism(c.morphism, c.input);
    }
    case DirectiveKind::ObserveEmit: return Value::unit();
    default: {
      const auto& pool = text_pool();
      std::uint64_t pick = mix_seed(mix_seed(seed_, fnv1a(rendering)), occurrence);
      return Value::text(pool[pick % pool.size()]);
    }
  }
}

Responder<IoEvent> io_responder(Environment& env) {
  return [&env](const IoEvent& e) { return env.answer(e); };
}

Responder<Directive> directive_responder(Environment& env) {
  return [&env](const Directive& d) { return env.answer(lower(d)); };
}

}  // namespace govtree

#include "govtree/safety.hpp"

namespace govtree {

const std::vector<Value>& ResponseSampler::samples(ValueKind k) const {
  switch (k) {
    case ValueKind::Unit: return unit;
    case ValueKind::Bool: return boolean;
    case ValueKind::Nat: return nat;
    case ValueKind::Text: return text;
  }
  return unit;
}

std::vector<std::string> render_path(const SafetyVerdict& v) {
  std::vector<std::string> lines;
  for (const auto& step : v.path) {
    if (step.answer) {
      lines.push_back(render_entry(TraceEntry{step.side, step.event, *step.answer}));
    } else {
      lines.push_back("VIOLATION " + step.event);
    }
  }
  return lines;
}

Tree<GovIo, Value> bare_io(const Directive& d) { return trigger(io_side(lower(d))); }

}  // namespace govtree

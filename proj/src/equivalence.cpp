#include "govtree/equivalence.hpp"

namespace govtree {

std::string_view verdict_name(EquivVerdict::Kind k) {
  switch (k) {
    case EquivVerdict::Kind::Equivalent: return "Equivalent";
    case EquivVerdict::Kind::Distinct: return "Distinct";
    case EquivVerdict::Kind::Unknown: return "Unknown";
  }
  return "?";
}

EquivVerdict compare_traces(const Trace& a, const Trace& b) {
  const std::size_t common = std::min(a.entries.size(), b.entries.size());
  for (std::size_t i = 0; i < common; ++i) {
    if (!(a.entries[i] == b.entries[i])) {
      return {EquivVerdict::Kind::Distinct, i,
              render_entry(a.entries[i]) + " vs " + render_entry(b.entries[i])};
    }
  }
  const TraceOutcome& oa = a.outcome;
  const TraceOutcome& ob = b.outcome;
  const bool exhausted_a = !oa.returned() && !oa.diverged;
  const bool exhausted_b = !ob.returned() && !ob.diverged;
  if (a.entries.size() != b.entries.size()) {
    // A side that ran out of fuel may simply not have reached the rest.
    if (exhausted_a || exhausted_b) return {EquivVerdict::Kind::Unknown, common, {}};
    return {EquivVerdict::Kind::Distinct, common, "trace lengths differ"};
  }
  if (exhausted_a || exhausted_b) return {EquivVerdict::Kind::Unknown, common, {}};
  if (oa.returned() && ob.returned()) {
    if (oa.value == ob.value) return {EquivVerdict::Kind::Equivalent, common, {}};
    return {EquivVerdict::Kind::Distinct, common, "RET " + oa.value + " vs RET " + ob.value};
  }
  if (oa.diverged && ob.diverged) return {EquivVerdict::Kind::Equivalent, common, {}};
  return {EquivVerdict::Kind::Distinct, common, render_outcome(oa) + " vs " + render_outcome(ob)};
}

namespace {

std::string_view last_token(std::string_view s) {
  auto sp = s.rfind(' ');
  return sp == std::string_view::npos ? s : s.substr(sp + 1);
}

std::string_view first_token(std::string_view s) {
  auto sp = s.find(' ');
  return sp == std::string_view::npos ? s : s.substr(0, sp);
}

bool is_trust_check(const TraceEntry& e) {
  return e.side == Side::Gov && e.event.rfind("GovCheck TrustCheck ", 0) == 0;
}

}  // namespace

bool trace_shows_denial(const Trace& governed) {
  if (governed.outcome.returned() || !governed.outcome.diverged) return false;
  // The last entry must be a failed pre-stage check; nothing may follow it.
  if (governed.entries.empty()) return false;
  const TraceEntry& last = governed.entries.back();
  if (last.side != Side::Gov || !last.answer.is_bool() || last.answer.as_bool()) return false;
  for (GovStage s : kPreStages) {
    std::string prefix = "GovCheck " + std::string(stage_name(s)) + " ";
    if (last.event.rfind(prefix, 0) == 0) return true;
  }
  return false;
}

std::size_t first_unmediated_io(const Trace& governed) {
  std::string_view pending_ctor;
  bool pending = false;
  for (std::size_t i = 0; i < governed.entries.size(); ++i) {
    const TraceEntry& e = governed.entries[i];
    if (is_trust_check(e)) {
      pending = true;
      pending_ctor = last_token(e.event);
    } else if (e.side == Side::Io) {
      if (!pending || first_token(e.event) != pending_ctor) return i;
      pending = false;
    }
  }
  return std::string::npos;
}

}  // namespace govtree

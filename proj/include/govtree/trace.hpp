#pragma once

// Executing trees against responders and recording what was observed.
//
// Trace text format, one entry per line:
//   G <event rendering> -> <answer rendering>     governance-only event
//   I <event rendering> -> <answer rendering>     I/O event
// terminated by exactly one of
//   RET <value rendering>
//   SUSP <fuel>

#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "govtree/directives.hpp"
#include "govtree/environment.hpp"
#include "govtree/governance.hpp"
#include "govtree/tree.hpp"
#include "govtree/value.hpp"

namespace govtree {

enum class Side : std::uint8_t { Gov, Io };

inline Side trace_side(const Directive&) { return Side::Io; }
inline Side trace_side(const IoEvent&) { return Side::Io; }
inline Side trace_side(const GovIo& e) { return e.is_gov() ? Side::Gov : Side::Io; }

// Result renderings for every tree result type used in the project.
inline std::string render_result(const Value& v) { return render(v); }
inline std::string render_result(bool b) { return b ? "true" : "false"; }
inline std::string render_result(std::uint64_t n) { return std::to_string(n); }

struct TraceEntry {
  Side side = Side::Io;
  std::string event;
  Value answer;
  bool operator==(const TraceEntry&) const = default;
};

struct TraceOutcome {
  enum class Kind : std::uint8_t { Returned, Suspended };
  Kind kind = Kind::Suspended;
  std::string value;       // rendering of the returned value
  std::uint64_t fuel = 0;  // budget at suspension
  bool diverged = false;   // suspended on a detected spin self-loop

  bool returned() const { return kind == Kind::Returned; }
  bool operator==(const TraceOutcome&) const = default;
};

struct Trace {
  std::vector<TraceEntry> entries;
  TraceOutcome outcome;

  std::size_t count(Side s) const;
  std::vector<std::string> lines() const;
  std::string to_text() const;
  bool operator==(const Trace&) const = default;
};

std::string render_entry(const TraceEntry& e);
std::string render_outcome(const TraceOutcome& o);

// Inverse of Trace::to_text().
Trace parse_trace(const std::string& text);

Trace erase_gov(const Trace& tr);

template <class R>
struct RunResult {
  Trace trace;
  std::optional<R> value;
  std::uint64_t steps = 0;

  bool returned() const { return value.has_value(); }
  bool diverged() const { return trace.outcome.diverged; }
};

// Steps t one node per unit of fuel, answering Vis events with `respond`.
// Tau nodes consume fuel but add no entry. Reaching the canonical spin
// self-loop stops immediately with a diverged suspension.
template <class E, class R>
RunResult<R> run_trace(Tree<E, R> t, const Responder<E>& respond, std::uint64_t fuel) {
  if (fuel == 0) throw std::invalid_argument("run_trace: fuel must be at least 1");
  RunResult<R> out;
  out.trace.outcome.fuel = fuel;
  Tree<E, R> cur = std::move(t);
  while (true) {
    if (cur.is_spin()) {
      out.trace.outcome.diverged = true;
      break;
    }
    if (out.steps == fuel) break;
    ++out.steps;
    Node<E, R> n = cur.observe();
    if (auto* r = std::get_if<RetNode<E, R>>(&n)) {
      out.trace.outcome.kind = TraceOutcome::Kind::Returned;
      out.trace.outcome.value = render_result(r->value);
      out.trace.outcome.fuel = 0;
      out.value = r->value;
      break;
    }
    if (auto* tn = std::get_if<TauNode<E, R>>(&n)) {
      cur = tn->rest;
      continue;
    }
    auto& v = std::get<VisNode<E, R>>(n);
    Value answer = respond(v.event);
    expect_kind(answer_kind(v.event), answer, "run_trace: responder answer");
    out.trace.entries.push_back(TraceEntry{trace_side(v.event), render(v.event), answer});
    cur = v.next(answer);
  }
  return out;
}

// Runs t answering each event with the next recorded answer of `recorded`.
// Throws std::runtime_error if the tree asks for an event that differs from
// the recorded one or runs past the recording.
template <class E, class R>
RunResult<R> replay_trace(Tree<E, R> t, const Trace& recorded, std::uint64_t fuel) {
  std::size_t next = 0;
  Responder<E> respond = [&recorded, &next](const E& e) -> Value {
    if (next >= recorded.entries.size()) throw std::runtime_error("replay: trace exhausted");
    const TraceEntry& want = recorded.entries[next++];
    if (want.event != render(e) || want.side != trace_side(e)) {
      throw std::runtime_error("replay: event mismatch at entry " + std::to_string(next - 1));
    }
    return want.answer;
  };
  return run_trace(std::move(t), respond, fuel);
}

}  // namespace govtree

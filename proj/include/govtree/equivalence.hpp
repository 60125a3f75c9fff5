#pragma once

// Equivalence up to Tau, the transparency differential, and denial checks.
//
// With deterministic responders, weak bisimulation of two runs reduces to
// equality of their visible event/answer sequences plus equal outcomes, with
// Tau steps skipped. Divergence is definite only for the canonical spin
// self-loop; any other fuel exhaustion is reported as Unknown.

#include <cstdint>
#include <string>

#include "govtree/directives.hpp"
#include "govtree/environment.hpp"
#include "govtree/governance.hpp"
#include "govtree/trace.hpp"
#include "govtree/tree.hpp"

namespace govtree {

struct EquivVerdict {
  enum class Kind : std::uint8_t { Equivalent, Distinct, Unknown };
  Kind kind = Kind::Unknown;
  std::size_t index = 0;     // Distinct: number of visible steps matched before divergence
  std::string witness;       // Distinct: human-readable description of the mismatch

  bool equivalent() const { return kind == Kind::Equivalent; }
  bool distinct() const { return kind == Kind::Distinct; }
  bool unknown() const { return kind == Kind::Unknown; }
};

std::string_view verdict_name(EquivVerdict::Kind k);

namespace detail {

template <class E, class R>
struct SkipResult {
  enum class Stop : std::uint8_t { Ret, Vis, Spin, Fuel } stop;
  Node<E, R> node;
};

// Skips Tau nodes until a Ret or Vis, the spin self-loop, or fuel exhaustion.
template <class E, class R>
SkipResult<E, R> skip_tau(Tree<E, R>& cur, std::uint64_t& fuel) {
  while (true) {
    if (cur.is_spin()) return {SkipResult<E, R>::Stop::Spin, cur.observe()};
    if (fuel == 0) return {SkipResult<E, R>::Stop::Fuel, cur.observe()};
    --fuel;
    Node<E, R> n = cur.observe();
    if (auto* t = std::get_if<TauNode<E, R>>(&n)) {
      cur = t->rest;
      continue;
    }
    auto stop = std::holds_alternative<RetNode<E, R>>(n) ? SkipResult<E, R>::Stop::Ret
                                                         : SkipResult<E, R>::Stop::Vis;
    return {stop, std::move(n)};
  }
}

}  // namespace detail

// Lockstep comparison modulo Tau. Vis nodes must carry equal event renderings;
// each side's answer comes from its own responder and the answers must agree.
// Ret nodes must carry equal values. Fuel is per side.
template <class E, class R>
EquivVerdict eutt_check(Tree<E, R> a, Tree<E, R> b, std::uint64_t fuel,
                        const Responder<E>& respond_a, const Responder<E>& respond_b) {
  using Stop = typename detail::SkipResult<E, R>::Stop;
  std::uint64_t fuel_a = fuel;
  std::uint64_t fuel_b = fuel;
  std::size_t matched = 0;
  auto distinct = [&matched](std::string why) {
    return EquivVerdict{EquivVerdict::Kind::Distinct, matched, std::move(why)};
  };
  while (true) {
    auto sa = detail::skip_tau(a, fuel_a);
    auto sb = detail::skip_tau(b, fuel_b);
    if (sa.stop == Stop::Fuel || sb.stop == Stop::Fuel) {
      return EquivVerdict{EquivVerdict::Kind::Unknown, matched, {}};
    }
    if (sa.stop == Stop::Spin || sb.stop == Stop::Spin) {
      if (sa.stop == sb.stop) return EquivVerdict{EquivVerdict::Kind::Equivalent, matched, {}};
      return distinct("one side diverges (spin), the other does not");
    }
    if (sa.stop != sb.stop) return distinct("return on one side, event on the other");
    if (sa.stop == Stop::Ret) {
      const auto& va = std::get<RetNode<E, R>>(sa.node).value;
      const auto& vb = std::get<RetNode<E, R>>(sb.node).value;
      if (va == vb) return EquivVerdict{EquivVerdict::Kind::Equivalent, matched, {}};
      return distinct("returned " + render_result(va) + " vs " + render_result(vb));
    }
    auto& na = std::get<VisNode<E, R>>(sa.node);
    auto& nb = std::get<VisNode<E, R>>(sb.node);
    const std::string ea = render(na.event);
    const std::string eb = render(nb.event);
    if (ea != eb) return distinct("event " + ea + " vs " + eb);
    Value xa = respond_a(na.event);
    Value xb = respond_b(nb.event);
    expect_kind(answer_kind(na.event), xa, "eutt_check: answer");
    expect_kind(answer_kind(nb.event), xb, "eutt_check: answer");
    if (!(xa == xb)) return distinct("answer to " + ea + ": " + render(xa) + " vs " + render(xb));
    ++matched;
    a = na.next(xa);
    b = nb.next(xb);
  }
}

// For trees that never reach a Vis node; throws std::logic_error otherwise.
template <class E, class R>
EquivVerdict eutt_check(Tree<E, R> a, Tree<E, R> b, std::uint64_t fuel) {
  Responder<E> none = [](const E& e) -> Value {
    throw std::logic_error("eutt_check: no responder for event " + render(e));
  };
  return eutt_check(std::move(a), std::move(b), fuel, none, none);
}

// Compares an erased governed trace against an ungoverned one.
EquivVerdict compare_traces(const Trace& governed_erased, const Trace& ungoverned);

// The governed side gets this multiple of the ungoverned fuel: each directive
// expands to at most seven GovCheck events, one I/O event and a few Taus.
inline constexpr std::uint64_t kGovernedFuelFactor = 16;

template <class R>
struct Differential {
  EquivVerdict verdict;
  RunResult<R> governed;
  RunResult<R> ungoverned;
};

// Side A: interp(governed, program) answered by permissive_responder over a
// copy of env. Side B: interp(h, program) answered by another copy.
template <class R>
Differential<R> run_differential(const Tree<Directive, R>& program,
                                 const Handler<Directive, GovIo>& governed,
                                 const Handler<Directive, IoEvent>& h, const Environment& env,
                                 std::uint64_t fuel) {
  Environment env_a = env;
  Environment env_b = env;
  Differential<R> d;
  d.governed = run_trace(interp<Directive, GovIo, R>(governed, program),
                         permissive_responder(io_responder(env_a)), fuel * kGovernedFuelFactor);
  d.ungoverned = run_trace(interp<Directive, IoEvent, R>(h, program), io_responder(env_b), fuel);
  d.verdict = compare_traces(erase_gov(d.governed.trace), d.ungoverned.trace);
  return d;
}

template <class R>
Differential<R> run_differential(const Tree<Directive, R>& program,
                                 const Handler<Directive, IoEvent>& h, const Environment& env,
                                 std::uint64_t fuel) {
  return run_differential(program, gov_wrap(h), h, env, fuel);
}

template <class R>
EquivVerdict check_transparency(const Tree<Directive, R>& program,
                                const Handler<Directive, IoEvent>& h, const Environment& env,
                                std::uint64_t fuel) {
  return run_differential(program, h, env, fuel).verdict;
}

// True when the governed trace shows a directive denied by a pre-stage, with
// no I/O entry after the denial, and the run diverged instead of returning.
bool trace_shows_denial(const Trace& governed);

template <class R>
bool check_denial(const Tree<Directive, R>& program, const Handler<Directive, IoEvent>& h,
                  const GovConfig& cfg_denying, const Environment& env, std::uint64_t fuel,
                  ProvenanceLog* log = nullptr) {
  Environment local = env;
  auto run = run_trace(interp<Directive, GovIo, R>(gov_wrap(h), program),
                       config_responder(cfg_denying, local, log), fuel * kGovernedFuelFactor);
  return trace_shows_denial(run.trace);
}

// Every I/O entry must be preceded, since the previous I/O entry (or the
// start of the trace), by a TrustCheck on a directive of the same
// constructor. Returns the index of the first unmediated entry, or npos.
std::size_t first_unmediated_io(const Trace& governed);

}  // namespace govtree

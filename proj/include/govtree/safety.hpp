#pragma once

// Bounded search for unauthorized I/O in governed trees.
//
// Tracks an `allowed` flag per path, starting at false:
//   Ret               safe leaf
//   Tau               continue with the same flag
//   GovCheck          continue with allowed = true, for every Bool answer
//   I/O, allowed      continue over the sampled answers
//   I/O, not allowed  violation
// The canonical spin self-loop is a safe leaf. Violations are finite
// prefixes, so a bounded search is exact for refutation.
//
// Once a path has allowed = true every node kind is admissible and the flag
// cannot revert, so with `stop_when_allowed` (the default) such subtrees are
// accepted without being explored. Setting it to false explores them
// exhaustively up to the depth and node budget.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "govtree/directives.hpp"
#include "govtree/governance.hpp"
#include "govtree/trace.hpp"
#include "govtree/tree.hpp"

namespace govtree {

struct ResponseSampler {
  std::vector<Value> nat = {Value::nat(0), Value::nat(1), Value::nat(7)};
  std::vector<Value> text = {Value::text(""), Value::text("x")};
  std::vector<Value> unit = {Value::unit()};
  std::vector<Value> boolean = {Value::boolean(true), Value::boolean(false)};

  const std::vector<Value>& samples(ValueKind k) const;
};

struct SafetyOptions {
  bool stop_when_allowed = true;
  std::uint64_t node_budget = 10'000'000;
};

struct PathStep {
  Side side = Side::Io;
  std::string event;
  std::optional<Value> answer;  // empty for the violating step
};

struct SafetyVerdict {
  bool violation = false;
  std::vector<PathStep> path;  // Violation: steps up to and including the bare I/O event
  std::uint64_t depth = 0;     // bound used
  std::uint64_t explored = 0;  // nodes observed
  bool budget_exhausted = false;

  bool safe_within_bound() const { return !violation; }
};

// Path lines use the trace entry format for answered steps and end with
// "VIOLATION <event rendering>".
std::vector<std::string> render_path(const SafetyVerdict& v);

template <class R>
SafetyVerdict check_safety(const Tree<GovIo, R>& t, std::uint64_t depth,
                           const ResponseSampler& sampler = {}, const SafetyOptions& opts = {}) {
  if (depth == 0) throw std::invalid_argument("check_safety: depth must be at least 1");
  struct Frame {
    Tree<GovIo, R> tree;
    bool allowed;
    std::uint64_t used;
    std::size_t path_len;            // path length before this frame's step
    std::optional<PathStep> step;    // step that led to this frame
  };
  SafetyVerdict out;
  out.depth = depth;
  std::vector<PathStep> path;
  std::vector<Frame> stack;
  stack.push_back({t, false, 0, 0, std::nullopt});
  while (!stack.empty()) {
    Frame f = std::move(stack.back());
    stack.pop_back();
    path.resize(f.path_len);
    if (f.step) path.push_back(std::move(*f.step));
    while (true) {
      if (f.tree.is_spin()) break;
      if (f.allowed && opts.stop_when_allowed) break;
      if (f.used == depth) break;
      if (out.explored == opts.node_budget) {
        out.budget_exhausted = true;
        return out;
      }
      ++out.explored;
      ++f.used;
      Node<GovIo, R> n = f.tree.observe();
      if (std::holds_alternative<RetNode<GovIo, R>>(n)) break;
      if (auto* tn = std::get_if<TauNode<GovIo, R>>(&n)) {
        f.tree = tn->rest;
        continue;
      }
      auto& v = std::get<VisNode<GovIo, R>>(n);
      const std::string rendering = render(v.event);
      if (v.event.is_io() && !f.allowed) {
        path.push_back(PathStep{Side::Io, rendering, std::nullopt});
        out.violation = true;
        out.path = std::move(path);
        return out;
      }
      const Side side = trace_side(v.event);
      const auto& answers = sampler.samples(answer_kind(v.event));
      // The first answer continues inline; the others are explored later.
      for (std::size_t i = answers.size(); i-- > 1;) {
        stack.push_back({v.next(answers[i]), true, f.used, path.size(),
                         PathStep{side, rendering, answers[i]}});
      }
      path.push_back(PathStep{side, rendering, answers[0]});
      f.tree = v.next(answers[0]);
      f.allowed = true;
    }
  }
  return out;
}

// Walks t along `path`, answering each step with its recorded answer, and
// reports whether the final step is an I/O event reached with no preceding
// governance event.
template <class R>
bool replays_to_violation(const Tree<GovIo, R>& t, const std::vector<PathStep>& path,
                          std::uint64_t max_taus = 1'000'000) {
  if (path.empty() || path.back().answer) return false;
  Tree<GovIo, R> cur = t;
  bool allowed = false;
  std::uint64_t taus = 0;
  for (std::size_t i = 0; i < path.size();) {
    if (cur.is_spin()) return false;
    Node<GovIo, R> n = cur.observe();
    if (auto* tn = std::get_if<TauNode<GovIo, R>>(&n)) {
      if (++taus > max_taus) return false;
      cur = tn->rest;
      continue;
    }
    auto* v = std::get_if<VisNode<GovIo, R>>(&n);
    if (!v || render(v->event) != path[i].event) return false;
    if (i + 1 == path.size()) return v->event.is_io() && !allowed;
    cur = v->next(*path[i].answer);
    allowed = true;
    ++i;
  }
  return false;
}

// check_safety(interp(gov_wrap(h), program), depth, sampler).
template <class R>
SafetyVerdict check_governed(const Handler<Directive, IoEvent>& h,
                             const Tree<Directive, R>& program, std::uint64_t depth,
                             const ResponseSampler& sampler = {}, const SafetyOptions& opts = {}) {
  return check_safety(interp<Directive, GovIo, R>(gov_wrap(h), program), depth, sampler, opts);
}

// A single bare I/O event: lower(d) triggered directly on the I/O side.
Tree<GovIo, Value> bare_io(const Directive& d);

}  // namespace govtree

#pragma once

#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "govtree/directives.hpp"
#include "govtree/value.hpp"

namespace govtree {

// Answers a single event. Responders may carry state confined to one run.
template <class E>
using Responder = std::function<Value(const E&)>;

// Deterministic simulated world for lowered I/O events.
//
// MemoryOp reads and writes a Nat store (missing keys read as 0; a write
// answers the written value). ComputeOp applies a fixed morphism table.
// ObserveEmit answers unit. Every other event answers Text chosen from a
// small pool as a pure function of (seed, event rendering, occurrence
// index), unless a scripted answer is queued for it. Two environments built
// with the same seed and fed the same event sequence give the same answers.
class Environment {
 public:
  explicit Environment(std::uint64_t seed = 0) : seed_(seed) {}

  Value answer(const IoEvent& e);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t clock() const { return clock_; }

  std::uint64_t read(std::uint64_t key) const;
  void write(std::uint64_t key, std::uint64_t value) { memory_[key] = value; }
  void set_registers(const std::vector<std::uint64_t>& regs);
  const std::map<std::uint64_t, std::uint64_t>& memory() const { return memory_; }

  // Queued answers for an exact event rendering; consumed first-in first-out.
  void script(const std::string& rendering, std::vector<Value> answers);
  // Queued answers for every event of a constructor, used after exact scripts.
  void script_kind(DirectiveKind kind, std::vector<Value> answers);

  static const std::vector<std::string>& text_pool();

 private:
  std::uint64_t seed_;
  std::uint64_t clock_ = 0;
  std::map<std::uint64_t, std::uint64_t> memory_;
  std::map<std::string, std::uint64_t> occurrences_;
  std::map<std::string, std::deque<Value>> scripts_;
  std::map<DirectiveKind, std::deque<Value>> kind_scripts_;
};

// Fixed morphism table for ComputeOp; kind-preserving.
Value apply_morphism(std::uint64_t morphism, const Value& input);

Responder<IoEvent> io_responder(Environment& env);
// Answers program-level directives by lowering them first.
Responder<Directive> directive_responder(Environment& env);

}  // namespace govtree

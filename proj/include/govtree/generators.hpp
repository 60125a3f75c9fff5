#pragma once

// Seeded random generators for programs, machines, policies and governance
// configurations. All generators are pure functions of their seed / RNG
// stream (SplitMix64), so any generated artifact can be rebuilt from the
// seed recorded in a report.

#include <cstdint>
#include <memory>
#include <vector>

#include "govtree/directives.hpp"
#include "govtree/governance.hpp"
#include "govtree/machines.hpp"
#include "govtree/policy.hpp"
#include "govtree/rng.hpp"
#include "govtree/tree.hpp"

namespace govtree {

// Finite program skeleton. Compiled lazily into a Tree<Directive, Value>.
struct ProgramScript {
  enum class Kind : std::uint8_t { Return, Emit, Branch };

  // What a Return step yields.
  enum class Result : std::uint8_t { LastAnswer, Constant };

  Kind kind = Kind::Return;

  // Return
  Result result = Result::LastAnswer;
  Value constant;

  // Emit: perform `directive` (adapted to the previous answer when
  // `uses_prev`), then continue with `rest`.
  Directive directive;
  bool uses_prev = false;
  std::shared_ptr<const ProgramScript> rest;

  // Branch on the previous answer: take `then_branch` when the predicate
  // holds (Nat: even; Text: empty; Bool: true; Unit: always).
  std::shared_ptr<const ProgramScript> then_branch;
  std::shared_ptr<const ProgramScript> else_branch;
};

using ScriptPtr = std::shared_ptr<const ProgramScript>;

// Restricts which constructors a generated program may use.
struct ProgramShape {
  std::vector<DirectiveKind> allowed;  // empty means all 13 constructors
  bool branching = true;
};

ScriptPtr gen_script(std::uint64_t seed, std::size_t max_len, const ProgramShape& shape = {});

Tree<Directive, Value> compile_script(const ScriptPtr& script);

Tree<Directive, Value> gen_program(std::uint64_t seed, std::size_t max_len,
                                   const ProgramShape& shape = {});

// Total number of Emit steps over all branches.
std::size_t count_emits(const ProgramScript& s);
// Constructors used anywhere in the script.
std::vector<DirectiveKind> constructors_used(const ProgramScript& s);

Directive gen_directive(SplitMix64& rng, DirectiveKind kind);
Directive adapt_to_answer(const Directive& d, const Value& prev);

RmProgram gen_rm_program(SplitMix64& rng, std::size_t max_instrs = 10, std::uint64_t max_reg = 3);
OracleProgram gen_oracle_program(SplitMix64& rng, std::size_t max_instrs = 10,
                                 std::uint64_t max_reg = 3);
std::vector<std::uint64_t> gen_registers(SplitMix64& rng, std::size_t count = 4,
                                         std::uint64_t max_value = 5);

// Random policy whose nesting depth is exactly `depth` (>= 1). Size grows
// linearly with depth.
PolicyPtr gen_policy(SplitMix64& rng, std::size_t depth);
std::size_t policy_depth(const GovPolicy& p);

GovConfig gen_config(SplitMix64& rng);

// Deterministic redaction used by content-filter handlers in the harness.
std::string redact_digits(const std::string& s);

}  // namespace govtree

#pragma once

// Minsky register machines, their oracle extension, and their translation
// into directive trees whose registers live in the MemoryOp store.

#include <cstdint>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "govtree/directives.hpp"
#include "govtree/tree.hpp"

namespace govtree {

using Label = std::uint64_t;
using Reg = std::uint64_t;

struct Inc {
  Reg reg = 0;
  Label next = 0;
  bool operator==(const Inc&) const = default;
};

struct Dec {
  Reg reg = 0;
  Label next_nonzero = 0;
  Label next_zero = 0;
  bool operator==(const Dec&) const = default;
};

// Reads the register, asks the oracle (LLMCall with the decimal value as
// prompt), and stores the decimal parse of the answer (0 if unparseable).
struct Query {
  Reg reg = 0;
  Label next = 0;
  bool operator==(const Query&) const = default;
};

using RmInstr = std::variant<Inc, Dec>;
using OracleInstr = std::variant<Inc, Dec, Query>;

struct RmProgram {
  std::vector<RmInstr> instrs;
};

struct OracleProgram {
  std::vector<OracleInstr> instrs;
};

struct RmState {
  Label pc = 0;
  std::map<Reg, std::uint64_t> regs;  // absent registers hold 0

  std::uint64_t reg(Reg r) const;
  bool operator==(const RmState&) const = default;
};

RmState initial_state(const std::vector<std::uint64_t>& regs = {});

// Precondition: pc < instrs.size().
RmState rm_step(const RmProgram& p, const RmState& s);

// True iff pc leaves the instruction range within `fuel` steps (fuel 0 asks
// whether it already has).
bool rm_halts(const RmProgram& p, std::uint64_t fuel, const RmState& s);

struct ExecOutcome {
  enum class Status : std::uint8_t { Halted, OutOfFuel };
  Status status = Status::OutOfFuel;
  // Register 0 as read when the run stopped. For OutOfFuel it is the value at
  // exhaustion and is not a final result.
  std::uint64_t output = 0;

  bool halted() const { return status == Status::Halted; }
  bool operator==(const ExecOutcome&) const = default;
};

std::string render_result(const ExecOutcome& o);

// Direct step simulation; the reference semantics for translated programs.
ExecOutcome simulate(const RmProgram& p, std::uint64_t fuel, const RmState& s);

// Direct simulation of an oracle program; `oracle` maps the queried
// register value to the oracle's text answer.
ExecOutcome simulate_oracle(const OracleProgram& p, std::uint64_t fuel, const RmState& s,
                            const std::function<std::string(std::uint64_t)>& oracle);

Tree<Directive, Label> translate_instruction(const RmInstr& i);
Tree<Directive, Label> translate_instruction(const OracleInstr& i);

Tree<Directive, ExecOutcome> translate_program(const RmProgram& p, std::uint64_t fuel, Label pc);
Tree<Directive, ExecOutcome> translate_oracle_program(const OracleProgram& p, std::uint64_t fuel,
                                                      Label pc);

OracleProgram embed(const RmProgram& p);

// Reference programs.
RmProgram inc_then_halt();    // [INC 0 1]
RmProgram looping_program();  // [INC 0 0]
RmProgram addition_program(); // r0 := r0 + r1
RmProgram multiplication_program();  // r0 := r1 * r2, using r3 as scratch

// Assembly text: one instruction per line, "INC r l", "DEC r l1 l2",
// "QRY r l"; the line's position among instruction lines is its label;
// '#' starts a comment; blank lines are skipped.
class AsmError : public std::runtime_error {
 public:
  AsmError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

OracleProgram parse_assembly(std::string_view text);
std::string render_assembly(const OracleProgram& p);

bool has_query(const OracleProgram& p);
// Throws AsmError if the program contains a QRY instruction.
RmProgram as_plain(const OracleProgram& p);

}  // namespace govtree

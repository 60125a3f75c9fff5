#include "govtree/machines.hpp"

#include <memory>
#include <sstream>

namespace govtree {

std::uint64_t RmState::reg(Reg r) const {
  auto it = regs.find(r);
  return it == regs.end() ? 0 : it->second;
}

RmState initial_state(const std::vector<std::uint64_t>& regs) {
  RmState s;
  for (std::size_t i = 0; i < regs.size(); ++i) {
    if (regs[i] != 0) s.regs[i] = regs[i];
  }
  return s;
}

namespace {

void step_in_place(const RmProgram& p, RmState& next) {
  std::visit(
      [&next](const auto& i) {
        using T = std::decay_t<decltype(i)>;
        if constexpr (std::is_same_v<T, Inc>) {
          next.regs[i.reg] = next.reg(i.reg) + 1;
          next.pc = i.next;
        } else {
          const std::uint64_t v = next.reg(i.reg);
          if (v > 0) {
            next.regs[i.reg] = v - 1;
            next.pc = i.next_nonzero;
          } else {
            next.pc = i.next_zero;
          }
        }
      },
      p.instrs[next.pc]);
}

}  // namespace

RmState rm_step(const RmProgram& p, const RmState& s) {
  if (s.pc >= p.instrs.size()) throw std::out_of_range("rm_step: machine has halted");
  RmState next = s;
  step_in_place(p, next);
  // Keep the map canonical so equal machine states compare equal.
  for (auto it = next.regs.begin(); it != next.regs.end();) {
    it = it->second == 0 ? next.regs.erase(it) : std::next(it);
  }
  return next;
}

bool rm_halts(const RmProgram& p, std::uint64_t fuel, const RmState& s) {
  return simulate(p, fuel, s).halted();
}

ExecOutcome simulate(const RmProgram& p, std::uint64_t fuel, const RmState& s) {
  RmState cur = s;
  for (;;) {
    if (cur.pc >= p.instrs.size()) return {ExecOutcome::Status::Halted, cur.reg(0)};
    if (fuel == 0) return {ExecOutcome::Status::OutOfFuel, cur.reg(0)};
    step_in_place(p, cur);
    --fuel;
  }
}

ExecOutcome simulate_oracle(const OracleProgram& p, std::uint64_t fuel, const RmState& s,
                            const std::function<std::string(std::uint64_t)>& oracle) {
  RmState cur = s;
  for (;;) {
    if (cur.pc >= p.instrs.size()) return {ExecOutcome::Status::Halted, cur.reg(0)};
    if (fuel == 0) return {ExecOutcome::Status::OutOfFuel, cur.reg(0)};
    --fuel;
    const auto& instr = p.instrs[cur.pc];
    if (const auto* q = std::get_if<Query>(&instr)) {
      cur.regs[q->reg] = parse_nat_or_zero(oracle(cur.reg(q->reg)));
      cur.pc = q->next;
    } else if (const auto* inc = std::get_if<Inc>(&instr)) {
      cur.regs[inc->reg] = cur.reg(inc->reg) + 1;
      cur.pc = inc->next;
    } else {
      const auto& dec = std::get<Dec>(instr);
      const std::uint64_t v = cur.reg(dec.reg);
      if (v > 0) {
        cur.regs[dec.reg] = v - 1;
        cur.pc = dec.next_nonzero;
      } else {
        cur.pc = dec.next_zero;
      }
    }
  }
}

std::string render_result(const ExecOutcome& o) {
  return (o.halted() ? "Halted " : "OutOfFuel ") + std::to_string(o.output);
}

namespace {

using DTree = Tree<Directive, Value>;
using LTree = Tree<Directive, Label>;

LTree after_write(Reg r, std::uint64_t v, Label l) {
  return bind<Directive, Value, Label>(trigger(mem_write(r, v)),
                                       [l](const Value&) { return ret<Directive, Label>(l); });
}

LTree translate_one(const Inc& i) {
  return bind<Directive, Value, Label>(trigger(mem_read(i.reg)), [i](const Value& v) {
    return after_write(i.reg, v.as_nat() + 1, i.next);
  });
}

LTree translate_one(const Dec& i) {
  return bind<Directive, Value, Label>(trigger(mem_read(i.reg)), [i](const Value& v) {
    if (v.as_nat() > 0) return after_write(i.reg, v.as_nat() - 1, i.next_nonzero);
    return ret<Directive, Label>(i.next_zero);
  });
}

LTree translate_one(const Query& i) {
  return bind<Directive, Value, Label>(trigger(mem_read(i.reg)), [i](const Value& v) {
    return bind<Directive, Value, Label>(
        trigger(llm(std::to_string(v.as_nat()))), [i](const Value& answer) {
          return after_write(i.reg, parse_nat_or_zero(answer.as_text()), i.next);
        });
  });
}

Tree<Directive, ExecOutcome> read_outcome(ExecOutcome::Status status) {
  return bind<Directive, Value, ExecOutcome>(trigger(mem_read(0)), [status](const Value& v) {
    return ret<Directive, ExecOutcome>(ExecOutcome{status, v.as_nat()});
  });
}

Tree<Directive, ExecOutcome> run_from(std::shared_ptr<const OracleProgram> p, std::uint64_t fuel,
                                      Label pc) {
  if (pc >= p->instrs.size()) return read_outcome(ExecOutcome::Status::Halted);
  if (fuel == 0) return read_outcome(ExecOutcome::Status::OutOfFuel);
  return bind<Directive, Label, ExecOutcome>(
      translate_instruction(p->instrs[pc]),
      [p, fuel](const Label& next) { return run_from(p, fuel - 1, next); });
}

}  // namespace

Tree<Directive, Label> translate_instruction(const RmInstr& i) {
  return std::visit([](const auto& x) { return translate_one(x); }, i);
}

Tree<Directive, Label> translate_instruction(const OracleInstr& i) {
  return std::visit([](const auto& x) { return translate_one(x); }, i);
}

OracleProgram embed(const RmProgram& p) {
  OracleProgram out;
  out.instrs.reserve(p.instrs.size());
  for (const auto& i : p.instrs) {
    out.instrs.push_back(std::visit([](const auto& x) -> OracleInstr { return x; }, i));
  }
  return out;
}

Tree<Directive, ExecOutcome> translate_program(const RmProgram& p, std::uint64_t fuel, Label pc) {
  return run_from(std::make_shared<const OracleProgram>(embed(p)), fuel, pc);
}

Tree<Directive, ExecOutcome> translate_oracle_program(const OracleProgram& p, std::uint64_t fuel,
                                                      Label pc) {
  return run_from(std::make_shared<const OracleProgram>(p), fuel, pc);
}

RmProgram inc_then_halt() { return RmProgram{{Inc{0, 1}}}; }

RmProgram looping_program() { return RmProgram{{Inc{0, 0}}}; }

RmProgram addition_program() {
  // 0: DEC r1 -> 1 | halt(2)
  // 1: INC r0 -> 0
  return RmProgram{{Dec{1, 1, 2}, Inc{0, 0}}};
}

RmProgram multiplication_program() {
  // 0: DEC r1 -> 1 | halt(6)      outer loop over r1
  // 1: DEC r2 -> 2 | 4            move r2 into r0 and r3
  // 2: INC r0 -> 3
  // 3: INC r3 -> 1
  // 4: DEC r3 -> 5 | 0            restore r2 from r3
  // 5: INC r2 -> 4
  return RmProgram{{Dec{1, 1, 6}, Dec{2, 2, 4}, Inc{0, 3}, Inc{3, 1}, Dec{3, 5, 0}, Inc{2, 4}}};
}

bool has_query(const OracleProgram& p) {
  for (const auto& i : p.instrs) {
    if (std::holds_alternative<Query>(i)) return true;
  }
  return false;
}

RmProgram as_plain(const OracleProgram& p) {
  RmProgram out;
  for (std::size_t n = 0; n < p.instrs.size(); ++n) {
    const auto& i = p.instrs[n];
    if (const auto* inc = std::get_if<Inc>(&i)) {
      out.instrs.push_back(*inc);
    } else if (const auto* dec = std::get_if<Dec>(&i)) {
      out.instrs.push_back(*dec);
    } else {
      throw AsmError(n, "QRY is not a plain register-machine instruction");
    }
  }
  return out;
}

namespace {

std::uint64_t parse_number(const std::string& tok, std::size_t line) {
  if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos) {
    throw AsmError(line, "expected a non-negative integer, got '" + tok + "'");
  }
  try {
    return std::stoull(tok);
  } catch (const std::out_of_range&) {
    throw AsmError(line, "integer out of range: " + tok);
  }
}

}  // namespace

OracleProgram parse_assembly(std::string_view text) {
  OracleProgram p;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::istringstream words(raw);
    std::vector<std::string> toks;
    for (std::string w; words >> w;) toks.push_back(w);
    if (toks.empty()) continue;
    const std::string& op = toks[0];
    auto need = [&](std::size_t n) {
      if (toks.size() != n + 1) {
        throw AsmError(line_no, op + " takes " + std::to_string(n) + " operands");
      }
    };
    if (op == "INC") {
      need(2);
      p.instrs.push_back(Inc{parse_number(toks[1], line_no), parse_number(toks[2], line_no)});
    } else if (op == "DEC") {
      need(3);
      p.instrs.push_back(Dec{parse_number(toks[1], line_no), parse_number(toks[2], line_no),
                             parse_number(toks[3], line_no)});
    } else if (op == "QRY") {
      need(2);
      p.instrs.push_back(Query{parse_number(toks[1], line_no), parse_number(toks[2], line_no)});
    } else {
      throw AsmError(line_no, "unknown instruction '" + op + "'");
    }
  }
  return p;
}

std::string render_assembly(const OracleProgram& p) {
  std::string out;
  for (const auto& i : p.instrs) {
    std::visit(
        [&out](const auto& x) {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, Inc>) {
            out += "INC " + std::to_string(x.reg) + " " + std::to_string(x.next);
          } else if constexpr (std::is_same_v<T, Dec>) {
            out += "DEC " + std::to_string(x.reg) + " " + std::to_string(x.next_nonzero) + " " +
                   std::to_string(x.next_zero);
          } else {
            out += "QRY " + std::to_string(x.reg) + " " + std::to_string(x.next);
          }
        },
        i);
    out += '\n';
  }
  return out;
}

}  // namespace govtree

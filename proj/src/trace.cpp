#include "govtree/trace.hpp"

#include <sstream>

namespace govtree {

std::size_t Trace::count(Side s) const {
  std::size_t n = 0;
  for (const auto& e : entries) n += e.side == s ? 1 : 0;
  return n;
}

std::string render_entry(const TraceEntry& e) {
  std::string line = e.side == Side::Gov ? "G " : "I ";
  line += e.event;
  line += " -> ";
  line += render(e.answer);
  return line;
}

std::string render_outcome(const TraceOutcome& o) {
  if (o.returned()) return "RET " + o.value;
  return "SUSP " + std::to_string(o.fuel);
}

std::vector<std::string> Trace::lines() const {
  std::vector<std::string> out;
  out.reserve(entries.size() + 1);
  for (const auto& e : entries) out.push_back(render_entry(e));
  out.push_back(render_outcome(outcome));
  return out;
}

std::string Trace::to_text() const {
  std::string text;
  for (const auto& line : lines()) {
    text += line;
    text += '\n';
  }
  return text;
}

namespace {

// Position of the first " -> " outside quoted text, or npos.
std::size_t find_separator(const std::string& line) {
  bool quoted = false;
  for (std::size_t i = 2; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '\\') {
        ++i;
      } else if (c == '"') {
        quoted = false;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (line.compare(i, 4, " -> ") == 0) {
      return i;
    }
  }
  return std::string::npos;
}

}  // namespace

Trace parse_trace(const std::string& text) {
  Trace tr;
  std::istringstream in(text);
  std::string line;
  bool terminated = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (terminated) throw std::invalid_argument("trace: entry after terminator");
    if (line.rfind("RET ", 0) == 0) {
      tr.outcome.kind = TraceOutcome::Kind::Returned;
      tr.outcome.value = line.substr(4);
      terminated = true;
    } else if (line.rfind("SUSP ", 0) == 0) {
      tr.outcome.kind = TraceOutcome::Kind::Suspended;
      tr.outcome.fuel = std::stoull(line.substr(5));
      terminated = true;
    } else if (line.size() > 2 && (line[0] == 'G' || line[0] == 'I') && line[1] == ' ') {
      const std::size_t arrow = find_separator(line);
      if (arrow == std::string::npos) {
        throw std::invalid_argument("trace: missing ' -> ' in: " + line);
      }
      TraceEntry e;
      e.side = line[0] == 'G' ? Side::Gov : Side::Io;
      e.event = line.substr(2, arrow - 2);
      e.answer = parse_value(line.substr(arrow + 4));
      tr.entries.push_back(std::move(e));
    } else {
      throw std::invalid_argument("trace: unrecognized line: " + line);
    }
  }
  if (!terminated) throw std::invalid_argument("trace: missing RET/SUSP terminator");
  return tr;
}

Trace erase_gov(const Trace& tr) {
  Trace out;
  out.outcome = tr.outcome;
  for (const auto& e : tr.entries) {
    if (e.side == Side::Io) out.entries.push_back(e);
  }
  return out;
}

}  // namespace govtree

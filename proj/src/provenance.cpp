#include "govtree/provenance.hpp"

#include <algorithm>

namespace govtree {

std::uint64_t ProvenanceLog::append(ProvenanceEntry e) {
  e.seq = entries_.size();
  entries_.push_back(std::move(e));
  return entries_.back().seq;
}

std::size_t ProvenanceLog::count(Decision d) const {
  return static_cast<std::size_t>(std::count_if(
      entries_.begin(), entries_.end(), [d](const ProvenanceEntry& e) { return e.decision == d; }));
}

void ProvenanceLog::write(std::ostream& out) const {
  for (const auto& e : entries_) out << render_provenance(e) << '\n';
}

std::string render_provenance(const ProvenanceEntry& e) {
  std::string line = std::to_string(e.seq);
  line += '\t';
  line += std::to_string(e.logical_time);
  line += '\t';
  line += e.constructor;
  line += '\t';
  line += e.capability_class;
  line += '\t';
  line += e.decision == Decision::Permitted ? "Permitted" : "Denied";
  line += '\t';
  for (bool b : e.stage_outcomes) line += b ? '1' : '0';
  line += '\t';
  line += e.answer_digest;
  return line;
}

}  // namespace govtree

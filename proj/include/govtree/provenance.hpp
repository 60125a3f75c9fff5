#pragma once

// Append-only provenance log written by the ProvenanceRecord stage.
//
// Line format (tab-separated, fields in this order):
//   seq  logical_time  constructor  class  decision  stages  answer_digest
// `stages` is seven 0/1 characters in stage order (Trust, Permission, Phase,
// PreHooks, Guardrails, Provenance, Broadcast); stages that never fired are 0.
// `answer_digest` is hex64(fnv1a(render(answer))); denied records carry
// sixteen zeros.

#include <array>
#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace govtree {

enum class Decision : std::uint8_t { Permitted, Denied };

struct ProvenanceEntry {
  std::uint64_t seq = 0;
  std::uint64_t logical_time = 0;
  std::string constructor;
  std::string capability_class;
  Decision decision = Decision::Permitted;
  std::array<bool, 7> stage_outcomes{};
  std::string answer_digest;

  bool operator==(const ProvenanceEntry&) const = default;
};

inline constexpr const char* kZeroDigest = "0000000000000000";

class ProvenanceLog {
 public:
  // Assigns the next sequence number and returns it.
  std::uint64_t append(ProvenanceEntry e);

  const std::vector<ProvenanceEntry>& entries() const { return entries_; }
  std::size_t count(Decision d) const;

  void write(std::ostream& out) const;

 private:
  std::vector<ProvenanceEntry> entries_;
};

std::string render_provenance(const ProvenanceEntry& e);

}  // namespace govtree

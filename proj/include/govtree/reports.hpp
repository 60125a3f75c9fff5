#pragma once

// Human-readable pass/fail reports for the halting separation, minimality,
// subsumption and capstone demonstrations.

#include <cstdint>
#include <string>
#include <vector>

namespace govtree {

struct Clause {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct Report {
  std::string title;
  std::uint64_t seed = 0;
  std::vector<Clause> clauses;

  bool passed() const;
  void add(std::string name, bool ok, std::string detail = {});
  std::string text() const;
};

Report demo_halting_separation(std::uint64_t max_loop_fuel = 10'000);

Report demo_minimality(std::uint64_t seed = 1, std::size_t witnesses = 50);

// (a) governed content-filter handler is safe on `trials` random programs;
// (b) a content-filtered bare I/O tree is a violation at path length 1.
Report demo_subsumption(std::uint64_t trials = 1'000, std::uint64_t seed = 1);

// Seven sections, one per capstone conjunct, each scaled by `trials`.
std::vector<Report> capstone_report(std::uint64_t trials = 1'000, std::uint64_t seed = 1);

}  // namespace govtree

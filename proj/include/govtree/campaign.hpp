#pragma once

// Differential fuzz campaign: for each trial, generate a program and an
// environment, run the transparency differential and the governed safety
// checks, and aggregate. Trials are independent; trial i uses
// mix_seed(seed, i), so any trial can be replayed on its own.

#include <chrono>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "govtree/directives.hpp"
#include "govtree/governance.hpp"

namespace govtree {

using GovernanceWrapper = std::function<Handler<Directive, GovIo>(Handler<Directive, IoEvent>)>;

struct CampaignOptions {
  std::size_t max_len = 50;
  std::uint64_t fuel = 100'000;
  std::uint64_t safety_depth = 1'000;
  unsigned jobs = 1;
  // Replaceable for mutation testing; production runs always use gov_wrap.
  GovernanceWrapper wrap = gov_wrap;
};

struct TrialFailure {
  std::uint64_t trial = 0;
  std::uint64_t trial_seed = 0;
  std::string kind;  // "disagreement" | "violation" | "unmediated" | "bad-denial"
  std::string detail;
};

struct TrialResult {
  bool disagreement = false;
  bool violation = false;
  bool unknown = false;
  bool denied = false;  // the config-governed run was denied somewhere
  std::vector<TrialFailure> failures;
  // Text of the governed and ungoverned traces, for replay comparisons.
  std::string governed_trace;
  std::string ungoverned_trace;
};

struct CampaignReport {
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  std::uint64_t disagreements = 0;
  std::uint64_t violations = 0;
  std::uint64_t unknowns = 0;
  std::uint64_t denials = 0;
  std::chrono::milliseconds elapsed{0};
  std::vector<TrialFailure> failures;

  bool passed() const { return disagreements == 0 && violations == 0; }
  // Everything except elapsed time; byte-identical across reruns.
  std::string text() const;
};

std::uint64_t trial_seed(std::uint64_t campaign_seed, std::uint64_t index);

// `seed` is the per-trial seed, trial_seed(campaign_seed, trial).
TrialResult run_trial(std::uint64_t trial, std::uint64_t seed, const CampaignOptions& opts = {});

CampaignReport fuzz_campaign(std::uint64_t trials, std::uint64_t seed,
                             const CampaignOptions& opts = {});

}  // namespace govtree

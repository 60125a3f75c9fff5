#include "govtree/campaign.hpp"

#include <sstream>
#include <thread>

#include "govtree/environment.hpp"
#include "govtree/equivalence.hpp"
#include "govtree/generators.hpp"
#include "govtree/rng.hpp"
#include "govtree/safety.hpp"

namespace govtree {

std::uint64_t trial_seed(std::uint64_t campaign_seed, std::uint64_t index) {
  return mix_seed(campaign_seed, index);
}

TrialResult run_trial(std::uint64_t trial, std::uint64_t seed, const CampaignOptions& opts) {
  SplitMix64 rng(seed);
  const auto program = gen_program(rng.next(), opts.max_len);
  const Environment env(rng.next());
  const bool filtered = rng.below(2) == 1;
  const Handler<Directive, IoEvent> h =
      filtered ? content_filter(redact_digits) : passthrough();
  const GovConfig cfg = gen_config(rng);
  const Handler<Directive, GovIo> governed = opts.wrap(h);

  TrialResult out;
  auto fail = [&](std::string kind, std::string detail) {
    out.failures.push_back({trial, seed, std::move(kind), std::move(detail)});
  };

  // Transparency under the permissive responder.
  auto diff = run_differential(program, governed, h, env, opts.fuel);
  out.governed_trace = diff.governed.trace.to_text();
  out.ungoverned_trace = diff.ungoverned.trace.to_text();
  if (diff.verdict.distinct()) {
    out.disagreement = true;
    fail("disagreement", "entry " + std::to_string(diff.verdict.index) + ": " + diff.verdict.witness);
  } else if (diff.verdict.unknown()) {
    out.unknown = true;
  }

  // Structural safety over all governance answers.
  auto safety = check_safety(interp<Directive, GovIo, Value>(governed, program), opts.safety_depth);
  if (safety.violation) {
    out.violation = true;
    std::string path;
    for (const auto& line : render_path(safety)) path += line + "; ";
    fail("violation", path);
  }

  // Concrete checks from a random configuration.
  Environment env_c = env;
  auto concrete = run_trace(interp<Directive, GovIo, Value>(governed, program),
                            config_responder(cfg, env_c), opts.fuel * kGovernedFuelFactor);
  if (auto i = first_unmediated_io(concrete.trace); i != std::string::npos) {
    out.violation = true;
    fail("unmediated", "I/O entry " + std::to_string(i) + " has no TrustCheck: " +
                           render_entry(concrete.trace.entries[i]));
  }
  if (concrete.returned()) {
    // Every directive was permitted, so the run must match the ungoverned one.
    auto v = compare_traces(erase_gov(concrete.trace), diff.ungoverned.trace);
    if (v.distinct()) {
      out.disagreement = true;
      fail("disagreement", "permitted config run: " + v.witness);
    }
  } else if (concrete.diverged()) {
    out.denied = true;
    if (!trace_shows_denial(concrete.trace)) {
      out.violation = true;
      fail("bad-denial", "run diverged without a failed pre-stage check");
    }
  }
  return out;
}

namespace {

void run_range(std::uint64_t begin, std::uint64_t end, std::uint64_t seed,
               const CampaignOptions& opts, std::vector<TrialResult>& results) {
  for (std::uint64_t i = begin; i < end; ++i) {
    TrialResult r = run_trial(i, trial_seed(seed, i), opts);
    r.governed_trace.clear();
    r.ungoverned_trace.clear();
    results[i] = std::move(r);
  }
}

}  // namespace

CampaignReport fuzz_campaign(std::uint64_t trials, std::uint64_t seed, const CampaignOptions& opts) {
  if (trials == 0) throw std::invalid_argument("fuzz_campaign: trials must be at least 1");
  const auto start = std::chrono::steady_clock::now();
  std::vector<TrialResult> results(trials);
  const unsigned jobs = std::max(1u, std::min<unsigned>(opts.jobs, static_cast<unsigned>(trials)));
  if (jobs == 1) {
    run_range(0, trials, seed, opts, results);
  } else {
    std::vector<std::thread> workers;
    const std::uint64_t chunk = (trials + jobs - 1) / jobs;
    for (unsigned j = 0; j < jobs; ++j) {
      const std::uint64_t b = j * chunk;
      const std::uint64_t e = std::min(trials, b + chunk);
      if (b >= e) break;
      workers.emplace_back(run_range, b, e, seed, std::cref(opts), std::ref(results));
    }
    for (auto& w : workers) w.join();
  }

  CampaignReport report;
  report.trials = trials;
  report.seed = seed;
  for (const auto& r : results) {
    report.disagreements += r.disagreement ? 1 : 0;
    report.violations += r.violation ? 1 : 0;
    report.unknowns += r.unknown ? 1 : 0;
    report.denials += r.denied ? 1 : 0;
    report.failures.insert(report.failures.end(), r.failures.begin(), r.failures.end());
  }
  report.elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
      std::chrono::steady_clock::now() - start);
  return report;
}

std::string CampaignReport::text() const {
  std::ostringstream out;
  out << "fuzz campaign\n";
  out << "seed: " << seed << '\n';
  out << "trials: " << trials << '\n';
  out << "disagreements: " << disagreements << '\n';
  out << "violations: " << violations << '\n';
  out << "unknowns: " << unknowns << '\n';
  out << "denied config runs: " << denials << '\n';
  for (const auto& f : failures) {
    out << "failure trial " << f.trial << " seed " << f.trial_seed << ' ' << f.kind << ": "
        << f.detail << '\n';
  }
  out << "result: " << (passed() ? "PASS" : "FAIL") << '\n';
  return out.str();
}

}  // namespace govtree

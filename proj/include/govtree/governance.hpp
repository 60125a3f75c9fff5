#pragma once

// The structural governance wrapper.
//
// gov_wrap(h) turns a base handler into one that, for every directive,
// emits four pre-stage GovCheck events (short-circuiting on the first
// false), runs h on success, emits three post-stage GovCheck events, and
// returns h's answer unchanged. On denial it diverges (spin); there is no
// error value.
//
// The wrapped tree does not depend on any configuration: check answers come
// from whoever answers the GovIo events (permissive_responder, or
// config_responder for concrete checks).

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "govtree/directives.hpp"
#include "govtree/environment.hpp"
#include "govtree/policy.hpp"
#include "govtree/provenance.hpp"
#include "govtree/tree.hpp"

namespace govtree {

enum class GovStage : std::uint8_t {
  TrustCheck,
  PermissionCheck,
  PhaseValidation,
  PreHooks,
  Guardrails,
  ProvenanceRecord,
  EventBroadcast,
};

inline constexpr std::array<GovStage, 4> kPreStages = {
    GovStage::TrustCheck, GovStage::PermissionCheck, GovStage::PhaseValidation,
    GovStage::PreHooks};
inline constexpr std::array<GovStage, 3> kPostStages = {
    GovStage::Guardrails, GovStage::ProvenanceRecord, GovStage::EventBroadcast};

std::string_view stage_name(GovStage s);
bool is_pre_stage(GovStage s);

// A governance-only event. It answers Bool and carries no I/O; the subject is
// the directive under review, rendered only as its class and constructor.
struct GovEvent {
  GovStage stage;
  Directive subject;
  bool operator==(const GovEvent&) const = default;
};

struct GovIo {
  std::variant<GovEvent, IoEvent> side;

  bool is_gov() const { return side.index() == 0; }
  bool is_io() const { return side.index() == 1; }
  const GovEvent& gov() const { return std::get<GovEvent>(side); }
  const IoEvent& io() const { return std::get<IoEvent>(side); }
  bool operator==(const GovIo&) const = default;
};

inline GovIo gov_side(GovEvent e) { return GovIo{std::move(e)}; }
inline GovIo io_side(IoEvent e) { return GovIo{std::move(e)}; }

ValueKind answer_kind(const GovEvent& e);
ValueKind answer_kind(const GovIo& e);

// "GovCheck <Stage> <Class> <Constructor>"
std::string render(const GovEvent& e);
std::string render(const GovIo& e);

enum class Phase : std::uint8_t { Planning, Acting, Reporting };
inline constexpr std::array<Phase, 3> kAllPhases = {Phase::Planning, Phase::Acting,
                                                    Phase::Reporting};
std::string_view phase_name(Phase p);

// Inputs to the concrete checks answered by config_responder.
struct GovConfig {
  TrustLevel actor_trust = TrustLevel::System;
  std::vector<Capability> declared_caps;
  PolicyPtr policy;
  Phase phase = Phase::Acting;
  std::map<Phase, std::set<CapabilityClass>> phase_table;
  std::function<bool(const Directive&)> pre_hook = [](const Directive&) { return true; };
  std::function<bool(const Directive&)> guardrail = [](const Directive&) { return true; };
};

// Maximum trust, every capability declared, an always-true policy, and every
// class admitted in every phase.
GovConfig full_config();

// Full config minus one capability class (removed from declared_caps).
GovConfig config_denying(CapabilityClass denied);

Tree<GovIo, bool> pre_governance(const Directive& d);
Tree<GovIo, Value> post_governance(const Directive& d, const Value& result);

Handler<Directive, GovIo> gov_wrap(Handler<Directive, IoEvent> h);

// GovCheck events answer true; I/O events are delegated to io.
Responder<GovIo> permissive_responder(Responder<IoEvent> io);

// Answers each stage from cfg:
//   TrustCheck       trust_at_least(actor_trust, min_trust(capability of d))
//   PermissionCheck  capability_allowed(actor_trust, capability of d,
//                    declared_caps) && eval_policy(policy)
//   PhaseValidation  classify(d) in phase_table[phase]
//   PreHooks         pre_hook(d)
//   Guardrails       guardrail(d)
//   ProvenanceRecord true; appends one Permitted record to `log`
//   EventBroadcast   true
// A false pre-stage answer appends one Denied record. I/O events are answered
// by env. `log` may be null.
Responder<GovIo> config_responder(GovConfig cfg, Environment& env, ProvenanceLog* log = nullptr);

// Pure check decision for one stage, without provenance side effects.
bool stage_decision(const GovConfig& cfg, GovStage stage, const Directive& d);

}  // namespace govtree

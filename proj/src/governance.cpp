#include "govtree/governance.hpp"

#include <memory>
#include <optional>

#include "govtree/hash.hpp"

namespace govtree {

std::string_view stage_name(GovStage s) {
  switch (s) {
    case GovStage::TrustCheck: return "TrustCheck";
    case GovStage::PermissionCheck: return "PermissionCheck";
    case GovStage::PhaseValidation: return "PhaseValidation";
    case GovStage::PreHooks: return "PreHooks";
    case GovStage::Guardrails: return "Guardrails";
    case GovStage::ProvenanceRecord: return "ProvenanceRecord";
    case GovStage::EventBroadcast: return "EventBroadcast";
  }
  return "?";
}

bool is_pre_stage(GovStage s) { return static_cast<int>(s) < 4; }

std::string_view phase_name(Phase p) {
  switch (p) {
    case Phase::Planning: return "planning";
    case Phase::Acting: return "acting";
    case Phase::Reporting: return "reporting";
  }
  return "?";
}

ValueKind answer_kind(const GovEvent&) { return ValueKind::Bool; }

ValueKind answer_kind(const GovIo& e) {
  return e.is_gov() ? answer_kind(e.gov()) : answer_kind(e.io());
}

std::string render(const GovEvent& e) {
  std::string out = "GovCheck ";
  out += stage_name(e.stage);
  out += ' ';
  out += class_name(classify(e.subject));
  out += ' ';
  out += kind_name(e.subject.kind());
  return out;
}

std::string render(const GovIo& e) { return e.is_gov() ? render(e.gov()) : render(e.io()); }

GovConfig full_config() {
  GovConfig cfg;
  cfg.actor_trust = TrustLevel::System;
  cfg.declared_caps = {Capability::Compute, Capability::Memory, Capability::Reason,
                       Capability::Call, Capability::Observe};
  cfg.policy = pol_true();
  cfg.phase = Phase::Acting;
  for (Phase p : kAllPhases) cfg.phase_table[p] = {kAllClasses.begin(), kAllClasses.end()};
  return cfg;
}

GovConfig config_denying(CapabilityClass denied) {
  GovConfig cfg = full_config();
  std::erase(cfg.declared_caps, capability_of(denied));
  return cfg;
}

namespace {

Tree<GovIo, bool> pre_from(const Directive& d, std::size_t stage) {
  if (stage == kPreStages.size()) return ret<GovIo, bool>(true);
  return bind<GovIo, Value, bool>(
      trigger(gov_side(GovEvent{kPreStages[stage], d})),
      [d, stage](const Value& ok) {
        if (!ok.as_bool()) return ret<GovIo, bool>(false);
        return pre_from(d, stage + 1);
      });
}

Tree<GovIo, Value> post_from(const Directive& d, const Value& result, std::size_t stage) {
  if (stage == kPostStages.size()) return ret<GovIo, Value>(result);
  return bind<GovIo, Value, Value>(
      trigger(gov_side(GovEvent{kPostStages[stage], d})),
      [d, result, stage](const Value&) { return post_from(d, result, stage + 1); });
}

}  // namespace

Tree<GovIo, bool> pre_governance(const Directive& d) { return pre_from(d, 0); }

// Post answers are recorded by the responder, never gating; the result is
// threaded through unchanged.
Tree<GovIo, Value> post_governance(const Directive& d, const Value& result) {
  return post_from(d, result, 0);
}

Handler<Directive, GovIo> gov_wrap(Handler<Directive, IoEvent> h) {
  return [h = std::move(h)](const Directive& d) -> Tree<GovIo, Value> {
    return bind<GovIo, bool, Value>(pre_governance(d), [h, d](const bool& ok) {
      if (!ok) return spin<GovIo, Value>();
      auto lifted = translate_events<IoEvent, GovIo, Value>(
          [](const IoEvent& e) { return io_side(e); }, h(d));
      return bind<GovIo, Value, Value>(
          lifted, [d](const Value& r) { return post_governance(d, r); });
    });
  };
}

Responder<GovIo> permissive_responder(Responder<IoEvent> io) {
  return [io = std::move(io)](const GovIo& e) {
    if (e.is_gov()) return Value::boolean(true);
    return io(e.io());
  };
}

bool stage_decision(const GovConfig& cfg, GovStage stage, const Directive& d) {
  const CapabilityClass cls = classify(d);
  const Capability cap = capability_of(cls);
  switch (stage) {
    case GovStage::TrustCheck: return trust_at_least(cfg.actor_trust, min_trust(cap));
    case GovStage::PermissionCheck:
      return capability_allowed(cfg.actor_trust, cap, cfg.declared_caps) &&
             (!cfg.policy || eval_policy(*cfg.policy));
    case GovStage::PhaseValidation: {
      auto it = cfg.phase_table.find(cfg.phase);
      return it != cfg.phase_table.end() && it->second.count(cls) > 0;
    }
    case GovStage::PreHooks: return !cfg.pre_hook || cfg.pre_hook(d);
    case GovStage::Guardrails: return !cfg.guardrail || cfg.guardrail(d);
    case GovStage::ProvenanceRecord:
    case GovStage::EventBroadcast: return true;
  }
  return false;
}

namespace {

struct ConfigResponderState {
  GovConfig cfg;
  Environment* env;
  ProvenanceLog* log;
  std::optional<Directive> subject;
  std::array<bool, 7> outcomes{};
  std::string digest = kZeroDigest;

  ProvenanceEntry entry(Decision decision) const {
    ProvenanceEntry e;
    e.logical_time = env->clock();
    e.constructor = std::string(kind_name(subject->kind()));
    e.capability_class = std::string(class_name(classify(*subject)));
    e.decision = decision;
    e.stage_outcomes = outcomes;
    e.answer_digest = decision == Decision::Denied ? kZeroDigest : digest;
    return e;
  }

  Value answer(const GovIo& ev) {
    if (ev.is_io()) {
      Value v = env->answer(ev.io());
      digest = hex64(fnv1a(render(v)));
      return v;
    }
    const GovEvent& g = ev.gov();
    if (g.stage == GovStage::TrustCheck || !subject || !(*subject == g.subject)) {
      subject = g.subject;
      outcomes.fill(false);
      digest = kZeroDigest;
    }
    const bool ok = stage_decision(cfg, g.stage, g.subject);
    outcomes[static_cast<std::size_t>(g.stage)] = ok;
    if (log) {
      if (is_pre_stage(g.stage) && !ok) {
        log->append(entry(Decision::Denied));
      } else if (g.stage == GovStage::ProvenanceRecord) {
        outcomes[static_cast<std::size_t>(GovStage::EventBroadcast)] =
            stage_decision(cfg, GovStage::EventBroadcast, g.subject);
        log->append(entry(Decision::Permitted));
      }
    }
    return Value::boolean(ok);
  }
};

}  // namespace

Responder<GovIo> config_responder(GovConfig cfg, Environment& env, ProvenanceLog* log) {
  auto state = std::make_shared<ConfigResponderState>();
  state->cfg = std::move(cfg);
  state->env = &env;
  state->log = log;
  return [state](const GovIo& e) { return state->answer(e); };
}

}  // namespace govtree

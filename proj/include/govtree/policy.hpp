#pragma once

// Closed governance-policy syntax with a total Boolean evaluator.
//
// Policies never see the program they govern: eval_policy takes only the
// policy term, so every decision is structural.

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "govtree/directives.hpp"

namespace govtree {

enum class TrustLevel : std::uint8_t { Untrusted, Low, Standard, Elevated, System };

enum class Capability : std::uint8_t { Compute, Memory, Reason, Call, Observe };

std::string_view trust_name(TrustLevel t);  // lowercase, as in policy text
std::string_view capability_name(Capability c);
std::optional<TrustLevel> parse_trust(std::string_view s);
std::optional<Capability> parse_capability(std::string_view s);

Capability capability_of(CapabilityClass c);
CapabilityClass class_of(Capability c);

// Minimum trust needed to exercise a capability:
// compute, observe -> untrusted; memory -> low; reason -> standard;
// call -> elevated.
TrustLevel min_trust(Capability c);

bool trust_at_least(TrustLevel have, TrustLevel need);

// cap must be declared and the actor's trust must meet min_trust(cap).
bool capability_allowed(TrustLevel tl, Capability cap, const std::vector<Capability>& declared);

class GovPolicy;
using PolicyPtr = std::shared_ptr<const GovPolicy>;

struct PolCapability {
  TrustLevel trust;
  Capability cap;
  std::vector<Capability> declared;
};
struct PolTrust {
  TrustLevel have;
  TrustLevel need;
};
struct PolAnd {
  PolicyPtr lhs, rhs;
};
struct PolOr {
  PolicyPtr lhs, rhs;
};
struct PolNot {
  PolicyPtr inner;
};

class GovPolicy {
 public:
  using Term = std::variant<PolCapability, PolTrust, PolAnd, PolOr, PolNot>;

  explicit GovPolicy(Term t) : term_(std::move(t)) {}
  const Term& term() const { return term_; }

 private:
  Term term_;
};

PolicyPtr pol_capability(TrustLevel tl, Capability cap, std::vector<Capability> declared);
PolicyPtr pol_trust(TrustLevel have, TrustLevel need);
PolicyPtr pol_and(PolicyPtr p, PolicyPtr q);
PolicyPtr pol_or(PolicyPtr p, PolicyPtr q);
PolicyPtr pol_not(PolicyPtr p);

// Always-true policy used by permissive configurations.
PolicyPtr pol_true();

bool eval_policy(const GovPolicy& p);
inline bool eval_policy(const PolicyPtr& p) { return eval_policy(*p); }

bool structurally_equal(const GovPolicy& a, const GovPolicy& b);

// S-expression text form:
//   policy := (trust LEVEL LEVEL) | (cap LEVEL CAP (CAP*))
//           | (and policy policy) | (or policy policy) | (not policy)
std::string render_policy(const GovPolicy& p);

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t position, const std::string& what)
      : std::runtime_error("offset " + std::to_string(position) + ": " + what),
        position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

PolicyPtr parse_policy(std::string_view text);

}  // namespace govtree

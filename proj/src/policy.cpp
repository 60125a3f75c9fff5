#include "govtree/policy.hpp"

#include <algorithm>
#include <array>
#include <cctype>

namespace govtree {

namespace {

constexpr std::array<std::string_view, 5> kTrustNames = {"untrusted", "low", "standard",
                                                         "elevated", "system"};
constexpr std::array<std::string_view, 5> kCapNames = {"compute", "memory", "reason", "call",
                                                       "observe"};

}  // namespace

std::string_view trust_name(TrustLevel t) { return kTrustNames[static_cast<std::size_t>(t)]; }

std::string_view capability_name(Capability c) {
  return kCapNames[static_cast<std::size_t>(c)];
}

std::optional<TrustLevel> parse_trust(std::string_view s) {
  for (std::size_t i = 0; i < kTrustNames.size(); ++i) {
    if (kTrustNames[i] == s) return static_cast<TrustLevel>(i);
  }
  return std::nullopt;
}

std::optional<Capability> parse_capability(std::string_view s) {
  for (std::size_t i = 0; i < kCapNames.size(); ++i) {
    if (kCapNames[i] == s) return static_cast<Capability>(i);
  }
  return std::nullopt;
}

Capability capability_of(CapabilityClass c) {
  switch (c) {
    case CapabilityClass::Code: return Capability::Compute;
    case CapabilityClass::Memory: return Capability::Memory;
    case CapabilityClass::Reason: return Capability::Reason;
    case CapabilityClass::Call: return Capability::Call;
    case CapabilityClass::Observe: return Capability::Observe;
  }
  return Capability::Compute;
}

CapabilityClass class_of(Capability c) {
  switch (c) {
    case Capability::Compute: return CapabilityClass::Code;
    case Capability::Memory: return CapabilityClass::Memory;
    case Capability::Reason: return CapabilityClass::Reason;
    case Capability::Call: return CapabilityClass::Call;
    case Capability::Observe: return CapabilityClass::Observe;
  }
  return CapabilityClass::Code;
}

TrustLevel min_trust(Capability c) {
  switch (c) {
    case Capability::Compute:
    case Capability::Observe: return TrustLevel::Untrusted;
    case Capability::Memory: return TrustLevel::Low;
    case Capability::Reason: return TrustLevel::Standard;
    case Capability::Call: return TrustLevel::Elevated;
  }
  return TrustLevel::System;
}

bool trust_at_least(TrustLevel have, TrustLevel need) {
  return static_cast<int>(have) >= static_cast<int>(need);
}

bool capability_allowed(TrustLevel tl, Capability cap, const std::vector<Capability>& declared) {
  return std::find(declared.begin(), declared.end(), cap) != declared.end() &&
         trust_at_least(tl, min_trust(cap));
}

PolicyPtr pol_capability(TrustLevel tl, Capability cap, std::vector<Capability> declared) {
  return std::make_shared<const GovPolicy>(PolCapability{tl, cap, std::move(declared)});
}
PolicyPtr pol_trust(TrustLevel have, TrustLevel need) {
  return std::make_shared<const GovPolicy>(PolTrust{have, need});
}
PolicyPtr pol_and(PolicyPtr p, PolicyPtr q) {
  return std::make_shared<const GovPolicy>(PolAnd{std::move(p), std::move(q)});
}
PolicyPtr pol_or(PolicyPtr p, PolicyPtr q) {
  return std::make_shared<const GovPolicy>(PolOr{std::move(p), std::move(q)});
}
PolicyPtr pol_not(PolicyPtr p) { return std::make_shared<const GovPolicy>(PolNot{std::move(p)}); }

PolicyPtr pol_true() { return pol_trust(TrustLevel::System, TrustLevel::Untrusted); }

namespace {

struct Evaluator {
  bool operator()(const PolCapability& p) const {
    return capability_allowed(p.trust, p.cap, p.declared);
  }
  bool operator()(const PolTrust& p) const { return trust_at_least(p.have, p.need); }
  bool operator()(const PolAnd& p) const { return eval_policy(*p.lhs) && eval_policy(*p.rhs); }
  bool operator()(const PolOr& p) const { return eval_policy(*p.lhs) || eval_policy(*p.rhs); }
  bool operator()(const PolNot& p) const { return !eval_policy(*p.inner); }
};

}  // namespace

bool eval_policy(const GovPolicy& p) { return std::visit(Evaluator{}, p.term()); }

bool structurally_equal(const GovPolicy& a, const GovPolicy& b) {
  if (a.term().index() != b.term().index()) return false;
  return std::visit(
      [&b](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        const auto& y = std::get<T>(b.term());
        if constexpr (std::is_same_v<T, PolCapability>) {
          return x.trust == y.trust && x.cap == y.cap && x.declared == y.declared;
        } else if constexpr (std::is_same_v<T, PolTrust>) {
          return x.have == y.have && x.need == y.need;
        } else if constexpr (std::is_same_v<T, PolNot>) {
          return structurally_equal(*x.inner, *y.inner);
        } else {
          return structurally_equal(*x.lhs, *y.lhs) && structurally_equal(*x.rhs, *y.rhs);
        }
      },
      a.term());
}

namespace {

void render_into(const GovPolicy& p, std::string& out) {
  std::visit(
      [&out](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, PolCapability>) {
          out += "(cap ";
          out += trust_name(x.trust);
          out += ' ';
          out += capability_name(x.cap);
          out += " (";
          for (std::size_t i = 0; i < x.declared.size(); ++i) {
            if (i) out += ' ';
            out += capability_name(x.declared[i]);
          }
          out += "))";
        } else if constexpr (std::is_same_v<T, PolTrust>) {
          out += "(trust ";
          out += trust_name(x.have);
          out += ' ';
          out += trust_name(x.need);
          out += ')';
        } else if constexpr (std::is_same_v<T, PolNot>) {
          out += "(not ";
          render_into(*x.inner, out);
          out += ')';
        } else {
          out += std::is_same_v<T, PolAnd> ? "(and " : "(or ";
          render_into(*x.lhs, out);
          out += ' ';
          render_into(*x.rhs, out);
          out += ')';
        }
      },
      p.term());
}

class PolicyParser {
 public:
  explicit PolicyParser(std::string_view text) : text_(text) {}

  PolicyPtr parse_all() {
    PolicyPtr p = parse();
    skip_ws();
    if (pos_ != text_.size()) fail("trailing input after policy");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(pos_, what); }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  void expect(char c) {
    skip_ws();
    if (pos_ >= text_.size() || text_[pos_] != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  bool peek(char c) {
    skip_ws();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  std::string_view word() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::islower(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected keyword");
    return text_.substr(start, pos_ - start);
  }

  TrustLevel level() {
    std::size_t at = (skip_ws(), pos_);
    auto w = word();
    auto t = parse_trust(w);
    if (!t) throw ParseError(at, "unknown trust level '" + std::string(w) + "'");
    return *t;
  }

  Capability cap() {
    std::size_t at = (skip_ws(), pos_);
    auto w = word();
    auto c = parse_capability(w);
    if (!c) throw ParseError(at, "unknown capability '" + std::string(w) + "'");
    return *c;
  }

  PolicyPtr parse() {
    expect('(');
    std::size_t at = (skip_ws(), pos_);
    auto head = word();
    PolicyPtr result;
    if (head == "trust") {
      TrustLevel have = level();
      TrustLevel need = level();
      result = pol_trust(have, need);
    } else if (head == "cap") {
      TrustLevel tl = level();
      Capability c = cap();
      expect('(');
      std::vector<Capability> declared;
      while (!peek(')')) declared.push_back(cap());
      expect(')');
      result = pol_capability(tl, c, std::move(declared));
    } else if (head == "and" || head == "or") {
      PolicyPtr lhs = parse();
      PolicyPtr rhs = parse();
      result = head == "and" ? pol_and(lhs, rhs) : pol_or(lhs, rhs);
    } else if (head == "not") {
      result = pol_not(parse());
    } else {
      throw ParseError(at, "unknown policy form '" + std::string(head) + "'");
    }
    expect(')');
    return result;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string render_policy(const GovPolicy& p) {
  std::string out;
  render_into(p, out);
  return out;
}

PolicyPtr parse_policy(std::string_view text) { return PolicyParser(text).parse_all(); }

}  // namespace govtree

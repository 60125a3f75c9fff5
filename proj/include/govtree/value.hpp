#pragma once

// Answer values exchanged between programs and handlers.
//
// Every event declares the kind of answer it expects; a Value is the tagged
// union of those kinds. Kind mismatches between an event and the value that
// answers it are contract violations and raise HandlerContractViolation.

#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

namespace govtree {

enum class ValueKind : std::uint8_t { Unit, Bool, Nat, Text };

std::string_view kind_name(ValueKind kind);

struct Unit {
  bool operator==(const Unit&) const = default;
};

class Value {
 public:
  Value() = default;

  static Value unit() { return Value(Storage{Unit{}}); }
  static Value boolean(bool b) { return Value(Storage{b}); }
  static Value nat(std::uint64_t n) { return Value(Storage{n}); }
  static Value text(std::string s) { return Value(Storage{std::move(s)}); }

  ValueKind kind() const { return static_cast<ValueKind>(data_.index()); }

  bool is_unit() const { return kind() == ValueKind::Unit; }
  bool is_bool() const { return kind() == ValueKind::Bool; }
  bool is_nat() const { return kind() == ValueKind::Nat; }
  bool is_text() const { return kind() == ValueKind::Text; }

  // Accessors throw std::bad_variant_access on the wrong kind.
  bool as_bool() const { return std::get<bool>(data_); }
  std::uint64_t as_nat() const { return std::get<std::uint64_t>(data_); }
  const std::string& as_text() const { return std::get<std::string>(data_); }

  bool operator==(const Value&) const = default;

 private:
  using Storage = std::variant<Unit, bool, std::uint64_t, std::string>;
  explicit Value(Storage s) : data_(std::move(s)) {}
  Storage data_{Unit{}};
};

// Raised when a handler or responder answers an event with a value whose kind
// differs from the event's declared answer kind.
class HandlerContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

void expect_kind(ValueKind expected, const Value& got, std::string_view context);

// Canonical text rendering. Text is double-quoted with backslash escapes;
// booleans are `true`/`false`; unit is `unit`; naturals are decimal.
std::string render(const Value& v);

inline std::ostream& operator<<(std::ostream& out, const Value& v) { return out << render(v); }
std::string quote_text(std::string_view s);

// Inverse of render(). Throws std::invalid_argument on malformed input.
Value parse_value(std::string_view text);

// Decimal parse used by oracle answers: digits only, no sign, no overflow;
// anything else yields 0.
std::uint64_t parse_nat_or_zero(std::string_view s);

}  // namespace govtree

#include "govtree/value.hpp"

#include <charconv>
#include <cstdio>

namespace govtree {

std::string_view kind_name(ValueKind kind) {
  switch (kind) {
    case ValueKind::Unit: return "Unit";
    case ValueKind::Bool: return "Bool";
    case ValueKind::Nat: return "Nat";
    case ValueKind::Text: return "Text";
  }
  return "?";
}

void expect_kind(ValueKind expected, const Value& got, std::string_view context) {
  if (got.kind() == expected) return;
  std::string msg(context);
  msg += ": expected ";
  msg += kind_name(expected);
  msg += " answer, got ";
  msg += kind_name(got.kind());
  throw HandlerContractViolation(msg);
}

std::string quote_text(std::string_view s) {
  std::string out;
  out.reserve(s.size() + 2);
  out.push_back('"');
  for (unsigned char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (c < 0x20 || c >= 0x7f) {
          char buf[5];
          std::snprintf(buf, sizeof buf, "\\x%02x", c);
          out += buf;
        } else {
          out.push_back(static_cast<char>(c));
        }
    }
  }
  out.push_back('"');
  return out;
}

std::string render(const Value& v) {
  switch (v.kind()) {
    case ValueKind::Unit: return "unit";
    case ValueKind::Bool: return v.as_bool() ? "true" : "false";
    case ValueKind::Nat: return std::to_string(v.as_nat());
    case ValueKind::Text: return quote_text(v.as_text());
  }
  return {};
}

namespace {

int hex_digit(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

std::string unquote(std::string_view s) {
  if (s.size() < 2 || s.front() != '"' || s.back() != '"') {
    throw std::invalid_argument("text value must be double-quoted");
  }
  std::string_view body = s.substr(1, s.size() - 2);
  std::string out;
  for (std::size_t i = 0; i < body.size(); ++i) {
    char c = body[i];
    if (c == '"') throw std::invalid_argument("unescaped quote inside text");
    if (c != '\\') {
      out.push_back(c);
      continue;
    }
    if (++i >= body.size()) throw std::invalid_argument("dangling escape");
    switch (body[i]) {
      case '"': out.push_back('"'); break;
      case '\\': out.push_back('\\'); break;
      case 'n': out.push_back('\n'); break;
      case 't': out.push_back('\t'); break;
      case 'r': out.push_back('\r'); break;
      case 'x': {
        if (i + 2 >= body.size()) {
          throw std::invalid_argument("short \\x escape");
        }
        int hi = hex_digit(body[i + 1]);
        int lo = hex_digit(body[i + 2]);
        if (hi < 0 || lo < 0) throw std::invalid_argument("bad \\x escape");
        out.push_back(static_cast<char>(hi * 16 + lo));
        i += 2;
        break;
      }
      default: throw std::invalid_argument("unknown escape");
    }
  }
  return out;
}

}  // namespace

Value parse_value(std::string_view text) {
  if (text == "unit") return Value::unit();
  if (text == "true") return Value::boolean(true);
  if (text == "false") return Value::boolean(false);
  if (!text.empty() && text.front() == '"') return Value::text(unquote(text));
  std::uint64_t n = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), n);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
    throw std::invalid_argument("malformed value: " + std::string(text));
  }
  return Value::nat(n);
}

std::uint64_t parse_nat_or_zero(std::string_view s) {
  if (s.empty()) return 0;
  std::uint64_t n = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), n);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return 0;
  return n;
}

}  // namespace govtree

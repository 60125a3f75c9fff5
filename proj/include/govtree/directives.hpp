#pragma once

// The directive alphabet programs speak, its lowered I/O mirror, capability
// classification, and the two base handlers (passthrough, content filter).

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "govtree/tree.hpp"
#include "govtree/value.hpp"

namespace govtree {

enum class CapabilityClass : std::uint8_t { Code, Memory, Reason, Call, Observe };

inline constexpr std::array<CapabilityClass, 5> kAllClasses = {
    CapabilityClass::Code, CapabilityClass::Memory, CapabilityClass::Reason,
    CapabilityClass::Call, CapabilityClass::Observe};

std::string_view class_name(CapabilityClass c);

namespace op {

struct ComputeOp {
  std::uint64_t morphism = 0;
  Value input;
  bool operator==(const ComputeOp&) const = default;
};

enum class MemAccess : std::uint8_t { Read, Write };

struct MemoryOp {
  MemAccess access = MemAccess::Read;
  std::uint64_t key = 0;
  std::uint64_t value = 0;  // ignored for Read
  bool operator==(const MemoryOp&) const = default;
};

struct DBOp {
  std::string query;
  bool operator==(const DBOp&) const = default;
};

enum class FileMode : std::uint8_t { Read, Write };

struct FileOp {
  std::string path;
  FileMode mode = FileMode::Read;
  std::string payload;
  bool operator==(const FileOp&) const = default;
};

struct LLMCall {
  std::string prompt;
  bool operator==(const LLMCall&) const = default;
};

// The stream is delivered as one concatenated Text answer.
struct LLMCallStream {
  std::string prompt;
  bool operator==(const LLMCallStream&) const = default;
};

struct CallMachine {
  std::string api;
  std::string payload;
  bool operator==(const CallMachine&) const = default;
};

struct HTTPRequest {
  std::string url;
  std::string method;
  std::string body;
  bool operator==(const HTTPRequest&) const = default;
};

struct ExecOp {
  std::string command;
  bool operator==(const ExecOp&) const = default;
};

struct GraphQLRequest {
  std::string endpoint;
  std::string query;
  bool operator==(const GraphQLRequest&) const = default;
};

struct WebSocketOp {
  std::string channel;
  std::string message;
  bool operator==(const WebSocketOp&) const = default;
};

struct MCPCall {
  std::string tool;
  std::string args;
  bool operator==(const MCPCall&) const = default;
};

struct ObserveEmit {
  std::string message;
  bool operator==(const ObserveEmit&) const = default;
};

}  // namespace op

// Constructor tags in declaration order; the index matches Directive's
// variant index.
enum class DirectiveKind : std::uint8_t {
  ComputeOp,
  MemoryOp,
  DBOp,
  FileOp,
  LLMCall,
  LLMCallStream,
  CallMachine,
  HTTPRequest,
  ExecOp,
  GraphQLRequest,
  WebSocketOp,
  MCPCall,
  ObserveEmit,
};

inline constexpr std::size_t kDirectiveKindCount = 13;

std::string_view kind_name(DirectiveKind k);
std::optional<DirectiveKind> parse_kind_name(std::string_view name);

struct Directive {
  using Payload =
      std::variant<op::ComputeOp, op::MemoryOp, op::DBOp, op::FileOp, op::LLMCall,
                   op::LLMCallStream, op::CallMachine, op::HTTPRequest, op::ExecOp,
                   op::GraphQLRequest, op::WebSocketOp, op::MCPCall, op::ObserveEmit>;

  Payload payload;

  DirectiveKind kind() const { return static_cast<DirectiveKind>(payload.index()); }
  bool operator==(const Directive&) const = default;
};

static_assert(std::variant_size_v<Directive::Payload> == kDirectiveKindCount);

// Lowered "real I/O" event: same constructor and payload as the directive it
// came from, in a distinct alphabet.
struct IoEvent {
  Directive op;
  DirectiveKind kind() const { return op.kind(); }
  bool operator==(const IoEvent&) const = default;
};

// Shorthand constructors.
Directive compute(std::uint64_t morphism, Value input);
Directive mem_read(std::uint64_t key);
Directive mem_write(std::uint64_t key, std::uint64_t value);
Directive db(std::string query);
Directive file(std::string path, op::FileMode mode, std::string payload);
Directive llm(std::string prompt);
Directive llm_stream(std::string prompt);
Directive call_machine(std::string api, std::string payload);
Directive http(std::string url, std::string method, std::string body);
Directive exec(std::string command);
Directive graphql(std::string endpoint, std::string query);
Directive websocket(std::string channel, std::string message);
Directive mcp(std::string tool, std::string args);
Directive observe_emit(std::string message);

// One representative directive per constructor, in DirectiveKind order.
std::array<Directive, kDirectiveKindCount> sample_directives();

ValueKind answer_kind(const Directive& d);
ValueKind answer_kind(const IoEvent& e);

CapabilityClass classify(const Directive& d);
CapabilityClass classify(DirectiveKind k);
CapabilityClass classify_io(const IoEvent& e);

bool is_code_event(const Directive& d);
bool is_memory_event(const Directive& d);
bool is_reason_event(const Directive& d);
bool is_call_event(const Directive& d);
bool is_observe_event(const Directive& d);

IoEvent lower(const Directive& d);

// Canonical rendering: constructor name then payload fields, space-separated;
// text fields quoted with backslash escapes. IoEvent renders identically.
std::string render(const Directive& d);
std::string render(const IoEvent& e);

Handler<Directive, IoEvent> passthrough();

// Like passthrough, but Text answers pass through `redact` before the
// program's continuation sees them.
Handler<Directive, IoEvent> content_filter(std::function<std::string(const std::string&)> redact);

}  // namespace govtree

#include "govtree/directives.hpp"

namespace govtree {

std::string_view class_name(CapabilityClass c) {
  switch (c) {
    case CapabilityClass::Code: return "Code";
    case CapabilityClass::Memory: return "Memory";
    case CapabilityClass::Reason: return "Reason";
    case CapabilityClass::Call: return "Call";
    case CapabilityClass::Observe: return "Observe";
  }
  return "?";
}

std::string_view kind_name(DirectiveKind k) {
  static constexpr std::array<std::string_view, kDirectiveKindCount> names = {
      "ComputeOp", "MemoryOp",    "DBOp",           "FileOp",      "LLMCall",
      "LLMCallStream", "CallMachine", "HTTPRequest", "ExecOp",      "GraphQLRequest",
      "WebSocketOp",   "MCPCall",     "ObserveEmit"};
  return names[static_cast<std::size_t>(k)];
}

std::optional<DirectiveKind> parse_kind_name(std::string_view name) {
  for (std::size_t i = 0; i < kDirectiveKindCount; ++i) {
    auto k = static_cast<DirectiveKind>(i);
    if (kind_name(k) == name) return k;
  }
  return std::nullopt;
}

Directive compute(std::uint64_t morphism, Value input) {
  return {op::ComputeOp{morphism, std::move(input)}};
}
Directive mem_read(std::uint64_t key) { return {op::MemoryOp{op::MemAccess::Read, key, 0}}; }
Directive mem_write(std::uint64_t key, std::uint64_t value) {
  return {op::MemoryOp{op::MemAccess::Write, key, value}};
}
Directive db(std::string query) { return {op::DBOp{std::move(query)}}; }
Directive file(std::string path, op::FileMode mode, std::string payload) {
  return {op::FileOp{std::move(path), mode, std::move(payload)}};
}
Directive llm(std::string prompt) { return {op::LLMCall{std::move(prompt)}}; }
Directive llm_stream(std::string prompt) { return {op::LLMCallStream{std::move(prompt)}}; }
Directive call_machine(std::string api, std::string payload) {
  return {op::CallMachine{std::move(api), std::move(payload)}};
}
Directive http(std::string url, std::string method, std::string body) {
  return {op::HTTPRequest{std::move(url), std::move(method), std::move(body)}};
}
Directive exec(std::string command) { return {op::ExecOp{std::move(command)}}; }
Directive graphql(std::string endpoint, std::string query) {
  return {op::GraphQLRequest{std::move(endpoint), std::move(query)}};
}
Directive websocket(std::string channel, std::string message) {
  return {op::WebSocketOp{std::move(channel), std::move(message)}};
}
Directive mcp(std::string tool, std::string args) {
  return {op::MCPCall{std::move(tool), std::move(args)}};
}
Directive observe_emit(std::string message) { return {op::ObserveEmit{std::move(message)}}; }

std::array<Directive, kDirectiveKindCount> sample_directives() {
  return {compute(1, Value::nat(2)),
          mem_read(0),
          db("select 1"),
          file("/tmp/a", op::FileMode::Read, ""),
          llm("p"),
          llm_stream("p"),
          call_machine("api", "x"),
          http("http://h/", "GET", ""),
          exec("ls"),
          graphql("/gql", "{ a }"),
          websocket("ch", "hi"),
          mcp("tool", "{}"),
          observe_emit("note")};
}

ValueKind answer_kind(const Directive& d) {
  switch (d.kind()) {
    case DirectiveKind::MemoryOp: return ValueKind::Nat;
    case DirectiveKind::ObserveEmit: return ValueKind::Unit;
    case DirectiveKind::ComputeOp: return std::get<op::ComputeOp>(d.payload).input.kind();
    default: return ValueKind::Text;
  }
}

ValueKind answer_kind(const IoEvent& e) { return answer_kind(e.op); }

CapabilityClass classify(DirectiveKind k) {
  switch (k) {
    case DirectiveKind::ComputeOp: return CapabilityClass::Code;
    case DirectiveKind::MemoryOp:
    case DirectiveKind::DBOp:
    case DirectiveKind::FileOp: return CapabilityClass::Memory;
    case DirectiveKind::LLMCall:
    case DirectiveKind::LLMCallStream: return CapabilityClass::Reason;
    case DirectiveKind::CallMachine:
    case DirectiveKind::HTTPRequest:
    case DirectiveKind::ExecOp:
    case DirectiveKind::GraphQLRequest:
    case DirectiveKind::WebSocketOp:
    case DirectiveKind::MCPCall: return CapabilityClass::Call;
    case DirectiveKind::ObserveEmit: return CapabilityClass::Observe;
  }
  return CapabilityClass::Code;
}

CapabilityClass classify(const Directive& d) { return classify(d.kind()); }
CapabilityClass classify_io(const IoEvent& e) { return classify(e.op); }

// The class predicates are written as independent constructor tables rather
// than derived from classify(), so disjointness can be checked between them.
bool is_code_event(const Directive& d) { return d.kind() == DirectiveKind::ComputeOp; }

bool is_memory_event(const Directive& d) {
  switch (d.kind()) {
    case DirectiveKind::MemoryOp:
    case DirectiveKind::DBOp:
    case DirectiveKind::FileOp: return true;
    default: return false;
  }
}

bool is_reason_event(const Directive& d) {
  switch (d.kind()) {
    case DirectiveKind::LLMCall:
    case DirectiveKind::LLMCallStream: return true;
    default: return false;
  }
}

bool is_call_event(const Directive& d) {
  switch (d.kind()) {
    case DirectiveKind::CallMachine:
    case DirectiveKind::HTTPRequest:
    case DirectiveKind::ExecOp:
    case DirectiveKind::GraphQLRequest:
    case DirectiveKind::WebSocketOp:
    case DirectiveKind::MCPCall: return true;
    default: return false;
  }
}

bool is_observe_event(const Directive& d) { return d.kind() == DirectiveKind::ObserveEmit; }

IoEvent lower(const Directive& d) { return IoEvent{d}; }

namespace {

struct Renderer {
  std::string operator()(const op::ComputeOp& o) const {
    return "ComputeOp " + std::to_string(o.morphism) + " " + render(o.input);
  }
  std::string operator()(const op::MemoryOp& o) const {
    if (o.access == op::MemAccess::Read) return "MemoryOp Read " + std::to_string(o.key);
    return "MemoryOp Write " + std::to_string(o.key) + " " + std::to_string(o.value);
  }
  std::string operator()(const op::DBOp& o) const { return "DBOp " + quote_text(o.query); }
  std::string operator()(const op::FileOp& o) const {
    return "FileOp " + quote_text(o.path) +
           (o.mode == op::FileMode::Read ? " Read " : " Write ") + quote_text(o.payload);
  }
  std::string operator()(const op::LLMCall& o) const { return "LLMCall " + quote_text(o.prompt); }
  std::string operator()(const op::LLMCallStream& o) const {
    return "LLMCallStream " + quote_text(o.prompt);
  }
  std::string operator()(const op::CallMachine& o) const {
    return "CallMachine " + quote_text(o.api) + " " + quote_text(o.payload);
  }
  std::string operator()(const op::HTTPRequest& o) const {
    return "HTTPRequest " + quote_text(o.url) + " " + quote_text(o.method) + " " +
           quote_text(o.body);
  }
  std::string operator()(const op::ExecOp& o) const { return "ExecOp " + quote_text(o.command); }
  std::string operator()(const op::GraphQLRequest& o) const {
    return "GraphQLRequest " + quote_text(o.endpoint) + " " + quote_text(o.query);
  }
  std::string operator()(const op::WebSocketOp& o) const {
    return "WebSocketOp " + quote_text(o.channel) + " " + quote_text(o.message);
  }
  std::string operator()(const op::MCPCall& o) const {
    return "MCPCall " + quote_text(o.tool) + " " + quote_text(o.args);
  }
  std::string operator()(const op::ObserveEmit& o) const {
    return "ObserveEmit " + quote_text(o.message);
  }
};

}  // namespace

std::string render(const Directive& d) { return std::visit(Renderer{}, d.payload); }
std::string render(const IoEvent& e) { return render(e.op); }

Handler<Directive, IoEvent> passthrough() {
  return [](const Directive& d) { return trigger(lower(d)); };
}

Handler<Directive, IoEvent> content_filter(std::function<std::string(const std::string&)> redact) {
  return [redact = std::move(redact)](const Directive& d) {
    return then(trigger(lower(d)), [redact](const Value& answer) {
      if (answer.is_text()) return ret<IoEvent, Value>(Value::text(redact(answer.as_text())));
      return ret<IoEvent, Value>(answer);
    });
  };
}

}  // namespace govtree

#pragma once

#include "jsplit/mcp_types.hpp"

#include <nlohmann/json.hpp>

#include <chrono>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace jsplit::mcp {

inline constexpr const char* kProtocolVersion = "2024-11-05";

/// JSON-RPC 2.0 request framing. `id` is a number or string; notifications
/// carry a null id and expect no reply.
struct RpcEnvelope {
    nlohmann::json id;
    std::string method;
    nlohmann::json params;
};

/// Exact request bytes: {"id":...,"jsonrpc":"2.0","method":...,"params":...}.
std::string encode_request(const RpcEnvelope& envelope);
/// Notification bytes: no id member, params omitted when null.
std::string encode_notification(const std::string& method, const nlohmann::json& params);
RpcEnvelope decode_request(const std::string& frame);

std::string encode_response(const nlohmann::json& id, const nlohmann::json& result);
std::string encode_error(const nlohmann::json& id, int code, const std::string& message);

struct CallLogEntry {
    std::string server_id;
    std::string tool_name;
    nlohmann::json arguments;
    bool is_error = false;
    std::chrono::steady_clock::time_point at;
};

/// One MCP session. Confined to one task at a time; strict request/response
/// alternation (one in-flight request).
class Connection {
public:
    virtual ~Connection() = default;

    const std::string& server_id() const noexcept { return server_id_; }

    /// Tools advertised at initialize time.
    std::vector<ToolSpec> list_tools();

    /// Invoke a declared tool. Unknown tool names raise ProtocolError without
    /// touching the wire. Every invocation lands in the call log exactly once.
    ToolResult call_tool(const std::string& tool_name, const nlohmann::json& arguments);

    const std::vector<CallLogEntry>& call_log() const noexcept { return call_log_; }

protected:
    explicit Connection(std::string server_id) : server_id_(std::move(server_id)) {}

    /// Perform the MCP initialize handshake. Call once from factory code.
    void initialize();

    /// Send one request and return its result. Responses with unknown ids are
    /// discarded, never delivered.
    nlohmann::json request(const std::string& method, const nlohmann::json& params);

    virtual void send_frame(const std::string& frame) = 0;
    /// Next frame from the peer; empty optional on orderly end of stream.
    virtual std::optional<std::string> receive_frame() = 0;
    virtual void send_notification_frame(const std::string& frame) { send_frame(frame); }

private:
    std::string server_id_;
    std::vector<CallLogEntry> call_log_;
    std::vector<ToolSpec> tools_;
    bool initialized_ = false;
    std::int64_t next_id_ = 1;
};

/// Declarative mock server: tools plus canned replies.
/// {server_id, tools:[{name, description?, input_schema?,
///   canned_replies:[{match_args?, reply}]}]}
/// reply forms: {"text": s} | {"json": v} | {"echo_arg": name} | {"error": s}.
struct MockServerFixture {
    std::string server_id;
    std::vector<ToolSpec> tools;
    nlohmann::json raw; // full fixture document, consulted for canned replies

    static MockServerFixture from_json(const nlohmann::json& doc);
};

/// Evaluate one tools/call against a fixture. Shared by the in-process
/// transport and the standalone stdio mock server binary.
nlohmann::json mock_call_result(const MockServerFixture& fixture,
                                const std::string& tool_name,
                                const nlohmann::json& arguments);

/// Serve one decoded JSON-RPC request; returns the response frame, or empty
/// for notifications.
std::string mock_dispatch(const MockServerFixture& fixture, const std::string& frame);

/// Read-only after setup. Keys are fixture server_ids.
class MockServerRegistry {
public:
    void register_fixture(MockServerFixture fixture);
    void register_fixtures_file(const std::string& path);
    /// One default mock per catalog-entry shape: every tool answers
    /// {"status":"ok","tool":<name>}.
    void register_default(const std::string& server_id, const std::vector<ToolSpec>& tools);

    const MockServerFixture* find(const std::string& key) const noexcept;

private:
    std::map<std::string, MockServerFixture> fixtures_;
};

/// Creates connections for catalog endpoints; owns nothing but the registry
/// reference. Distinct connections may be used concurrently.
class TransportFactory {
public:
    explicit TransportFactory(const MockServerRegistry* mocks = nullptr)
        : mocks_(mocks) {}

    std::unique_ptr<Connection> connect(const TransportAddress& address,
                                        const std::string& server_id) const;

private:
    const MockServerRegistry* mocks_;
};

} // namespace jsplit::mcp

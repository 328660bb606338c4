#pragma once

#include <nlohmann/json.hpp>

#include <string>
#include <string_view>

namespace jsplit {

/// One tool exposed by an MCP server. `input_schema` is carried opaquely
/// (MCP's JSON-schema parameter block) and never validated semantically.
struct ToolSpec {
    std::string name;
    std::string description;
    nlohmann::json input_schema = nlohmann::json::object();

    bool operator==(const ToolSpec&) const = default;
};

enum class TransportKind { stdio_command, http_url, in_process };

const char* to_string(TransportKind kind) noexcept;
TransportKind transport_kind_from(std::string_view s);

/// Where an MCP server lives: a child-process command line, an HTTP URL,
/// or a key into the in-process mock registry.
struct TransportAddress {
    TransportKind kind = TransportKind::in_process;
    std::string locator;

    bool operator==(const TransportAddress&) const = default;
};

/// Outcome of one tools/call. `content` keeps the server's raw content
/// value; text() flattens it for appending to the conversation.
struct ToolResult {
    nlohmann::json content;
    bool is_error = false;

    std::string text() const;
};

} // namespace jsplit

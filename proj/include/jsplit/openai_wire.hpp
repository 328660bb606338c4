#pragma once

#include "jsplit/llm_gateway.hpp"

#include <nlohmann/json.hpp>

#include <map>
#include <span>
#include <string>

namespace jsplit::openai_wire {

/// Wire-level function names must be flat identifiers, so a (server, tool)
/// pair is encoded into one name. The map built from the request's schemas
/// is the authority for decoding; collisions after sanitizing get a numeric
/// suffix.
class ToolNameMap {
public:
    std::string encode(const std::string& server_id, const std::string& tool_name);
    /// Decode a wire name back to (server_id, tool_name). Unknown names fall
    /// back to splitting on the first "__".
    std::pair<std::string, std::string> decode(const std::string& wire_name) const;

private:
    std::map<std::string, std::pair<std::string, std::string>> by_wire_;
    std::map<std::pair<std::string, std::string>, std::string> by_pair_;
};

ToolNameMap build_tool_name_map(std::span<const ToolSchemaEntry> tool_schemas);

nlohmann::json message_to_wire(const ChatMessage& message, ToolNameMap& names);
ChatMessage message_from_wire(const nlohmann::json& wire, const ToolNameMap& names);

nlohmann::json request_body(const std::string& model,
                            std::span<const ChatMessage> messages,
                            std::span<const ToolSchemaEntry> tool_schemas,
                            const DecodingParams& params, ToolNameMap& names);

/// Parse a chat-completions response body. Throws GatewayError(protocol)
/// when choices or usage are missing or malformed.
ChatResponse parse_response(const nlohmann::json& body, const ToolNameMap& names);

} // namespace jsplit::openai_wire

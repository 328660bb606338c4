#include "jsplit/openai_wire.hpp"

#include "jsplit/errors.hpp"

#include <cctype>

namespace jsplit::openai_wire {

using nlohmann::json;

namespace {

std::string sanitize(const std::string& raw) {
    std::string out;
    out.reserve(raw.size());
    for (char c : raw) {
        if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-') {
            out += c;
        } else {
            out += '-';
        }
    }
    if (out.empty()) out = "x";
    return out;
}

} // namespace

std::string ToolNameMap::encode(const std::string& server_id, const std::string& tool_name) {
    auto pair = std::make_pair(server_id, tool_name);
    if (auto it = by_pair_.find(pair); it != by_pair_.end()) {
        return it->second;
    }
    std::string base = sanitize(server_id) + "__" + sanitize(tool_name);
    std::string wire = base;
    int suffix = 2;
    while (by_wire_.count(wire) != 0) {
        wire = base + "-" + std::to_string(suffix++);
    }
    if (wire.size() > 64) { // OpenAI caps function names at 64 chars
        wire = wire.substr(0, 56) + "-" + std::to_string(by_wire_.size());
    }
    by_wire_.emplace(wire, pair);
    by_pair_.emplace(std::move(pair), wire);
    return wire;
}

std::pair<std::string, std::string> ToolNameMap::decode(const std::string& wire_name) const {
    if (auto it = by_wire_.find(wire_name); it != by_wire_.end()) {
        return it->second;
    }
    auto sep = wire_name.find("__");
    if (sep == std::string::npos) {
        return {std::string{}, wire_name};
    }
    return {wire_name.substr(0, sep), wire_name.substr(sep + 2)};
}

ToolNameMap build_tool_name_map(std::span<const ToolSchemaEntry> tool_schemas) {
    ToolNameMap names;
    for (const auto& schema : tool_schemas) {
        names.encode(schema.server_id, schema.tool.name);
    }
    return names;
}

json message_to_wire(const ChatMessage& message, ToolNameMap& names) {
    json wire;
    wire["role"] = to_string(message.role);
    if (message.role == Role::tool) {
        wire["tool_call_id"] = message.tool_call_id;
        wire["content"] = message.content;
        return wire;
    }
    wire["content"] = message.content;
    if (!message.tool_calls.empty()) {
        json calls = json::array();
        for (const auto& call : message.tool_calls) {
            calls.push_back(
                {{"id", call.call_id},
                 {"type", "function"},
                 {"function",
                  {{"name", names.encode(call.server_id, call.tool_name)},
                   {"arguments", call.arguments.dump()}}}});
        }
        wire["tool_calls"] = std::move(calls);
    }
    return wire;
}

ChatMessage message_from_wire(const json& wire, const ToolNameMap& names) {
    ChatMessage message;
    message.role = role_from(wire.value("role", "assistant"));
    if (wire.contains("content") && wire["content"].is_string()) {
        message.content = wire["content"].get<std::string>();
    }
    if (wire.contains("tool_call_id") && wire["tool_call_id"].is_string()) {
        message.tool_call_id = wire["tool_call_id"].get<std::string>();
    }
    if (wire.contains("tool_calls") && wire["tool_calls"].is_array()) {
        for (const auto& c : wire["tool_calls"]) {
            ToolCallRequest call;
            call.call_id = c.value("id", std::string{});
            if (!c.contains("function") || !c["function"].is_object()) {
                throw GatewayError("tool call without a function block", false);
            }
            const json& fn = c["function"];
            auto [server_id, tool_name] = names.decode(fn.value("name", std::string{}));
            call.server_id = std::move(server_id);
            call.tool_name = std::move(tool_name);
            std::string arguments = fn.value("arguments", std::string{"{}"});
            try {
                call.arguments = arguments.empty() ? json::object() : json::parse(arguments);
            } catch (const json::parse_error&) {
                // some backends emit partial JSON on truncation; keep it raw
                call.arguments = json{{"_raw", arguments}};
            }
            message.tool_calls.push_back(std::move(call));
        }
    }
    return message;
}

json request_body(const std::string& model, std::span<const ChatMessage> messages,
                  std::span<const ToolSchemaEntry> tool_schemas,
                  const DecodingParams& params, ToolNameMap& names) {
    json body;
    body["model"] = model;
    body["temperature"] = params.temperature;
    if (params.max_completion_tokens) {
        body["max_tokens"] = *params.max_completion_tokens;
    }
    json wire_messages = json::array();
    for (const auto& m : messages) {
        wire_messages.push_back(message_to_wire(m, names));
    }
    body["messages"] = std::move(wire_messages);
    if (!tool_schemas.empty()) {
        json tools = json::array();
        for (const auto& schema : tool_schemas) {
            json parameters = schema.tool.input_schema;
            if (!parameters.is_object() || parameters.empty()) {
                parameters = {{"type", "object"}, {"properties", json::object()}};
            }
            tools.push_back({{"type", "function"},
                             {"function",
                              {{"name", names.encode(schema.server_id, schema.tool.name)},
                               {"description", schema.tool.description},
                               {"parameters", parameters}}}});
        }
        body["tools"] = std::move(tools);
        body["tool_choice"] = "auto";
    }
    return body;
}

ChatResponse parse_response(const json& body, const ToolNameMap& names) {
    if (!body.is_object() || !body.contains("choices") || !body["choices"].is_array() ||
        body["choices"].empty()) {
        throw GatewayError("backend response has no choices", false);
    }
    const json& choice = body["choices"][0];
    if (!choice.contains("message")) {
        throw GatewayError("backend response choice has no message", false);
    }
    ChatResponse response;
    response.message = message_from_wire(choice["message"], names);

    std::string finish_reason = choice.value("finish_reason", std::string{});
    if (!response.message.tool_calls.empty()) {
        response.finish = ChatResponse::Finish::tool_calls;
    } else if (finish_reason == "length") {
        response.finish = ChatResponse::Finish::truncated;
    } else {
        response.finish = ChatResponse::Finish::answer;
    }

    if (!body.contains("usage") || !body["usage"].is_object()) {
        throw GatewayError("backend returned no usage block", false);
    }
    const json& usage = body["usage"];
    if (!usage.contains("prompt_tokens") || !usage.contains("completion_tokens")) {
        throw GatewayError("backend usage block is incomplete", false);
    }
    response.usage.prompt_tokens = usage["prompt_tokens"].get<std::int64_t>();
    response.usage.completion_tokens = usage["completion_tokens"].get<std::int64_t>();
    return response;
}

} // namespace jsplit::openai_wire

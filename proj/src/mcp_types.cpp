#include "jsplit/mcp_types.hpp"

#include "jsplit/errors.hpp"

namespace jsplit {

const char* to_string(TransportKind kind) noexcept {
    switch (kind) {
    case TransportKind::stdio_command: return "stdio";
    case TransportKind::http_url: return "http";
    case TransportKind::in_process: return "in_process";
    }
    return "in_process";
}

TransportKind transport_kind_from(std::string_view s) {
    if (s == "stdio") return TransportKind::stdio_command;
    if (s == "http") return TransportKind::http_url;
    if (s == "in_process") return TransportKind::in_process;
    throw ParseError("unknown transport kind: '" + std::string(s) + "'");
}

std::string ToolResult::text() const {
    // MCP shape: content is a list of {type:"text", text:...} items.
    if (content.is_string()) {
        return content.get<std::string>();
    }
    if (content.is_array()) {
        std::string out;
        for (const auto& item : content) {
            if (item.is_object() && item.value("type", "") == "text" &&
                item.contains("text") && item["text"].is_string()) {
                if (!out.empty()) out += '\n';
                out += item["text"].get<std::string>();
            } else {
                if (!out.empty()) out += '\n';
                out += item.dump();
            }
        }
        return out;
    }
    if (content.is_null()) {
        return {};
    }
    return content.dump();
}

} // namespace jsplit

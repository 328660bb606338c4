#include "jsplit/llm_gateway.hpp"

#include "jsplit/errors.hpp"
#include "jsplit/openai_wire.hpp"
#include "jsplit/util.hpp"

#include <cmath>
#include <limits>
#include <regex>

namespace jsplit {

using nlohmann::json;

const char* to_string(Role role) noexcept {
    switch (role) {
    case Role::system: return "system";
    case Role::user: return "user";
    case Role::assistant: return "assistant";
    case Role::tool: return "tool";
    }
    return "user";
}

Role role_from(std::string_view s) {
    if (s == "system") return Role::system;
    if (s == "user") return Role::user;
    if (s == "assistant") return Role::assistant;
    if (s == "tool") return Role::tool;
    throw ParseError("unknown chat role: '" + std::string(s) + "'");
}

ChatMessage ChatMessage::system(std::string text) {
    return ChatMessage{Role::system, std::move(text), {}, {}};
}
ChatMessage ChatMessage::user(std::string text) {
    return ChatMessage{Role::user, std::move(text), {}, {}};
}
ChatMessage ChatMessage::assistant(std::string text) {
    return ChatMessage{Role::assistant, std::move(text), {}, {}};
}
ChatMessage ChatMessage::tool_result(std::string call_id, std::string text) {
    return ChatMessage{Role::tool, std::move(text), {}, std::move(call_id)};
}

TokenUsage accumulate(TokenUsage a, TokenUsage b) {
    TokenUsage out;
    if (__builtin_add_overflow(a.prompt_tokens, b.prompt_tokens, &out.prompt_tokens) ||
        __builtin_add_overflow(a.completion_tokens, b.completion_tokens,
                               &out.completion_tokens)) {
        throw CapacityError("token usage accumulation overflow");
    }
    if (out.prompt_tokens < 0 || out.completion_tokens < 0) {
        throw CapacityError("token usage must be non-negative");
    }
    return out;
}

std::string format_money(Money amount) {
    std::int64_t picos = amount.picos;
    std::string sign;
    if (picos < 0) {
        sign = "-";
        picos = -picos;
    }
    const std::int64_t unit = 1'000'000'000'000;
    std::string whole = std::to_string(picos / unit);
    std::int64_t frac = picos % unit;
    if (frac == 0) {
        return sign + whole;
    }
    std::string digits = std::to_string(frac);
    digits.insert(digits.begin(), 12 - digits.size(), '0');
    while (!digits.empty() && digits.back() == '0') {
        digits.pop_back();
    }
    return sign + whole + "." + digits;
}

PriceTable PriceTable::per_million(double input_dollars, double output_dollars,
                                   std::string model_name) {
    auto to_picos = [](double dollars) -> std::int64_t {
        if (!(dollars >= 0.0)) {
            throw ValidationError("prices must be non-negative");
        }
        double scaled = dollars * 1e12;
        if (scaled > static_cast<double>(std::numeric_limits<std::int64_t>::max())) {
            throw CapacityError("price too large");
        }
        std::int64_t picos = std::llround(scaled);
        if (std::abs(scaled - static_cast<double>(picos)) > 0.5) {
            throw ValidationError("price not representable in picodollars");
        }
        if (picos % 1'000'000 != 0) {
            throw ValidationError(
                "prices per million tokens may carry at most 6 decimal places");
        }
        return picos;
    };
    PriceTable table;
    table.input_price_per_million = Money{to_picos(input_dollars)};
    table.output_price_per_million = Money{to_picos(output_dollars)};
    table.model_name = std::move(model_name);
    return table;
}

Money cost_of(TokenUsage usage, const PriceTable& prices) {
    return Money{usage.prompt_tokens * prices.input_per_token().picos +
                 usage.completion_tokens * prices.output_per_token().picos};
}

const char* to_string(ChatResponse::Finish finish) noexcept {
    switch (finish) {
    case ChatResponse::Finish::answer: return "answer";
    case ChatResponse::Finish::tool_calls: return "tool_calls";
    case ChatResponse::Finish::truncated: return "truncated";
    }
    return "answer";
}

// -- canonical request rendering ---------------------------------------------

namespace {

void render_tool_call(const ToolCallRequest& call, std::string& out) {
    out += "[tool_call ";
    out += call.server_id;
    out += '/';
    out += call.tool_name;
    out += ' ';
    out += call.arguments.dump();
    out += "]\n";
}

} // namespace

std::string render_request_text(std::span<const ChatMessage> messages,
                                std::span<const ToolSchemaEntry> tool_schemas) {
    std::string out;
    for (const auto& m : messages) {
        if (m.role == Role::tool) {
            out += "tool(";
            out += m.tool_call_id;
            out += "): ";
            out += m.content;
            out += '\n';
            continue;
        }
        out += to_string(m.role);
        out += ": ";
        out += m.content;
        out += '\n';
        for (const auto& call : m.tool_calls) {
            render_tool_call(call, out);
        }
    }
    for (const auto& schema : tool_schemas) {
        out += "[tool ";
        out += schema.server_id;
        out += '/';
        out += schema.tool.name;
        out += ": ";
        out += schema.tool.description;
        out += ' ';
        out += schema.tool.input_schema.dump();
        out += "]\n";
    }
    return out;
}

std::int64_t scripted_token_count(std::string_view text) noexcept {
    return static_cast<std::int64_t>((text.size() + 3) / 4);
}

// -- scripted backend ---------------------------------------------------------

ScriptedGateway::ScriptedGateway(std::vector<ScriptRule> rules)
    : rules_(std::move(rules)) {}

ScriptedGateway ScriptedGateway::from_json(const json& doc) {
    const json* rules_json = nullptr;
    if (doc.is_array()) {
        rules_json = &doc;
    } else if (doc.is_object() && doc.contains("rules") && doc["rules"].is_array()) {
        rules_json = &doc["rules"];
    } else {
        throw ParseError("script must be a rule array or {rules:[...]}");
    }
    std::vector<ScriptRule> rules;
    for (const auto& r : *rules_json) {
        if (!r.is_object()) {
            throw ParseError("script rule must be an object");
        }
        ScriptRule rule;
        rule.match = r.value("match", std::string{});
        if (r.contains("match_regex")) {
            rule.match_regex = r["match_regex"].get<std::string>();
            std::regex probe(*rule.match_regex); // validate eagerly
            (void)probe;
        }
        rule.fallback = r.value("fallback", false);
        rule.repeat = r.value("repeat", false);
        if (r.contains("reply")) {
            const json& reply = r["reply"];
            if (reply.is_string()) {
                rule.reply_text = reply.get<std::string>();
            } else if (reply.is_object() && reply.contains("tool_calls")) {
                for (const auto& c : reply["tool_calls"]) {
                    ToolCallRequest call;
                    call.server_id = c.value("server_id", std::string{});
                    call.tool_name = c.value("tool_name", std::string{});
                    if (call.tool_name.empty()) {
                        throw ParseError("script tool_call needs a tool_name");
                    }
                    if (c.contains("arguments")) {
                        call.arguments = c["arguments"];
                    }
                    rule.reply_tool_calls.push_back(std::move(call));
                }
            } else {
                throw ParseError("script rule reply must be text or {tool_calls:[...]}");
            }
        }
        rules.push_back(std::move(rule));
    }
    return ScriptedGateway(std::move(rules));
}

ScriptedGateway ScriptedGateway::from_file(const std::string& path) {
    json doc;
    try {
        doc = json::parse(read_file(path));
    } catch (const json::parse_error& e) {
        throw ParseError("script file " + path + ": " + e.what());
    }
    return from_json(doc);
}

namespace {

bool rule_applies(const ScriptRule& rule, const std::string& last_user_message) {
    if (rule.fallback) return true;
    if (rule.match_regex) {
        return std::regex_search(last_user_message, std::regex(*rule.match_regex));
    }
    if (rule.match.empty()) return true;
    return last_user_message.find(rule.match) != std::string::npos;
}

} // namespace

ChatResponse ScriptedGateway::complete(std::span<const ChatMessage> messages,
                                       std::span<const ToolSchemaEntry> tool_schemas,
                                       const DecodingParams&) {
    if (messages.empty()) {
        throw ValidationError("complete() requires at least one message");
    }
    std::string last_user_message;
    std::size_t prior_replies = 0;
    for (const auto& m : messages) {
        if (m.role == Role::user) last_user_message = m.content;
        if (m.role == Role::assistant) ++prior_replies;
    }

    // The conversation itself keys the script position: the Nth completion of
    // a conversation consumes the Nth applicable rule.
    const ScriptRule* chosen = nullptr;
    std::size_t position = 0;
    for (const auto& rule : rules_) {
        if (!rule_applies(rule, last_user_message)) continue;
        if (position == prior_replies || (rule.repeat && position <= prior_replies)) {
            chosen = &rule;
            break;
        }
        ++position;
    }
    if (chosen == nullptr) {
        throw ScriptError("script exhausted: no rule left for reply #" +
                          std::to_string(prior_replies + 1) + " to \"" +
                          truncate_utf8(last_user_message, 80) + "\"");
    }

    ChatResponse response;
    response.message.role = Role::assistant;
    if (!chosen->reply_tool_calls.empty()) {
        response.message.tool_calls = chosen->reply_tool_calls;
        for (std::size_t i = 0; i < response.message.tool_calls.size(); ++i) {
            response.message.tool_calls[i].call_id = "call_" + std::to_string(i + 1);
        }
        response.finish = ChatResponse::Finish::tool_calls;
    } else {
        response.message.content = chosen->reply_text;
        response.finish = ChatResponse::Finish::answer;
    }

    std::string prompt_text = render_request_text(messages, tool_schemas);
    // completion counts the reply payload only, not the canonical role prefix
    std::string completion_text = response.message.content;
    for (const auto& call : response.message.tool_calls) {
        render_tool_call(call, completion_text);
    }
    response.usage.prompt_tokens = scripted_token_count(prompt_text);
    response.usage.completion_tokens = scripted_token_count(completion_text);
    return response;
}

// -- live backend --------------------------------------------------------------

HttpGateway::HttpGateway(HttpGatewayConfig config) : config_(std::move(config)) {
    if (config_.base_url.empty()) {
        throw ValidationError("http gateway requires a base_url");
    }
    if (config_.model.empty()) {
        throw ValidationError("http gateway requires a model name");
    }
}

HttpGateway::~HttpGateway() = default;

} // namespace jsplit

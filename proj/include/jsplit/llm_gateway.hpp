#pragma once

#include "jsplit/mcp_types.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace jsplit {

enum class Role { system, user, assistant, tool };

const char* to_string(Role role) noexcept;
Role role_from(std::string_view s);

/// A tool invocation requested by the model, already resolved to a
/// (server, tool) pair.
struct ToolCallRequest {
    std::string call_id;
    std::string server_id;
    std::string tool_name;
    nlohmann::json arguments = nlohmann::json::object();

    bool operator==(const ToolCallRequest&) const = default;
};

struct ChatMessage {
    Role role = Role::user;
    std::string content;
    std::vector<ToolCallRequest> tool_calls; // assistant messages only
    std::string tool_call_id;                // required when role == tool

    static ChatMessage system(std::string text);
    static ChatMessage user(std::string text);
    static ChatMessage assistant(std::string text);
    static ChatMessage tool_result(std::string call_id, std::string text);

    bool operator==(const ChatMessage&) const = default;
};

struct TokenUsage {
    std::int64_t prompt_tokens = 0;
    std::int64_t completion_tokens = 0;

    std::int64_t total() const noexcept { return prompt_tokens + completion_tokens; }
    bool operator==(const TokenUsage&) const = default;
};

/// Componentwise sum; throws CapacityError on overflow.
TokenUsage accumulate(TokenUsage a, TokenUsage b);

/// Currency in integer picodollars (1e-12 USD), so cost arithmetic is exact.
struct Money {
    std::int64_t picos = 0;

    friend Money operator+(Money a, Money b) { return Money{a.picos + b.picos}; }
    Money& operator+=(Money other) { picos += other.picos; return *this; }
    auto operator<=>(const Money&) const = default;

    double dollars() const noexcept { return static_cast<double>(picos) / 1e12; }
};

/// "0.0042" style decimal rendering, trailing zeros trimmed; exact.
std::string format_money(Money amount);

/// Prices are configuration. Amounts are per one million tokens; they must
/// carry at most six decimal places so the per-token price stays integral.
struct PriceTable {
    Money input_price_per_million;
    Money output_price_per_million;
    std::string model_name;

    static PriceTable per_million(double input_dollars, double output_dollars,
                                  std::string model_name = {});

    Money input_per_token() const noexcept {
        return Money{input_price_per_million.picos / 1'000'000};
    }
    Money output_per_token() const noexcept {
        return Money{output_price_per_million.picos / 1'000'000};
    }
};

/// usage x prices, exactly: linear over accumulate().
Money cost_of(TokenUsage usage, const PriceTable& prices);

struct ChatResponse {
    enum class Finish { answer, tool_calls, truncated };

    ChatMessage message;
    TokenUsage usage;
    Finish finish = Finish::answer;
};

const char* to_string(ChatResponse::Finish finish) noexcept;

struct DecodingParams {
    double temperature = 0.0;
    std::optional<int> max_completion_tokens;
};

/// A tool schema offered to the model, tagged with the server it belongs to.
struct ToolSchemaEntry {
    std::string server_id;
    ToolSpec tool;

    bool operator==(const ToolSchemaEntry&) const = default;
};

/// Uniform chat-completion interface. Implementations must be safe to share
/// across threads: every complete() call is independent.
class LlmGateway {
public:
    virtual ~LlmGateway() = default;

    /// `messages` must be non-empty. Returns the assistant reply plus the
    /// backend-reported usage.
    virtual ChatResponse complete(std::span<const ChatMessage> messages,
                                  std::span<const ToolSchemaEntry> tool_schemas,
                                  const DecodingParams& params = {}) = 0;

    virtual std::string backend_name() const = 0;
};

/// Canonical text a request is worth, used by the scripted token rule and by
/// context-size accounting. Pure function of (messages, schemas).
std::string render_request_text(std::span<const ChatMessage> messages,
                                std::span<const ToolSchemaEntry> tool_schemas);

/// Scripted token rule: ceil(characters / 4).
std::int64_t scripted_token_count(std::string_view text) noexcept;

// -- scripted backend -------------------------------------------------------

/// One scripted behavior. A rule applies when `match` is a substring of the
/// last user message (or `match_regex` matches it, or `fallback` is set).
/// Within a conversation the Nth completion consumes the Nth applicable rule,
/// keyed purely off the messages themselves, so the backend stays stateless.
struct ScriptRule {
    std::string match;                      // substring; empty matches everything
    std::optional<std::string> match_regex; // ECMAScript, search semantics
    bool fallback = false;
    bool repeat = false; // this rule also answers every later turn it reaches

    std::string reply_text;
    std::vector<ToolCallRequest> reply_tool_calls; // call_ids assigned at reply time
};

class ScriptedGateway final : public LlmGateway {
public:
    explicit ScriptedGateway(std::vector<ScriptRule> rules);

    static ScriptedGateway from_json(const nlohmann::json& doc);
    static ScriptedGateway from_file(const std::string& path);

    ChatResponse complete(std::span<const ChatMessage> messages,
                          std::span<const ToolSchemaEntry> tool_schemas,
                          const DecodingParams& params = {}) override;

    std::string backend_name() const override { return "scripted"; }

    const std::vector<ScriptRule>& rules() const noexcept { return rules_; }

private:
    std::vector<ScriptRule> rules_;
};

// -- live backend -----------------------------------------------------------

struct HttpGatewayConfig {
    std::string base_url;                      // e.g. "https://api.openai.com"
    std::string path = "/v1/chat/completions"; // OpenAI-compatible endpoint
    std::string model;
    std::string api_key;       // resolved from the environment by the caller
    int max_retries = 2;       // on retryable transport errors
    int timeout_seconds = 120;
    int backoff_initial_ms = 500;
};

/// OpenAI-compatible chat-completions client with native tool calling.
class HttpGateway final : public LlmGateway {
public:
    explicit HttpGateway(HttpGatewayConfig config);
    ~HttpGateway() override;

    ChatResponse complete(std::span<const ChatMessage> messages,
                          std::span<const ToolSchemaEntry> tool_schemas,
                          const DecodingParams& params = {}) override;

    std::string backend_name() const override { return "http:" + config_.model; }

private:
    HttpGatewayConfig config_;
};

} // namespace jsplit

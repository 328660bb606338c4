#include "jsplit/errors.hpp"
#include "jsplit/llm_gateway.hpp"
#include "jsplit/net_guard.hpp"
#include "jsplit/openai_wire.hpp"

#include <httplib.h>

#include <chrono>
#include <memory>
#include <thread>

namespace jsplit {

using nlohmann::json;

namespace {

bool is_retryable_status(int status) {
    return status == 429 || (status >= 500 && status < 600);
}

} // namespace

ChatResponse HttpGateway::complete(std::span<const ChatMessage> messages,
                                   std::span<const ToolSchemaEntry> tool_schemas,
                                   const DecodingParams& params) {
    if (messages.empty()) {
        throw ValidationError("complete() requires at least one message");
    }
    require_network_allowed("llm gateway");

    openai_wire::ToolNameMap names = openai_wire::build_tool_name_map(tool_schemas);
    json body =
        openai_wire::request_body(config_.model, messages, tool_schemas, params, names);
    std::string payload = body.dump();

    httplib::Headers headers;
    if (!config_.api_key.empty()) {
        headers.emplace("Authorization", "Bearer " + config_.api_key);
    }

    int attempts = config_.max_retries + 1;
    int backoff_ms = config_.backoff_initial_ms;
    std::string last_failure;
    for (int attempt = 0; attempt < attempts; ++attempt) {
        if (attempt > 0) {
            std::this_thread::sleep_for(std::chrono::milliseconds(backoff_ms));
            backoff_ms *= 2;
        }
        httplib::Client client(config_.base_url);
        client.set_connection_timeout(config_.timeout_seconds, 0);
        client.set_read_timeout(config_.timeout_seconds, 0);
        client.set_follow_location(true);

        auto res = client.Post(config_.path, headers, payload, "application/json");
        if (!res) {
            last_failure = "transport failure: " + httplib::to_string(res.error());
            continue; // retryable
        }
        if (is_retryable_status(res->status)) {
            last_failure = "backend returned HTTP " + std::to_string(res->status);
            continue;
        }
        if (res->status != 200) {
            throw GatewayError("backend returned HTTP " + std::to_string(res->status) +
                                   ": " + res->body.substr(0, 500),
                               false);
        }
        json parsed;
        try {
            parsed = json::parse(res->body);
        } catch (const json::parse_error& e) {
            throw GatewayError(std::string("backend response is not JSON: ") + e.what(),
                               false);
        }
        return openai_wire::parse_response(parsed, names);
    }
    throw GatewayError("gave up after " + std::to_string(attempts) +
                           " attempts; last: " + last_failure,
                       true);
}

} // namespace jsplit

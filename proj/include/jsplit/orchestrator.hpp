#pragma once

#include "jsplit/catalog.hpp"
#include "jsplit/llm_gateway.hpp"
#include "jsplit/mcp_transport.hpp"
#include "jsplit/resolver.hpp"

#include <optional>
#include <string>
#include <vector>

namespace jsplit {

struct LoopConfig {
    int max_iterations = 5;
    bool allow_tool_calls = true;
    ResolverMode resolver_mode = ResolverMode::taxonomy;

    void validate() const; // max_iterations >= 1
};

enum class Terminal { answered, iteration_cap, error };

const char* to_string(Terminal terminal) noexcept;

/// Tool results are cut to this many characters before they re-enter the
/// conversation, bounding context growth.
inline constexpr std::size_t kToolResultTruncation = 4000;

struct ToolInvocation {
    std::string server_id;
    std::string tool_name;
    nlohmann::json arguments;
    std::string result_summary;
    bool is_error = false;
    /// True when the call reached a live connection (and thus its call log);
    /// false for refusals such as catalog-only servers.
    bool dispatched = false;
};

struct RunResult {
    enum class ErrorKind { none, resolver, gateway };

    std::optional<std::string> answer;
    std::vector<ToolInvocation> tool_invocations;
    std::vector<std::string> servers_selected;
    TokenUsage resolution_usage;
    TokenUsage loop_usage;
    int iterations = 0;
    Terminal terminal = Terminal::error;

    // carried for the eval harness and for debugging
    std::optional<std::string> chosen_category;
    std::vector<StepRecord> resolution_diagnostics;
    std::vector<mcp::CallLogEntry> transport_log;
    std::vector<ChatMessage> transcript;
    std::string error;
    ErrorKind error_kind = ErrorKind::none;
};

/// Deterministic initial context: tool-calling rules plus one line per
/// selected server, then the user query. Context size is a pure function of
/// (query, selected); tool schemas ride alongside via tool_schemas_for().
std::vector<ChatMessage> build_context(const std::string& query,
                                       const std::vector<McpServerEntry>& selected);

std::vector<ToolSchemaEntry> tool_schemas_for(const std::vector<McpServerEntry>& selected);

/// Byte size of the canonical request rendering for (query, selected):
/// monotone under selection growth.
std::size_t context_bytes(const std::string& query,
                          const std::vector<McpServerEntry>& selected);

struct RunEnv {
    LlmGateway& gateway;
    const mcp::TransportFactory& transports;
    PromptTemplates templates = PromptTemplates::bundled();
};

/// The call loop: resolve, build context, then alternate model turns and tool
/// dispatches until an answer or the iteration cap. Resolution and loop token
/// usage are accounted separately and never double-counted.
RunResult run_query(const std::string& query, const Catalog& pool, const Taxonomy& taxonomy,
                    RunEnv& env, const LoopConfig& loop_config,
                    const ResolverConfig& resolver_config);

/// Line-delimited JSON transcript: resolution steps, messages, tool calls,
/// usage. Stable across runs with a scripted gateway.
std::string export_transcript(const RunResult& result);

} // namespace jsplit

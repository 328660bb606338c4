#include "jsplit/orchestrator.hpp"

#include "jsplit/util.hpp"

#include <map>

namespace jsplit {

using nlohmann::json;

void LoopConfig::validate() const {
    if (max_iterations < 1) {
        throw ValidationError("loop max_iterations must be >= 1");
    }
}

const char* to_string(Terminal terminal) noexcept {
    switch (terminal) {
    case Terminal::answered: return "answered";
    case Terminal::iteration_cap: return "iteration_cap";
    case Terminal::error: return "error";
    }
    return "error";
}

std::vector<ChatMessage> build_context(const std::string& query,
                                       const std::vector<McpServerEntry>& selected) {
    std::string system_text =
        "You are a tool-using assistant. Call the provided tools to gather what the "
        "request needs; a tool belongs to the server named in its schema. When no tool "
        "call is needed, reply with the final answer as plain text.\n";
    if (selected.empty()) {
        system_text += "No tool servers are available for this request.\n";
    } else {
        system_text += "Available servers:\n";
        for (const auto& entry : selected) {
            system_text += "- ";
            system_text += entry.server_id;
            system_text += ": ";
            system_text += entry.name;
            system_text += '\n';
        }
    }
    return {ChatMessage::system(std::move(system_text)), ChatMessage::user(query)};
}

std::vector<ToolSchemaEntry> tool_schemas_for(const std::vector<McpServerEntry>& selected) {
    std::vector<ToolSchemaEntry> schemas;
    for (const auto& entry : selected) {
        for (const auto& tool : entry.tools) {
            schemas.push_back(ToolSchemaEntry{entry.server_id, tool});
        }
    }
    return schemas;
}

std::size_t context_bytes(const std::string& query,
                          const std::vector<McpServerEntry>& selected) {
    std::vector<ChatMessage> messages = build_context(query, selected);
    std::vector<ToolSchemaEntry> schemas = tool_schemas_for(selected);
    return render_request_text(messages, schemas).size();
}

RunResult run_query(const std::string& query, const Catalog& pool, const Taxonomy& taxonomy,
                    RunEnv& env, const LoopConfig& loop_config,
                    const ResolverConfig& resolver_config) {
    loop_config.validate();
    resolver_config.validate();
    if (pool.empty()) {
        throw ValidationError("run_query requires a non-empty server pool");
    }

    RunResult result;

    // resolution phase
    ResolutionResult resolution;
    try {
        resolution = resolve(loop_config.resolver_mode, query, pool, taxonomy, env.gateway,
                             resolver_config, env.templates);
    } catch (const ClassificationFailedError& e) {
        result.terminal = Terminal::error;
        result.error = e.what();
        result.error_kind = RunResult::ErrorKind::resolver;
        result.resolution_usage = e.usage_spent();
        for (const auto& raw : e.raw_outputs()) {
            StepRecord record;
            record.step = "classify";
            record.raw_output = raw;
            result.resolution_diagnostics.push_back(std::move(record));
        }
        return result;
    } catch (const NoCandidatesError& e) {
        result.terminal = Terminal::error;
        result.error = e.what();
        result.error_kind = RunResult::ErrorKind::resolver;
        return result;
    }
    result.resolution_usage = resolution.usage;
    result.chosen_category = resolution.chosen_category;
    result.resolution_diagnostics = resolution.diagnostics;
    for (const auto& entry : resolution.selected) {
        result.servers_selected.push_back(entry.server_id);
    }

    // conversation setup; schemas cover the selected servers only
    std::vector<ChatMessage> messages = build_context(query, resolution.selected);
    std::vector<ToolSchemaEntry> schemas =
        loop_config.allow_tool_calls ? tool_schemas_for(resolution.selected)
                                     : std::vector<ToolSchemaEntry>{};

    std::map<std::string, std::unique_ptr<mcp::Connection>> connections;
    auto connection_for = [&](const McpServerEntry& entry) -> mcp::Connection* {
        auto it = connections.find(entry.server_id);
        if (it != connections.end()) {
            return it->second.get();
        }
        auto conn = env.transports.connect(*entry.endpoint, entry.server_id);
        return connections.emplace(entry.server_id, std::move(conn)).first->second.get();
    };

    auto finish = [&](Terminal terminal) {
        result.terminal = terminal;
        for (auto& [server_id, conn] : connections) {
            for (const auto& entry : conn->call_log()) {
                result.transport_log.push_back(entry);
            }
        }
        result.transcript = std::move(messages);
        return result;
    };

    for (int iteration = 1; iteration <= loop_config.max_iterations; ++iteration) {
        result.iterations = iteration;
        ChatResponse response;
        try {
            response = env.gateway.complete(messages, schemas);
        } catch (const Error& e) {
            result.error = e.what();
            result.error_kind = RunResult::ErrorKind::gateway;
            return finish(Terminal::error);
        }
        result.loop_usage = accumulate(result.loop_usage, response.usage);
        messages.push_back(response.message);

        if (response.finish != ChatResponse::Finish::tool_calls) {
            result.answer = response.message.content;
            return finish(Terminal::answered);
        }

        // dispatch sequentially in declared order
        for (const auto& call : response.message.tool_calls) {
            ToolInvocation invocation;
            invocation.server_id = call.server_id;
            invocation.tool_name = call.tool_name;
            invocation.arguments = call.arguments;

            std::string result_text;
            const McpServerEntry* entry = pool.find(call.server_id);
            if (!loop_config.allow_tool_calls) {
                invocation.is_error = true;
                result_text = "error: tool calls are disabled for this run";
            } else if (entry == nullptr) {
                invocation.is_error = true;
                result_text = "error: unknown server '" + call.server_id + "'";
            } else if (!entry->endpoint.has_value()) {
                invocation.is_error = true;
                result_text =
                    "error: server '" + call.server_id + "' is catalog-only (no endpoint)";
            } else {
                try {
                    mcp::Connection* conn = connection_for(*entry);
                    ToolResult tool_result = conn->call_tool(call.tool_name, call.arguments);
                    invocation.dispatched = true;
                    invocation.is_error = tool_result.is_error;
                    result_text = tool_result.text();
                } catch (const Error& e) {
                    // the attempt may still have reached the wire; keep the log
                    auto it = connections.find(call.server_id);
                    invocation.dispatched =
                        it != connections.end() && !it->second->call_log().empty();
                    invocation.is_error = true;
                    result_text = std::string("error: ") + e.what();
                }
            }
            result_text = truncate_utf8(result_text, kToolResultTruncation);
            invocation.result_summary = result_text;
            result.tool_invocations.push_back(invocation);
            messages.push_back(ChatMessage::tool_result(call.call_id, result_text));
        }
    }
    return finish(Terminal::iteration_cap);
}

std::string export_transcript(const RunResult& result) {
    std::string out;
    auto emit = [&](json line) {
        out += line.dump();
        out += '\n';
    };
    for (const auto& step : result.resolution_diagnostics) {
        emit(json{{"type", "resolution_step"},
                  {"step", step.step},
                  {"prompt_chars", step.prompt_chars},
                  {"raw_output", step.raw_output},
                  {"template_hash", step.template_hash},
                  {"used_fallback", step.used_fallback},
                  {"note", step.note}});
    }
    emit(json{{"type", "selection"},
              {"servers", result.servers_selected},
              {"chosen_category",
               result.chosen_category ? json(*result.chosen_category) : json{}}});
    for (const auto& message : result.transcript) {
        json calls = json::array();
        for (const auto& call : message.tool_calls) {
            calls.push_back({{"call_id", call.call_id},
                             {"server_id", call.server_id},
                             {"tool_name", call.tool_name},
                             {"arguments", call.arguments}});
        }
        json line{{"type", "message"},
                  {"role", to_string(message.role)},
                  {"content", message.content}};
        if (!calls.empty()) line["tool_calls"] = calls;
        if (!message.tool_call_id.empty()) line["tool_call_id"] = message.tool_call_id;
        emit(line);
    }
    for (const auto& invocation : result.tool_invocations) {
        emit(json{{"type", "tool_invocation"},
                  {"server_id", invocation.server_id},
                  {"tool_name", invocation.tool_name},
                  {"arguments", invocation.arguments},
                  {"result_summary", invocation.result_summary},
                  {"is_error", invocation.is_error},
                  {"dispatched", invocation.dispatched}});
    }
    emit(json{{"type", "usage"},
              {"resolution",
               {{"prompt_tokens", result.resolution_usage.prompt_tokens},
                {"completion_tokens", result.resolution_usage.completion_tokens}}},
              {"loop",
               {{"prompt_tokens", result.loop_usage.prompt_tokens},
                {"completion_tokens", result.loop_usage.completion_tokens}}},
              {"iterations", result.iterations},
              {"terminal", to_string(result.terminal)},
              {"answer", result.answer ? json(*result.answer) : json{}}});
    return out;
}

} // namespace jsplit

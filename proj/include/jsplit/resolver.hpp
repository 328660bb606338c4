#pragma once

#include "jsplit/catalog.hpp"
#include "jsplit/errors.hpp"
#include "jsplit/llm_gateway.hpp"
#include "jsplit/taxonomy.hpp"

#include <optional>
#include <set>
#include <string>
#include <vector>

namespace jsplit {

enum class ResolverMode { taxonomy, passthrough };

const char* to_string(ResolverMode mode) noexcept;
ResolverMode resolver_mode_from(std::string_view s);

struct ResolverConfig {
    int top_k = 3;
    std::size_t summary_truncation = 300;
    bool include_secondary = false;
    int classification_retries = 1;

    void validate() const; // top_k >= 1, summary_truncation >= 32
};

/// One resolver step for diagnostics: prompt sizes, raw model output, which
/// template produced it.
struct StepRecord {
    std::string step;
    std::size_t prompt_chars = 0;
    std::string raw_output;
    std::string template_hash;
    bool used_fallback = false;
    std::string note;
};

struct ResolutionResult {
    std::vector<McpServerEntry> selected;
    std::optional<std::string> chosen_category;
    TokenUsage usage;
    ResolverMode mode = ResolverMode::taxonomy;
    std::vector<StepRecord> diagnostics;
};

/// Classification never produced a usable category id. Carries the raw model
/// outputs and the tokens spent so callers can still account for the cost.
class ClassificationFailedError : public Error {
public:
    ClassificationFailedError(const std::string& what, std::vector<std::string> raw_outputs,
                              TokenUsage usage_spent)
        : Error(what), raw_outputs_(std::move(raw_outputs)), usage_spent_(usage_spent) {}

    const std::vector<std::string>& raw_outputs() const noexcept { return raw_outputs_; }
    TokenUsage usage_spent() const noexcept { return usage_spent_; }

private:
    std::vector<std::string> raw_outputs_;
    TokenUsage usage_spent_;
};

/// Prompt templates are fixed artifacts; diagnostics reference them by hash.
/// Placeholders: {taxonomy_tree}, {query}, {candidates}, {top_k}.
struct PromptTemplates {
    std::string classify;
    std::string classify_retry;
    std::string rank;

    static PromptTemplates bundled();
    /// Load classify.txt / classify_retry.txt / rank.txt from a directory.
    static PromptTemplates load_dir(const std::string& dir);
};

std::string fill_template(std::string_view template_text,
                          const std::vector<std::pair<std::string, std::string>>& values);

/// Scan a reply for standalone dotted tokens that are valid ids; deepest id
/// wins, ties broken by first occurrence.
std::optional<std::string> parse_category_reply(std::string_view reply,
                                                const std::set<std::string>& valid_ids);

/// Extract candidate indices from a ranking reply: integers in order of
/// appearance, out-of-range and duplicates dropped, truncated to top_k.
/// 1-based on the wire, 0-based in the result.
std::vector<std::size_t> parse_ranking_reply(std::string_view reply,
                                             std::size_t candidate_count,
                                             std::size_t top_k);

/// Two-phase resolution: classify the query into the populated taxonomy, then
/// select the top-k servers of that category (LLM-ranked when more than one).
ResolutionResult resolve_taxonomy(const std::string& query, const Catalog& pool,
                                  const Taxonomy& taxonomy, LlmGateway& gateway,
                                  const ResolverConfig& config,
                                  const PromptTemplates& templates);

/// Baseline: every pool server, catalog order, zero resolution usage.
ResolutionResult resolve_passthrough(const std::string& query, const Catalog& pool);

ResolutionResult resolve(ResolverMode mode, const std::string& query, const Catalog& pool,
                         const Taxonomy& taxonomy, LlmGateway& gateway,
                         const ResolverConfig& config, const PromptTemplates& templates);

} // namespace jsplit

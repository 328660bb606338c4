#include "jsplit/resolver.hpp"

#include "jsplit/util.hpp"

#include <algorithm>
#include <unordered_set>

namespace jsplit {

const char* to_string(ResolverMode mode) noexcept {
    return mode == ResolverMode::taxonomy ? "taxonomy" : "passthrough";
}

ResolverMode resolver_mode_from(std::string_view s) {
    if (s == "taxonomy") return ResolverMode::taxonomy;
    if (s == "passthrough") return ResolverMode::passthrough;
    throw ParseError("unknown resolver mode: '" + std::string(s) + "'");
}

void ResolverConfig::validate() const {
    if (top_k < 1) {
        throw ValidationError("resolver top_k must be >= 1");
    }
    if (summary_truncation < 32) {
        throw ValidationError("resolver summary_truncation must be >= 32");
    }
    if (classification_retries < 0) {
        throw ValidationError("resolver classification_retries must be >= 0");
    }
}

// -- templates ----------------------------------------------------------------

namespace {

constexpr const char* kClassifyTemplate =
    "You route user requests to the single best category of tool servers.\n"
    "The available categories are listed below as a tree. Each line shows:\n"
    "id name \xE2\x80\x94 definition\n"
    "\n"
    "{taxonomy_tree}\n"
    "Query: {query}\n"
    "\n"
    "Choose the most specific leaf-level category for the input query.\n"
    "Reply with the chosen category id and nothing else (for example: 4.2.1).\n";

constexpr const char* kClassifyRetryTemplate =
    "Pick exactly one category id from this tree for the query below.\n"
    "\n"
    "{taxonomy_tree}\n"
    "Query: {query}\n"
    "\n"
    "Reply with the id only.\n";

constexpr const char* kRankTemplate =
    "You pick the best tool servers for a user request.\n"
    "Candidate servers:\n"
    "{candidates}\n"
    "Query: {query}\n"
    "\n"
    "Reply with a comma-separated list of indices for the top {top_k} candidates,\n"
    "best first (for example: 2, 5, 1). Reply with the indices only.\n";

} // namespace

PromptTemplates PromptTemplates::bundled() {
    return PromptTemplates{kClassifyTemplate, kClassifyRetryTemplate, kRankTemplate};
}

PromptTemplates PromptTemplates::load_dir(const std::string& dir) {
    PromptTemplates templates;
    templates.classify = read_file(dir + "/classify.txt");
    templates.classify_retry = read_file(dir + "/classify_retry.txt");
    templates.rank = read_file(dir + "/rank.txt");
    return templates;
}

std::string fill_template(std::string_view template_text,
                          const std::vector<std::pair<std::string, std::string>>& values) {
    std::string out(template_text);
    for (const auto& [key, value] : values) {
        std::string placeholder = "{" + key + "}";
        std::size_t pos = 0;
        while ((pos = out.find(placeholder, pos)) != std::string::npos) {
            out.replace(pos, placeholder.size(), value);
            pos += value.size();
        }
    }
    return out;
}

// -- reply parsing ---------------------------------------------------------------

std::optional<std::string> parse_category_reply(std::string_view reply,
                                                const std::set<std::string>& valid_ids) {
    std::optional<std::string> best;
    std::size_t best_depth = 0;
    std::size_t i = 0;
    auto is_token_char = [](char c) { return (c >= '0' && c <= '9') || c == '.'; };
    while (i < reply.size()) {
        if (!is_token_char(reply[i])) {
            ++i;
            continue;
        }
        std::size_t start = i;
        while (i < reply.size() && is_token_char(reply[i])) ++i;
        std::string_view token = reply.substr(start, i - start);
        // standalone dotted token, stripped of adjoining punctuation dots
        while (!token.empty() && token.front() == '.') token.remove_prefix(1);
        while (!token.empty() && token.back() == '.') token.remove_suffix(1);
        if (token.empty()) continue;
        std::string candidate(token);
        if (valid_ids.count(candidate) == 0) continue;
        std::size_t depth =
            1 + static_cast<std::size_t>(std::count(candidate.begin(), candidate.end(), '.'));
        if (depth > best_depth) { // ties keep the earlier occurrence
            best = std::move(candidate);
            best_depth = depth;
        }
    }
    return best;
}

std::vector<std::size_t> parse_ranking_reply(std::string_view reply,
                                             std::size_t candidate_count,
                                             std::size_t top_k) {
    std::vector<std::size_t> indices;
    std::unordered_set<std::size_t> seen;
    std::size_t i = 0;
    while (i < reply.size() && indices.size() < top_k) {
        if (reply[i] < '0' || reply[i] > '9') {
            ++i;
            continue;
        }
        std::size_t start = i;
        while (i < reply.size() && reply[i] >= '0' && reply[i] <= '9') ++i;
        std::string_view digits = reply.substr(start, i - start);
        if (digits.size() > 9) continue; // cannot be a candidate index
        std::size_t value = 0;
        for (char c : digits) value = value * 10 + static_cast<std::size_t>(c - '0');
        if (value < 1 || value > candidate_count) continue;
        if (!seen.insert(value).second) continue;
        indices.push_back(value - 1);
    }
    return indices;
}

// -- resolution --------------------------------------------------------------------

namespace {

ChatResponse single_prompt(LlmGateway& gateway, const std::string& prompt) {
    ChatMessage message = ChatMessage::user(prompt);
    return gateway.complete(std::span(&message, 1), {});
}

std::string enumerate_candidates(const std::vector<McpServerEntry>& candidates,
                                 std::size_t summary_truncation) {
    std::string out;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        out += std::to_string(i + 1);
        out += ". ";
        out += candidates[i].name;
        out += " \xE2\x80\x94 ";
        out += truncate_utf8(candidates[i].description, summary_truncation);
        out += '\n';
    }
    return out;
}

} // namespace

ResolutionResult resolve_taxonomy(const std::string& query, const Catalog& pool,
                                  const Taxonomy& taxonomy, LlmGateway& gateway,
                                  const ResolverConfig& config,
                                  const PromptTemplates& templates) {
    config.validate();
    if (pool.empty()) {
        throw NoCandidatesError("server pool is empty");
    }

    ResolutionResult result;
    result.mode = ResolverMode::taxonomy;

    // (1) which categories actually have servers
    BindResult bound = bind_taxonomy(pool, taxonomy, config.include_secondary);
    if (!bound.unknown.empty()) {
        StepRecord record;
        record.step = "bind";
        record.note = "categories not in taxonomy:";
        for (const auto& id : bound.unknown) {
            record.note += ' ';
            record.note += id;
        }
        result.diagnostics.push_back(std::move(record));
    }
    if (bound.populated.empty()) {
        throw NoCandidatesError("no taxonomy category has an associated server");
    }

    // (2) prune the taxonomy to populated branches
    Taxonomy pruned = filter_to_populated(taxonomy, bound.populated);
    std::string tree = render_tree(pruned);
    std::vector<std::string> pruned_ids = all_ids(pruned);
    std::set<std::string> valid_ids(pruned_ids.begin(), pruned_ids.end());

    // (3)-(4) classification, with bounded re-asks
    std::optional<std::string> chosen;
    std::vector<std::string> raw_outputs;
    for (int attempt = 0; attempt <= config.classification_retries; ++attempt) {
        const std::string& template_text =
            attempt == 0 ? templates.classify : templates.classify_retry;
        std::string prompt =
            fill_template(template_text, {{"taxonomy_tree", tree}, {"query", query}});
        ChatResponse response = single_prompt(gateway, prompt);
        result.usage = accumulate(result.usage, response.usage);
        raw_outputs.push_back(response.message.content);

        StepRecord record;
        record.step = attempt == 0 ? "classify" : "classify_retry";
        record.prompt_chars = prompt.size();
        record.raw_output = response.message.content;
        record.template_hash = content_hash(template_text);
        result.diagnostics.push_back(std::move(record));

        chosen = parse_category_reply(response.message.content, valid_ids);
        if (chosen) break;
    }
    if (!chosen) {
        throw ClassificationFailedError(
            "no valid taxonomy id in " + std::to_string(raw_outputs.size()) +
                " classification replies",
            raw_outputs, result.usage);
    }
    result.chosen_category = chosen;

    // (5) candidates of the chosen category (non-leaf ids expand to their leaves)
    std::vector<McpServerEntry> candidates =
        servers_in(pool, descendant_leaves(pruned, *chosen));
    if (candidates.empty()) {
        throw NoCandidatesError("category '" + *chosen + "' has no selectable server");
    }

    // (6) single candidate: no ranking call
    if (candidates.size() == 1) {
        StepRecord record;
        record.step = "select";
        record.note = "single candidate, selected directly";
        result.diagnostics.push_back(std::move(record));
        result.selected = std::move(candidates);
        return result;
    }

    // (7)-(8) LLM ranking over the candidate summaries
    std::string prompt = fill_template(
        templates.rank, {{"candidates",
                          enumerate_candidates(candidates, config.summary_truncation)},
                         {"query", query},
                         {"top_k", std::to_string(config.top_k)}});
    ChatResponse response = single_prompt(gateway, prompt);
    result.usage = accumulate(result.usage, response.usage);

    StepRecord record;
    record.step = "rank";
    record.prompt_chars = prompt.size();
    record.raw_output = response.message.content;
    record.template_hash = content_hash(templates.rank);

    std::vector<std::size_t> order =
        parse_ranking_reply(response.message.content, candidates.size(),
                            static_cast<std::size_t>(config.top_k));
    if (order.empty()) {
        // unparseable ranking: fall back to catalog order
        record.used_fallback = true;
        record.note = "ranking reply unparseable, selected first candidates in order";
        for (std::size_t i = 0;
             i < candidates.size() && i < static_cast<std::size_t>(config.top_k); ++i) {
            order.push_back(i);
        }
    }
    result.diagnostics.push_back(std::move(record));
    for (std::size_t index : order) {
        result.selected.push_back(candidates[index]);
    }
    return result;
}

ResolutionResult resolve_passthrough(const std::string& query, const Catalog& pool) {
    (void)query;
    ResolutionResult result;
    result.mode = ResolverMode::passthrough;
    result.selected = pool.entries();
    StepRecord record;
    record.step = "passthrough";
    record.note = "no filtering applied";
    result.diagnostics.push_back(std::move(record));
    return result;
}

ResolutionResult resolve(ResolverMode mode, const std::string& query, const Catalog& pool,
                         const Taxonomy& taxonomy, LlmGateway& gateway,
                         const ResolverConfig& config, const PromptTemplates& templates) {
    if (mode == ResolverMode::passthrough) {
        return resolve_passthrough(query, pool);
    }
    return resolve_taxonomy(query, pool, taxonomy, gateway, config, templates);
}

} // namespace jsplit

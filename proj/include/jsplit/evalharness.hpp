#pragma once

#include "jsplit/catalog.hpp"
#include "jsplit/llm_gateway.hpp"
#include "jsplit/orchestrator.hpp"
#include "jsplit/resolver.hpp"
#include "jsplit/taxonomy.hpp"

#include <cstdint>
#include <istream>
#include <optional>
#include <string>
#include <vector>

namespace jsplit::eval {

/// One benchmark query with its ground truth.
struct QueryCase {
    std::string case_id;
    std::string query;
    std::string target_server_id;
    std::string target_category;
};

std::vector<QueryCase> load_query_dataset(std::istream& in);
std::vector<QueryCase> load_query_dataset_file(const std::string& path);

/// Dataset/catalog cross-checks; returns human-readable violations, empty
/// when consistent.
std::vector<std::string> validate_cases(const std::vector<QueryCase>& cases,
                                        const Catalog& catalog, const Taxonomy& taxonomy);

enum class DecisionBasis { tool_call, judged_answer, failure };

const char* to_string(DecisionBasis basis) noexcept;

struct EvalRecord {
    std::string case_id;
    std::size_t noise_count = 0;
    ResolverMode mode = ResolverMode::taxonomy;
    bool correct = false;
    DecisionBasis decision_basis = DecisionBasis::failure;
    std::optional<std::string> predicted_category;
    std::string target_category;
    TokenUsage resolution_usage;
    TokenUsage loop_usage;
    Money cost;
    std::uint64_t seed = 0;
    std::size_t pool_size = 0; // noise_count + 1, reported alongside
    std::string note;
};

/// Grades a direct textual answer when no tool was called.
struct JudgeConfig {
    LlmGateway* gateway = nullptr;
    std::string template_text; // placeholders {query} {answer} {target} {target_description}

    static std::string bundled_template();
};

/// Correctness per the needle-in-a-haystack rule: a run is correct iff the
/// transport call log shows any tool call on the target server. Direct
/// answers go to the judge when one is configured; otherwise they fail.
std::pair<bool, DecisionBasis> score_case(const RunResult& result, const QueryCase& query_case,
                                          const McpServerEntry* target_entry,
                                          const JudgeConfig* judge);

struct SweepConfig {
    std::vector<std::size_t> noise_levels;
    std::vector<ResolverMode> modes;
    std::uint64_t master_seed = 0;
    int jobs = 1;
    LoopConfig loop;
    ResolverConfig resolver;
    PriceTable prices;
};

/// Run every (case, noise level, mode) cell: embed the target in sampled
/// noise, run the loop, score, and emit one record. Record order is stable by
/// (case_id, level, mode) regardless of worker scheduling; per-cell seeds are
/// derived from (master_seed, case_id, level) so both modes share a pool.
std::vector<EvalRecord> run_sweep(const std::vector<QueryCase>& cases,
                                  const Catalog& catalog, const Taxonomy& taxonomy,
                                  RunEnv& env, const SweepConfig& config,
                                  const JudgeConfig* judge = nullptr);

struct AccuracyRow {
    ResolverMode mode;
    std::size_t noise_count;
    double accuracy;
    std::size_t n;
};

struct CostRow {
    ResolverMode mode;
    std::size_t noise_count;
    Money total_input_cost;
    std::size_t n;
};

/// Mean correctness per (mode, noise level); empty groups are omitted.
std::vector<AccuracyRow> accuracy_curve(const std::vector<EvalRecord>& records);

/// Input-token cost per (mode, noise level): prompt tokens only.
std::vector<CostRow> cost_curve(const std::vector<EvalRecord>& records,
                                const PriceTable& prices);

struct ConfusionMatrix {
    std::vector<std::string> labels;             // top-level ids, taxonomy order
    std::vector<std::vector<std::size_t>> counts; // [truth][predicted]
    std::size_t unclassified = 0;                 // taxonomy-mode records without a prediction

    std::size_t at(const std::string& truth, const std::string& predicted) const;
};

/// Top-level confusion counts over taxonomy-mode records that produced a
/// classification; rows are the ground-truth class.
ConfusionMatrix confusion_matrix(const std::vector<EvalRecord>& records,
                                 const Taxonomy& taxonomy);

// -- serialization ------------------------------------------------------------

nlohmann::json record_to_json(const EvalRecord& record);
std::string records_to_jsonl(const std::vector<EvalRecord>& records);
std::string accuracy_curve_csv(const std::vector<AccuracyRow>& rows);
std::string cost_curve_csv(const std::vector<CostRow>& rows);
std::string confusion_matrix_csv(const ConfusionMatrix& matrix);

} // namespace jsplit::eval

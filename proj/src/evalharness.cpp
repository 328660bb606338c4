#include "jsplit/evalharness.hpp"

#include "jsplit/util.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

namespace jsplit::eval {

using nlohmann::json;

// -- dataset -----------------------------------------------------------------

std::vector<QueryCase> load_query_dataset(std::istream& in) {
    std::vector<QueryCase> cases;
    std::string line;
    std::size_t record_number = 0;
    while (std::getline(in, line)) {
        if (trim(line).empty()) continue;
        ++record_number;
        json record;
        try {
            record = json::parse(line);
        } catch (const json::parse_error& e) {
            throw ParseError("query dataset record " + std::to_string(record_number) +
                             " is not valid JSON: " + e.what());
        }
        QueryCase query_case;
        auto need = [&](const char* key) -> std::string {
            if (!record.contains(key) || !record[key].is_string() ||
                record[key].get<std::string>().empty()) {
                throw ValidationError("query dataset record " +
                                      std::to_string(record_number) +
                                      " is missing field '" + key + "'");
            }
            return record[key].get<std::string>();
        };
        query_case.case_id = need("case_id");
        query_case.query = need("query");
        query_case.target_server_id = need("target_server_id");
        query_case.target_category = need("target_category");
        cases.push_back(std::move(query_case));
    }
    return cases;
}

std::vector<QueryCase> load_query_dataset_file(const std::string& path) {
    std::istringstream in(read_file(path));
    return load_query_dataset(in);
}

std::vector<std::string> validate_cases(const std::vector<QueryCase>& cases,
                                        const Catalog& catalog, const Taxonomy& taxonomy) {
    std::vector<std::string> violations;
    std::set<std::string> ids;
    for (const auto& query_case : cases) {
        if (!ids.insert(query_case.case_id).second) {
            violations.push_back("duplicate case_id '" + query_case.case_id + "'");
        }
        const McpServerEntry* target = catalog.find(query_case.target_server_id);
        if (target == nullptr) {
            violations.push_back("case '" + query_case.case_id +
                                 "': target server '" + query_case.target_server_id +
                                 "' is not in the catalog");
            continue;
        }
        if (target->primary_category != query_case.target_category) {
            violations.push_back("case '" + query_case.case_id + "': target_category '" +
                                 query_case.target_category +
                                 "' does not match the server's primary category '" +
                                 target->primary_category + "'");
        }
        if (lookup(taxonomy, query_case.target_category) == nullptr) {
            violations.push_back("case '" + query_case.case_id + "': target_category '" +
                                 query_case.target_category + "' is not in the taxonomy");
        }
    }
    return violations;
}

// -- scoring -----------------------------------------------------------------

const char* to_string(DecisionBasis basis) noexcept {
    switch (basis) {
    case DecisionBasis::tool_call: return "tool_call";
    case DecisionBasis::judged_answer: return "judged_answer";
    case DecisionBasis::failure: return "failure";
    }
    return "failure";
}

std::string JudgeConfig::bundled_template() {
    return "You are grading an assistant's reply to a task.\n"
           "Task: {query}\n"
           "The reply should accomplish what this server provides: {target} \xE2\x80\x94 "
           "{target_description}\n"
           "Reply under review: {answer}\n"
           "\n"
           "Respond with exactly CORRECT if the reply accomplishes the task, otherwise "
           "respond with exactly INCORRECT.\n";
}

std::pair<bool, DecisionBasis> score_case(const RunResult& result, const QueryCase& query_case,
                                          const McpServerEntry* target_entry,
                                          const JudgeConfig* judge) {
    if (result.terminal == Terminal::error) {
        return {false, DecisionBasis::failure};
    }
    // Any tool activity: the transport call log is the ground source.
    if (!result.transport_log.empty() || !result.tool_invocations.empty()) {
        for (const auto& entry : result.transport_log) {
            if (entry.server_id == query_case.target_server_id) {
                return {true, DecisionBasis::tool_call};
            }
        }
        return {false, DecisionBasis::tool_call};
    }
    if (result.answer.has_value() && judge != nullptr && judge->gateway != nullptr) {
        std::string prompt = fill_template(
            judge->template_text.empty() ? JudgeConfig::bundled_template()
                                         : judge->template_text,
            {{"query", query_case.query},
             {"answer", *result.answer},
             {"target", query_case.target_server_id},
             {"target_description", target_entry != nullptr ? target_entry->description
                                                            : std::string{}}});
        try {
            ChatMessage message = ChatMessage::user(prompt);
            ChatResponse verdict = judge->gateway->complete(std::span(&message, 1), {});
            std::string text = trim(verdict.message.content);
            if (text == "CORRECT") {
                return {true, DecisionBasis::judged_answer};
            }
            if (text == "INCORRECT") {
                return {false, DecisionBasis::judged_answer};
            }
            return {false, DecisionBasis::failure}; // any other reply is a failure
        } catch (const Error&) {
            return {false, DecisionBasis::failure};
        }
    }
    return {false, DecisionBasis::failure};
}

// -- sweep --------------------------------------------------------------------

namespace {

struct Cell {
    std::size_t case_index;
    std::size_t level;
    ResolverMode mode;
};

EvalRecord run_cell(const QueryCase& query_case, const Catalog& catalog,
                    const Taxonomy& taxonomy, RunEnv& env, const SweepConfig& config,
                    const JudgeConfig* judge, const Cell& cell) {
    EvalRecord record;
    record.case_id = query_case.case_id;
    record.noise_count = cell.level;
    record.mode = cell.mode;
    record.target_category = query_case.target_category;
    record.seed = derive_seed(config.master_seed, query_case.case_id, cell.level);
    record.pool_size = cell.level + 1;

    const McpServerEntry* target = catalog.find(query_case.target_server_id);
    if (target == nullptr) {
        record.note = "target server not in catalog";
        return record;
    }

    std::vector<McpServerEntry> pool_entries;
    try {
        pool_entries = sample_noise(catalog, *target, cell.level, record.seed);
    } catch (const CapacityError& e) {
        record.note = e.what();
        return record; // recorded as failure, sweep continues
    }
    pool_entries.insert(pool_entries.begin(), *target);

    // noise exclusion re-verified at scoring time, not only at sampling time
    for (std::size_t i = 1; i < pool_entries.size(); ++i) {
        if (pool_entries[i].primary_category == target->primary_category) {
            throw std::logic_error("noise sample shares the target's primary category");
        }
    }

    Catalog pool = Catalog::from_entries(std::move(pool_entries));

    LoopConfig loop = config.loop;
    loop.resolver_mode = cell.mode;
    RunResult result = run_query(query_case.query, pool, taxonomy, env, loop, config.resolver);

    record.predicted_category = result.chosen_category;
    record.resolution_usage = result.resolution_usage;
    record.loop_usage = result.loop_usage;
    record.cost = cost_of(accumulate(result.resolution_usage, result.loop_usage),
                          config.prices);
    auto [correct, basis] = score_case(result, query_case, target, judge);
    record.correct = correct;
    record.decision_basis = basis;
    if (!result.error.empty()) {
        record.note = result.error;
    }
    return record;
}

} // namespace

std::vector<EvalRecord> run_sweep(const std::vector<QueryCase>& cases,
                                  const Catalog& catalog, const Taxonomy& taxonomy,
                                  RunEnv& env, const SweepConfig& config,
                                  const JudgeConfig* judge) {
    // cells ordered by (case_id, level, mode); record order never depends on
    // worker scheduling
    std::vector<std::size_t> case_order(cases.size());
    for (std::size_t i = 0; i < case_order.size(); ++i) case_order[i] = i;
    std::sort(case_order.begin(), case_order.end(), [&](std::size_t a, std::size_t b) {
        return cases[a].case_id < cases[b].case_id;
    });
    std::vector<ResolverMode> modes = config.modes;
    std::sort(modes.begin(), modes.end(), [](ResolverMode a, ResolverMode b) {
        return std::string_view(to_string(a)) < std::string_view(to_string(b));
    });
    std::vector<std::size_t> levels = config.noise_levels;
    std::sort(levels.begin(), levels.end());

    std::vector<Cell> cells;
    for (std::size_t case_index : case_order) {
        for (std::size_t level : levels) {
            for (ResolverMode mode : modes) {
                cells.push_back(Cell{case_index, level, mode});
            }
        }
    }

    std::vector<EvalRecord> records(cells.size());
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::string first_failure;
    std::mutex failure_mutex;

    auto worker = [&]() {
        for (;;) {
            std::size_t index = next.fetch_add(1);
            if (index >= cells.size() || failed.load()) return;
            const Cell& cell = cells[index];
            try {
                records[index] = run_cell(cases[cell.case_index], catalog, taxonomy, env,
                                          config, judge, cell);
            } catch (const std::exception& e) {
                std::scoped_lock lock(failure_mutex);
                if (!failed.exchange(true)) first_failure = e.what();
                return;
            }
        }
    };

    int jobs = std::max(1, config.jobs);
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> threads;
        threads.reserve(static_cast<std::size_t>(jobs));
        for (int i = 0; i < jobs; ++i) threads.emplace_back(worker);
        for (auto& thread : threads) thread.join();
    }
    if (failed.load()) {
        throw Error("sweep aborted: " + first_failure);
    }
    return records;
}

// -- aggregation -----------------------------------------------------------------

namespace {

struct GroupKey {
    std::string mode;
    std::size_t noise;
    bool operator<(const GroupKey& other) const {
        if (mode != other.mode) return mode < other.mode;
        return noise < other.noise;
    }
};

} // namespace

std::vector<AccuracyRow> accuracy_curve(const std::vector<EvalRecord>& records) {
    std::map<GroupKey, std::pair<std::size_t, std::size_t>> groups; // correct, total
    for (const auto& record : records) {
        auto& [correct, total] = groups[{to_string(record.mode), record.noise_count}];
        if (record.correct) ++correct;
        ++total;
    }
    std::vector<AccuracyRow> rows;
    for (const auto& [key, tally] : groups) {
        AccuracyRow row;
        row.mode = resolver_mode_from(key.mode);
        row.noise_count = key.noise;
        row.accuracy = static_cast<double>(tally.first) / static_cast<double>(tally.second);
        row.n = tally.second;
        rows.push_back(row);
    }
    return rows;
}

std::vector<CostRow> cost_curve(const std::vector<EvalRecord>& records,
                                const PriceTable& prices) {
    std::map<GroupKey, std::pair<Money, std::size_t>> groups;
    for (const auto& record : records) {
        TokenUsage input_only{record.resolution_usage.prompt_tokens +
                                  record.loop_usage.prompt_tokens,
                              0};
        auto& [total, n] = groups[{to_string(record.mode), record.noise_count}];
        total += cost_of(input_only, prices);
        ++n;
    }
    std::vector<CostRow> rows;
    for (const auto& [key, tally] : groups) {
        CostRow row;
        row.mode = resolver_mode_from(key.mode);
        row.noise_count = key.noise;
        row.total_input_cost = tally.first;
        row.n = tally.second;
        rows.push_back(row);
    }
    return rows;
}

std::size_t ConfusionMatrix::at(const std::string& truth, const std::string& predicted) const {
    auto row = std::find(labels.begin(), labels.end(), truth);
    auto col = std::find(labels.begin(), labels.end(), predicted);
    if (row == labels.end() || col == labels.end()) {
        throw ValidationError("unknown confusion matrix label");
    }
    return counts[static_cast<std::size_t>(row - labels.begin())]
                 [static_cast<std::size_t>(col - labels.begin())];
}

ConfusionMatrix confusion_matrix(const std::vector<EvalRecord>& records,
                                 const Taxonomy& taxonomy) {
    ConfusionMatrix matrix;
    std::map<std::string, std::size_t> index;
    for (const auto& root : taxonomy.roots) {
        index.emplace(root.id, matrix.labels.size());
        matrix.labels.push_back(root.id);
    }
    matrix.counts.assign(matrix.labels.size(),
                         std::vector<std::size_t>(matrix.labels.size(), 0));
    for (const auto& record : records) {
        if (record.mode != ResolverMode::taxonomy) continue;
        if (!record.predicted_category.has_value()) {
            ++matrix.unclassified;
            continue;
        }
        auto truth = index.find(top_level_of(record.target_category));
        auto predicted = index.find(top_level_of(*record.predicted_category));
        if (truth == index.end() || predicted == index.end()) {
            ++matrix.unclassified;
            continue;
        }
        ++matrix.counts[truth->second][predicted->second];
    }
    return matrix;
}

// -- serialization -----------------------------------------------------------------

json record_to_json(const EvalRecord& record) {
    json out;
    out["case_id"] = record.case_id;
    out["noise_count"] = record.noise_count;
    out["pool_size"] = record.pool_size;
    out["mode"] = to_string(record.mode);
    out["correct"] = record.correct;
    out["decision_basis"] = to_string(record.decision_basis);
    out["predicted_category"] =
        record.predicted_category ? json(*record.predicted_category) : json{};
    out["target_category"] = record.target_category;
    out["resolution_usage"] = {{"prompt_tokens", record.resolution_usage.prompt_tokens},
                               {"completion_tokens", record.resolution_usage.completion_tokens}};
    out["loop_usage"] = {{"prompt_tokens", record.loop_usage.prompt_tokens},
                         {"completion_tokens", record.loop_usage.completion_tokens}};
    out["cost"] = format_money(record.cost);
    out["seed"] = record.seed;
    if (!record.note.empty()) out["note"] = record.note;
    return out;
}

std::string records_to_jsonl(const std::vector<EvalRecord>& records) {
    std::string out;
    for (const auto& record : records) {
        out += record_to_json(record).dump();
        out += '\n';
    }
    return out;
}

namespace {

std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) {
        return field;
    }
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string format_accuracy(double value) {
    char buffer[32];
    std::snprintf(buffer, sizeof buffer, "%.6f", value);
    return buffer;
}

} // namespace

std::string accuracy_curve_csv(const std::vector<AccuracyRow>& rows) {
    std::string out = "mode,noise_count,value,n\n";
    for (const auto& row : rows) {
        out += to_string(row.mode);
        out += ',';
        out += std::to_string(row.noise_count);
        out += ',';
        out += format_accuracy(row.accuracy);
        out += ',';
        out += std::to_string(row.n);
        out += '\n';
    }
    return out;
}

std::string cost_curve_csv(const std::vector<CostRow>& rows) {
    std::string out = "mode,noise_count,value,n\n";
    for (const auto& row : rows) {
        out += to_string(row.mode);
        out += ',';
        out += std::to_string(row.noise_count);
        out += ',';
        out += format_money(row.total_input_cost);
        out += ',';
        out += std::to_string(row.n);
        out += '\n';
    }
    return out;
}

std::string confusion_matrix_csv(const ConfusionMatrix& matrix) {
    std::string out = "truth\\predicted";
    for (const auto& label : matrix.labels) {
        out += ',';
        out += csv_escape(label);
    }
    out += '\n';
    for (std::size_t row = 0; row < matrix.labels.size(); ++row) {
        out += csv_escape(matrix.labels[row]);
        for (std::size_t col = 0; col < matrix.labels.size(); ++col) {
            out += ',';
            out += std::to_string(matrix.counts[row][col]);
        }
        out += '\n';
    }
    return out;
}

} // namespace jsplit::eval

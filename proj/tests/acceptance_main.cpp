// Acceptance suite: one line per criterion, nonzero exit when any fails.
// Runs entirely offline; JSPLIT_NO_NETWORK is forced so any socket attempt
// aborts the run.

#include "jsplit/catalog.hpp"
#include "jsplit/config.hpp"
#include "jsplit/errors.hpp"
#include "jsplit/evalharness.hpp"
#include "jsplit/llm_gateway.hpp"
#include "jsplit/mcp_transport.hpp"
#include "jsplit/net_guard.hpp"
#include "jsplit/orchestrator.hpp"
#include "jsplit/resolver.hpp"
#include "jsplit/taxonomy.hpp"
#include "jsplit/util.hpp"

#include <nlohmann/json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace jsplit;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

const std::string kSourceDir = JSPLIT_SOURCE_DIR;
const std::string kCliPath = JSPLIT_CLI_PATH;

std::string data_path(const std::string& rel) { return kSourceDir + "/data/" + rel; }
std::string fixture_path(const std::string& rel) {
    return kSourceDir + "/data/fixtures/" + rel;
}

// Token ratio measured on the bundled 200-server fixture at noise level 100
// (scripted token rule, taxonomy vs passthrough total input tokens). The
// scripted backend is exact, so the measurement is reproducible bit-for-bit:
// 108,139 taxonomy input tokens vs 2,767,342 passthrough input tokens.
constexpr double kExpectedTokenRatio = 108139.0 / 2767342.0;

int failures = 0;

void criterion(const std::string& name, const std::function<void()>& body) {
    try {
        body();
        std::printf("[PASS] %s\n", name.c_str());
    } catch (const std::exception& e) {
        ++failures;
        std::printf("[FAIL] %s: %s\n", name.c_str(), e.what());
    }
    std::fflush(stdout);
}

void require(bool condition, const std::string& message) {
    if (!condition) {
        throw std::runtime_error(message);
    }
}

struct SweepSetup {
    Catalog catalog;
    Taxonomy taxonomy;
    std::vector<eval::QueryCase> cases;
    mcp::MockServerRegistry mocks;
    std::unique_ptr<mcp::TransportFactory> transports;
    std::unique_ptr<ScriptedGateway> gateway;

    SweepSetup() {
        catalog = load_catalog_file(fixture_path("catalog_200.jsonl"));
        taxonomy = load_taxonomy_file(data_path("taxonomy_v2.json"));
        cases = eval::load_query_dataset_file(fixture_path("queries_24.jsonl"));
        for (const auto& entry : catalog.entries()) {
            mocks.register_default(entry.server_id, entry.tools);
        }
        transports = std::make_unique<mcp::TransportFactory>(&mocks);
        gateway = std::make_unique<ScriptedGateway>(
            ScriptedGateway::from_file(fixture_path("oracle.script.json")));
    }

    RunEnv env() { return RunEnv{*gateway, *transports, PromptTemplates::bundled()}; }
};

std::vector<eval::EvalRecord> oracle_sweep_records; // shared by several criteria

int run_command(const std::string& command) { return std::system(command.c_str()); }

} // namespace

// -- criteria ------------------------------------------------------------------

static void check_protocol_capability() {
    // config for a live OpenAI-compatible endpoint parses and builds a gateway
    AppConfig live = AppConfig::load_file(kSourceDir + "/configs/live.example.json");
    live.validate();
    auto gateway = live.gateway.make_gateway();
    require(gateway != nullptr, "live gateway did not construct");
    require(gateway->backend_name().rfind("http:", 0) == 0, "expected an http backend");

    // a full-scale pool: 2,000 servers, noise level 1,000
    Taxonomy taxonomy = load_taxonomy_file(data_path("taxonomy_v2.json"));
    std::vector<std::string> leaves = leaf_ids(taxonomy);
    std::vector<McpServerEntry> bulk;
    for (std::size_t i = 0; i < 2000; ++i) {
        McpServerEntry entry;
        const std::string& leaf = leaves[i % leaves.size()];
        entry.server_id = "bulk-" + std::to_string(i);
        entry.name = "Bulk server " + std::to_string(i);
        entry.description = "Synthetic full-scale catalog entry number " +
                            std::to_string(i) + " for capacity checks.";
        entry.primary_category = leaf;
        ToolSpec tool;
        tool.name = "act";
        tool.description = "does the thing";
        tool.input_schema = json{{"type", "object"}, {"properties", json::object()}};
        entry.tools.push_back(tool);
        entry.endpoint = TransportAddress{TransportKind::in_process, entry.server_id};
        bulk.push_back(std::move(entry));
    }
    Catalog full = Catalog::from_entries(std::move(bulk));
    require(full.size() == 2000, "bulk catalog size");

    mcp::MockServerRegistry mocks;
    for (const auto& entry : full.entries()) {
        mocks.register_default(entry.server_id, entry.tools);
    }
    mcp::TransportFactory transports{&mocks};

    const McpServerEntry* target = full.find("bulk-0");
    std::vector<eval::QueryCase> cases{{"full-scale-1",
                                        "run the full scale capability probe",
                                        target->server_id, target->primary_category}};
    ScriptedGateway scripted = ScriptedGateway::from_json(json::array({
        json{{"match", "Query: run the full scale capability probe"},
             {"reply", target->primary_category}},
        json{{"match", "run the full scale capability probe"},
             {"reply", {{"tool_calls", json::array({json{{"server_id", target->server_id},
                                                         {"tool_name", "act"},
                                                         {"arguments", json::object()}}})}}}},
        json{{"match", "run the full scale capability probe"}, {"reply", "done"}},
    }));
    RunEnv env{scripted, transports, PromptTemplates::bundled()};

    eval::SweepConfig config;
    config.noise_levels = {1000}; // the published protocol's maximum
    config.modes = {ResolverMode::taxonomy, ResolverMode::passthrough};
    config.master_seed = 1;
    config.prices = PriceTable::per_million(0.4, 1.6, "probe");
    auto records = eval::run_sweep(cases, full, taxonomy, env, config);
    require(records.size() == 2, "expected one record per mode at level 1000");
    for (const auto& record : records) {
        require(record.correct, "full-scale probe should invoke its target");
        require(record.pool_size == 1001, "pool must be noise+1");
    }
}

static void check_oracle_equivalence() {
    SweepSetup setup;
    eval::SweepConfig config;
    config.noise_levels = {1, 3, 10, 30, 100};
    config.modes = {ResolverMode::taxonomy, ResolverMode::passthrough};
    config.master_seed = 20260809;
    config.prices = PriceTable::per_million(0.4, 1.6, "scripted");

    auto start = std::chrono::steady_clock::now();
    RunEnv env = setup.env();
    oracle_sweep_records = eval::run_sweep(setup.cases, setup.catalog, setup.taxonomy, env,
                                           config);
    auto elapsed = std::chrono::duration_cast<std::chrono::seconds>(
        std::chrono::steady_clock::now() - start);

    require(oracle_sweep_records.size() == 24 * 5 * 2, "cell count");
    auto rows = eval::accuracy_curve(oracle_sweep_records);
    for (const auto& row : rows) {
        if (row.mode == ResolverMode::taxonomy) {
            require(row.accuracy == 1.0,
                    "taxonomy accuracy at level " + std::to_string(row.noise_count) +
                        " is " + std::to_string(row.accuracy) + ", expected exactly 1.0");
            require(row.n == 24, "expected 24 cases per level");
        }
    }
    require(elapsed.count() < 60, "sweep took " + std::to_string(elapsed.count()) +
                                      "s, budget is 60s");
    // network guard: JSPLIT_NO_NETWORK=1 is exported below; any socket attempt
    // would have thrown and failed the records above.
    require(network_disabled(), "network guard is not active");
}

static void check_prompt_reduction() {
    require(!oracle_sweep_records.empty(), "oracle sweep must run first");

    std::map<std::pair<std::string, std::size_t>, std::int64_t> input_tokens;
    std::map<std::pair<std::string, std::size_t>, std::int64_t> loop_tokens;
    for (const auto& record : oracle_sweep_records) {
        auto key = std::make_pair(std::string(to_string(record.mode)), record.noise_count);
        input_tokens[key] += record.resolution_usage.prompt_tokens +
                             record.loop_usage.prompt_tokens;
        loop_tokens[key] += record.loop_usage.prompt_tokens;
    }

    double taxonomy_total = static_cast<double>(input_tokens[{"taxonomy", 100}]);
    double passthrough_total = static_cast<double>(input_tokens[{"passthrough", 100}]);
    require(passthrough_total > 0, "passthrough total must be positive");
    double ratio = taxonomy_total / passthrough_total;
    std::printf("       measured input-token ratio at level 100: %.6f "
                "(taxonomy %.0f / passthrough %.0f)\n",
                ratio, taxonomy_total, passthrough_total);
    require(ratio <= 0.05, "ratio " + std::to_string(ratio) + " exceeds 0.05");
    if (kExpectedTokenRatio > 0) {
        require(std::abs(ratio - kExpectedTokenRatio) < 1e-9,
                "ratio drifted from the recorded value " +
                    std::to_string(kExpectedTokenRatio));
    }

    // passthrough input tokens strictly increase with the noise level
    const std::size_t levels[] = {1, 3, 10, 30, 100};
    for (std::size_t i = 1; i < 5; ++i) {
        std::int64_t prev = input_tokens[{"passthrough", levels[i - 1]}];
        std::int64_t curr = input_tokens[{"passthrough", levels[i]}];
        require(curr > prev, "passthrough tokens not strictly increasing at level " +
                                 std::to_string(levels[i]));
    }

    // taxonomy loop tokens are level-invariant per case (selection unchanged)
    std::map<std::string, std::set<std::int64_t>> per_case_loop;
    for (const auto& record : oracle_sweep_records) {
        if (record.mode != ResolverMode::taxonomy) continue;
        per_case_loop[record.case_id].insert(record.loop_usage.prompt_tokens);
    }
    for (const auto& [case_id, values] : per_case_loop) {
        require(values.size() == 1, "loop tokens vary across levels for " + case_id);
    }
    (void)loop_tokens;
}

static void check_filtering_correctness() {
    std::mt19937_64 rng(424242);
    std::size_t mismatches = 0;
    for (int round = 0; round < 500; ++round) {
        // the same helper the unit suite uses, inlined against this rng
        Taxonomy taxonomy;
        {
            std::size_t budget = 1 + bounded_rand(rng, 200);
            std::size_t made = 0;
            std::size_t roots = 1 + bounded_rand(rng, 3);
            for (std::size_t r = 0; r < roots && made < budget; ++r) {
                TaxonomyNode root;
                root.id = std::to_string(r + 1);
                root.name = "n" + root.id;
                root.definition = "d" + root.id;
                taxonomy.roots.push_back(std::move(root));
                ++made;
            }
            struct Frame { TaxonomyNode* node; std::size_t depth; };
            std::vector<Frame> open;
            for (auto& root : taxonomy.roots) open.push_back({&root, 1});
            while (!open.empty() && made < budget) {
                std::size_t pick = bounded_rand(rng, open.size());
                Frame frame = open[pick];
                open.erase(open.begin() + static_cast<std::ptrdiff_t>(pick));
                if (frame.depth >= 4) continue;
                std::size_t kids = bounded_rand(rng, 4);
                for (std::size_t k = 0; k < kids && made < budget; ++k) {
                    TaxonomyNode child;
                    child.id = frame.node->id + "." + std::to_string(k + 1);
                    child.name = "n" + child.id;
                    child.definition = "d" + child.id;
                    frame.node->children.push_back(std::move(child));
                    ++made;
                }
                for (auto& child : frame.node->children) {
                    open.push_back({&child, frame.depth + 1});
                }
            }
        }
        std::vector<std::string> ids = all_ids(taxonomy);
        std::set<std::string> populated;
        for (const auto& id : ids) {
            if (bounded_rand(rng, 3) == 0) populated.insert(id);
        }

        // brute-force ancestor closure, ordered by the original document
        std::set<std::string> expected_set;
        for (const auto& id : populated) {
            std::string prefix;
            for (char c : id) {
                if (c == '.') expected_set.insert(prefix);
                prefix += c;
            }
            expected_set.insert(prefix);
        }
        std::vector<std::string> expected;
        for (const auto& id : ids) {
            if (expected_set.count(id) != 0) expected.push_back(id);
        }

        if (all_ids(filter_to_populated(taxonomy, populated)) != expected) {
            ++mismatches;
        }
    }
    require(mismatches == 0, std::to_string(mismatches) + " mismatches out of 500");
}

static void check_noise_exclusion() {
    Catalog catalog = load_catalog_file(fixture_path("catalog_200.jsonl"));
    std::vector<eval::QueryCase> cases =
        eval::load_query_dataset_file(fixture_path("queries_24.jsonl"));
    std::size_t draws = 0;
    std::size_t violations = 0;
    std::uint64_t seed = 0;
    while (draws < 1000) {
        for (const auto& query_case : cases) {
            if (draws >= 1000) break;
            const McpServerEntry* target = catalog.find(query_case.target_server_id);
            auto sampled = sample_noise(catalog, *target, 50, seed++);
            ++draws;
            for (const auto& entry : sampled) {
                if (entry.primary_category == target->primary_category) ++violations;
            }
        }
    }
    require(draws == 1000, "draw count");
    require(violations == 0, std::to_string(violations) + " category collisions");
}

static void check_parser_robustness() {
    json fixture = json::parse(read_file(fixture_path("parser_cases.json")));
    std::size_t checked = 0;
    for (const auto& entry : fixture["category_cases"]) {
        std::set<std::string> valid;
        for (const auto& id : entry["valid_ids"]) valid.insert(id.get<std::string>());
        auto got = parse_category_reply(entry["reply"].get<std::string>(), valid);
        if (entry["expected"].is_null()) {
            require(!got.has_value(), "expected no id for: " +
                                          entry["reply"].get<std::string>());
        } else {
            require(got.has_value() && *got == entry["expected"].get<std::string>(),
                    "wrong id for: " + entry["reply"].get<std::string>());
        }
        ++checked;
    }
    for (const auto& entry : fixture["ranking_cases"]) {
        auto got = parse_ranking_reply(entry["reply"].get<std::string>(),
                                       entry["candidate_count"].get<std::size_t>(),
                                       entry["top_k"].get<std::size_t>());
        std::vector<std::size_t> expected;
        for (const auto& value : entry["expected"]) {
            expected.push_back(value.get<std::size_t>());
        }
        require(got == expected, "wrong indices for: " + entry["reply"].get<std::string>());
        ++checked;
    }
    require(checked == 40, "fixture must hold 40 cases, found " + std::to_string(checked));
}

static void check_scoring_fidelity() {
    eval::QueryCase query_case{"case", "do the thing", "target", "4.2.1"};

    auto with_log = [](std::vector<std::string> servers, Terminal terminal,
                       std::optional<std::string> answer) {
        RunResult result;
        result.terminal = terminal;
        result.answer = std::move(answer);
        for (const auto& server : servers) {
            ToolInvocation invocation;
            invocation.server_id = server;
            invocation.tool_name = "t";
            invocation.dispatched = true;
            result.tool_invocations.push_back(invocation);
            result.transport_log.push_back({server, "t", json::object(), false, {}});
        }
        return result;
    };

    struct Fixture {
        RunResult result;
        const char* label;
    };
    std::vector<Fixture> fixtures;
    fixtures.push_back({with_log({"target"}, Terminal::answered, "ok"), "target only"});
    fixtures.push_back(
        {with_log({"noise-1", "target", "noise-2"}, Terminal::answered, "ok"),
         "target among noise"});
    fixtures.push_back({with_log({"noise-1"}, Terminal::answered, "ok"), "noise only"});
    fixtures.push_back(
        {with_log({"noise-1", "noise-2"}, Terminal::answered, "ok"), "two noise"});
    fixtures.push_back({with_log({}, Terminal::answered, "direct answer"), "answer only"});
    fixtures.push_back({with_log({}, Terminal::error, std::nullopt), "terminal error"});
    {
        RunResult undispatched;
        undispatched.terminal = Terminal::answered;
        undispatched.answer = "gave up";
        ToolInvocation attempt;
        attempt.server_id = "target";
        attempt.dispatched = false;
        attempt.is_error = true;
        undispatched.tool_invocations.push_back(attempt);
        fixtures.push_back({undispatched, "catalog-only target attempt"});
    }
    {
        RunResult errored = with_log({"target"}, Terminal::answered, "ok");
        errored.transport_log[0].is_error = true;
        errored.tool_invocations[0].is_error = true;
        fixtures.push_back({errored, "target call returned an error result"});
    }
    fixtures.push_back(
        {with_log({"noise-3", "noise-4"}, Terminal::iteration_cap, std::nullopt),
         "iteration cap on noise"});
    fixtures.push_back({with_log({"noise-3", "target"}, Terminal::iteration_cap,
                                 std::nullopt),
                        "iteration cap with target"});
    fixtures.push_back({with_log({}, Terminal::iteration_cap, std::nullopt), "empty run"});
    fixtures.push_back({with_log({"target", "target"}, Terminal::answered, "ok"),
                        "target called twice"});
    require(fixtures.size() == 12, "twelve transcripts required");

    for (const auto& fixture : fixtures) {
        bool log_has_target = false;
        for (const auto& entry : fixture.result.transport_log) {
            if (entry.server_id == "target") log_has_target = true;
        }
        auto [correct, basis] = eval::score_case(fixture.result, query_case, nullptr,
                                                 nullptr);
        require(correct == log_has_target,
                std::string(fixture.label) + ": correct must equal log membership");
        if (fixture.result.terminal == Terminal::error) {
            require(basis == eval::DecisionBasis::failure,
                    std::string(fixture.label) + ": errors are failures");
        }
    }
}

static void check_cost_exactness() {
    std::mt19937_64 rng(13);
    PriceTable tables[] = {
        PriceTable::per_million(0.4, 1.6, "a"),
        PriceTable::per_million(2.0, 8.0, "b"),
        PriceTable::per_million(0.000001, 0.000002, "c"),
    };
    for (int i = 0; i < 10000; ++i) {
        const PriceTable& prices = tables[i % 3];
        TokenUsage a{static_cast<std::int64_t>(rng() % 50'000'000),
                     static_cast<std::int64_t>(rng() % 50'000'000)};
        TokenUsage b{static_cast<std::int64_t>(rng() % 50'000'000),
                     static_cast<std::int64_t>(rng() % 50'000'000)};
        Money split = cost_of(a, prices) + cost_of(b, prices);
        Money joint = cost_of(accumulate(a, b), prices);
        require(split == joint, "linearity violated at pair " + std::to_string(i));
    }

    // sweep CSV totals equal an independent per-record summation
    require(!oracle_sweep_records.empty(), "oracle sweep must run first");
    PriceTable prices = PriceTable::per_million(0.4, 1.6, "scripted");
    auto rows = eval::cost_curve(oracle_sweep_records, prices);
    std::string csv = eval::cost_curve_csv(rows);

    std::map<std::pair<std::string, std::size_t>, Money> independent;
    for (const auto& record : oracle_sweep_records) {
        TokenUsage input_only{record.resolution_usage.prompt_tokens +
                                  record.loop_usage.prompt_tokens,
                              0};
        independent[{to_string(record.mode), record.noise_count}] +=
            cost_of(input_only, prices);
    }
    std::istringstream lines(csv);
    std::string line;
    std::getline(lines, line); // header
    std::size_t parsed_rows = 0;
    while (std::getline(lines, line)) {
        if (line.empty()) continue;
        auto fields = split(line, ',');
        require(fields.size() == 4, "csv row shape");
        double value = std::stod(fields[2]);
        Money expected = independent[{fields[0], std::stoull(fields[1])}];
        require(std::abs(value - expected.dollars()) <= 1e-9,
                "csv total differs from independent summation in row " + line);
        ++parsed_rows;
    }
    require(parsed_rows == rows.size(), "csv row count");
}

static void check_confusion_matrix() {
    Taxonomy taxonomy = load_taxonomy_file(data_path("taxonomy_v2.json"));
    struct Point {
        const char* truth;
        const char* predicted; // nullptr = unclassified
        int count;
    };
    // hand-built 20-record fixture
    const Point points[] = {
        {"1.1.1", "1.1.2", 3}, {"2.1.1", "1.1.1", 2}, {"2.3.1", "10.1.1", 1},
        {"5.3.2", "5.3.2", 4}, {"8.1.2", "1.1.1", 2}, {"8.9", "6.2.1", 1},
        {"11", "11", 2},       {"3.1.1", "5.2.1", 1}, {"3.2.1", "6.3.1", 1},
        {"9.2.1", "9.1.1", 1}, {"4.2.1", nullptr, 1}, {"7.1.2", "7.1.2", 1},
    };
    std::vector<eval::EvalRecord> records;
    for (const auto& point : points) {
        for (int i = 0; i < point.count; ++i) {
            eval::EvalRecord record;
            record.mode = ResolverMode::taxonomy;
            record.target_category = point.truth;
            if (point.predicted != nullptr) {
                record.predicted_category = point.predicted;
            }
            records.push_back(record);
        }
    }
    require(records.size() == 20, "fixture must hold 20 records");

    eval::ConfusionMatrix matrix = eval::confusion_matrix(records, taxonomy);
    require(matrix.labels.size() == 11, "label count");

    // hand-computed 11x11 expectation (row = truth, column = predicted)
    std::map<std::pair<std::string, std::string>, std::size_t> expected = {
        {{"1", "1"}, 3}, {{"2", "1"}, 2}, {{"2", "10"}, 1}, {{"5", "5"}, 4},
        {{"8", "1"}, 2}, {{"8", "6"}, 1}, {{"11", "11"}, 2}, {{"3", "5"}, 1},
        {{"3", "6"}, 1}, {{"9", "9"}, 1}, {{"7", "7"}, 1},
    };
    for (const auto& truth : matrix.labels) {
        for (const auto& predicted : matrix.labels) {
            std::size_t want = 0;
            if (auto it = expected.find({truth, predicted}); it != expected.end()) {
                want = it->second;
            }
            require(matrix.at(truth, predicted) == want,
                    "cell (" + truth + "," + predicted + ") = " +
                        std::to_string(matrix.at(truth, predicted)) + ", expected " +
                        std::to_string(want));
        }
    }
    require(matrix.unclassified == 1, "unclassified count");

    // row sums equal per-class classified counts
    std::map<std::string, std::size_t> per_class;
    for (const auto& point : points) {
        if (point.predicted != nullptr) {
            per_class[top_level_of(point.truth)] += static_cast<std::size_t>(point.count);
        }
    }
    for (std::size_t row = 0; row < matrix.labels.size(); ++row) {
        std::size_t sum = 0;
        for (std::size_t col = 0; col < matrix.labels.size(); ++col) {
            sum += matrix.counts[row][col];
        }
        require(sum == per_class[matrix.labels[row]],
                "row sum mismatch for class " + matrix.labels[row]);
    }
}

static void check_csv_determinism() {
    fs::path out_a = fs::temp_directory_path() / "jsplit_acc_eval_a";
    fs::path out_b = fs::temp_directory_path() / "jsplit_acc_eval_b";
    fs::remove_all(out_a);
    fs::remove_all(out_b);

    std::string base = "JSPLIT_NO_NETWORK=1 " + kCliPath + " eval --taxonomy " +
                       data_path("taxonomy_v2.json") + " --catalog " +
                       fixture_path("catalog_200.jsonl") + " --script " +
                       fixture_path("oracle.script.json") + " --dataset " +
                       fixture_path("queries_24.jsonl") +
                       " --levels 1,3,10 --modes taxonomy,passthrough --seed 11 ";
    require(run_command(base + "--out-dir " + out_a.string() + " >/dev/null") == 0,
            "first eval run failed");
    require(run_command(base + "--jobs 2 --out-dir " + out_b.string() + " >/dev/null") == 0,
            "second eval run failed");
    for (const char* name :
         {"records.jsonl", "accuracy_curve.csv", "cost_curve.csv", "confusion_matrix.csv"}) {
        std::string file_a = read_file((out_a / name).string());
        std::string file_b = read_file((out_b / name).string());
        require(!file_a.empty(), std::string(name) + " is empty");
        require(file_a == file_b, std::string(name) + " differs between identical runs");
    }
}

static void check_wire_conformance() {
    std::string raw = read_file(kSourceDir + "/tests/golden/rpc_frames.jsonl");
    std::vector<std::string> lines;
    for (auto& line : split(raw, '\n')) {
        if (!trim(line).empty()) lines.push_back(line);
    }
    require(lines.size() == 6, "expected six golden frames");

    json init_params = {{"protocolVersion", mcp::kProtocolVersion},
                        {"capabilities", json::object()},
                        {"clientInfo", {{"name", "jsplit"}, {"version", "0.1.0"}}}};
    require(mcp::encode_request({json(1), "initialize", init_params}) == lines[0],
            "initialize frame drifted");
    require(mcp::encode_notification("notifications/initialized", json{}) == lines[1],
            "initialized notification drifted");
    require(mcp::encode_request({json(2), "tools/list", json::object()}) == lines[2],
            "tools/list frame drifted");
    require(mcp::encode_request(
                {json(3), "tools/call",
                 json{{"name", "echo"}, {"arguments", {{"text", "hi"}}}}}) == lines[3],
            "tools/call frame drifted");
    for (std::size_t i = 0; i < lines.size(); ++i) {
        json parsed = json::parse(lines[i]);
        require(parsed["jsonrpc"] == "2.0", "frame is not JSON-RPC 2.0");
        if (parsed.contains("result")) {
            require(mcp::encode_response(parsed["id"], parsed["result"]) == lines[i],
                    "response frame does not round-trip bit-exactly");
        } else if (parsed.contains("method") && parsed.contains("id")) {
            mcp::RpcEnvelope envelope = mcp::decode_request(lines[i]);
            require(mcp::encode_request(envelope) == lines[i],
                    "request frame does not round-trip bit-exactly");
        }
    }
}

int main() {
    setenv("JSPLIT_NO_NETWORK", "1", 1);

    criterion("published-protocol capability (2,000 servers, level 1000, live config)",
              check_protocol_capability);
    criterion("oracle equivalence: taxonomy accuracy 1.0 at levels {1,3,10,30,100}",
              check_oracle_equivalence);
    criterion("prompt reduction: taxonomy <= 5% of passthrough input tokens at level 100",
              check_prompt_reduction);
    criterion("filtering correctness: 500 randomized taxonomies vs brute-force closure",
              check_filtering_correctness);
    criterion("noise exclusion: 1,000 seeded draws share no target category",
              check_noise_exclusion);
    criterion("parser robustness: 40-case adversarial fixture", check_parser_robustness);
    criterion("scoring rule fidelity: 12 transcripts, correct iff target in call log",
              check_scoring_fidelity);
    criterion("cost accounting exactness: linearity and CSV totals", check_cost_exactness);
    criterion("confusion matrix: 20-record hand-built fixture", check_confusion_matrix);
    criterion("determinism: byte-identical eval outputs for identical seeds",
              check_csv_determinism);
    criterion("wire conformance: JSON-RPC 2.0 golden frames", check_wire_conformance);

    if (failures != 0) {
        std::printf("%d criterion(s) failed\n", failures);
        return 1;
    }
    std::printf("all acceptance criteria passed\n");
    return 0;
}

// jsplit command-line interface: resolve / run / eval / validate.
//
// exit codes: 0 success, 1 validation or config error, 2 gateway/transport
// error, 3 resolver failure, 4 iteration cap reached (run).

#include "jsplit/catalog.hpp"
#include "jsplit/config.hpp"
#include "jsplit/errors.hpp"
#include "jsplit/evalharness.hpp"
#include "jsplit/mcp_transport.hpp"
#include "jsplit/orchestrator.hpp"
#include "jsplit/resolver.hpp"
#include "jsplit/taxonomy.hpp"
#include "jsplit/util.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <memory>
#include <optional>

namespace fs = std::filesystem;
using namespace jsplit;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitGateway = 2;
constexpr int kExitResolver = 3;
constexpr int kExitIterationCap = 4;

struct CommonFlags {
    std::string config_path;
    std::string taxonomy_path;
    std::string catalog_path;
    std::string script_path;
    std::string judge_script;
    std::string out_dir;
    std::string mocks_path;

    void add_to(CLI::App& app) {
        app.add_option("--config", config_path, "JSON config file; flags override it");
        app.add_option("--taxonomy", taxonomy_path, "taxonomy JSON file");
        app.add_option("--catalog", catalog_path, "catalog JSONL file");
        app.add_option("--script", script_path,
                       "scripted gateway rules file (selects the scripted backend)");
        app.add_option("--judge", judge_script,
                       "scripted judge rules file for grading direct answers");
        app.add_option("--out-dir", out_dir, "output directory");
        app.add_option("--mocks", mocks_path, "mock MCP server fixtures file");
    }

    AppConfig resolve_config() const {
        AppConfig config;
        if (!config_path.empty()) {
            config = AppConfig::load_file(config_path);
        }
        if (!taxonomy_path.empty()) config.taxonomy_path = taxonomy_path;
        if (!catalog_path.empty()) config.catalog_path = catalog_path;
        if (!script_path.empty()) {
            config.gateway.script_path = script_path;
            config.gateway.http.reset();
        }
        if (!judge_script.empty()) {
            GatewayConfig judge;
            judge.script_path = judge_script;
            config.judge = std::move(judge);
        }
        if (!out_dir.empty()) config.output_dir = out_dir;
        if (!mocks_path.empty()) config.mock_fixtures_path = mocks_path;
        return config;
    }
};

struct Session {
    AppConfig config;
    Taxonomy taxonomy;
    Catalog catalog;
    std::unique_ptr<LlmGateway> gateway;
    std::unique_ptr<LlmGateway> judge_gateway;
    mcp::MockServerRegistry mocks;
    std::unique_ptr<mcp::TransportFactory> transports;
    PromptTemplates templates;

    explicit Session(AppConfig app_config) : config(std::move(app_config)) {
        config.validate();
        taxonomy = load_taxonomy_file(config.taxonomy_path);
        catalog = load_catalog_file(config.catalog_path);
        gateway = config.gateway.make_gateway();
        if (config.judge) {
            judge_gateway = config.judge->make_gateway();
        }
        // defaults first; explicit fixtures override them
        for (const auto& entry : catalog.entries()) {
            if (entry.endpoint && entry.endpoint->kind == TransportKind::in_process) {
                mocks.register_default(entry.endpoint->locator.empty()
                                           ? entry.server_id
                                           : entry.endpoint->locator,
                                       entry.tools);
            }
        }
        if (config.mock_fixtures_path) {
            mocks.register_fixtures_file(*config.mock_fixtures_path);
        }
        transports = std::make_unique<mcp::TransportFactory>(&mocks);
        templates = config.prompt_templates();
    }

    RunEnv env() { return RunEnv{*gateway, *transports, templates}; }
};

void write_output(const std::string& out_dir, const std::string& name,
                  const std::string& content) {
    fs::create_directories(out_dir);
    write_file((fs::path(out_dir) / name).string(), content);
}

int classify_error(const Error& e) {
    if (dynamic_cast<const NoCandidatesError*>(&e) != nullptr ||
        dynamic_cast<const ClassificationFailedError*>(&e) != nullptr) {
        return kExitResolver;
    }
    if (dynamic_cast<const GatewayError*>(&e) != nullptr ||
        dynamic_cast<const ScriptError*>(&e) != nullptr ||
        dynamic_cast<const TransportError*>(&e) != nullptr ||
        dynamic_cast<const ProtocolError*>(&e) != nullptr) {
        return kExitGateway;
    }
    return kExitConfig;
}

// -- resolve ------------------------------------------------------------------

int cmd_resolve(const CommonFlags& flags, const std::string& query,
                const std::string& mode_name, std::optional<int> top_k) {
    Session session(flags.resolve_config());
    if (top_k) session.config.resolver.top_k = *top_k;
    ResolverMode mode = mode_name.empty() ? session.config.loop.resolver_mode
                                          : resolver_mode_from(mode_name);

    ResolutionResult result = resolve(mode, query, session.catalog, session.taxonomy,
                                      *session.gateway, session.config.resolver,
                                      session.templates);
    std::cout << "mode: " << to_string(result.mode) << "\n";
    std::cout << "chosen_category: "
              << (result.chosen_category ? *result.chosen_category : std::string("-"))
              << "\n";
    std::cout << "selected (" << result.selected.size() << "):\n";
    for (const auto& entry : result.selected) {
        std::cout << "  " << entry.server_id << "  " << entry.name << "\n";
    }
    std::cout << "resolution_usage: prompt_tokens=" << result.usage.prompt_tokens
              << " completion_tokens=" << result.usage.completion_tokens << "\n";
    return kExitOk;
}

// -- run ----------------------------------------------------------------------

int cmd_run(const CommonFlags& flags, const std::string& query,
            const std::string& mode_name, std::optional<int> max_iterations) {
    Session session(flags.resolve_config());
    LoopConfig loop = session.config.loop;
    if (!mode_name.empty()) loop.resolver_mode = resolver_mode_from(mode_name);
    if (max_iterations) loop.max_iterations = *max_iterations;

    RunEnv env = session.env();
    RunResult result =
        run_query(query, session.catalog, session.taxonomy, env, loop,
                  session.config.resolver);

    std::string transcript = export_transcript(result);
    if (!session.config.output_dir.empty()) {
        write_output(session.config.output_dir, "transcript.jsonl", transcript);
    }
    std::cout << transcript;
    std::cerr << "terminal: " << to_string(result.terminal)
              << " iterations: " << result.iterations
              << " tool_invocations: " << result.tool_invocations.size() << "\n";
    switch (result.terminal) {
    case Terminal::answered:
        return kExitOk;
    case Terminal::iteration_cap:
        return kExitIterationCap;
    case Terminal::error:
        std::cerr << "error: " << result.error << "\n";
        return result.error_kind == RunResult::ErrorKind::resolver ? kExitResolver
                                                                   : kExitGateway;
    }
    return kExitGateway;
}

// -- eval -----------------------------------------------------------------------

std::vector<std::size_t> parse_levels(const std::string& text) {
    std::vector<std::size_t> levels;
    for (const auto& part : split(text, ',')) {
        std::string value = trim(part);
        if (value.empty()) continue;
        levels.push_back(static_cast<std::size_t>(std::stoull(value)));
    }
    if (levels.empty()) {
        throw ValidationError("--levels has no usable values");
    }
    return levels;
}

std::vector<ResolverMode> parse_modes(const std::string& text) {
    std::vector<ResolverMode> modes;
    for (const auto& part : split(text, ',')) {
        std::string value = trim(part);
        if (value.empty()) continue;
        modes.push_back(resolver_mode_from(value));
    }
    if (modes.empty()) {
        throw ValidationError("--modes has no usable values");
    }
    return modes;
}

int cmd_eval(const CommonFlags& flags, const std::string& dataset_path,
             const std::string& levels_text, const std::string& modes_text,
             std::uint64_t seed, int jobs) {
    Session session(flags.resolve_config());
    std::vector<eval::QueryCase> cases = eval::load_query_dataset_file(dataset_path);

    // dataset/catalog inconsistencies abort before any LLM call
    std::vector<std::string> violations =
        eval::validate_cases(cases, session.catalog, session.taxonomy);
    if (!violations.empty()) {
        for (const auto& violation : violations) {
            std::cerr << "violation: " << violation << "\n";
        }
        return kExitConfig;
    }

    eval::SweepConfig sweep;
    sweep.noise_levels = parse_levels(levels_text);
    sweep.modes = parse_modes(modes_text);
    sweep.master_seed = seed;
    sweep.jobs = jobs;
    sweep.loop = session.config.loop;
    sweep.resolver = session.config.resolver;
    sweep.prices = session.config.gateway.prices;

    eval::JudgeConfig judge;
    const eval::JudgeConfig* judge_ptr = nullptr;
    if (session.judge_gateway) {
        judge.gateway = session.judge_gateway.get();
        judge.template_text = eval::JudgeConfig::bundled_template();
        judge_ptr = &judge;
    }

    RunEnv env = session.env();
    std::vector<eval::EvalRecord> records =
        eval::run_sweep(cases, session.catalog, session.taxonomy, env, sweep, judge_ptr);

    const std::string& out_dir = session.config.output_dir;
    write_output(out_dir, "records.jsonl", eval::records_to_jsonl(records));
    write_output(out_dir, "accuracy_curve.csv",
                 eval::accuracy_curve_csv(eval::accuracy_curve(records)));
    write_output(out_dir, "cost_curve.csv",
                 eval::cost_curve_csv(eval::cost_curve(records, sweep.prices)));
    write_output(out_dir, "confusion_matrix.csv",
                 eval::confusion_matrix_csv(eval::confusion_matrix(records, session.taxonomy)));

    std::size_t correct = 0;
    for (const auto& record : records) {
        if (record.correct) ++correct;
    }
    std::cout << "records: " << records.size() << " correct: " << correct << " outputs: "
              << out_dir << "\n";
    return kExitOk;
}

// -- validate ---------------------------------------------------------------------

int cmd_validate(const CommonFlags& flags, const std::string& dataset_path) {
    AppConfig config = flags.resolve_config();
    std::vector<std::string> violations;

    Taxonomy taxonomy;
    Catalog catalog;
    try {
        config.validate();
        taxonomy = load_taxonomy_file(config.taxonomy_path);
        catalog = load_catalog_file(config.catalog_path);
    } catch (const Error& e) {
        std::cerr << "violation: " << e.what() << "\n";
        return kExitConfig;
    }

    BindResult bound = bind_taxonomy(catalog, taxonomy, true);
    for (const auto& unknown : bound.unknown) {
        violations.push_back("catalog references category '" + unknown +
                             "' which is not in the taxonomy");
    }
    if (!dataset_path.empty()) {
        try {
            std::vector<eval::QueryCase> cases = eval::load_query_dataset_file(dataset_path);
            for (auto& violation : eval::validate_cases(cases, catalog, taxonomy)) {
                violations.push_back(std::move(violation));
            }
        } catch (const Error& e) {
            violations.push_back(e.what());
        }
    }

    std::cout << "taxonomy: " << to_string(taxonomy.version) << ", " << node_count(taxonomy)
              << " nodes, " << leaf_ids(taxonomy).size() << " leaves\n";
    std::cout << "catalog: " << catalog.size() << " servers, "
              << catalog.by_category().size() << " populated categories\n";
    std::cout << "servers per category:\n";
    for (const auto& [category, servers] : catalog.by_category()) {
        std::cout << "  " << category << ": " << servers.size() << "\n";
    }
    std::size_t bloat = context_bytes("", catalog.entries());
    std::cout << "context bytes if every server were injected: " << bloat << "\n";

    if (!violations.empty()) {
        for (const auto& violation : violations) {
            std::cerr << "violation: " << violation << "\n";
        }
        return kExitConfig;
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"taxonomy-driven MCP server selection and evaluation"};
    app.require_subcommand(1);

    CommonFlags flags;

    auto* resolve_cmd = app.add_subcommand("resolve", "select servers for a query");
    flags.add_to(*resolve_cmd);
    std::string resolve_query;
    std::string resolve_mode;
    std::optional<int> resolve_top_k;
    resolve_cmd->add_option("query", resolve_query, "user query")->required();
    resolve_cmd->add_option("--mode", resolve_mode, "taxonomy|passthrough");
    resolve_cmd->add_option("--top-k", resolve_top_k, "servers to select in taxonomy mode");

    auto* run_cmd = app.add_subcommand("run", "resolve, then run the call loop");
    flags.add_to(*run_cmd);
    std::string run_query_text;
    std::string run_mode;
    std::optional<int> run_max_iterations;
    run_cmd->add_option("query", run_query_text, "user query")->required();
    run_cmd->add_option("--mode", run_mode, "taxonomy|passthrough");
    run_cmd->add_option("--max-iterations", run_max_iterations, "call loop cap");

    auto* eval_cmd = app.add_subcommand("eval", "needle-in-a-haystack sweep");
    flags.add_to(*eval_cmd);
    std::string eval_dataset;
    std::string eval_levels = "1,3,10,30,100";
    std::string eval_modes = "taxonomy,passthrough";
    std::uint64_t eval_seed = 0;
    int eval_jobs = 1;
    eval_cmd->add_option("--dataset", eval_dataset, "query dataset JSONL")->required();
    eval_cmd->add_option("--levels", eval_levels, "comma-separated noise counts");
    eval_cmd->add_option("--modes", eval_modes, "comma-separated resolver modes");
    eval_cmd->add_option("--seed", eval_seed, "master RNG seed");
    eval_cmd->add_option("--jobs", eval_jobs, "parallel sweep workers");

    auto* validate_cmd = app.add_subcommand("validate", "check fixtures and cross-references");
    flags.add_to(*validate_cmd);
    std::string validate_dataset;
    validate_cmd->add_option("--dataset", validate_dataset, "query dataset JSONL");

    CLI11_PARSE(app, argc, argv);

    try {
        if (resolve_cmd->parsed()) {
            return cmd_resolve(flags, resolve_query, resolve_mode, resolve_top_k);
        }
        if (run_cmd->parsed()) {
            return cmd_run(flags, run_query_text, run_mode, run_max_iterations);
        }
        if (eval_cmd->parsed()) {
            return cmd_eval(flags, eval_dataset, eval_levels, eval_modes, eval_seed,
                            eval_jobs);
        }
        if (validate_cmd->parsed()) {
            return cmd_validate(flags, validate_dataset);
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return classify_error(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    }
    return kExitConfig;
}

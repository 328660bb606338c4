#include "jsplit/config.hpp"

#include "jsplit/errors.hpp"
#include "jsplit/util.hpp"

#include <cstdlib>
#include <filesystem>

namespace jsplit {

using nlohmann::json;
namespace fs = std::filesystem;

std::unique_ptr<LlmGateway> GatewayConfig::make_gateway() const {
    if (script_path.has_value() == http.has_value()) {
        throw ValidationError("configure exactly one gateway backend (scripted or http)");
    }
    if (script_path) {
        return std::make_unique<ScriptedGateway>(ScriptedGateway::from_file(*script_path));
    }
    HttpGatewayConfig resolved = *http;
    if (resolved.api_key.empty()) {
        if (const char* key = std::getenv(api_key_env.c_str()); key != nullptr) {
            resolved.api_key = key;
        }
    }
    return std::make_unique<HttpGateway>(std::move(resolved));
}

namespace {

std::string resolve_path(const std::string& base_dir, const std::string& path) {
    if (path.empty() || fs::path(path).is_absolute() || base_dir.empty()) {
        return path;
    }
    return (fs::path(base_dir) / path).string();
}

GatewayConfig gateway_from_json(const json& doc, const std::string& base_dir) {
    GatewayConfig config;
    if (doc.contains("scripted")) {
        const json& scripted = doc["scripted"];
        if (!scripted.is_object() || !scripted.contains("script")) {
            throw ValidationError("gateway.scripted needs a 'script' path");
        }
        config.script_path = resolve_path(base_dir, scripted["script"].get<std::string>());
    }
    if (doc.contains("http")) {
        const json& http = doc["http"];
        HttpGatewayConfig http_config;
        http_config.base_url = http.value("base_url", std::string{});
        http_config.path = http.value("path", http_config.path);
        http_config.model = http.value("model", std::string{});
        http_config.max_retries = http.value("max_retries", http_config.max_retries);
        http_config.timeout_seconds = http.value("timeout_seconds", http_config.timeout_seconds);
        config.http = std::move(http_config);
    }
    config.api_key_env = doc.value("api_key_env", config.api_key_env);
    if (doc.contains("prices")) {
        const json& prices = doc["prices"];
        config.prices = PriceTable::per_million(
            prices.value("input_per_million", 0.0), prices.value("output_per_million", 0.0),
            config.http ? config.http->model : std::string{"scripted"});
    }
    return config;
}

} // namespace

AppConfig AppConfig::from_json(const json& doc, const std::string& base_dir) {
    if (!doc.is_object()) {
        throw ParseError("config document must be a JSON object");
    }
    AppConfig config;
    config.taxonomy_path = resolve_path(base_dir, doc.value("taxonomy", std::string{}));
    config.catalog_path = resolve_path(base_dir, doc.value("catalog", std::string{}));
    if (doc.contains("prompts_dir")) {
        config.prompts_dir = resolve_path(base_dir, doc["prompts_dir"].get<std::string>());
    }
    if (doc.contains("mock_fixtures")) {
        config.mock_fixtures_path =
            resolve_path(base_dir, doc["mock_fixtures"].get<std::string>());
    }
    config.output_dir = resolve_path(base_dir, doc.value("output_dir", config.output_dir));
    if (doc.contains("gateway")) {
        config.gateway = gateway_from_json(doc["gateway"], base_dir);
    }
    if (doc.contains("judge")) {
        config.judge = gateway_from_json(doc["judge"], base_dir);
    }
    if (doc.contains("resolver")) {
        const json& resolver = doc["resolver"];
        config.resolver.top_k = resolver.value("top_k", config.resolver.top_k);
        config.resolver.summary_truncation =
            resolver.value("summary_truncation", config.resolver.summary_truncation);
        config.resolver.include_secondary =
            resolver.value("include_secondary", config.resolver.include_secondary);
        config.resolver.classification_retries =
            resolver.value("classification_retries", config.resolver.classification_retries);
    }
    if (doc.contains("loop")) {
        const json& loop = doc["loop"];
        config.loop.max_iterations = loop.value("max_iterations", config.loop.max_iterations);
        config.loop.allow_tool_calls =
            loop.value("allow_tool_calls", config.loop.allow_tool_calls);
        if (loop.contains("resolver_mode")) {
            config.loop.resolver_mode =
                resolver_mode_from(loop["resolver_mode"].get<std::string>());
        }
    }
    return config;
}

AppConfig AppConfig::load_file(const std::string& path) {
    json doc;
    try {
        doc = json::parse(read_file(path));
    } catch (const json::parse_error& e) {
        throw ParseError("config file " + path + ": " + e.what());
    }
    return from_json(doc, fs::path(path).parent_path().string());
}

void AppConfig::validate() const {
    auto require_file = [](const std::string& label, const std::string& path) {
        if (path.empty()) {
            throw ValidationError("config is missing a " + label + " path");
        }
        if (!fs::exists(path)) {
            throw ValidationError(label + " path does not exist: " + path);
        }
    };
    require_file("taxonomy", taxonomy_path);
    require_file("catalog", catalog_path);
    if (prompts_dir && !fs::is_directory(*prompts_dir)) {
        throw ValidationError("prompts_dir does not exist: " + *prompts_dir);
    }
    if (mock_fixtures_path && !fs::exists(*mock_fixtures_path)) {
        throw ValidationError("mock_fixtures path does not exist: " + *mock_fixtures_path);
    }
    if (gateway.script_path.has_value() == gateway.http.has_value()) {
        throw ValidationError("configure exactly one gateway backend (scripted or http)");
    }
    if (gateway.script_path && !fs::exists(*gateway.script_path)) {
        throw ValidationError("gateway script does not exist: " + *gateway.script_path);
    }
    resolver.validate();
    loop.validate();
}

PromptTemplates AppConfig::prompt_templates() const {
    if (prompts_dir) {
        return PromptTemplates::load_dir(*prompts_dir);
    }
    return PromptTemplates::bundled();
}

} // namespace jsplit

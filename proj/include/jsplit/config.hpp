#pragma once

#include "jsplit/llm_gateway.hpp"
#include "jsplit/orchestrator.hpp"
#include "jsplit/resolver.hpp"

#include <memory>
#include <optional>
#include <string>

namespace jsplit {

/// Gateway selection: exactly one of `script_path` (scripted backend) or
/// `http` (live backend) is configured.
struct GatewayConfig {
    std::optional<std::string> script_path;
    std::optional<HttpGatewayConfig> http;
    std::string api_key_env = "JSPLIT_API_KEY";
    PriceTable prices = PriceTable::per_million(0.0, 0.0);

    std::unique_ptr<LlmGateway> make_gateway() const;
};

/// Application configuration: a JSON file plus flag overrides (flags win).
struct AppConfig {
    std::string taxonomy_path;
    std::string catalog_path;
    std::optional<std::string> prompts_dir;
    std::optional<std::string> mock_fixtures_path;
    std::string output_dir = "out";

    GatewayConfig gateway;
    std::optional<GatewayConfig> judge;
    ResolverConfig resolver;
    LoopConfig loop;

    static AppConfig from_json(const nlohmann::json& doc, const std::string& base_dir);
    static AppConfig load_file(const std::string& path);

    /// Referenced paths exist, exactly one gateway backend configured.
    void validate() const;

    PromptTemplates prompt_templates() const;
};

} // namespace jsplit

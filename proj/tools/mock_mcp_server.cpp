// Standalone MCP server over stdio, driven by a declarative fixture file.
// Serves initialize / tools/list / tools/call with newline-delimited JSON-RPC,
// sharing the canned-reply evaluator with the in-process mock registry.
//
// usage: jsplit-mock-mcp <fixture.json> [server_id]

#include "jsplit/mcp_transport.hpp"
#include "jsplit/util.hpp"

#include <nlohmann/json.hpp>

#include <iostream>
#include <string>

using nlohmann::json;

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: jsplit-mock-mcp <fixture.json> [server_id]\n";
        return 2;
    }
    jsplit::mcp::MockServerFixture fixture;
    try {
        json doc = json::parse(jsplit::read_file(argv[1]));
        if (doc.is_array() || doc.contains("servers")) {
            // fixture file with several servers: pick by id (argv[2]) or take the first
            const json& list = doc.is_array() ? doc : doc["servers"];
            if (list.empty()) {
                std::cerr << "fixture file has no servers\n";
                return 2;
            }
            const json* chosen = &list[0];
            if (argc > 2) {
                chosen = nullptr;
                for (const auto& entry : list) {
                    if (entry.value("server_id", "") == argv[2]) {
                        chosen = &entry;
                        break;
                    }
                }
                if (chosen == nullptr) {
                    std::cerr << "no server '" << argv[2] << "' in fixture file\n";
                    return 2;
                }
            }
            fixture = jsplit::mcp::MockServerFixture::from_json(*chosen);
        } else {
            fixture = jsplit::mcp::MockServerFixture::from_json(doc);
        }
    } catch (const std::exception& e) {
        std::cerr << "cannot load fixture: " << e.what() << "\n";
        return 2;
    }

    std::string line;
    while (std::getline(std::cin, line)) {
        if (jsplit::trim(line).empty()) continue;
        std::string reply = jsplit::mcp::mock_dispatch(fixture, line);
        if (!reply.empty()) {
            std::cout << reply << "\n" << std::flush;
        }
    }
    return 0;
}

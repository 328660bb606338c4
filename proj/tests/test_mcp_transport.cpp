#include <doctest.h>

#include "jsplit/errors.hpp"
#include "jsplit/mcp_transport.hpp"
#include "jsplit/util.hpp"
#include "test_support.hpp"

#include <algorithm>

using namespace jsplit;
using namespace jsplit::mcp;
using nlohmann::json;

namespace {

MockServerRegistry demo_registry() {
    MockServerRegistry registry;
    registry.register_fixtures_file(testsupport::fixture_path("mock_servers.json"));
    return registry;
}

} // namespace

TEST_CASE("json-rpc framing is bit-exact") {
    RpcEnvelope envelope{json(1), "initialize", json{{"a", 1}}};
    CHECK(encode_request(envelope) ==
          R"({"id":1,"jsonrpc":"2.0","method":"initialize","params":{"a":1}})");
    CHECK(encode_notification("notifications/initialized", json{}) ==
          R"({"jsonrpc":"2.0","method":"notifications/initialized"})");
    CHECK(encode_response(json(4), json{{"ok", true}}) ==
          R"({"id":4,"jsonrpc":"2.0","result":{"ok":true}})");
    CHECK(encode_error(json(4), -32601, "nope") ==
          R"({"error":{"code":-32601,"message":"nope"},"id":4,"jsonrpc":"2.0"})");

    RpcEnvelope decoded = decode_request(encode_request(envelope));
    CHECK(decoded.id == envelope.id);
    CHECK(decoded.method == envelope.method);
    CHECK(decoded.params == envelope.params);

    CHECK_THROWS_AS(decode_request("{}"), ProtocolError);
    CHECK_THROWS_AS(decode_request("garbage"), ProtocolError);
}

TEST_CASE("in-process connections complete the MCP handshake") {
    MockServerRegistry registry = demo_registry();
    TransportFactory factory(&registry);

    auto conn = factory.connect({TransportKind::in_process, "echo-server"}, "echo-server");
    REQUIRE(conn != nullptr);

    auto tools = conn->list_tools();
    REQUIRE(tools.size() == 1);
    CHECK(tools[0].name == "echo");

    SUBCASE("echo returns its argument") {
        ToolResult result = conn->call_tool("echo", json{{"text", "hi"}});
        CHECK_FALSE(result.is_error);
        CHECK(result.text() == "hi");
    }
    SUBCASE("unknown tools are protocol errors without a wire exchange") {
        CHECK_THROWS_AS(conn->call_tool("not_a_tool", json::object()), ProtocolError);
        CHECK(conn->call_log().empty());
    }
    SUBCASE("unknown mock keys fail to connect") {
        CHECK_THROWS_AS(factory.connect({TransportKind::in_process, "nope"}, "nope"),
                        TransportError);
    }
}

TEST_CASE("mock fixtures evaluate canned replies deterministically") {
    MockServerRegistry registry = demo_registry();
    TransportFactory factory(&registry);
    auto conn =
        factory.connect({TransportKind::in_process, "weather-server"}, "weather-server");

    SUBCASE("match_args picks the specific reply") {
        ToolResult reykjavik = conn->call_tool("current_weather", json{{"city", "Reykjavik"}});
        CHECK(reykjavik.text().find("sleet") != std::string::npos);
        ToolResult other = conn->call_tool("current_weather", json{{"city", "Lisbon"}});
        CHECK(other.text().find("clear") != std::string::npos);
    }
    SUBCASE("zero-tool listing works") {
        MockServerRegistry empty_registry;
        empty_registry.register_fixture(
            MockServerFixture::from_json(json{{"server_id", "empty"}, {"tools", json::array()}}));
        TransportFactory empty_factory(&empty_registry);
        auto empty_conn = empty_factory.connect({TransportKind::in_process, "empty"}, "empty");
        CHECK(empty_conn->list_tools().empty());
    }
}

TEST_CASE("call log records every invocation exactly once") {
    MockServerRegistry registry = demo_registry();
    TransportFactory factory(&registry);
    auto conn =
        factory.connect({TransportKind::in_process, "weather-server"}, "weather-server");

    conn->call_tool("current_weather", json{{"city", "Reykjavik"}});
    conn->call_tool("forecast", json{{"city", "Oslo"}});
    ToolResult error_result = conn->call_tool("current_weather", json::object());
    (void)error_result;

    const auto& log = conn->call_log();
    REQUIRE(log.size() == 3);
    CHECK(log[0].tool_name == "current_weather");
    CHECK(log[0].server_id == "weather-server");
    CHECK(log[1].tool_name == "forecast");
    CHECK(log[0].arguments == json{{"city", "Reykjavik"}});
}

TEST_CASE("listed tools match the catalog fixture for demo servers") {
    MockServerRegistry registry = demo_registry();
    TransportFactory factory(&registry);
    Catalog demo = load_catalog_file(testsupport::fixture_path("demo_catalog.jsonl"));
    for (const auto& entry : demo.entries()) {
        if (!entry.endpoint || entry.endpoint->kind != TransportKind::in_process) continue;
        if (registry.find(entry.endpoint->locator) == nullptr) continue;
        auto conn = factory.connect(*entry.endpoint, entry.server_id);
        auto listed = conn->list_tools();
        REQUIRE(listed.size() == entry.tools.size());
        for (std::size_t i = 0; i < listed.size(); ++i) {
            CHECK(listed[i].name == entry.tools[i].name);
        }
    }
}

TEST_CASE("responses with unknown ids are never delivered") {
    // a fake connection that replays responses in a shuffled order
    class ShuffledConnection : public Connection {
    public:
        explicit ShuffledConnection(std::vector<std::string> frames)
            : Connection("shuffled"), frames_(std::move(frames)) {}

        json do_request(const std::string& method, const json& params) {
            return request(method, params);
        }

    protected:
        void send_frame(const std::string&) override {}
        std::optional<std::string> receive_frame() override {
            if (next_ >= frames_.size()) return std::nullopt;
            return frames_[next_++];
        }

    private:
        std::vector<std::string> frames_;
        std::size_t next_ = 0;
    };

    SUBCASE("a foreign id is skipped until the matching one arrives") {
        ShuffledConnection conn({
            encode_response(json(99), json{{"wrong", true}}),
            encode_response(json("other"), json{{"wrong", true}}),
            encode_response(json(1), json{{"right", true}}),
        });
        json result = conn.do_request("tools/list", json::object());
        CHECK(result == json{{"right", true}});
    }
    SUBCASE("exhausting frames without a match is a transport error") {
        ShuffledConnection conn({encode_response(json(42), json{{"wrong", true}})});
        CHECK_THROWS_AS(conn.do_request("tools/list", json::object()), TransportError);
    }
    SUBCASE("rpc error replies become protocol errors") {
        ShuffledConnection conn({encode_error(json(1), -32601, "method not found")});
        CHECK_THROWS_WITH_AS(conn.do_request("tools/x", json::object()),
                             doctest::Contains("method not found"), ProtocolError);
    }
}

TEST_CASE("stdio transport talks to the spawned mock server") {
    std::string command = std::string(JSPLIT_MOCK_MCP_PATH) + " " +
                          testsupport::fixture_path("mock_servers.json") + " echo-server";
    TransportFactory factory(nullptr);
    auto conn = factory.connect({TransportKind::stdio_command, command}, "echo-server");

    auto tools = conn->list_tools();
    REQUIRE(tools.size() == 1);
    CHECK(tools[0].name == "echo");

    ToolResult result = conn->call_tool("echo", json{{"text", "over stdio"}});
    CHECK_FALSE(result.is_error);
    CHECK(result.text() == "over stdio");
    CHECK(conn->call_log().size() == 1);
}

TEST_CASE("stdio transport reports immediate child exits") {
    TransportFactory factory(nullptr);
    CHECK_THROWS_AS(factory.connect({TransportKind::stdio_command, "exit 3"}, "dead"),
                    TransportError);
    try {
        factory.connect({TransportKind::stdio_command, "exit 3"}, "dead");
    } catch (const TransportError& e) {
        CHECK(std::string(e.what()).find("exited") != std::string::npos);
    }
}

TEST_CASE("wire frames match the recorded goldens") {
    std::string golden_path = std::string(JSPLIT_SOURCE_DIR) + "/tests/golden/rpc_frames.jsonl";
    std::vector<std::string> lines;
    {
        std::string raw = read_file(golden_path);
        for (auto& line : split(raw, '\n')) {
            if (!trim(line).empty()) lines.push_back(line);
        }
    }
    REQUIRE(lines.size() == 6);

    json init_params = {{"protocolVersion", kProtocolVersion},
                        {"capabilities", json::object()},
                        {"clientInfo", {{"name", "jsplit"}, {"version", "0.1.0"}}}};
    CHECK(encode_request({json(1), "initialize", init_params}) == lines[0]);
    CHECK(encode_notification("notifications/initialized", json{}) == lines[1]);
    CHECK(encode_request({json(2), "tools/list", json::object()}) == lines[2]);
    CHECK(encode_request({json(3), "tools/call",
                          json{{"name", "echo"}, {"arguments", {{"text", "hi"}}}}}) ==
          lines[3]);

    // responses round-trip bit-exactly: parse -> re-encode -> identical bytes
    for (std::size_t i = 4; i < 6; ++i) {
        json parsed = json::parse(lines[i]);
        CHECK(encode_response(parsed["id"], parsed["result"]) == lines[i]);
    }
}

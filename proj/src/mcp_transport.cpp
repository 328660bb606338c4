#include "jsplit/mcp_transport.hpp"

#include "jsplit/errors.hpp"
#include "jsplit/net_guard.hpp"
#include "jsplit/util.hpp"

#include <httplib.h>

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <unordered_set>

namespace jsplit::mcp {

using nlohmann::json;

// -- framing ------------------------------------------------------------------

std::string encode_request(const RpcEnvelope& envelope) {
    json frame;
    frame["id"] = envelope.id;
    frame["jsonrpc"] = "2.0";
    frame["method"] = envelope.method;
    frame["params"] = envelope.params;
    return frame.dump();
}

std::string encode_notification(const std::string& method, const json& params) {
    json frame;
    frame["jsonrpc"] = "2.0";
    frame["method"] = method;
    if (!params.is_null()) {
        frame["params"] = params;
    }
    return frame.dump();
}

RpcEnvelope decode_request(const std::string& text) {
    json frame;
    try {
        frame = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ProtocolError(std::string("frame is not valid JSON: ") + e.what());
    }
    if (!frame.is_object() || frame.value("jsonrpc", "") != "2.0" ||
        !frame.contains("method") || !frame["method"].is_string()) {
        throw ProtocolError("frame is not a JSON-RPC 2.0 request");
    }
    RpcEnvelope envelope;
    envelope.id = frame.contains("id") ? frame["id"] : json{};
    envelope.method = frame["method"].get<std::string>();
    envelope.params = frame.contains("params") ? frame["params"] : json::object();
    return envelope;
}

std::string encode_response(const json& id, const json& result) {
    json frame;
    frame["id"] = id;
    frame["jsonrpc"] = "2.0";
    frame["result"] = result;
    return frame.dump();
}

std::string encode_error(const json& id, int code, const std::string& message) {
    json frame;
    frame["error"] = {{"code", code}, {"message", message}};
    frame["id"] = id;
    frame["jsonrpc"] = "2.0";
    return frame.dump();
}

// -- Connection ---------------------------------------------------------------

void Connection::initialize() {
    json params = {{"protocolVersion", kProtocolVersion},
                   {"capabilities", json::object()},
                   {"clientInfo", {{"name", "jsplit"}, {"version", "0.1.0"}}}};
    json result = request("initialize", params);
    if (!result.is_object() || !result.contains("protocolVersion")) {
        throw ProtocolError("server '" + server_id_ + "': initialize result malformed");
    }
    send_notification_frame(encode_notification("notifications/initialized", json{}));

    json tools_result = request("tools/list", json::object());
    if (!tools_result.is_object() || !tools_result.contains("tools") ||
        !tools_result["tools"].is_array()) {
        throw ProtocolError("server '" + server_id_ + "': tools/list result malformed");
    }
    std::unordered_set<std::string> names;
    for (const auto& t : tools_result["tools"]) {
        ToolSpec tool;
        if (!t.is_object() || !t.contains("name") || !t["name"].is_string()) {
            throw ProtocolError("server '" + server_id_ + "': tool entry without a name");
        }
        tool.name = t["name"].get<std::string>();
        tool.description = t.value("description", std::string{});
        if (t.contains("inputSchema")) {
            tool.input_schema = t["inputSchema"];
        }
        if (!names.insert(tool.name).second) {
            throw ProtocolError("server '" + server_id_ + "': duplicate tool '" + tool.name +
                                "' in tools/list");
        }
        tools_.push_back(std::move(tool));
    }
    initialized_ = true;
}

std::vector<ToolSpec> Connection::list_tools() {
    if (!initialized_) {
        throw ProtocolError("connection to '" + server_id_ + "' is not initialized");
    }
    return tools_;
}

json Connection::request(const std::string& method, const json& params) {
    RpcEnvelope envelope{json(next_id_++), method, params};
    send_frame(encode_request(envelope));
    // Strict alternation: keep reading until the reply for our id shows up.
    // Frames with unknown ids are dropped, never delivered.
    for (;;) {
        std::optional<std::string> frame = receive_frame();
        if (!frame) {
            throw TransportError("server '" + server_id_ + "': connection closed while waiting for '" +
                                 method + "' response");
        }
        json reply;
        try {
            reply = json::parse(*frame);
        } catch (const json::parse_error& e) {
            throw ProtocolError("server '" + server_id_ + "': reply is not JSON: " + e.what());
        }
        if (!reply.is_object() || reply.value("jsonrpc", "") != "2.0") {
            throw ProtocolError("server '" + server_id_ + "': reply is not JSON-RPC 2.0");
        }
        if (!reply.contains("id") || reply["id"] != envelope.id) {
            continue; // response to an unknown id: discard
        }
        if (reply.contains("error")) {
            const json& err = reply["error"];
            throw ProtocolError("server '" + server_id_ + "': " + method + " failed: " +
                                err.value("message", std::string{"unknown error"}));
        }
        if (!reply.contains("result")) {
            throw ProtocolError("server '" + server_id_ + "': reply carries neither result nor error");
        }
        return reply["result"];
    }
}

ToolResult Connection::call_tool(const std::string& tool_name, const json& arguments) {
    if (!initialized_) {
        throw ProtocolError("connection to '" + server_id_ + "' is not initialized");
    }
    bool declared = false;
    for (const auto& tool : tools_) {
        if (tool.name == tool_name) {
            declared = true;
            break;
        }
    }
    if (!declared) {
        throw ProtocolError("server '" + server_id_ + "' does not declare tool '" +
                            tool_name + "'");
    }

    call_log_.push_back(
        {server_id_, tool_name, arguments, false, std::chrono::steady_clock::now()});
    CallLogEntry& log_entry = call_log_.back();

    json result;
    try {
        result = request("tools/call", {{"name", tool_name}, {"arguments", arguments}});
    } catch (...) {
        log_entry.is_error = true;
        throw;
    }

    ToolResult tool_result;
    if (result.is_object()) {
        tool_result.is_error = result.value("isError", false);
        tool_result.content = result.contains("content") ? result["content"] : json{};
    } else {
        tool_result.content = result;
    }
    log_entry.is_error = tool_result.is_error;
    return tool_result;
}

// -- in-process transport -------------------------------------------------------

namespace {

class InProcessConnection final : public Connection {
public:
    InProcessConnection(std::string server_id, const MockServerFixture& fixture)
        : Connection(std::move(server_id)), fixture_(fixture) {
        initialize();
    }

protected:
    void send_frame(const std::string& frame) override {
        pending_ = mock_dispatch(fixture_, frame);
    }

    std::optional<std::string> receive_frame() override {
        if (pending_.empty()) {
            return std::nullopt;
        }
        std::string out = std::move(pending_);
        pending_.clear();
        return out;
    }

private:
    const MockServerFixture& fixture_;
    std::string pending_;
};

// -- stdio transport -------------------------------------------------------------

class StdioConnection final : public Connection {
public:
    StdioConnection(std::string server_id, const std::string& command, int timeout_ms = 15000)
        : Connection(std::move(server_id)), command_(command), timeout_ms_(timeout_ms) {
        spawn();
        try {
            initialize();
        } catch (const TransportError& e) {
            throw TransportError(std::string(e.what()) + exit_context());
        }
    }

    ~StdioConnection() override {
        if (stdin_fd_ >= 0) close(stdin_fd_);
        if (stdout_fd_ >= 0) close(stdout_fd_);
        if (pid_ > 0) {
            int status = 0;
            if (waitpid(pid_, &status, WNOHANG) == 0) {
                kill(pid_, SIGTERM);
                waitpid(pid_, &status, 0);
            }
        }
    }

protected:
    void send_frame(const std::string& frame) override {
        std::string line = frame + "\n";
        const char* data = line.data();
        std::size_t remaining = line.size();
        while (remaining > 0) {
            ssize_t n = ::write(stdin_fd_, data, remaining);
            if (n < 0) {
                if (errno == EINTR) continue;
                throw TransportError("server '" + server_id() + "': write failed: " +
                                     std::strerror(errno) + exit_context());
            }
            data += n;
            remaining -= static_cast<std::size_t>(n);
        }
    }

    std::optional<std::string> receive_frame() override {
        for (;;) {
            auto newline = buffer_.find('\n');
            if (newline != std::string::npos) {
                std::string line = buffer_.substr(0, newline);
                buffer_.erase(0, newline + 1);
                if (trim(line).empty()) continue;
                return line;
            }
            struct pollfd pfd{stdout_fd_, POLLIN, 0};
            int ready = ::poll(&pfd, 1, timeout_ms_);
            if (ready < 0) {
                if (errno == EINTR) continue;
                throw TransportError("server '" + server_id() + "': poll failed: " +
                                     std::strerror(errno));
            }
            if (ready == 0) {
                throw TransportError("server '" + server_id() + "': timed out after " +
                                     std::to_string(timeout_ms_) + " ms" + exit_context());
            }
            char chunk[4096];
            ssize_t n = ::read(stdout_fd_, chunk, sizeof chunk);
            if (n < 0) {
                if (errno == EINTR) continue;
                throw TransportError("server '" + server_id() + "': read failed: " +
                                     std::strerror(errno));
            }
            if (n == 0) {
                return std::nullopt; // EOF
            }
            buffer_.append(chunk, static_cast<std::size_t>(n));
        }
    }

private:
    void spawn() {
        signal(SIGPIPE, SIG_IGN); // dead children must surface as EPIPE, not a signal
        int to_child[2];
        int from_child[2];
        if (pipe(to_child) != 0 || pipe(from_child) != 0) {
            throw TransportError("pipe() failed: " + std::string(std::strerror(errno)));
        }
        pid_ = fork();
        if (pid_ < 0) {
            throw TransportError("fork() failed: " + std::string(std::strerror(errno)));
        }
        if (pid_ == 0) {
            dup2(to_child[0], STDIN_FILENO);
            dup2(from_child[1], STDOUT_FILENO);
            close(to_child[0]);
            close(to_child[1]);
            close(from_child[0]);
            close(from_child[1]);
            execl("/bin/sh", "sh", "-c", command_.c_str(), static_cast<char*>(nullptr));
            _exit(127);
        }
        close(to_child[0]);
        close(from_child[1]);
        stdin_fd_ = to_child[1];
        stdout_fd_ = from_child[0];
    }

    std::string exit_context() {
        if (pid_ <= 0) return {};
        int status = 0;
        pid_t done;
        do {
            done = waitpid(pid_, &status, 0); // EOF already seen: child is gone
        } while (done < 0 && errno == EINTR);
        if (done != pid_) return {};
        pid_ = -1;
        if (WIFEXITED(status)) {
            return " (child exited with status " + std::to_string(WEXITSTATUS(status)) + ")";
        }
        if (WIFSIGNALED(status)) {
            return " (child killed by signal " + std::to_string(WTERMSIG(status)) + ")";
        }
        return {};
    }

    std::string command_;
    int timeout_ms_;
    pid_t pid_ = -1;
    int stdin_fd_ = -1;
    int stdout_fd_ = -1;
    std::string buffer_;
};

// -- http transport ---------------------------------------------------------------

class HttpConnection final : public Connection {
public:
    HttpConnection(std::string server_id, const std::string& url)
        : Connection(std::move(server_id)) {
        require_network_allowed("mcp http transport");
        auto path_start = url.find('/', url.find("//") + 2);
        if (url.find("//") == std::string::npos) {
            throw TransportError("http endpoint '" + url + "' is not a URL");
        }
        if (path_start == std::string::npos) {
            base_ = url;
            path_ = "/";
        } else {
            base_ = url.substr(0, path_start);
            path_ = url.substr(path_start);
        }
        initialize();
    }

protected:
    void send_frame(const std::string& frame) override {
        httplib::Client client(base_);
        client.set_connection_timeout(15, 0);
        client.set_read_timeout(60, 0);
        auto res = client.Post(path_, frame, "application/json");
        if (!res) {
            throw TransportError("server '" + server_id() + "': POST failed: " +
                                 httplib::to_string(res.error()));
        }
        if (res->status != 200) {
            throw TransportError("server '" + server_id() + "': HTTP " +
                                 std::to_string(res->status));
        }
        pending_ = res->body;
    }

    void send_notification_frame(const std::string& frame) override {
        send_frame(frame);
        pending_.clear(); // notifications have no reply worth keeping
    }

    std::optional<std::string> receive_frame() override {
        if (pending_.empty()) {
            return std::nullopt;
        }
        std::string out = std::move(pending_);
        pending_.clear();
        return out;
    }

private:
    std::string base_;
    std::string path_;
    std::string pending_;
};

} // namespace

// -- mock fixtures -----------------------------------------------------------------

MockServerFixture MockServerFixture::from_json(const json& doc) {
    if (!doc.is_object() || !doc.contains("server_id") || !doc["server_id"].is_string()) {
        throw ParseError("mock fixture needs a string server_id");
    }
    MockServerFixture fixture;
    fixture.server_id = doc["server_id"].get<std::string>();
    fixture.raw = doc;
    if (doc.contains("tools")) {
        for (const auto& t : doc["tools"]) {
            ToolSpec tool;
            tool.name = t.value("name", std::string{});
            if (tool.name.empty()) {
                throw ParseError("mock fixture '" + fixture.server_id +
                                 "': tool without a name");
            }
            tool.description = t.value("description", std::string{});
            if (t.contains("input_schema")) {
                tool.input_schema = t["input_schema"];
            }
            fixture.tools.push_back(std::move(tool));
        }
    }
    return fixture;
}

namespace {

bool args_match(const json& match_args, const json& arguments) {
    if (match_args.is_null()) return true;
    if (!match_args.is_object()) return false;
    for (auto it = match_args.begin(); it != match_args.end(); ++it) {
        if (!arguments.is_object() || !arguments.contains(it.key()) ||
            arguments[it.key()] != it.value()) {
            return false;
        }
    }
    return true;
}

json text_content(const std::string& text) {
    return json::array({{{"type", "text"}, {"text", text}}});
}

} // namespace

json mock_call_result(const MockServerFixture& fixture, const std::string& tool_name,
                      const json& arguments) {
    const json* tool_doc = nullptr;
    if (fixture.raw.contains("tools")) {
        for (const auto& t : fixture.raw["tools"]) {
            if (t.value("name", "") == tool_name) {
                tool_doc = &t;
                break;
            }
        }
    }
    if (tool_doc == nullptr) {
        return json{{"content", text_content("unknown tool: " + tool_name)},
                    {"isError", true}};
    }
    const json& replies = tool_doc->contains("canned_replies")
                              ? (*tool_doc)["canned_replies"]
                              : json::array();
    for (const auto& rule : replies) {
        if (!args_match(rule.contains("match_args") ? rule["match_args"] : json{},
                        arguments)) {
            continue;
        }
        const json& reply = rule.contains("reply") ? rule["reply"] : json{};
        if (reply.is_object() && reply.contains("error")) {
            return json{{"content", text_content(reply["error"].get<std::string>())},
                        {"isError", true}};
        }
        if (reply.is_object() && reply.contains("echo_arg")) {
            std::string arg = reply["echo_arg"].get<std::string>();
            json value = arguments.is_object() && arguments.contains(arg)
                             ? arguments[arg]
                             : json{};
            std::string text = value.is_string() ? value.get<std::string>() : value.dump();
            return json{{"content", text_content(text)}, {"isError", false}};
        }
        if (reply.is_object() && reply.contains("json")) {
            return json{{"content", text_content(reply["json"].dump())},
                        {"isError", false}};
        }
        if (reply.is_object() && reply.contains("text")) {
            return json{{"content", text_content(reply["text"].get<std::string>())},
                        {"isError", false}};
        }
        if (reply.is_string()) {
            return json{{"content", text_content(reply.get<std::string>())},
                        {"isError", false}};
        }
    }
    return json{{"content", text_content("no canned reply matched")}, {"isError", true}};
}

std::string mock_dispatch(const MockServerFixture& fixture, const std::string& frame) {
    RpcEnvelope envelope;
    try {
        envelope = decode_request(frame);
    } catch (const ProtocolError& e) {
        return encode_error(json{}, -32700, e.what());
    }
    if (envelope.id.is_null()) {
        return {}; // notification
    }
    if (envelope.method == "initialize") {
        json result = {{"protocolVersion", kProtocolVersion},
                       {"capabilities", {{"tools", json::object()}}},
                       {"serverInfo",
                        {{"name", "jsplit-mock:" + fixture.server_id},
                         {"version", "0.1.0"}}}};
        return encode_response(envelope.id, result);
    }
    if (envelope.method == "tools/list") {
        json tools = json::array();
        for (const auto& tool : fixture.tools) {
            json schema = tool.input_schema;
            if (!schema.is_object() || schema.empty()) {
                schema = {{"type", "object"}, {"properties", json::object()}};
            }
            tools.push_back({{"name", tool.name},
                             {"description", tool.description},
                             {"inputSchema", schema}});
        }
        return encode_response(envelope.id, json{{"tools", tools}});
    }
    if (envelope.method == "tools/call") {
        std::string name = envelope.params.value("name", std::string{});
        json arguments = envelope.params.contains("arguments") ? envelope.params["arguments"]
                                                               : json::object();
        if (name.empty()) {
            return encode_error(envelope.id, -32602, "tools/call needs a tool name");
        }
        return encode_response(envelope.id, mock_call_result(fixture, name, arguments));
    }
    return encode_error(envelope.id, -32601, "method not found: " + envelope.method);
}

// -- registry & factory --------------------------------------------------------------

void MockServerRegistry::register_fixture(MockServerFixture fixture) {
    std::string key = fixture.server_id;
    fixtures_.insert_or_assign(std::move(key), std::move(fixture));
}

void MockServerRegistry::register_fixtures_file(const std::string& path) {
    json doc;
    try {
        doc = json::parse(read_file(path));
    } catch (const json::parse_error& e) {
        throw ParseError("mock fixtures file " + path + ": " + e.what());
    }
    const json& list = doc.is_array() ? doc : doc.at("servers");
    for (const auto& entry : list) {
        register_fixture(MockServerFixture::from_json(entry));
    }
}

void MockServerRegistry::register_default(const std::string& server_id,
                                          const std::vector<ToolSpec>& tools) {
    json doc;
    doc["server_id"] = server_id;
    json tool_docs = json::array();
    for (const auto& tool : tools) {
        tool_docs.push_back(
            {{"name", tool.name},
             {"description", tool.description},
             {"input_schema", tool.input_schema},
             {"canned_replies",
              json::array({{{"reply", {{"json", {{"status", "ok"}, {"tool", tool.name}}}}}}})}});
    }
    doc["tools"] = std::move(tool_docs);
    register_fixture(MockServerFixture::from_json(doc));
}

const MockServerFixture* MockServerRegistry::find(const std::string& key) const noexcept {
    auto it = fixtures_.find(key);
    return it == fixtures_.end() ? nullptr : &it->second;
}

std::unique_ptr<Connection> TransportFactory::connect(const TransportAddress& address,
                                                      const std::string& server_id) const {
    switch (address.kind) {
    case TransportKind::in_process: {
        const std::string& key = address.locator.empty() ? server_id : address.locator;
        if (mocks_ == nullptr) {
            throw TransportError("no mock registry configured for in-process server '" +
                                 key + "'");
        }
        const MockServerFixture* fixture = mocks_->find(key);
        if (fixture == nullptr) {
            throw TransportError("no mock fixture registered under '" + key + "'");
        }
        return std::make_unique<InProcessConnection>(server_id, *fixture);
    }
    case TransportKind::stdio_command:
        if (address.locator.empty()) {
            throw TransportError("stdio endpoint has an empty command");
        }
        return std::make_unique<StdioConnection>(server_id, address.locator);
    case TransportKind::http_url:
        if (address.locator.empty()) {
            throw TransportError("http endpoint has an empty URL");
        }
        return std::make_unique<HttpConnection>(server_id, address.locator);
    }
    throw TransportError("unsupported transport kind");
}

} // namespace jsplit::mcp

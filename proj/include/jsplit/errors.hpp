#pragma once

#include <stdexcept>
#include <string>

namespace jsplit {

/// Base class for every error thrown by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed input text: bad JSON, bad dotted id, bad record framing.
class ParseError : public Error {
public:
    using Error::Error;
};

/// Well-formed input that violates a domain invariant (duplicate id,
/// missing field, dangling reference).
class ValidationError : public Error {
public:
    using Error::Error;
};

/// A request exceeded a hard capacity: sample pool too small, counter overflow.
class CapacityError : public Error {
public:
    using Error::Error;
};

/// LLM backend failure. `retryable` distinguishes transient transport
/// problems from protocol-level ones (e.g. a response without usage).
class GatewayError : public Error {
public:
    GatewayError(const std::string& what, bool retryable)
        : Error(what), retryable_(retryable) {}
    bool retryable() const noexcept { return retryable_; }

private:
    bool retryable_;
};

/// The scripted backend ran out of matching rules for a conversation.
class ScriptError : public Error {
public:
    using Error::Error;
};

/// MCP connection-level failure: spawn error, closed socket, EOF.
class TransportError : public Error {
public:
    using Error::Error;
};

/// The MCP peer responded, but not with valid protocol.
class ProtocolError : public Error {
public:
    using Error::Error;
};

/// Resolution cannot start: no taxonomy category has any server.
class NoCandidatesError : public Error {
public:
    using Error::Error;
};

} // namespace jsplit

#pragma once

#include <string>

namespace jsplit {

/// True when JSPLIT_NO_NETWORK is set in the environment. Test runs set it to
/// prove that scripted/in-process configurations never touch the network.
bool network_disabled() noexcept;

/// Throws GatewayError when the guard is active. Called on every code path
/// that would open a socket.
void require_network_allowed(const std::string& who);

} // namespace jsplit

#include "jsplit/net_guard.hpp"

#include "jsplit/errors.hpp"

#include <cstdlib>

namespace jsplit {

bool network_disabled() noexcept {
    const char* value = std::getenv("JSPLIT_NO_NETWORK");
    return value != nullptr && value[0] != '\0' && std::string_view(value) != "0";
}

void require_network_allowed(const std::string& who) {
    if (network_disabled()) {
        throw GatewayError(who + ": network access attempted while JSPLIT_NO_NETWORK is set",
                           false);
    }
}

} // namespace jsplit

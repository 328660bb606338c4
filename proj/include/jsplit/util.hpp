#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace jsplit {

/// FNV-1a 64-bit over raw bytes. Stable across platforms, unlike std::hash.
std::uint64_t fnv1a64(std::string_view bytes) noexcept;

/// splitmix64 mixing step; used for stable seed derivation.
std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Stable per-(case, level) seed: hash(master_seed, case_id, level).
std::uint64_t derive_seed(std::uint64_t master_seed, std::string_view case_id,
                          std::uint64_t level) noexcept;

/// Uniform draw in [0, n) by rejection sampling, so results do not depend
/// on the standard library's distribution implementation. `n` must be > 0.
template <typename Rng>
std::uint64_t bounded_rand(Rng& rng, std::uint64_t n) {
    const std::uint64_t limit = (UINT64_MAX / n) * n;
    std::uint64_t r = rng();
    while (r >= limit) {
        r = rng();
    }
    return r % n;
}

/// Truncate to at most `max_points` Unicode code points, appending `suffix`
/// when anything was cut. Never splits a UTF-8 sequence.
std::string truncate_utf8(std::string_view text, std::size_t max_points,
                          std::string_view suffix = "\xE2\x80\xA6");

/// Number of Unicode code points in a UTF-8 string (bytes on invalid input).
std::size_t utf8_length(std::string_view text) noexcept;

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

std::string trim(std::string_view s);
std::vector<std::string> split(std::string_view s, char sep);
std::string to_lower(std::string_view s);

/// "fnv1a64:<16 hex digits>" identifier for a text artifact (prompt templates).
std::string content_hash(std::string_view text);

} // namespace jsplit

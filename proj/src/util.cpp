#include "jsplit/util.hpp"

#include "jsplit/errors.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace jsplit {

std::uint64_t fnv1a64(std::string_view bytes) noexcept {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t master_seed, std::string_view case_id,
                          std::uint64_t level) noexcept {
    std::uint64_t h = fnv1a64(case_id);
    h = splitmix64(h ^ splitmix64(master_seed));
    h = splitmix64(h ^ splitmix64(level * 0x9e3779b97f4a7c15ull + 1));
    return h;
}

namespace {

std::size_t utf8_sequence_length(unsigned char lead) noexcept {
    if (lead < 0x80) return 1;
    if ((lead >> 5) == 0x6) return 2;
    if ((lead >> 4) == 0xe) return 3;
    if ((lead >> 3) == 0x1e) return 4;
    return 1; // invalid byte, treat as one unit
}

} // namespace

std::size_t utf8_length(std::string_view text) noexcept {
    std::size_t points = 0;
    for (std::size_t i = 0; i < text.size();) {
        i += utf8_sequence_length(static_cast<unsigned char>(text[i]));
        ++points;
    }
    return points;
}

std::string truncate_utf8(std::string_view text, std::size_t max_points,
                          std::string_view suffix) {
    std::size_t points = 0;
    std::size_t i = 0;
    while (i < text.size() && points < max_points) {
        i += utf8_sequence_length(static_cast<unsigned char>(text[i]));
        ++points;
    }
    if (i >= text.size()) {
        return std::string(text);
    }
    std::string out(text.substr(0, i));
    out += suffix;
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParseError("cannot open file: " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw Error("cannot write file: " + path);
    }
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) {
        throw Error("short write: " + path);
    }
}

std::string trim(std::string_view s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

std::vector<std::string> split(std::string_view s, char sep) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= s.size(); ++i) {
        if (i == s.size() || s[i] == sep) {
            parts.emplace_back(s.substr(start, i - start));
            start = i + 1;
        }
    }
    return parts;
}

std::string to_lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

std::string content_hash(std::string_view text) {
    static const char* hex = "0123456789abcdef";
    std::uint64_t h = fnv1a64(text);
    std::string out = "fnv1a64:";
    for (int shift = 60; shift >= 0; shift -= 4) {
        out += hex[(h >> shift) & 0xf];
    }
    return out;
}

} // namespace jsplit

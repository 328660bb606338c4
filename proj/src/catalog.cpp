#include "jsplit/catalog.hpp"

#include "jsplit/errors.hpp"
#include "jsplit/util.hpp"

#include <algorithm>
#include <random>
#include <sstream>
#include <unordered_set>

namespace jsplit {

using nlohmann::json;

// -- Catalog ------------------------------------------------------------------

Catalog Catalog::from_entries(std::vector<McpServerEntry> entries) {
    Catalog catalog;
    catalog.entries_ = std::move(entries);
    for (std::size_t i = 0; i < catalog.entries_.size(); ++i) {
        const McpServerEntry& e = catalog.entries_[i];
        if (e.server_id.empty()) {
            throw ValidationError("entry #" + std::to_string(i) + " has an empty server_id");
        }
        if (!catalog.by_id_.emplace(e.server_id, i).second) {
            throw ValidationError("duplicate server_id '" + e.server_id + "'");
        }
        if (e.primary_category.empty()) {
            throw ValidationError("server '" + e.server_id + "' has no primary_category");
        }
        if (!is_well_formed_id(e.primary_category)) {
            throw ValidationError("server '" + e.server_id + "': primary_category '" +
                                  e.primary_category + "' is not a dotted id");
        }
        for (const auto& cat : e.secondary_categories) {
            if (!is_well_formed_id(cat)) {
                throw ValidationError("server '" + e.server_id + "': secondary category '" +
                                      cat + "' is not a dotted id");
            }
        }
        std::unordered_set<std::string> tool_names;
        for (const auto& tool : e.tools) {
            if (tool.name.empty()) {
                throw ValidationError("server '" + e.server_id + "' has a tool with no name");
            }
            if (!tool_names.insert(tool.name).second) {
                throw ValidationError("server '" + e.server_id + "': duplicate tool '" +
                                      tool.name + "'");
            }
        }
        if (e.tools.empty() && e.endpoint.has_value()) {
            throw ValidationError("server '" + e.server_id +
                                  "' has an endpoint but no tools");
        }
        catalog.by_category_[e.primary_category].push_back(e.server_id);
    }
    return catalog;
}

const McpServerEntry* Catalog::find(std::string_view server_id) const noexcept {
    auto it = by_id_.find(std::string(server_id));
    if (it == by_id_.end()) return nullptr;
    return &entries_[it->second];
}

const std::vector<std::string>&
Catalog::servers_for_category(const std::string& category) const {
    static const std::vector<std::string> empty;
    auto it = by_category_.find(category);
    return it == by_category_.end() ? empty : it->second;
}

// -- record (de)serialization ---------------------------------------------------

McpServerEntry entry_from_json(const json& record) {
    if (!record.is_object()) {
        throw ParseError("catalog record is not an object");
    }
    McpServerEntry entry;
    auto require_string = [&](const char* key) -> std::string {
        if (!record.contains(key) || !record[key].is_string()) {
            throw ValidationError(std::string("catalog record missing string field '") +
                                  key + "'");
        }
        return record[key].get<std::string>();
    };
    entry.server_id = require_string("server_id");
    entry.name = require_string("name");
    entry.description = record.value("description", std::string{});
    entry.primary_category = require_string("primary_category");
    if (record.contains("secondary_categories")) {
        if (!record["secondary_categories"].is_array()) {
            throw ValidationError("server '" + entry.server_id +
                                  "': secondary_categories must be an array");
        }
        for (const auto& cat : record["secondary_categories"]) {
            if (!cat.is_string()) {
                throw ValidationError("server '" + entry.server_id +
                                      "': secondary category must be a string");
            }
            entry.secondary_categories.push_back(cat.get<std::string>());
        }
    }
    if (record.contains("tools")) {
        if (!record["tools"].is_array()) {
            throw ValidationError("server '" + entry.server_id + "': tools must be an array");
        }
        for (const auto& t : record["tools"]) {
            ToolSpec tool;
            if (!t.is_object() || !t.contains("name") || !t["name"].is_string()) {
                throw ValidationError("server '" + entry.server_id +
                                      "': tool record missing a string name");
            }
            tool.name = t["name"].get<std::string>();
            tool.description = t.value("description", std::string{});
            if (t.contains("input_schema")) {
                tool.input_schema = t["input_schema"];
            }
            entry.tools.push_back(std::move(tool));
        }
    }
    if (record.contains("endpoint") && !record["endpoint"].is_null()) {
        const json& ep = record["endpoint"];
        if (!ep.is_object() || !ep.contains("kind") || !ep.contains("locator")) {
            throw ValidationError("server '" + entry.server_id +
                                  "': endpoint needs 'kind' and 'locator'");
        }
        TransportAddress address;
        address.kind = transport_kind_from(ep["kind"].get<std::string>());
        address.locator = ep["locator"].get<std::string>();
        if (address.locator.empty() && address.kind != TransportKind::in_process) {
            throw ValidationError("server '" + entry.server_id +
                                  "': endpoint locator must not be empty");
        }
        entry.endpoint = std::move(address);
    }
    if (record.contains("tags") && record["tags"].is_object()) {
        for (auto it = record["tags"].begin(); it != record["tags"].end(); ++it) {
            if (it.value().is_string()) {
                entry.tags[it.key()] = it.value().get<std::string>();
            }
        }
    }
    return entry;
}

json entry_to_json(const McpServerEntry& entry) {
    json record;
    record["server_id"] = entry.server_id;
    record["name"] = entry.name;
    record["description"] = entry.description;
    json tools = json::array();
    for (const auto& tool : entry.tools) {
        tools.push_back({{"name", tool.name},
                         {"description", tool.description},
                         {"input_schema", tool.input_schema}});
    }
    record["tools"] = std::move(tools);
    record["primary_category"] = entry.primary_category;
    record["secondary_categories"] = entry.secondary_categories;
    if (entry.endpoint) {
        record["endpoint"] = {{"kind", to_string(entry.endpoint->kind)},
                              {"locator", entry.endpoint->locator}};
    }
    if (!entry.tags.empty()) {
        record["tags"] = entry.tags;
    }
    return record;
}

Catalog load_catalog(std::istream& in) {
    std::vector<McpServerEntry> entries;
    std::string line;
    std::size_t record_number = 0;
    std::size_t line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        if (trim(line).empty()) continue;
        ++record_number;
        json record;
        try {
            record = json::parse(line);
        } catch (const json::parse_error& e) {
            throw ParseError("catalog record " + std::to_string(record_number) + " (line " +
                             std::to_string(line_number) + ") is not valid JSON: " + e.what());
        }
        try {
            entries.push_back(entry_from_json(record));
        } catch (const Error& e) {
            throw ValidationError("catalog record " + std::to_string(record_number) + ": " +
                                  e.what());
        }
    }
    return Catalog::from_entries(std::move(entries));
}

Catalog load_catalog(const std::string& text) {
    std::istringstream in(text);
    return load_catalog(in);
}

Catalog load_catalog_file(const std::string& path) {
    try {
        return load_catalog(read_file(path));
    } catch (const Error& e) {
        throw ValidationError(path + ": " + e.what());
    }
}

std::string serialize_catalog(const Catalog& catalog) {
    std::string out;
    for (const auto& entry : catalog.entries()) {
        out += entry_to_json(entry).dump();
        out += '\n';
    }
    return out;
}

// -- binding & selection --------------------------------------------------------

BindResult bind_taxonomy(const Catalog& catalog, const Taxonomy& taxonomy,
                         bool include_secondary) {
    BindResult result;
    std::set<std::string> unknown_seen;
    auto note = [&](const std::string& category) {
        if (lookup(taxonomy, category) != nullptr) {
            result.populated.insert(category);
        } else if (unknown_seen.insert(category).second) {
            result.unknown.push_back(category);
        }
    };
    for (const auto& entry : catalog.entries()) {
        note(entry.primary_category);
        if (include_secondary) {
            for (const auto& cat : entry.secondary_categories) {
                note(cat);
            }
        }
    }
    return result;
}

std::vector<McpServerEntry> servers_in(const Catalog& catalog,
                                       const std::vector<std::string>& category_ids) {
    std::vector<McpServerEntry> selected;
    std::unordered_set<std::string> seen;
    for (const auto& category : category_ids) {
        for (const auto& server_id : catalog.servers_for_category(category)) {
            if (seen.insert(server_id).second) {
                selected.push_back(*catalog.find(server_id));
            }
        }
    }
    return selected;
}

std::vector<McpServerEntry> sample_noise(const Catalog& catalog,
                                         const McpServerEntry& target, std::size_t n,
                                         std::uint64_t seed) {
    std::vector<std::size_t> eligible;
    const auto& entries = catalog.entries();
    for (std::size_t i = 0; i < entries.size(); ++i) {
        if (entries[i].primary_category != target.primary_category) {
            eligible.push_back(i);
        }
    }
    if (n > eligible.size()) {
        throw CapacityError("noise request of " + std::to_string(n) +
                            " exceeds eligible pool of " + std::to_string(eligible.size()) +
                            " servers");
    }
    std::mt19937_64 rng(seed);
    std::vector<McpServerEntry> sampled;
    sampled.reserve(n);
    // partial Fisher-Yates over the eligible index list
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t j = i + static_cast<std::size_t>(bounded_rand(rng, eligible.size() - i));
        std::swap(eligible[i], eligible[j]);
        sampled.push_back(entries[eligible[i]]);
    }
    return sampled;
}

} // namespace jsplit

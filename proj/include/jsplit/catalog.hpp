#pragma once

#include "jsplit/mcp_types.hpp"
#include "jsplit/taxonomy.hpp"

#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace jsplit {

/// One server record from the catalog file. Entries without an endpoint are
/// "catalog-only": they can be selected and counted but never called.
struct McpServerEntry {
    std::string server_id;
    std::string name;
    std::string description;
    std::vector<ToolSpec> tools;
    std::string primary_category;
    std::vector<std::string> secondary_categories;
    std::optional<TransportAddress> endpoint;
    // secondary-dimension tags (data type, provider); stored, never used in resolution
    std::map<std::string, std::string> tags;

    bool operator==(const McpServerEntry&) const = default;
};

/// Immutable, indexed view over a set of server entries.
class Catalog {
public:
    using CategoryIndex = std::map<std::string, std::vector<std::string>, IdLess>;

    Catalog() = default;

    /// Validates entries (unique ids, well-formed categories, tool rules)
    /// and builds both indexes. Input order is preserved.
    static Catalog from_entries(std::vector<McpServerEntry> entries);

    const std::vector<McpServerEntry>& entries() const noexcept { return entries_; }
    std::size_t size() const noexcept { return entries_.size(); }
    bool empty() const noexcept { return entries_.empty(); }

    const McpServerEntry* find(std::string_view server_id) const noexcept;

    /// server_ids with the given primary (or secondary, when indexed) category,
    /// in catalog order; empty vector for unknown categories.
    const std::vector<std::string>& servers_for_category(const std::string& category) const;

    const CategoryIndex& by_category() const noexcept { return by_category_; }

private:
    std::vector<McpServerEntry> entries_;
    CategoryIndex by_category_;                       // primary assignments only
    std::map<std::string, std::size_t> by_id_;
};

/// Parse line-delimited records {server_id, name, description, tools, primary_category,
/// secondary_categories, endpoint?, tags?}. Blank lines are ignored.
Catalog load_catalog(std::istream& in);
Catalog load_catalog(const std::string& text);
Catalog load_catalog_file(const std::string& path);

nlohmann::json entry_to_json(const McpServerEntry& entry);
McpServerEntry entry_from_json(const nlohmann::json& record);
std::string serialize_catalog(const Catalog& catalog);

struct BindResult {
    /// taxonomy ids with at least one assigned server
    std::set<std::string> populated;
    /// category ids referenced by entries but absent from the taxonomy
    std::vector<std::string> unknown;
};

/// Which taxonomy categories have servers. Primary assignments always count;
/// secondary tags count when `include_secondary` is set. Unknown category ids
/// are reported, never silently dropped.
BindResult bind_taxonomy(const Catalog& catalog, const Taxonomy& taxonomy,
                         bool include_secondary);

/// Entries mapped to any of `category_ids`, first-occurrence order, each
/// server at most once.
std::vector<McpServerEntry> servers_in(const Catalog& catalog,
                                       const std::vector<std::string>& category_ids);

/// `n` distinct entries drawn uniformly without replacement from the pool of
/// servers whose primary category differs from the target's. Deterministic
/// for a fixed seed. Throws CapacityError when the pool is too small.
std::vector<McpServerEntry> sample_noise(const Catalog& catalog,
                                         const McpServerEntry& target, std::size_t n,
                                         std::uint64_t seed);

} // namespace jsplit

#pragma once

#include <nlohmann/json.hpp>

#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace jsplit {

/// One category in the hierarchical server taxonomy. Ids are dotted paths
/// of positive integers ("5.3.2"); a node's depth equals its segment count
/// and every child id extends the parent id by exactly one segment.
struct TaxonomyNode {
    std::string id;
    std::string name;
    std::string definition;
    std::vector<TaxonomyNode> children;

    bool is_leaf() const noexcept { return children.empty(); }
    bool operator==(const TaxonomyNode&) const = default;
};

enum class TaxonomyVersion { V1, V2, Custom };

const char* to_string(TaxonomyVersion v) noexcept;
TaxonomyVersion taxonomy_version_from(std::string_view s);

struct Taxonomy {
    TaxonomyVersion version = TaxonomyVersion::Custom;
    std::vector<TaxonomyNode> roots;

    bool operator==(const Taxonomy&) const = default;
};

/// Rendered definitions are cut at this many code points.
inline constexpr std::size_t kRenderDefinitionLimit = 160;

// -- dotted-id helpers ------------------------------------------------------

/// Split "5.3.2" into {"5","3","2"}. Throws ParseError on malformed ids
/// (empty segments, non-digits, leading zeros, zero segments).
std::vector<std::string> split_id(std::string_view id);

bool is_well_formed_id(std::string_view id) noexcept;

/// First segment of a dotted id ("10.1.2" -> "10"). Throws ParseError when
/// the id is malformed.
std::string top_level_of(std::string_view id);

/// Parent id ("5.3.2" -> "5.3"), empty string for a root id.
std::string parent_of(std::string_view id);

/// Orders ids by numeric segments ("2.1" < "10.1"), not lexicographically.
struct IdLess {
    bool operator()(std::string_view a, std::string_view b) const;
};

// -- parsing / serialization ------------------------------------------------

/// Parse the taxonomy file envelope {version, roots:[{id,name,definition,
/// children}]} and validate every structural invariant. Document order is
/// preserved.
Taxonomy parse_taxonomy(const std::string& text);
Taxonomy taxonomy_from_json(const nlohmann::json& doc);

nlohmann::json taxonomy_to_json(const Taxonomy& taxonomy);
std::string serialize_taxonomy(const Taxonomy& taxonomy);

Taxonomy load_taxonomy_file(const std::string& path);

/// Invariant check used by parse_taxonomy; public so loaded-then-mutated
/// custom taxonomies can be re-validated.
void validate_taxonomy(const Taxonomy& taxonomy);

// -- queries ----------------------------------------------------------------

const TaxonomyNode* lookup(const Taxonomy& taxonomy, std::string_view id) noexcept;

/// All leaf ids under `id` in document order; `id` itself when it is a leaf.
/// Throws ValidationError when `id` is not in the taxonomy.
std::vector<std::string> descendant_leaves(const Taxonomy& taxonomy, std::string_view id);

std::vector<std::string> all_ids(const Taxonomy& taxonomy);
std::vector<std::string> leaf_ids(const Taxonomy& taxonomy);
std::size_t node_count(const Taxonomy& taxonomy) noexcept;

// -- operations -------------------------------------------------------------

/// New taxonomy containing exactly `populated_ids` plus all their ancestors,
/// document order preserved. Unknown ids raise ValidationError. An empty set
/// yields an empty taxonomy (callers treat that as "no candidates").
Taxonomy filter_to_populated(const Taxonomy& taxonomy,
                             const std::set<std::string>& populated_ids);

/// Deterministic line-oriented rendering used in classification prompts:
/// two spaces of indent per depth level past the first, then
/// "<id> <name> — <definition>", definition cut at kRenderDefinitionLimit.
std::string render_tree(const Taxonomy& taxonomy);

} // namespace jsplit

#include "jsplit/taxonomy.hpp"

#include "jsplit/errors.hpp"
#include "jsplit/util.hpp"

#include <functional>
#include <sstream>
#include <unordered_set>

namespace jsplit {

using nlohmann::json;

const char* to_string(TaxonomyVersion v) noexcept {
    switch (v) {
    case TaxonomyVersion::V1: return "v1";
    case TaxonomyVersion::V2: return "v2";
    case TaxonomyVersion::Custom: return "custom";
    }
    return "custom";
}

TaxonomyVersion taxonomy_version_from(std::string_view s) {
    if (s == "v1" || s == "V1") return TaxonomyVersion::V1;
    if (s == "v2" || s == "V2") return TaxonomyVersion::V2;
    if (s == "custom") return TaxonomyVersion::Custom;
    throw ParseError("unknown taxonomy version: '" + std::string(s) + "'");
}

// -- dotted-id helpers ------------------------------------------------------

namespace {

bool is_valid_segment(std::string_view seg) noexcept {
    if (seg.empty()) return false;
    for (char c : seg) {
        if (c < '0' || c > '9') return false;
    }
    if (seg.size() > 1 && seg[0] == '0') return false; // no leading zeros
    return seg != "0";                                 // segments are positive
}

} // namespace

std::vector<std::string> split_id(std::string_view id) {
    if (id.empty()) {
        throw ParseError("empty taxonomy id");
    }
    std::vector<std::string> segments = split(id, '.');
    for (const auto& seg : segments) {
        if (!is_valid_segment(seg)) {
            throw ParseError("malformed taxonomy id: '" + std::string(id) + "'");
        }
    }
    return segments;
}

bool is_well_formed_id(std::string_view id) noexcept {
    if (id.empty()) return false;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= id.size(); ++i) {
        if (i == id.size() || id[i] == '.') {
            if (!is_valid_segment(id.substr(start, i - start))) return false;
            start = i + 1;
        }
    }
    return true;
}

std::string top_level_of(std::string_view id) {
    return split_id(id).front();
}

std::string parent_of(std::string_view id) {
    auto pos = id.rfind('.');
    if (pos == std::string_view::npos) return {};
    return std::string(id.substr(0, pos));
}

bool IdLess::operator()(std::string_view a, std::string_view b) const {
    std::size_t ia = 0, ib = 0;
    while (ia < a.size() && ib < b.size()) {
        std::size_t ea = a.find('.', ia);
        std::size_t eb = b.find('.', ib);
        if (ea == std::string_view::npos) ea = a.size();
        if (eb == std::string_view::npos) eb = b.size();
        std::string_view sa = a.substr(ia, ea - ia);
        std::string_view sb = b.substr(ib, eb - ib);
        if (sa.size() != sb.size()) return sa.size() < sb.size(); // fewer digits = smaller
        if (sa != sb) return sa < sb;
        ia = ea + 1;
        ib = eb + 1;
    }
    // shared prefix: the id with segments left over is the greater one
    return ia >= a.size() && ib < b.size();
}

// -- parsing ----------------------------------------------------------------

namespace {

TaxonomyNode node_from_json(const json& obj, const std::string& path) {
    if (!obj.is_object()) {
        throw ParseError("taxonomy node at " + path + " is not an object");
    }
    TaxonomyNode node;
    if (!obj.contains("id") || !obj["id"].is_string()) {
        throw ParseError("taxonomy node at " + path + " has no string 'id'");
    }
    node.id = obj["id"].get<std::string>();
    if (!obj.contains("name") || !obj["name"].is_string()) {
        throw ParseError("taxonomy node '" + node.id + "' has no string 'name'");
    }
    node.name = obj["name"].get<std::string>();
    if (obj.contains("definition")) {
        if (!obj["definition"].is_string()) {
            throw ParseError("taxonomy node '" + node.id + "': 'definition' must be a string");
        }
        node.definition = obj["definition"].get<std::string>();
    }
    if (obj.contains("children")) {
        if (!obj["children"].is_array()) {
            throw ParseError("taxonomy node '" + node.id + "': 'children' must be an array");
        }
        std::size_t i = 0;
        for (const auto& child : obj["children"]) {
            node.children.push_back(
                node_from_json(child, path + "/children/" + std::to_string(i)));
            ++i;
        }
    }
    return node;
}

void validate_node(const TaxonomyNode& node, const std::string& expected_parent,
                   std::size_t expected_depth,
                   std::unordered_set<std::string>& seen_ids) {
    std::vector<std::string> segments = split_id(node.id); // ParseError on bad syntax
    if (segments.size() != expected_depth) {
        throw ValidationError("node '" + node.id + "' sits at depth " +
                              std::to_string(expected_depth) +
                              " but its id has " + std::to_string(segments.size()) +
                              " segments");
    }
    if (!expected_parent.empty() &&
        parent_of(node.id) != expected_parent) {
        throw ValidationError("node '" + node.id + "' is not a child id of '" +
                              expected_parent + "'");
    }
    if (!seen_ids.insert(node.id).second) {
        throw ValidationError("duplicate taxonomy id '" + node.id + "'");
    }
    if (node.name.empty()) {
        throw ValidationError("node '" + node.id + "' has an empty name");
    }
    if (node.definition.empty() && expected_depth > 1) {
        throw ValidationError("node '" + node.id +
                              "' has an empty definition (allowed for top-level nodes only)");
    }
    for (const auto& child : node.children) {
        validate_node(child, node.id, expected_depth + 1, seen_ids);
    }
}

} // namespace

void validate_taxonomy(const Taxonomy& taxonomy) {
    if (taxonomy.roots.empty()) {
        throw ValidationError("taxonomy has no root nodes");
    }
    std::unordered_set<std::string> seen;
    for (const auto& root : taxonomy.roots) {
        validate_node(root, "", 1, seen);
    }
    if (taxonomy.version == TaxonomyVersion::V2 && taxonomy.roots.size() != 11) {
        throw ValidationError("taxonomy v2 must have exactly 11 root nodes, got " +
                              std::to_string(taxonomy.roots.size()));
    }
    // a non-empty root set always implies a non-empty leaf set
}

Taxonomy taxonomy_from_json(const json& doc) {
    if (!doc.is_object()) {
        throw ParseError("taxonomy document must be a JSON object");
    }
    Taxonomy taxonomy;
    if (doc.contains("version")) {
        if (!doc["version"].is_string()) {
            throw ParseError("taxonomy 'version' must be a string");
        }
        taxonomy.version = taxonomy_version_from(doc["version"].get<std::string>());
    }
    if (!doc.contains("roots") || !doc["roots"].is_array()) {
        throw ParseError("taxonomy document has no 'roots' array");
    }
    std::size_t i = 0;
    for (const auto& root : doc["roots"]) {
        taxonomy.roots.push_back(node_from_json(root, "/roots/" + std::to_string(i)));
        ++i;
    }
    validate_taxonomy(taxonomy);
    return taxonomy;
}

Taxonomy parse_taxonomy(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        // byte offset -> line number for a useful message
        std::size_t line = 1;
        for (std::size_t i = 0; i < text.size() && i + 1 < e.byte; ++i) {
            if (text[i] == '\n') ++line;
        }
        throw ParseError("taxonomy document is not valid JSON (line " +
                         std::to_string(line) + "): " + e.what());
    }
    return taxonomy_from_json(doc);
}

namespace {

json node_to_json(const TaxonomyNode& node) {
    json obj;
    obj["id"] = node.id;
    obj["name"] = node.name;
    obj["definition"] = node.definition;
    json children = json::array();
    for (const auto& child : node.children) {
        children.push_back(node_to_json(child));
    }
    obj["children"] = std::move(children);
    return obj;
}

} // namespace

json taxonomy_to_json(const Taxonomy& taxonomy) {
    json doc;
    doc["version"] = to_string(taxonomy.version);
    json roots = json::array();
    for (const auto& root : taxonomy.roots) {
        roots.push_back(node_to_json(root));
    }
    doc["roots"] = std::move(roots);
    return doc;
}

std::string serialize_taxonomy(const Taxonomy& taxonomy) {
    return taxonomy_to_json(taxonomy).dump(2) + "\n";
}

Taxonomy load_taxonomy_file(const std::string& path) {
    try {
        return parse_taxonomy(read_file(path));
    } catch (const Error& e) {
        throw ParseError(path + ": " + e.what());
    }
}

// -- queries ----------------------------------------------------------------

namespace {

const TaxonomyNode* find_in(const std::vector<TaxonomyNode>& nodes,
                            std::string_view id) noexcept {
    for (const auto& node : nodes) {
        if (node.id == id) return &node;
        // descend only into the subtree whose id prefixes the target
        if (id.size() > node.id.size() && id.substr(0, node.id.size()) == node.id &&
            id[node.id.size()] == '.') {
            return find_in(node.children, id);
        }
    }
    return nullptr;
}

template <typename Fn>
void for_each_node(const std::vector<TaxonomyNode>& nodes, Fn&& fn) {
    for (const auto& node : nodes) {
        fn(node);
        for_each_node(node.children, fn);
    }
}

} // namespace

const TaxonomyNode* lookup(const Taxonomy& taxonomy, std::string_view id) noexcept {
    return find_in(taxonomy.roots, id);
}

namespace {

void collect_leaves(const TaxonomyNode& node, std::vector<std::string>& out) {
    if (node.is_leaf()) {
        out.push_back(node.id);
        return;
    }
    for (const auto& child : node.children) {
        collect_leaves(child, out);
    }
}

} // namespace

std::vector<std::string> descendant_leaves(const Taxonomy& taxonomy, std::string_view id) {
    const TaxonomyNode* node = lookup(taxonomy, id);
    if (node == nullptr) {
        throw ValidationError("unknown taxonomy id '" + std::string(id) + "'");
    }
    std::vector<std::string> leaves;
    collect_leaves(*node, leaves);
    return leaves;
}

std::vector<std::string> all_ids(const Taxonomy& taxonomy) {
    std::vector<std::string> ids;
    for_each_node(taxonomy.roots, [&](const TaxonomyNode& n) { ids.push_back(n.id); });
    return ids;
}

std::vector<std::string> leaf_ids(const Taxonomy& taxonomy) {
    std::vector<std::string> ids;
    for_each_node(taxonomy.roots,
                  [&](const TaxonomyNode& n) { if (n.is_leaf()) ids.push_back(n.id); });
    return ids;
}

std::size_t node_count(const Taxonomy& taxonomy) noexcept {
    std::size_t count = 0;
    for_each_node(taxonomy.roots, [&](const TaxonomyNode&) { ++count; });
    return count;
}

// -- filter -----------------------------------------------------------------

namespace {

// Keeps a node when it is populated itself or has a populated descendant.
bool filter_node(const TaxonomyNode& node, const std::set<std::string>& populated,
                 TaxonomyNode& out) {
    bool keep = populated.count(node.id) > 0;
    TaxonomyNode copy{node.id, node.name, node.definition, {}};
    for (const auto& child : node.children) {
        TaxonomyNode kept_child;
        if (filter_node(child, populated, kept_child)) {
            copy.children.push_back(std::move(kept_child));
            keep = true;
        }
    }
    if (keep) out = std::move(copy);
    return keep;
}

} // namespace

Taxonomy filter_to_populated(const Taxonomy& taxonomy,
                             const std::set<std::string>& populated_ids) {
    for (const auto& id : populated_ids) {
        if (lookup(taxonomy, id) == nullptr) {
            throw ValidationError("populated id '" + id + "' is not in the taxonomy");
        }
    }
    Taxonomy out;
    out.version = taxonomy.version;
    for (const auto& root : taxonomy.roots) {
        TaxonomyNode kept;
        if (filter_node(root, populated_ids, kept)) {
            out.roots.push_back(std::move(kept));
        }
    }
    return out;
}

// -- rendering ---------------------------------------------------------------

namespace {

void render_node(const TaxonomyNode& node, std::size_t depth, std::string& out) {
    for (std::size_t i = 1; i < depth; ++i) {
        out += "  ";
    }
    out += node.id;
    out += ' ';
    out += node.name;
    out += " \xE2\x80\x94 "; // " — "
    out += truncate_utf8(node.definition, kRenderDefinitionLimit);
    out += '\n';
    for (const auto& child : node.children) {
        render_node(child, depth + 1, out);
    }
}

} // namespace

std::string render_tree(const Taxonomy& taxonomy) {
    std::string out;
    for (const auto& root : taxonomy.roots) {
        render_node(root, 1, out);
    }
    return out;
}

} // namespace jsplit

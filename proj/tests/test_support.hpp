#pragma once

#include "jsplit/catalog.hpp"
#include "jsplit/taxonomy.hpp"
#include "jsplit/util.hpp"

#include <random>
#include <set>
#include <string>
#include <vector>

namespace testsupport {

inline std::string source_dir() { return JSPLIT_SOURCE_DIR; }
inline std::string data_path(const std::string& rel) { return source_dir() + "/data/" + rel; }
inline std::string fixture_path(const std::string& rel) {
    return source_dir() + "/data/fixtures/" + rel;
}

inline jsplit::Taxonomy load_v2() {
    return jsplit::load_taxonomy_file(data_path("taxonomy_v2.json"));
}
inline jsplit::Taxonomy load_v1() {
    return jsplit::load_taxonomy_file(data_path("taxonomy_v1.json"));
}
inline jsplit::Catalog load_catalog_200() {
    return jsplit::load_catalog_file(fixture_path("catalog_200.jsonl"));
}

/// Random taxonomy with at most `max_nodes` nodes, depth capped at 4.
inline jsplit::Taxonomy random_taxonomy(std::mt19937_64& rng, std::size_t max_nodes) {
    jsplit::Taxonomy taxonomy;
    std::size_t budget = 1 + jsplit::bounded_rand(rng, max_nodes);
    std::size_t made = 0;

    struct Frame {
        jsplit::TaxonomyNode* node;
        std::size_t depth;
    };
    std::vector<Frame> open;

    std::size_t root_count = 1 + jsplit::bounded_rand(rng, 3);
    for (std::size_t r = 0; r < root_count && made < budget; ++r) {
        jsplit::TaxonomyNode root;
        root.id = std::to_string(r + 1);
        root.name = "node " + root.id;
        root.definition = "definition of " + root.id;
        taxonomy.roots.push_back(std::move(root));
        ++made;
    }
    for (auto& root : taxonomy.roots) {
        open.push_back({&root, 1});
    }
    while (!open.empty() && made < budget) {
        std::size_t pick = jsplit::bounded_rand(rng, open.size());
        Frame frame = open[pick];
        open.erase(open.begin() + static_cast<std::ptrdiff_t>(pick));
        if (frame.depth >= 4) continue;
        std::size_t kids = jsplit::bounded_rand(rng, 4); // 0..3 children
        for (std::size_t k = 0; k < kids && made < budget; ++k) {
            jsplit::TaxonomyNode child;
            child.id = frame.node->id + "." + std::to_string(k + 1);
            child.name = "node " + child.id;
            child.definition = "definition of " + child.id;
            frame.node->children.push_back(std::move(child));
            ++made;
        }
        for (auto& child : frame.node->children) {
            open.push_back({&child, frame.depth + 1});
        }
    }
    return taxonomy;
}

/// Independent ancestor-closure oracle: every populated id plus all of its
/// dotted prefixes, ordered as in the original document.
inline std::vector<std::string> closure_oracle(const jsplit::Taxonomy& taxonomy,
                                               const std::set<std::string>& populated) {
    std::set<std::string> expected;
    for (const auto& id : populated) {
        std::string prefix;
        for (char c : id) {
            if (c == '.') {
                expected.insert(prefix);
            }
            prefix += c;
        }
        expected.insert(prefix);
    }
    std::vector<std::string> ordered;
    for (const auto& id : jsplit::all_ids(taxonomy)) {
        if (expected.count(id) != 0) {
            ordered.push_back(id);
        }
    }
    return ordered;
}

} // namespace testsupport

#include <doctest.h>

#include "jsplit/errors.hpp"
#include "jsplit/taxonomy.hpp"
#include "test_support.hpp"

#include <algorithm>
#include <map>

using namespace jsplit;
using namespace testsupport;

TEST_CASE("parse_taxonomy accepts a minimal nested document") {
    std::string doc = R"({
        "version": "custom",
        "roots": [{
            "id": "1", "name": "Search", "definition": "top",
            "children": [{
                "id": "1.1", "name": "Web", "definition": "mid",
                "children": [{"id": "1.1.1", "name": "General Web Search",
                              "definition": "leaf"}]
            }]
        }]
    })";
    Taxonomy taxonomy = parse_taxonomy(doc);
    const TaxonomyNode* leaf = lookup(taxonomy, "1.1.1");
    REQUIRE(leaf != nullptr);
    CHECK(leaf->name == "General Web Search");
    CHECK(leaf->is_leaf());
    CHECK(node_count(taxonomy) == 3);
}

TEST_CASE("parse_taxonomy rejects bad documents") {
    CHECK_THROWS_AS(parse_taxonomy("not json"), ParseError);
    CHECK_THROWS_AS(parse_taxonomy(R"({"version":"custom","roots":[]})"), ValidationError);

    SUBCASE("duplicate id") {
        std::string doc = R"({"roots": [
            {"id": "2", "name": "a", "definition": "d", "children": [
                {"id": "2.3", "name": "b", "definition": "d"},
                {"id": "2.3", "name": "c", "definition": "d"}]}]})";
        CHECK_THROWS_WITH_AS(parse_taxonomy(doc), doctest::Contains("2.3"), ValidationError);
    }
    SUBCASE("orphan id: child does not extend parent") {
        std::string doc = R"({"roots": [
            {"id": "1", "name": "a", "definition": "d", "children": [
                {"id": "2.1", "name": "b", "definition": "d"}]}]})";
        CHECK_THROWS_AS(parse_taxonomy(doc), ValidationError);
    }
    SUBCASE("depth must match segment count") {
        std::string doc = R"({"roots": [
            {"id": "1.1", "name": "a", "definition": "d"}]})";
        CHECK_THROWS_AS(parse_taxonomy(doc), ValidationError);
    }
    SUBCASE("empty name") {
        std::string doc = R"({"roots": [{"id": "1", "name": "", "definition": "d"}]})";
        CHECK_THROWS_AS(parse_taxonomy(doc), ValidationError);
    }
    SUBCASE("empty definition below top level") {
        std::string doc = R"({"roots": [
            {"id": "1", "name": "a", "definition": "d", "children": [
                {"id": "1.1", "name": "b", "definition": ""}]}]})";
        CHECK_THROWS_AS(parse_taxonomy(doc), ValidationError);
    }
    SUBCASE("malformed ids") {
        for (const char* bad : {"1..2", ".1", "1.", "a.b", "1.0", "01"}) {
            std::string doc = std::string(R"({"roots": [{"id": ")") + bad +
                              R"(", "name": "a", "definition": "d"}]})";
            CHECK_THROWS_AS(parse_taxonomy(doc), Error);
        }
    }
}

TEST_CASE("bundled taxonomies satisfy their structural contracts") {
    Taxonomy v2 = load_v2();
    CHECK(v2.version == TaxonomyVersion::V2);
    CHECK(v2.roots.size() == 11);

    Taxonomy v1 = load_v1();
    CHECK(v1.version == TaxonomyVersion::V1);
    CHECK(v1.roots.size() == 8);

    for (const auto& id : all_ids(v2)) {
        CHECK(split_id(id).size() <= 3);
        std::string top = top_level_of(id);
        int top_value = std::stoi(top);
        CHECK(top_value >= 1);
        CHECK(top_value <= 11);
    }
}

TEST_CASE("v2 lookups match the published structure") {
    Taxonomy v2 = load_v2();

    const TaxonomyNode* api_access = lookup(v2, "1.2.5");
    REQUIRE(api_access != nullptr);
    CHECK(api_access->name == "External API Data Access");

    const TaxonomyNode* root = lookup(v2, "1");
    REQUIRE(root != nullptr);
    CHECK(split_id(root->id).size() == 1);

    CHECK(lookup(v2, "9.9.9.9") == nullptr);

    const TaxonomyNode* routing = lookup(v2, "4.2");
    REQUIRE(routing != nullptr);
    CHECK(routing->name == "Physical Navigation and Routing");
    REQUIRE(routing->children.size() == 3);
    CHECK(routing->children[0].id == "4.2.1");
    CHECK(routing->children[1].id == "4.2.2");
    CHECK(routing->children[2].id == "4.2.3");

    // rendering the 4.2 subtree yields one line per node
    Taxonomy subtree;
    subtree.roots = {*routing};
    std::string rendered = render_tree(subtree);
    CHECK(std::count(rendered.begin(), rendered.end(), '\n') == 4);
}

TEST_CASE("top_level_of extracts the first segment") {
    CHECK(top_level_of("5.3.2") == "5");
    CHECK(top_level_of("11") == "11");
    CHECK(top_level_of("10.1.2") == "10");
    CHECK_THROWS_AS(top_level_of(""), ParseError);
    CHECK_THROWS_AS(top_level_of("x.1"), ParseError);
}

TEST_CASE("descendant_leaves expands ids to their leaf frontier") {
    Taxonomy v2 = load_v2();

    CHECK(descendant_leaves(v2, "2.3.1") == std::vector<std::string>{"2.3.1"});

    std::vector<std::string> under_8 = descendant_leaves(v2, "8");
    std::vector<std::string> expected = {"8.1.1", "8.1.2", "8.1.3", "8.1.4",
                                         "8.2.1", "8.2.2", "8.2.3", "8.9"};
    CHECK(under_8 == expected);

    CHECK_THROWS_AS(descendant_leaves(v2, "77"), ValidationError);

    // root concatenation covers every leaf exactly once
    std::vector<std::string> concatenated;
    for (const auto& root : v2.roots) {
        for (auto& leaf : descendant_leaves(v2, root.id)) {
            concatenated.push_back(std::move(leaf));
        }
    }
    CHECK(concatenated == leaf_ids(v2));
}

TEST_CASE("filter_to_populated computes the ancestor closure") {
    Taxonomy v2 = load_v2();

    SUBCASE("single leaf keeps exactly the path to the root") {
        Taxonomy filtered = filter_to_populated(v2, {"5.3.2"});
        CHECK(all_ids(filtered) == std::vector<std::string>{"5", "5.3", "5.3.2"});
        // input untouched
        CHECK(v2.roots.size() == 11);
    }
    SUBCASE("all leaves reproduce the input") {
        auto leaves = leaf_ids(v2);
        Taxonomy filtered =
            filter_to_populated(v2, std::set<std::string>(leaves.begin(), leaves.end()));
        CHECK(filtered == v2);
    }
    SUBCASE("empty set yields an empty taxonomy") {
        Taxonomy filtered = filter_to_populated(v2, {});
        CHECK(filtered.roots.empty());
        CHECK(node_count(filtered) == 0);
    }
    SUBCASE("unknown id is an error naming the id") {
        CHECK_THROWS_WITH_AS(filter_to_populated(v2, {"5.3.9"}),
                             doctest::Contains("5.3.9"), ValidationError);
    }
    SUBCASE("idempotent") {
        std::set<std::string> populated = {"1.1.1", "4.2", "8.9", "11"};
        Taxonomy once = filter_to_populated(v2, populated);
        Taxonomy twice = filter_to_populated(once, populated);
        CHECK(once == twice);
    }
}

TEST_CASE("filter matches the brute-force closure oracle on random trees") {
    std::mt19937_64 rng(20240809);
    for (int round = 0; round < 60; ++round) {
        Taxonomy taxonomy = random_taxonomy(rng, 200);
        validate_taxonomy(taxonomy);
        std::vector<std::string> ids = all_ids(taxonomy);
        std::set<std::string> populated;
        for (const auto& id : ids) {
            if (bounded_rand(rng, 3) == 0) populated.insert(id);
        }
        Taxonomy filtered = filter_to_populated(taxonomy, populated);
        CHECK(all_ids(filtered) == closure_oracle(taxonomy, populated));
    }
}

TEST_CASE("render_tree is line-per-node with depth indentation") {
    Taxonomy v2 = load_v2();
    std::string rendered = render_tree(v2);
    CHECK(static_cast<std::size_t>(std::count(rendered.begin(), rendered.end(), '\n')) ==
          node_count(v2));
    CHECK(rendered.rfind("1 Search and Information Retrieval \xE2\x80\x94 ", 0) == 0);
    CHECK(rendered.find("\n  1.1 ") != std::string::npos);
    CHECK(rendered.find("\n    1.1.1 ") != std::string::npos);

    SUBCASE("every id appears exactly once") {
        std::map<std::string, int> seen;
        std::size_t start = 0;
        while (start < rendered.size()) {
            std::size_t end = rendered.find('\n', start);
            std::string line = rendered.substr(start, end - start);
            start = end + 1;
            std::size_t indent = line.find_first_not_of(' ');
            std::string id = line.substr(indent, line.find(' ', indent) - indent);
            seen[id]++;
        }
        for (const auto& id : all_ids(v2)) {
            CHECK(seen[id] == 1);
        }
    }
    SUBCASE("long definitions are cut with an ellipsis") {
        Taxonomy tiny;
        tiny.roots = {TaxonomyNode{"1", "big", std::string(400, 'x'), {}}};
        std::string line = render_tree(tiny);
        CHECK(line.size() < 200 + 10);
        CHECK(line.find("\xE2\x80\xA6") != std::string::npos);
    }
}

TEST_CASE("render_tree distinguishes taxonomies with different id sets") {
    std::mt19937_64 rng(7);
    std::vector<Taxonomy> trees;
    std::vector<std::string> renders;
    for (int i = 0; i < 25; ++i) {
        trees.push_back(random_taxonomy(rng, 40));
        renders.push_back(render_tree(trees.back()));
    }
    for (std::size_t a = 0; a < trees.size(); ++a) {
        for (std::size_t b = a + 1; b < trees.size(); ++b) {
            if (all_ids(trees[a]) != all_ids(trees[b])) {
                CHECK(renders[a] != renders[b]);
            }
        }
    }
}

TEST_CASE("serialize/parse round-trips") {
    Taxonomy v2 = load_v2();
    std::string serialized = serialize_taxonomy(v2);
    Taxonomy reparsed = parse_taxonomy(serialized);
    CHECK(reparsed == v2);
    CHECK(serialize_taxonomy(reparsed) == serialized);
}

TEST_CASE("IdLess orders ids numerically by segment") {
    IdLess less;
    CHECK(less("2.1", "10.1"));
    CHECK(!less("10.1", "2.1"));
    CHECK(less("1", "1.1"));
    CHECK(!less("1.1", "1"));
    CHECK(less("1.2", "1.10"));
    CHECK(!less("3", "3"));
}

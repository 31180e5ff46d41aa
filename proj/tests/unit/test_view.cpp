#include <doctest.h>

#include <random>

#include "fcax/error.hpp"
#include "fcax/view.hpp"
#include "support/fixture.hpp"
#include "support/oracles.hpp"

using namespace fcax;

namespace {

struct Fixture {
    XmlTree tree;
    std::vector<DataItem> items;
    Fixture() : tree(parse_document(fcax::testing::fixture_text())),
                items(extract_leaf_data(tree)) {}
};

const std::vector<std::string> kLeafKeys = {"level",     "title", "author[0]",
                                            "publisher", "author[1]", "lang"};

} // namespace

TEST_CASE("first book context: one mark per own datum") {
    Fixture f;
    int book0 = f.tree.node(f.tree.root()).children[0];
    FormalContext ctx = build_parent_context(f.tree, f.items, book0);

    REQUIRE(ctx.object_count() == 11);
    REQUIRE(ctx.attributes == kLeafKeys);
    std::size_t marks = 0;
    for (const Bitset& row : ctx.rows) marks += row.count();
    CHECK(marks == 4);
    CHECK(ctx.incident("D1", "level"));
    CHECK(ctx.incident("D2", "title"));
    CHECK(ctx.incident("D3", "author[0]"));
    CHECK(ctx.incident("D4", "publisher"));
    // columns for keys owned by other parents stay empty
    CHECK(ctx.cols[ctx.attribute_index("lang")].none());
    CHECK(ctx.cols[ctx.attribute_index("author[1]")].none());

    ConceptLattice lat = build_lattice(ctx);
    CHECK(lat.size() == 6);
    CHECK(lat.cover_edges.size() == 8);
}

TEST_CASE("root context: child presence per book") {
    Fixture f;
    FormalContext ctx = build_parent_context(f.tree, f.items, f.tree.root());

    REQUIRE(ctx.objects == std::vector<std::string>{"book[0]", "book[1]", "book[2]"});
    REQUIRE(ctx.attributes == kLeafKeys);
    auto col = [&](const std::string& attr) {
        std::string bits;
        for (const std::string& obj : ctx.objects)
            bits += ctx.incident(obj, attr) ? '1' : '0';
        return bits;
    };
    CHECK(col("level") == "111");
    CHECK(col("lang") == "001");
    CHECK(col("title") == "111");
    CHECK(col("author[0]") == "111");
    CHECK(col("author[1]") == "010");
    CHECK(col("publisher") == "111");

    CHECK(build_lattice(ctx).size() == 4);
}

TEST_CASE("leaf nodes are not parents") {
    Fixture f;
    int book0 = f.tree.node(f.tree.root()).children[0];
    int leaf = f.tree.node(book0).children[0];
    CHECK_THROWS_AS(build_parent_context(f.tree, f.items, leaf), Error);
}

TEST_CASE("classification covers every parent bottom-up") {
    Fixture f;
    NodeClassification cls = conceptual_classification(f.tree, f.items);
    REQUIRE(cls.parents.size() == 4);
    CHECK(cls.parents.back() == f.tree.root());
    CHECK(cls.contexts.size() == 4);
    CHECK(cls.lattices.size() == 4);
    for (int parent : cls.parents) {
        CHECK(cls.contexts.count(parent));
        CHECK(cls.lattices.at(parent).size() ==
              build_lattice(cls.contexts.at(parent)).size());
    }
}

TEST_CASE("mixed parents describe only their element children") {
    XmlTree tree = parse_document("<r><x>v</x><s><t>u</t></s></r>");
    std::vector<DataItem> items = extract_leaf_data(tree);
    REQUIRE(items.size() == 2);

    FormalContext root_ctx = build_parent_context(tree, items, 0);
    CHECK(root_ctx.objects == std::vector<std::string>{"s"});
    CHECK(root_ctx.attributes == std::vector<std::string>{"t"});
    CHECK(root_ctx.incident("s", "t"));

    FormalContext s_ctx = build_parent_context(tree, items, 2);
    CHECK(s_ctx.objects == std::vector<std::string>{"D1", "D2"});
    CHECK(s_ctx.attributes == std::vector<std::string>{"x", "t"});
    CHECK(s_ctx.incident("D2", "t"));
    CHECK_FALSE(s_ctx.incident("D1", "x"));  // D1's leaf lives under r, not s
}

TEST_CASE("generalized view dimensions and attribute order") {
    Fixture f;
    GeneralizedView view = build_generalized_view(
        f.tree, f.items, conceptual_classification(f.tree, f.items));

    REQUIRE(view.context.object_count() == 11);
    REQUIRE(view.context.attribute_count() == 21);

    std::vector<std::string> expected = kLeafKeys;
    for (const char* p : {"bib", "bib/book[0]", "bib/book[1]", "bib/book[2]"})
        expected.push_back(p);
    for (const DataItem& item : f.items) expected.push_back("value=" + item.value);
    CHECK(view.context.attributes == expected);
}

TEST_CASE("every item row holds key, ancestry, value") {
    Fixture f;
    GeneralizedView view = build_generalized_view(
        f.tree, f.items, conceptual_classification(f.tree, f.items));

    auto row_labels = [&](int item_id) {
        return view.context.attribute_labels(
            view.context.rows[static_cast<std::size_t>(item_id - 1)]);
    };
    CHECK(row_labels(3) == std::vector<std::string>{"author[0]", "bib", "bib/book[0]",
                                                    "value=Daniel Glazman"});
    CHECK(row_labels(9) ==
          std::vector<std::string>{"lang", "bib", "bib/book[2]", "value=Eng"});
    CHECK(row_labels(6) == std::vector<std::string>{"author[0]", "bib", "bib/book[1]",
                                                    "value=Michael J. YOUNG"});
    // the empty second author of the middle book owns no datum
    CHECK(view.context.cols[view.context.attribute_index("author[1]")].none());
    // every book path column covers exactly its subtree's items
    auto col_items = [&](const std::string& attr) {
        return view.context.object_labels(
            view.context.cols[view.context.attribute_index(attr)]);
    };
    CHECK(col_items("bib/book[0]") == std::vector<std::string>{"D1", "D2", "D3", "D4"});
    CHECK(col_items("bib/book[1]") ==
          std::vector<std::string>{"D5", "D6", "D7", "D8"});
    CHECK(col_items("bib/book[2]") == std::vector<std::string>{"D9", "D10", "D11"});
    CHECK(col_items("bib").size() == 11);
}

TEST_CASE("view lattice equals exhaustive enumeration") {
    Fixture f;
    GeneralizedView view = build_generalized_view(
        f.tree, f.items, conceptual_classification(f.tree, f.items));
    fcax::testing::OracleLattice expected =
        fcax::testing::brute_force_lattice(view.context);
    fcax::testing::OracleLattice got = fcax::testing::as_oracle(view.lattice);
    CHECK(got.concepts == expected.concepts);
    CHECK(got.covers == expected.covers);
}

TEST_CASE("path dictionary resolves paths and bare keys") {
    Fixture f;
    GeneralizedView view = build_generalized_view(
        f.tree, f.items, conceptual_classification(f.tree, f.items));

    CHECK(view.path_dictionary.size() == 24);  // 4 parents + 14 leaf paths + 6 keys
    CHECK(view.path_dictionary.at("bib") == 6);
    CHECK(view.path_dictionary.at("bib/book[2]") == 9);
    CHECK(view.path_dictionary.at("bib/book[0]/author[0]") == 2);
    CHECK(view.path_dictionary.at("bib/book[1]/author[1]") == 4);
    CHECK(view.path_dictionary.at("bib/book[2]/level") == 0);
    CHECK(view.path_dictionary.at("level") == 0);
    CHECK(view.path_dictionary.at("author[1]") == 4);

    REQUIRE(view.node_paths.size() == f.tree.size());
    CHECK(view.node_paths[0].path_string == "bib");
    CHECK(view.node_paths[0].attribute == 6);
    CHECK_FALSE(view.node_paths[0].is_leaf);
    const NodePathEntry& author0 = view.node_paths[4];
    CHECK(author0.path_string == "bib/book[0]/author[0]");
    CHECK(author0.attribute == 2);
    CHECK(author0.is_leaf);

    // the table is reconstructible from tree + dictionary alone
    std::vector<NodePathEntry> rebuilt = build_node_paths(f.tree, view.path_dictionary);
    REQUIRE(rebuilt.size() == view.node_paths.size());
    for (std::size_t i = 0; i < rebuilt.size(); ++i) {
        CHECK(rebuilt[i].node == view.node_paths[i].node);
        CHECK(rebuilt[i].path_string == view.node_paths[i].path_string);
        CHECK(rebuilt[i].attribute == view.node_paths[i].attribute);
    }
}

TEST_CASE("view invariants on random documents") {
    std::mt19937 rng(31);
    for (int run = 0; run < 15; ++run) {
        XmlTree tree = parse_document(fcax::testing::random_document(rng));
        std::vector<DataItem> items = extract_leaf_data(tree);
        NodeClassification cls = conceptual_classification(tree, items);
        GeneralizedView view = build_generalized_view(tree, items, cls);

        REQUIRE(view.context.object_count() == items.size());
        for (const DataItem& item : items) {
            const Bitset& row =
                view.context.rows[static_cast<std::size_t>(item.item_id - 1)];
            CHECK(row.test(view.context.attribute_index(item.leaf_tag_key)));
            CHECK(row.test(view.context.attribute_index("value=" + item.value)));
            for (int a = tree.node(item.leaf_node).parent; a >= 0;
                 a = tree.node(a).parent)
                CHECK(row.test(static_cast<std::size_t>(
                    view.path_dictionary.at(canonical_path_string(tree, a)))));
        }
        for (const NodePathEntry& entry : view.node_paths)
            if (!entry.is_leaf) CHECK(entry.attribute >= 0);
    }
}

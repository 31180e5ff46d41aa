#include <doctest.h>

#include <random>
#include <set>
#include <sstream>

#include "fcax/error.hpp"
#include "fcax/retrieval.hpp"
#include "support/fixture.hpp"
#include "support/oracles.hpp"

using namespace fcax;

namespace {

struct Env {
    XmlTree tree;
    std::vector<DataItem> items;
    GeneralizedView view;
    Env() : tree(parse_document(fcax::testing::fixture_text())),
            items(extract_leaf_data(tree)),
            view(build_generalized_view(tree, items,
                                        conceptual_classification(tree, items))) {}

    AugmentedView augment(const char* text) const {
        return insert_query(view, build_query_concept(parse_query(text), view));
    }
};

const char* kProjection = "document(bib.xml)/bib/book[1]/(publisher, author)";
const char* kConditional =
    "for $b in doc(bib.xml)/bib/book where $b/author = \"Daniel GLAZMAN\" return $b";
const char* kConditionalExact =
    "for $b in doc(bib.xml)/bib/book where $b/author = \"Daniel Glazman\" return $b";

} // namespace

TEST_CASE("query insertion leaves the base view untouched") {
    Env env;
    const std::size_t attrs_before = env.view.context.attribute_count();
    const std::size_t concepts_before = env.view.lattice.size();

    AugmentedView av = env.augment(kConditional);
    CHECK(env.view.context.attribute_count() == attrs_before);
    CHECK(env.view.lattice.size() == concepts_before);
    CHECK(av.base == &env.view);

    // the pseudo-object is last, its row is Q_B, the novel value is a fresh column
    CHECK(av.context.object_count() == 12);
    CHECK(av.context.attribute_count() == attrs_before + 1);
    CHECK(av.context.objects.back() == "Q");
    CHECK(av.context.incident("Q", "value=Daniel GLAZMAN"));
    CHECK(av.context.incident("Q", "bib/book[2]"));
    CHECK_FALSE(av.context.incident("Q", "bib"));

    // the concept at the query position is the object concept of Q
    REQUIRE(av.query_concept_position >= 0);
    const FormalConcept& qc =
        av.lattice.concepts[static_cast<std::size_t>(av.query_concept_position)];
    CHECK(av.context.object_labels(qc.extent) == std::vector<std::string>{"Q"});
    CHECK(qc.intent == av.context.rows.back());
    CHECK(av.insertion_log.size() == av.lattice.size());
}

TEST_CASE("insertion adds Q to every concept whose intent it covers") {
    Env env;
    AugmentedView av = env.augment(kConditional);
    const Bitset& q_row = av.context.rows.back();
    const std::size_t q = av.context.object_count() - 1;
    for (const FormalConcept& c : av.lattice.concepts) {
        if (c.intent.is_subset_of(q_row))
            CHECK(c.extent.test(q));
        else
            CHECK_FALSE(c.extent.test(q));
    }
}

TEST_CASE("augmentation equals a batch rebuild") {
    Env env;
    for (const char* text : {kProjection, kConditional, kConditionalExact}) {
        AugmentedView av = env.augment(text);
        fcax::testing::OracleLattice expected =
            fcax::testing::brute_force_lattice(av.context);
        fcax::testing::OracleLattice got = fcax::testing::as_oracle(av.lattice);
        CHECK(got.concepts == expected.concepts);
        CHECK(got.covers == expected.covers);
    }
}

TEST_CASE("empty intent is rejected") {
    Env env;
    CHECK_THROWS_AS(insert_query(env.view, QueryConcept{}), Error);
}

TEST_CASE("level ranking of the conditional query") {
    Env env;
    AnswerSet ans = search_answers(env.augment(kConditional));
    REQUIRE(ans.ranked.size() == 2);
    CHECK(ans.ranked[0] == std::pair<int, std::vector<int>>{1, {3, 6, 11}});
    CHECK(ans.ranked[1] ==
          std::pair<int, std::vector<int>>{2, {1, 2, 4, 5, 7, 8, 9, 10}});
    REQUIRE(ans.flattened.size() == 11);
    CHECK(ans.flattened[0] == std::pair<int, int>{3, 1});
    CHECK(ans.flattened[3] == std::pair<int, int>{1, 2});
}

TEST_CASE("level ranking of the projection query") {
    Env env;
    AnswerSet ans = search_answers(env.augment(kProjection));
    REQUIRE(ans.ranked.size() == 2);
    CHECK(ans.ranked[0] == std::pair<int, std::vector<int>>{1, {3, 4}});
    CHECK(ans.ranked[1] == std::pair<int, std::vector<int>>{2, {1, 2, 6, 7, 11}});
    // items with rows disjoint from Q_B never appear
    std::set<int> answered;
    for (auto [item, level] : ans.flattened) answered.insert(item);
    CHECK(answered == std::set<int>{1, 2, 3, 4, 6, 7, 11});
}

TEST_CASE("a query matching one datum exactly answers it at the lowest level") {
    Env env;
    QueryConcept qc;
    qc.intent = {"author[0]", "bib", "bib/book[0]", "value=Daniel Glazman"};
    AugmentedView av = insert_query(env.view, qc);
    const FormalConcept& at =
        av.lattice.concepts[static_cast<std::size_t>(av.query_concept_position)];
    CHECK(av.context.object_labels(at.extent) == std::vector<std::string>{"D3", "Q"});

    AnswerSet ans = search_answers(av);
    REQUIRE(!ans.ranked.empty());
    CHECK(ans.ranked[0].first == 0);
    CHECK(ans.ranked[0].second == std::vector<int>{3});
}

TEST_CASE("relevance means sharing an attribute with the query intent") {
    Env env;
    QueryConcept flwor = build_query_concept(parse_query(kConditional), env.view);
    CHECK(is_relevant(env.items[2], flwor, env.view));   // D3 shares author[0]
    CHECK(is_relevant(env.items[8], flwor, env.view));   // D9 shares bib/book[2]
    QueryConcept narrow;
    narrow.intent = {"bib/book[0]", "value=Daniel Glazman", "author[0]"};
    CHECK(is_relevant(env.items[2], narrow, env.view));
    CHECK_FALSE(is_relevant(env.items[8], narrow, env.view));  // D9 (Eng)

    for (const DataItem& item : env.items) {
        QueryConcept self;
        self.intent = env.view.context.attribute_labels(
            env.view.context.rows[static_cast<std::size_t>(item.item_id - 1)]);
        CHECK(is_relevant(item, self, env.view));
    }

    DataItem ghost;
    ghost.item_id = 99;
    CHECK_THROWS_AS(is_relevant(ghost, narrow, env.view), Error);
}

TEST_CASE("direct pipeline") {
    Env env;
    ParsedQuery projection = parse_query(kProjection);
    CHECK(direct_pipeline_items(projection, env.view, env.tree, env.items) ==
          std::vector<int>{4, 3});

    // the foreign-cased value filters every book out
    ParsedQuery miss = parse_query(kConditional);
    CHECK(direct_pipeline_items(miss, env.view, env.tree, env.items).empty());

    ParsedQuery hit = parse_query(kConditionalExact);
    CHECK(direct_pipeline_items(hit, env.view, env.tree, env.items) ==
          std::vector<int>{1, 2, 3, 4});

    ParsedQuery books = parse_query("doc(bib.xml)/bib/book");
    CHECK(direct_pipeline_items(books, env.view, env.tree, env.items) ==
          std::vector<int>{1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11});
}

TEST_CASE("answer lines of the projection query") {
    Env env;
    ParsedQuery q = parse_query(kProjection);
    AnswerSet ans = search_answers(env.augment(kProjection));
    std::ostringstream diag;
    std::vector<AnswerLine> lines =
        answer_to_elements(ans, q, env.tree, env.items, env.view, &diag);

    REQUIRE(lines.size() == 2);
    CHECK(lines[0].value == "Eyrolles");
    CHECK(lines[0].tag_key == "publisher");
    CHECK(lines[0].leaf_path == "bib/book[0]/publisher");
    CHECK(lines[0].level == 1);
    CHECK(lines[1].value == "Daniel Glazman");
    CHECK(lines[1].tag_key == "author[0]");
    CHECK(lines[1].level == 1);
    CHECK(diag.str().empty());
}

TEST_CASE("answer lines follow lattice levels before pipeline order") {
    Env env;
    ParsedQuery q = parse_query(kConditionalExact);
    AnswerSet ans = search_answers(env.augment(kConditionalExact));
    std::vector<AnswerLine> lines =
        answer_to_elements(ans, q, env.tree, env.items, env.view, nullptr);

    REQUIRE(lines.size() == 4);
    CHECK(lines[0].value == "Daniel Glazman");  // level 1
    CHECK(lines[0].level == 1);
    CHECK(lines[1].value == "Beginner");        // the rest at level 2, pipeline order
    CHECK(lines[2].value == "CSS 2");
    CHECK(lines[3].value == "Eyrolles");
    CHECK(lines[3].level == 2);
}

TEST_CASE("empty pipeline yields no answer lines") {
    Env env;
    ParsedQuery q = parse_query(kConditional);
    AnswerSet ans = search_answers(env.augment(kConditional));
    std::ostringstream diag;
    CHECK(answer_to_elements(ans, q, env.tree, env.items, env.view, &diag).empty());
    CHECK(diag.str().empty());
}

TEST_CASE("single empty document answers nothing") {
    XmlTree tree = parse_document("<a/>");
    std::vector<DataItem> items = extract_leaf_data(tree);
    GeneralizedView view =
        build_generalized_view(tree, items, conceptual_classification(tree, items));
    ParsedQuery q = parse_query("doc(a.xml)/a");
    AugmentedView av = insert_query(view, build_query_concept(q, view));
    AnswerSet ans = search_answers(av);
    CHECK(ans.ranked.empty());
    CHECK(answer_to_elements(ans, q, tree, items, view, nullptr).empty());
}

TEST_CASE("repeated queries are stateless") {
    Env env;
    AnswerSet first = search_answers(env.augment(kProjection));
    AnswerSet between = search_answers(env.augment(kConditional));
    AnswerSet second = search_answers(env.augment(kProjection));
    CHECK(first.ranked == second.ranked);
    CHECK(first.flattened == second.flattened);
    CHECK(between.ranked != first.ranked);
}

TEST_CASE("lattice answers agree with the direct pipeline on generated queries") {
    std::mt19937 rng(51);
    for (int doc = 0; doc < 6; ++doc) {
        std::string text = doc == 0 ? std::string(fcax::testing::fixture_text())
                                    : fcax::testing::random_document(rng);
        XmlTree tree = parse_document(text);
        std::vector<DataItem> items = extract_leaf_data(tree);
        GeneralizedView view =
            build_generalized_view(tree, items, conceptual_classification(tree, items));

        for (int run = 0; run < 12; ++run) {
            fcax::testing::GeneratedQuery gen = fcax::testing::random_query(rng, tree);
            if (gen.expect_not_found) continue;
            ParsedQuery q = parse_query(gen.text);
            QueryConcept qc = build_query_concept(q, view);
            if (qc.intent.empty()) continue;
            AugmentedView av = insert_query(view, qc);
            AnswerSet ans = search_answers(av);

            // soundness: every answer shares an attribute with the intent
            for (auto [item, level] : ans.flattened) {
                CHECK(is_relevant(items[static_cast<std::size_t>(item - 1)], qc, view));
                CHECK(level >= 0);
            }
            // completeness: rows covering the whole non-novel intent answer
            for (const DataItem& item : items) {
                const Bitset& row =
                    view.context.rows[static_cast<std::size_t>(item.item_id - 1)];
                bool covers = true;
                for (const std::string& name : qc.intent)
                    if (!view.context.has_attribute(name) ||
                        !row.test(view.context.attribute_index(name)))
                        covers = false;
                bool has_novel = false;
                for (const std::string& name : qc.intent)
                    if (!view.context.has_attribute(name)) has_novel = true;
                if (!covers || has_novel) continue;
                bool found = false;
                for (auto [it, level] : ans.flattened)
                    if (it == item.item_id) found = true;
                CHECK(found);
            }

            // the ordered answers are exactly the pipeline's items, re-ranked
            std::ostringstream diag;
            std::vector<AnswerLine> lines =
                answer_to_elements(ans, q, tree, items, view, &diag);
            std::vector<int> direct = direct_pipeline_items(q, view, tree, items);
            CHECK(diag.str().empty());
            REQUIRE(lines.size() == direct.size());
            std::set<int> got, want(direct.begin(), direct.end());
            for (const AnswerLine& line : lines) got.insert(line.item_id);
            CHECK(got == want);
            for (std::size_t i = 1; i < lines.size(); ++i)
                CHECK(lines[i - 1].level <= lines[i].level);
        }
    }
}

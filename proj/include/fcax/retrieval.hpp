// Query answering: insert the query concept into a working copy of the
// generalized view, walk upward through the cover relation, rank by level.
#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "fcax/lattice.hpp"
#include "fcax/query.hpp"
#include "fcax/view.hpp"
#include "fcax/xml.hpp"

namespace fcax {

// The view context plus one pseudo-object whose row is Q_B. The base view is
// never mutated; every query works on its own augmentation.
struct AugmentedView {
    const GeneralizedView* base = nullptr;  // must outlive the augmentation
    FormalContext context;
    ConceptLattice lattice;
    int query_concept_position = -1;
    std::vector<ConceptClass> insertion_log;  // parallel to lattice.concepts

    static constexpr const char* pseudo_object = "Q";
};

// EmptyIntent when Q_B is empty.
AugmentedView insert_query(const GeneralizedView& view, const QueryConcept& q);

struct AnswerSet {
    // (level, item ids in document order); levels strictly increase and each
    // item appears once, at its lowest level.
    std::vector<std::pair<int, std::vector<int>>> ranked;
    std::vector<std::pair<int, int>> flattened;  // (item id, level)
};

// Breadth-first strata over cover edges starting at the query concept.
// Concepts with empty intent contribute nothing; the pseudo-object is
// excluded from every bucket.
AnswerSet search_answers(const AugmentedView& av);

// Does the item's attribute row share at least one attribute with Q_B?
bool is_relevant(const DataItem& obj, const QueryConcept& q,
                 const GeneralizedView& view);

struct AnswerLine {
    int level = -1;  // -1 when no lattice level is known
    int item_id = 0;
    std::string leaf_path;
    std::string tag_key;
    std::string value;
};

// The plain tree-walk pipeline: search, filter, return, then expand matched
// elements to the data items beneath them (document order, first occurrence
// kept). This is the oracle the lattice answers are checked against.
std::vector<int> direct_pipeline_items(const ParsedQuery& q, const GeneralizedView& view,
                                       const XmlTree& tree,
                                       const std::vector<DataItem>& items);

// Orders the direct pipeline's items by (lattice level, pipeline emission
// order). A nonempty pipeline result missing from the lattice answers is
// still emitted, with the discrepancy reported on `diagnostics`.
std::vector<AnswerLine> answer_to_elements(const AnswerSet& ans, const ParsedQuery& q,
                                           const XmlTree& tree,
                                           const std::vector<DataItem>& items,
                                           const GeneralizedView& view,
                                           std::ostream* diagnostics = nullptr);

} // namespace fcax

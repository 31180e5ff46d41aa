#include "fcax/retrieval.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <ostream>
#include <unordered_map>
#include <unordered_set>

#include "fcax/error.hpp"

namespace fcax {

AugmentedView insert_query(const GeneralizedView& view, const QueryConcept& q) {
    if (q.intent.empty())
        raise(Errc::EmptyIntent, "query concept has an empty intent");
    InsertionResult res =
        insert_object(view.lattice, view.context, AugmentedView::pseudo_object, q.intent);
    AugmentedView av;
    av.base = &view;
    av.context = std::move(res.context);
    av.lattice = std::move(res.lattice);
    av.query_concept_position = res.object_concept;
    av.insertion_log = std::move(res.classes);
    return av;
}

AnswerSet search_answers(const AugmentedView& av) {
    const std::size_t pseudo = av.context.object_index(AugmentedView::pseudo_object);
    auto adj = av.lattice.upper_adjacency();

    std::vector<int> dist(av.lattice.size(), -1);
    std::deque<int> queue{av.query_concept_position};
    dist[static_cast<std::size_t>(av.query_concept_position)] = 0;
    int max_level = 0;
    while (!queue.empty()) {
        int c = queue.front();
        queue.pop_front();
        for (int up : adj[static_cast<std::size_t>(c)]) {
            if (dist[static_cast<std::size_t>(up)] < 0) {
                dist[static_cast<std::size_t>(up)] = dist[static_cast<std::size_t>(c)] + 1;
                max_level = std::max(max_level, dist[static_cast<std::size_t>(up)]);
                queue.push_back(up);
            }
        }
    }

    AnswerSet out;
    std::unordered_set<int> seen;
    for (int level = 0; level <= max_level; ++level) {
        std::vector<int> bucket;
        for (std::size_t c = 0; c < av.lattice.size(); ++c) {
            if (dist[c] != level) continue;
            const FormalConcept& fc = av.lattice.concepts[c];
            if (fc.intent.none()) continue;  // the B != {} guard
            fc.extent.for_each([&](std::size_t o) {
                if (o == pseudo) return;
                int item = static_cast<int>(o) + 1;
                if (seen.insert(item).second) bucket.push_back(item);
            });
        }
        if (!bucket.empty()) {
            std::sort(bucket.begin(), bucket.end());
            for (int item : bucket) out.flattened.emplace_back(item, level);
            out.ranked.emplace_back(level, std::move(bucket));
        }
    }
    return out;
}

bool is_relevant(const DataItem& obj, const QueryConcept& q,
                 const GeneralizedView& view) {
    if (obj.item_id < 1 ||
        obj.item_id > static_cast<int>(view.context.object_count()))
        raise(Errc::UnknownObject,
              "data item D" + std::to_string(obj.item_id) + " is not in the view");
    const Bitset& row = view.context.rows[static_cast<std::size_t>(obj.item_id - 1)];
    for (const std::string& name : q.intent)
        if (view.context.has_attribute(name) &&
            row.test(view.context.attribute_index(name)))
            return true;
    return false;
}

std::vector<int> direct_pipeline_items(const ParsedQuery& q, const GeneralizedView& view,
                                       const XmlTree& tree,
                                       const std::vector<DataItem>& items) {
    std::vector<int> nodes = eval_search_path(view, tree, q.search_path);
    nodes = eval_conditional(tree, nodes, q.conditional);
    std::vector<int> elements = eval_return(tree, nodes, q.return_paths);

    std::unordered_map<int, int> item_of_leaf;
    for (const DataItem& item : items) item_of_leaf.emplace(item.leaf_node, item.item_id);

    std::vector<int> out;
    std::unordered_set<int> seen;
    auto emit = [&](int node) {
        auto it = item_of_leaf.find(node);
        if (it != item_of_leaf.end() && seen.insert(it->second).second)
            out.push_back(it->second);
    };
    // An internal element stands for the data items of its subtree, in
    // document order (pre-order walk).
    for (int element : elements) {
        std::vector<int> stack{element};
        while (!stack.empty()) {
            int n = stack.back();
            stack.pop_back();
            if (tree.node(n).is_leaf()) {
                emit(n);
                continue;
            }
            const auto& children = tree.node(n).children;
            for (auto it = children.rbegin(); it != children.rend(); ++it)
                stack.push_back(*it);
        }
    }
    return out;
}

std::vector<AnswerLine> answer_to_elements(const AnswerSet& ans, const ParsedQuery& q,
                                           const XmlTree& tree,
                                           const std::vector<DataItem>& items,
                                           const GeneralizedView& view,
                                           std::ostream* diagnostics) {
    std::vector<int> selected = direct_pipeline_items(q, view, tree, items);

    std::unordered_map<int, int> level_of;
    for (auto [item, level] : ans.flattened) level_of.emplace(item, level);

    if (ans.flattened.empty() && !selected.empty() && diagnostics)
        *diagnostics << "warning: lattice search returned nothing for a query the "
                        "path pipeline answers; emitting pipeline results\n";

    struct Keyed {
        long long level;
        std::size_t rank;
        int item;
    };
    std::vector<Keyed> keyed;
    keyed.reserve(selected.size());
    for (std::size_t i = 0; i < selected.size(); ++i) {
        auto it = level_of.find(selected[i]);
        long long level =
            it == level_of.end() ? std::numeric_limits<long long>::max() : it->second;
        if (it == level_of.end() && !ans.flattened.empty() && diagnostics)
            *diagnostics << "warning: D" << selected[i]
                         << " selected by the path pipeline but absent from the "
                            "lattice answers\n";
        keyed.push_back({level, i, selected[i]});
    }
    std::sort(keyed.begin(), keyed.end(), [](const Keyed& a, const Keyed& b) {
        if (a.level != b.level) return a.level < b.level;
        return a.rank < b.rank;
    });

    std::vector<AnswerLine> out;
    out.reserve(keyed.size());
    for (const Keyed& k : keyed) {
        const DataItem& item = items[static_cast<std::size_t>(k.item - 1)];
        AnswerLine line;
        line.level = k.level == std::numeric_limits<long long>::max()
                         ? -1
                         : static_cast<int>(k.level);
        line.item_id = k.item;
        line.leaf_path = canonical_path_string(tree, item.leaf_node);
        line.tag_key = item.leaf_tag_key;
        line.value = item.value;
        out.push_back(std::move(line));
    }
    return out;
}

} // namespace fcax

#include "fcax/view.hpp"

#include <algorithm>
#include <unordered_map>

#include "fcax/error.hpp"

namespace fcax {
namespace {

// Canonical tag keys of every leaf element, first-appearance document order.
std::vector<std::string> leaf_key_universe(const XmlTree& tree) {
    std::vector<std::string> keys;
    std::unordered_map<std::string, std::size_t> seen;
    for (const XmlNode& node : tree.nodes()) {
        if (!node.is_leaf()) continue;
        std::string key = canonical_tag_key(tree, node.id);
        if (seen.emplace(key, keys.size()).second) keys.push_back(std::move(key));
    }
    return keys;
}

bool all_children_are_leaves(const XmlTree& tree, int parent) {
    for (int child : tree.node(parent).children)
        if (!tree.node(child).is_leaf()) return false;
    return true;
}

} // namespace

FormalContext build_parent_context(const XmlTree& tree,
                                   const std::vector<DataItem>& items, int parent) {
    const XmlNode& node = tree.node(parent);
    if (node.is_leaf())
        raise(Errc::NotAParentNode,
              "'" + canonical_path_string(tree, parent) + "' has no child elements");

    if (all_children_are_leaves(tree, parent)) {
        std::vector<std::string> objects;
        objects.reserve(items.size());
        for (const DataItem& item : items) objects.push_back("D" + std::to_string(item.item_id));
        FormalContext ctx = FormalContext::make(std::move(objects), leaf_key_universe(tree));
        std::unordered_map<int, std::size_t> item_of_leaf;
        for (std::size_t i = 0; i < items.size(); ++i)
            item_of_leaf.emplace(items[i].leaf_node, i);
        for (int child : tree.node(parent).children) {
            auto it = item_of_leaf.find(child);
            if (it == item_of_leaf.end()) continue;  // empty leaf, no datum
            ctx.set_incident(it->second,
                             ctx.attribute_index(canonical_tag_key(tree, child)));
        }
        return ctx;
    }

    // Higher parent: describe child parent-nodes by their children's keys.
    std::vector<std::string> objects;
    std::vector<int> object_nodes;
    for (int child : tree.node(parent).children) {
        if (tree.node(child).is_leaf()) continue;
        objects.push_back(canonical_tag_key(tree, child));
        object_nodes.push_back(child);
    }
    std::vector<std::string> attrs;
    std::unordered_map<std::string, std::size_t> attr_seen;
    for (int child : object_nodes) {
        for (int grandchild : tree.node(child).children) {
            std::string key = canonical_tag_key(tree, grandchild);
            if (attr_seen.emplace(key, attrs.size()).second) attrs.push_back(std::move(key));
        }
    }
    FormalContext ctx = FormalContext::make(std::move(objects), std::move(attrs));
    for (std::size_t o = 0; o < object_nodes.size(); ++o)
        for (int grandchild : tree.node(object_nodes[o]).children)
            ctx.set_incident(o, ctx.attribute_index(canonical_tag_key(tree, grandchild)));
    return ctx;
}

NodeClassification conceptual_classification(const XmlTree& tree,
                                             const std::vector<DataItem>& items) {
    NodeClassification out;
    out.parents = parent_nodes_bottom_up(tree);
    for (int parent : out.parents) {
        FormalContext ctx = build_parent_context(tree, items, parent);
        out.lattices.emplace(parent, build_lattice(ctx));
        out.contexts.emplace(parent, std::move(ctx));
    }
    return out;
}

GeneralizedView build_generalized_view(const XmlTree& tree,
                                       const std::vector<DataItem>& items,
                                       const NodeClassification& classification) {
    std::vector<std::string> attrs = leaf_key_universe(tree);
    const std::size_t n_keys = attrs.size();
    std::unordered_map<std::string, std::size_t> attr_index;
    for (std::size_t i = 0; i < attrs.size(); ++i) attr_index.emplace(attrs[i], i);

    // Structural attributes: parent paths in document order. Parents outside
    // every item's ancestor chain keep an all-zero column.
    std::vector<int> parents = classification.parents;
    std::sort(parents.begin(), parents.end());
    std::unordered_map<int, std::size_t> struct_attr;  // parent node -> attribute
    for (int parent : parents) {
        std::string path = canonical_path_string(tree, parent);
        auto [it, fresh] = attr_index.emplace(path, attrs.size());
        if (fresh) attrs.push_back(path);
        struct_attr.emplace(parent, it->second);
    }

    std::vector<std::string> objects;
    objects.reserve(items.size());
    for (const DataItem& item : items) objects.push_back("D" + std::to_string(item.item_id));

    // Content attributes through the default nominal scale on "value".
    MultiValuedContext mv = MultiValuedContext::make(objects, {"value"});
    for (const DataItem& item : items)
        mv.set_value(objects[static_cast<std::size_t>(item.item_id - 1)], "value",
                     item.value);
    FormalContext scaled = scale_context(mv, {ScaleDefinition::nominal(mv, "value")});
    for (const auto& name : scaled.attributes) {
        if (attr_index.emplace(name, attrs.size()).second) attrs.push_back(name);
    }

    GeneralizedView view;
    view.context = FormalContext::make(std::move(objects), std::move(attrs));
    for (const DataItem& item : items) {
        std::size_t o = static_cast<std::size_t>(item.item_id - 1);
        view.context.set_incident(o, attr_index.at(item.leaf_tag_key));
        for (int a = tree.node(item.leaf_node).parent; a >= 0; a = tree.node(a).parent)
            view.context.set_incident(o, struct_attr.at(a));
    }
    for (std::size_t o = 0; o < scaled.object_count(); ++o)
        scaled.rows[o].for_each([&](std::size_t a) {
            view.context.set_incident(o, attr_index.at(scaled.attributes[a]));
        });

    view.lattice = build_lattice(view.context);

    // Dictionary: parent paths first, leaf paths second, bare tag keys last;
    // the first writer of a key wins.
    for (int parent : parents)
        view.path_dictionary.emplace(canonical_path_string(tree, parent),
                                     static_cast<int>(struct_attr.at(parent)));
    for (const XmlNode& node : tree.nodes()) {
        if (!node.is_leaf()) continue;
        view.path_dictionary.emplace(
            canonical_path_string(tree, node.id),
            static_cast<int>(attr_index.at(canonical_tag_key(tree, node.id))));
    }
    for (std::size_t i = 0; i < n_keys; ++i)
        view.path_dictionary.emplace(view.context.attributes[i], static_cast<int>(i));

    view.node_paths = build_node_paths(tree, view.path_dictionary);
    return view;
}

std::vector<NodePathEntry> build_node_paths(const XmlTree& tree,
                                            const std::map<std::string, int>& dictionary) {
    std::vector<NodePathEntry> out;
    out.reserve(tree.size());
    for (const XmlNode& node : tree.nodes()) {
        NodePathEntry entry;
        entry.node = node.id;
        entry.is_leaf = node.is_leaf();
        entry.path = canonical_path(tree, node.id);
        entry.path_string = path_to_string(tree, entry.path);
        auto it = dictionary.find(entry.path_string);
        entry.attribute = it == dictionary.end() ? -1 : it->second;
        out.push_back(std::move(entry));
    }
    return out;
}

} // namespace fcax

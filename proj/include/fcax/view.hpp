// From a document tree to formal contexts: one context per parent element,
// and one flattened view over all data items.
#pragma once

#include <map>
#include <string>
#include <vector>

#include "fcax/context.hpp"
#include "fcax/lattice.hpp"
#include "fcax/xml.hpp"

namespace fcax {

// Per-parent contexts and their lattices, keyed by node id.
struct NodeClassification {
    std::vector<int> parents;  // bottom-up order
    std::map<int, FormalContext> contexts;
    std::map<int, ConceptLattice> lattices;
};

// Context of one parent node.
//  * Leaf-level parent (every child is a leaf): objects are all data items of
//    the document, attributes are the document's leaf tag keys, and an item is
//    incident with its own tag key when its leaf sits under this parent.
//  * Higher parent: objects are the child elements that are parents
//    themselves, attributes are the tag keys of their children, incidence is
//    "has a child with that key". Element presence counts, text does not, so
//    empty leaves contribute attributes here.
FormalContext build_parent_context(const XmlTree& tree,
                                   const std::vector<DataItem>& items, int parent);

NodeClassification conceptual_classification(const XmlTree& tree,
                                             const std::vector<DataItem>& items);

struct NodePathEntry {
    int node = -1;
    bool is_leaf = false;
    CanonicalPath path;
    std::string path_string;
    int attribute = -1;  // view attribute the node maps to
};

// One context over every data item. Attributes, in order: leaf tag keys
// (first-appearance order), one structural attribute per parent node's
// canonical path (document order), one "value=..." attribute per distinct
// item value (nominal scaling, first-appearance order).
struct GeneralizedView {
    FormalContext context;  // objects are item labels "D1".."Dn"
    ConceptLattice lattice;
    std::map<std::string, int> path_dictionary;  // path or tag key -> attribute
    std::vector<NodePathEntry> node_paths;       // every node, document order

    std::string object_label(int item_id) const { return "D" + std::to_string(item_id); }
};

GeneralizedView build_generalized_view(const XmlTree& tree,
                                       const std::vector<DataItem>& items,
                                       const NodeClassification& classification);

// Rebuilds the derived node-path table after loading a stored view.
std::vector<NodePathEntry> build_node_paths(const XmlTree& tree,
                                            const std::map<std::string, int>& dictionary);

} // namespace fcax

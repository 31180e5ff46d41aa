// Element-tree document model. Text lives on leaf elements only; mixed
// content is rejected at parse time, element attributes are skipped.
#pragma once

#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace fcax {

struct XmlNode {
    int id = 0;             // document-order index, root is 0
    std::string tag;
    int parent = -1;
    int position = 0;       // zero-based index among same-tag siblings
    std::vector<int> children;
    std::string text;       // trimmed; non-empty only on leaves

    bool is_leaf() const { return children.empty(); }
    bool has_text() const { return !text.empty(); }
};

class XmlTree {
public:
    int root() const { return 0; }
    std::size_t size() const { return nodes_.size(); }
    const XmlNode& node(int id) const { return nodes_[static_cast<std::size_t>(id)]; }
    const std::vector<XmlNode>& nodes() const { return nodes_; }

    // True when the tag appears two or more times under some single parent
    // anywhere in the document; such tags carry positional keys everywhere.
    bool tag_is_positional(const std::string& tag) const {
        return positional_tags_.count(tag) != 0;
    }

private:
    std::vector<XmlNode> nodes_;
    std::unordered_set<std::string> positional_tags_;

    friend XmlTree parse_document(std::string_view input);
    friend XmlTree assemble_tree(std::vector<XmlNode> nodes);
};

struct CanonicalStep {
    std::string tag;
    int position = 0;
    friend bool operator==(const CanonicalStep&, const CanonicalStep&) = default;
};

struct CanonicalPath {
    std::vector<CanonicalStep> steps;
    friend bool operator==(const CanonicalPath&, const CanonicalPath&) = default;
};

struct DataItem {
    int item_id = 0;        // 1-based, document order
    std::string value;
    int leaf_node = -1;
    std::string leaf_tag_key;
};

XmlTree parse_document(std::string_view input);

// Non-empty text leaves in document order, ids 1..n.
std::vector<DataItem> extract_leaf_data(const XmlTree& tree);

// Nodes with at least one child, children before parents (root last).
std::vector<int> parent_nodes_bottom_up(const XmlTree& tree);

// "tag[k]" when the tag is positional in the document, bare tag otherwise.
// The root is always keyed by its bare tag.
std::string canonical_tag_key(const XmlTree& tree, int node);

CanonicalPath canonical_path(const XmlTree& tree, int node);
std::string path_to_string(const XmlTree& tree, const CanonicalPath& path);
std::string canonical_path_string(const XmlTree& tree, int node);

// Inverse of canonical_path; -1 when no node matches.
int resolve_path(const XmlTree& tree, const CanonicalPath& path);

// "a/b[1]/c" -> steps; bare tags read as position 0.
CanonicalPath parse_canonical_path(const std::string& text);

// Rebuilds a tree from nodes carrying only id-ordered (tag, parent, text);
// children lists, positions and the positional tag set are recomputed.
XmlTree assemble_tree(std::vector<XmlNode> nodes);

} // namespace fcax

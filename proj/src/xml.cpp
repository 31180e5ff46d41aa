#include "fcax/xml.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

#include "fcax/error.hpp"

namespace fcax {
namespace {

struct Cursor {
    std::string_view in;
    std::size_t pos = 0;
    int line = 1;
    int col = 1;

    bool eof() const { return pos >= in.size(); }
    char peek(std::size_t ahead = 0) const {
        return pos + ahead < in.size() ? in[pos + ahead] : '\0';
    }
    bool starts_with(std::string_view s) const { return in.substr(pos, s.size()) == s; }

    char advance() {
        char c = in[pos++];
        if (c == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
        return c;
    }

    void advance_by(std::size_t n) {
        for (std::size_t i = 0; i < n; ++i) advance();
    }

    [[noreturn]] void fail(const std::string& what) const {
        std::ostringstream os;
        os << "malformed XML at line " << line << ", column " << col << ": " << what;
        raise(Errc::MalformedXml, os.str());
    }
};

bool is_space(char c) {
    return c == ' ' || c == '\t' || c == '\r' || c == '\n';
}

bool is_name_start(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == ':';
}

bool is_name_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == ':' ||
           c == '-' || c == '.';
}

void skip_space(Cursor& c) {
    while (!c.eof() && is_space(c.peek())) c.advance();
}

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && is_space(s[b])) ++b;
    while (e > b && is_space(s[e - 1])) --e;
    return s.substr(b, e - b);
}

std::string read_name(Cursor& c) {
    if (c.eof() || !is_name_start(c.peek())) c.fail("expected a name");
    std::string name;
    while (!c.eof() && is_name_char(c.peek())) name.push_back(c.advance());
    return name;
}

void skip_until(Cursor& c, std::string_view terminator, const char* what) {
    while (!c.eof()) {
        if (c.starts_with(terminator)) {
            c.advance_by(terminator.size());
            return;
        }
        c.advance();
    }
    c.fail(std::string("unterminated ") + what);
}

// <!DOCTYPE ...> with an optional [...] internal subset, contents ignored.
void skip_doctype(Cursor& c) {
    int bracket = 0;
    while (!c.eof()) {
        char ch = c.advance();
        if (ch == '[') ++bracket;
        else if (ch == ']') --bracket;
        else if (ch == '>' && bracket == 0) return;
    }
    c.fail("unterminated DOCTYPE");
}

// Returns true when something other than an element start was consumed.
bool skip_misc(Cursor& c) {
    if (c.starts_with("<!--")) {
        c.advance_by(4);
        skip_until(c, "-->", "comment");
        return true;
    }
    if (c.starts_with("<?")) {
        c.advance_by(2);
        skip_until(c, "?>", "processing instruction");
        return true;
    }
    if (c.starts_with("<!DOCTYPE")) {
        c.advance_by(9);
        skip_doctype(c);
        return true;
    }
    return false;
}

void append_entity(Cursor& c, std::string& out) {
    c.advance(); // '&'
    std::string name;
    while (!c.eof() && c.peek() != ';' && name.size() <= 8) name.push_back(c.advance());
    if (c.eof() || c.peek() != ';') c.fail("unterminated entity reference");
    c.advance();
    if (name == "lt") out.push_back('<');
    else if (name == "gt") out.push_back('>');
    else if (name == "amp") out.push_back('&');
    else if (name == "apos") out.push_back('\'');
    else if (name == "quot") out.push_back('"');
    else c.fail("unsupported entity &" + name + ";");
}

// Attributes are parsed for well-formedness and dropped.
void skip_attributes(Cursor& c) {
    for (;;) {
        skip_space(c);
        if (c.eof()) c.fail("unterminated start tag");
        if (c.peek() == '>' || c.starts_with("/>")) return;
        read_name(c);
        skip_space(c);
        if (c.peek() != '=') c.fail("expected '=' in attribute");
        c.advance();
        skip_space(c);
        char quote = c.peek();
        if (quote != '"' && quote != '\'') c.fail("attribute value must be quoted");
        c.advance();
        while (!c.eof() && c.peek() != quote) c.advance();
        if (c.eof()) c.fail("unterminated attribute value");
        c.advance();
    }
}

struct Frame {
    int node;
    std::string text;
};

} // namespace

XmlTree parse_document(std::string_view input) {
    Cursor c{input};
    if (c.starts_with("\xEF\xBB\xBF")) c.advance_by(3);

    XmlTree tree;
    auto& nodes = tree.nodes_;
    std::vector<Frame> open;
    int root = -1;

    auto open_element = [&]() {
        std::string tag = read_name(c);
        skip_attributes(c);
        int id = static_cast<int>(nodes.size());
        XmlNode node;
        node.id = id;
        node.tag = std::move(tag);
        node.parent = open.empty() ? -1 : open.back().node;
        nodes.push_back(std::move(node));
        if (!open.empty())
            nodes[static_cast<std::size_t>(open.back().node)].children.push_back(id);
        else if (root >= 0)
            c.fail("more than one root element");
        else
            root = id;

        bool self_closing = c.starts_with("/>");
        if (self_closing) {
            c.advance_by(2);
        } else {
            if (c.peek() != '>') c.fail("expected '>'");
            c.advance();
            open.push_back({id, {}});
        }
    };

    auto close_element = [&]() {
        c.advance_by(2); // "</"
        std::string tag = read_name(c);
        skip_space(c);
        if (c.peek() != '>') c.fail("expected '>' in end tag");
        c.advance();
        if (open.empty()) c.fail("end tag </" + tag + "> with no open element");
        Frame frame = std::move(open.back());
        open.pop_back();
        XmlNode& node = nodes[static_cast<std::size_t>(frame.node)];
        if (node.tag != tag)
            c.fail("end tag </" + tag + "> does not match <" + node.tag + ">");
        std::string text = trim(frame.text);
        if (!node.children.empty()) {
            if (!text.empty())
                raise(Errc::MixedContent,
                      "element <" + node.tag + "> mixes text with child elements");
        } else {
            node.text = std::move(text);
        }
    };

    for (;;) {
        while (!c.eof()) {
            if (is_space(c.peek())) {
                char ws = c.advance();
                if (!open.empty()) open.back().text.push_back(ws);
                continue;
            }
            if (c.peek() == '<') {
                if (skip_misc(c)) continue;
                break;
            }
            if (open.empty()) c.fail("text outside the root element");
            if (c.peek() == '&') {
                append_entity(c, open.back().text);
            } else if (c.starts_with("]]>")) {
                c.fail("']]>' outside CDATA");
            } else {
                open.back().text.push_back(c.advance());
            }
        }
        if (c.eof()) break;

        if (c.starts_with("<![CDATA[")) {
            if (open.empty()) c.fail("CDATA outside the root element");
            c.advance_by(9);
            std::string raw;
            while (!c.eof() && !c.starts_with("]]>")) raw.push_back(c.advance());
            if (c.eof()) c.fail("unterminated CDATA section");
            c.advance_by(3);
            open.back().text += raw;
        } else if (c.starts_with("</")) {
            close_element();
            if (open.empty()) {
                // Only misc content may follow the root element.
                for (;;) {
                    skip_space(c);
                    if (c.eof()) break;
                    if (c.peek() != '<' || !skip_misc(c)) {
                        if (c.starts_with("<") && !c.starts_with("<!") && !c.starts_with("<?"))
                            c.fail("more than one root element");
                        c.fail("content after the root element");
                    }
                }
                break;
            }
        } else if (c.peek() == '<') {
            c.advance();
            open_element();
        }
    }

    if (!open.empty())
        c.fail("unclosed element <" + nodes[static_cast<std::size_t>(open.back().node)].tag + ">");
    if (root < 0) raise(Errc::EmptyDocument, "document has no root element");

    // Sibling positions and the document-global positional tag set.
    for (auto& node : nodes) {
        std::map<std::string, int> seen;
        for (int child : node.children) {
            XmlNode& ch = nodes[static_cast<std::size_t>(child)];
            ch.position = seen[ch.tag]++;
        }
        for (auto& [tag, n] : seen)
            if (n >= 2) tree.positional_tags_.insert(tag);
    }
    return tree;
}

std::vector<DataItem> extract_leaf_data(const XmlTree& tree) {
    std::vector<DataItem> items;
    for (const XmlNode& node : tree.nodes()) {
        if (node.is_leaf() && node.has_text()) {
            DataItem item;
            item.item_id = static_cast<int>(items.size()) + 1;
            item.value = node.text;
            item.leaf_node = node.id;
            item.leaf_tag_key = canonical_tag_key(tree, node.id);
            items.push_back(std::move(item));
        }
    }
    return items;
}

std::vector<int> parent_nodes_bottom_up(const XmlTree& tree) {
    std::vector<int> out;
    // Node ids are assigned in document order, so reverse id order already
    // places every node after all of its descendants.
    for (int id = static_cast<int>(tree.size()) - 1; id >= 0; --id)
        if (!tree.node(id).is_leaf()) out.push_back(id);
    return out;
}

std::string canonical_tag_key(const XmlTree& tree, int node) {
    const XmlNode& n = tree.node(node);
    if (n.parent < 0 || !tree.tag_is_positional(n.tag)) return n.tag;
    return n.tag + "[" + std::to_string(n.position) + "]";
}

CanonicalPath canonical_path(const XmlTree& tree, int node) {
    CanonicalPath path;
    for (int id = node; id >= 0; id = tree.node(id).parent)
        path.steps.push_back({tree.node(id).tag, tree.node(id).position});
    std::reverse(path.steps.begin(), path.steps.end());
    return path;
}

std::string path_to_string(const XmlTree& tree, const CanonicalPath& path) {
    std::string out;
    for (std::size_t i = 0; i < path.steps.size(); ++i) {
        if (i) out.push_back('/');
        const CanonicalStep& step = path.steps[i];
        out += step.tag;
        if (i > 0 && tree.tag_is_positional(step.tag))
            out += "[" + std::to_string(step.position) + "]";
    }
    return out;
}

std::string canonical_path_string(const XmlTree& tree, int node) {
    return path_to_string(tree, canonical_path(tree, node));
}

CanonicalPath parse_canonical_path(const std::string& text) {
    CanonicalPath path;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('/', start);
        if (end == std::string::npos) end = text.size();
        std::string part = text.substr(start, end - start);
        CanonicalStep step{part, 0};
        std::size_t bracket = part.find('[');
        if (bracket != std::string::npos && part.back() == ']') {
            step.tag = part.substr(0, bracket);
            step.position =
                std::stoi(part.substr(bracket + 1, part.size() - bracket - 2));
        }
        path.steps.push_back(std::move(step));
        if (end == text.size()) break;
        start = end + 1;
    }
    return path;
}

XmlTree assemble_tree(std::vector<XmlNode> nodes) {
    XmlTree tree;
    tree.nodes_ = std::move(nodes);
    for (auto& node : tree.nodes_) node.children.clear();
    for (auto& node : tree.nodes_)
        if (node.parent >= 0)
            tree.nodes_[static_cast<std::size_t>(node.parent)].children.push_back(node.id);
    for (auto& node : tree.nodes_) {
        std::map<std::string, int> seen;
        for (int child : node.children) {
            XmlNode& ch = tree.nodes_[static_cast<std::size_t>(child)];
            ch.position = seen[ch.tag]++;
        }
        for (auto& [tag, n] : seen)
            if (n >= 2) tree.positional_tags_.insert(tag);
    }
    return tree;
}

int resolve_path(const XmlTree& tree, const CanonicalPath& path) {
    if (path.steps.empty()) return -1;
    const XmlNode& root = tree.node(tree.root());
    if (path.steps[0].tag != root.tag || path.steps[0].position != 0) return -1;
    int current = root.id;
    for (std::size_t i = 1; i < path.steps.size(); ++i) {
        const CanonicalStep& step = path.steps[i];
        int next = -1;
        for (int child : tree.node(current).children) {
            const XmlNode& ch = tree.node(child);
            if (ch.tag == step.tag && ch.position == step.position) {
                next = child;
                break;
            }
        }
        if (next < 0) return -1;
        current = next;
    }
    return current;
}

} // namespace fcax

#include "fcax/dot.hpp"

#include <cctype>
#include <sstream>

namespace fcax {
namespace {

std::string escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        if (c == '"' || c == '\\') out.push_back('\\');
        out.push_back(c);
    }
    return out;
}

std::string join(const std::vector<std::string>& parts) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += ", ";
        out += parts[i];
    }
    return out;
}

std::string identifier(const std::string& name) {
    std::string out = "g_";
    for (char c : name)
        out.push_back(std::isalnum(static_cast<unsigned char>(c)) ? c : '_');
    return out;
}

} // namespace

std::string lattice_to_dot(const ConceptLattice& lattice, const FormalContext& ctx,
                           const std::string& graph_name) {
    std::ostringstream os;
    os << "digraph " << identifier(graph_name) << " {\n";
    os << "  rankdir=BT;\n";
    os << "  node [shape=box, fontname=\"Helvetica\"];\n";
    for (std::size_t i = 0; i < lattice.concepts.size(); ++i) {
        const FormalConcept& c = lattice.concepts[i];
        os << "  c" << i << " [label=\"{"
           << escape(join(ctx.object_labels(c.extent))) << "} | {"
           << escape(join(ctx.attribute_labels(c.intent))) << "}\"];\n";
    }
    for (auto [lo, hi] : lattice.cover_edges)
        os << "  c" << lo << " -> c" << hi << ";\n";
    os << "}\n";
    return os.str();
}

} // namespace fcax

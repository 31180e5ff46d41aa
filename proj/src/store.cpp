#include "fcax/store.hpp"

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "fcax/error.hpp"

namespace fcax {
namespace {

using nlohmann::json;

json context_to_json(const FormalContext& ctx) {
    json rows = json::array();
    for (const Bitset& row : ctx.rows) rows.push_back(row.to_string());
    return json{{"objects", ctx.objects}, {"attributes", ctx.attributes}, {"rows", rows}};
}

FormalContext context_from_json(const json& j) {
    FormalContext ctx = FormalContext::make(
        j.at("objects").get<std::vector<std::string>>(),
        j.at("attributes").get<std::vector<std::string>>());
    const auto& rows = j.at("rows");
    if (rows.size() != ctx.object_count())
        raise(Errc::BadIndexFile, "context row count mismatch");
    for (std::size_t o = 0; o < ctx.object_count(); ++o) {
        std::string bits = rows[o].get<std::string>();
        if (bits.size() != ctx.attribute_count())
            raise(Errc::BadIndexFile, "context row width mismatch");
        for (std::size_t a = 0; a < bits.size(); ++a)
            if (bits[a] == '1') ctx.set_incident(o, a);
    }
    return ctx;
}

json lattice_to_json(const ConceptLattice& lat) {
    json concepts = json::array();
    for (const FormalConcept& c : lat.concepts)
        concepts.push_back(
            json{{"extent", c.extent.to_string()}, {"intent", c.intent.to_string()}});
    json covers = json::array();
    for (auto [lo, hi] : lat.cover_edges) covers.push_back(json::array({lo, hi}));
    return json{{"concepts", concepts},
                {"covers", covers},
                {"bottom", lat.bottom},
                {"top", lat.top}};
}

ConceptLattice lattice_from_json(const json& j) {
    ConceptLattice lat;
    for (const auto& c : j.at("concepts"))
        lat.concepts.push_back({Bitset::from_string(c.at("extent").get<std::string>()),
                                Bitset::from_string(c.at("intent").get<std::string>())});
    for (const auto& e : j.at("covers"))
        lat.cover_edges.emplace_back(e[0].get<int>(), e[1].get<int>());
    lat.bottom = j.at("bottom").get<int>();
    lat.top = j.at("top").get<int>();
    return lat;
}

} // namespace

std::string fnv1a_digest(std::string_view bytes) {
    std::uint64_t hash = 14695981039346656037ull;
    for (unsigned char c : bytes) {
        hash ^= c;
        hash *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash));
    return buf;
}

Index build_index(std::string_view xml, std::string source_name) {
    Index index;
    index.source_name = std::move(source_name);
    index.source_digest = fnv1a_digest(xml);
    index.tree = parse_document(xml);
    index.items = extract_leaf_data(index.tree);
    index.classification = conceptual_classification(index.tree, index.items);
    index.view = build_generalized_view(index.tree, index.items, index.classification);
    return index;
}

std::string index_to_json(const Index& index) {
    json tree = json::array();
    for (const XmlNode& node : index.tree.nodes())
        tree.push_back(
            json{{"tag", node.tag}, {"parent", node.parent}, {"text", node.text}});

    json items = json::array();
    for (const DataItem& item : index.items)
        items.push_back(json{{"id", item.item_id},
                             {"value", item.value},
                             {"leaf", item.leaf_node},
                             {"key", item.leaf_tag_key}});

    json contexts = json::object();
    for (const auto& [node, ctx] : index.classification.contexts)
        contexts[canonical_path_string(index.tree, node)] = context_to_json(ctx);

    json dictionary = json::object();
    for (const auto& [key, attr] : index.view.path_dictionary) dictionary[key] = attr;

    json root{{"format_version", index.format_version},
              {"source", json{{"name", index.source_name}, {"digest", index.source_digest}}},
              {"tree", tree},
              {"data_items", items},
              {"contexts", contexts},
              {"view", json{{"context", context_to_json(index.view.context)},
                            {"lattice", lattice_to_json(index.view.lattice)},
                            {"path_dictionary", dictionary}}}};
    return root.dump(2) + "\n";
}

void save_index(const Index& index, const std::string& path) {
    namespace fs = std::filesystem;
    std::string payload = index_to_json(index);
    fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) raise(Errc::IoError, "cannot write " + tmp.string());
        out.write(payload.data(), static_cast<std::streamsize>(payload.size()));
        if (!out) raise(Errc::IoError, "short write to " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) raise(Errc::IoError, "cannot move index into place: " + ec.message());
}

Index load_index(const std::string& path, std::vector<std::string>* warnings) {
    std::ifstream in(path, std::ios::binary);
    if (!in) raise(Errc::IoError, "cannot read " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();

    json root;
    try {
        root = json::parse(buffer.str());
    } catch (const json::exception& e) {
        raise(Errc::BadIndexFile, std::string("index file is not valid JSON: ") + e.what());
    }

    Index index;
    try {
        index.format_version = root.at("format_version").get<int>();
        if (index.format_version != 1)
            raise(Errc::BadIndexFile,
                  "unsupported format_version " + std::to_string(index.format_version));
        index.source_name = root.at("source").at("name").get<std::string>();
        index.source_digest = root.at("source").at("digest").get<std::string>();

        std::vector<XmlNode> nodes;
        int id = 0;
        for (const auto& n : root.at("tree")) {
            XmlNode node;
            node.id = id++;
            node.tag = n.at("tag").get<std::string>();
            node.parent = n.at("parent").get<int>();
            node.text = n.at("text").get<std::string>();
            nodes.push_back(std::move(node));
        }
        index.tree = assemble_tree(std::move(nodes));

        for (const auto& i : root.at("data_items")) {
            DataItem item;
            item.item_id = i.at("id").get<int>();
            item.value = i.at("value").get<std::string>();
            item.leaf_node = i.at("leaf").get<int>();
            item.leaf_tag_key = i.at("key").get<std::string>();
            index.items.push_back(std::move(item));
        }

        for (const auto& [key, value] : root.at("contexts").items()) {
            int node = resolve_path(index.tree, parse_canonical_path(key));
            if (node < 0)
                raise(Errc::BadIndexFile, "context key '" + key + "' resolves to no node");
            index.classification.contexts.emplace(node, context_from_json(value));
        }
        index.classification.parents = parent_nodes_bottom_up(index.tree);
        for (int parent : index.classification.parents) {
            auto it = index.classification.contexts.find(parent);
            if (it == index.classification.contexts.end())
                raise(Errc::BadIndexFile,
                      "missing context for parent node " + std::to_string(parent));
            index.classification.lattices.emplace(parent, build_lattice(it->second));
        }

        const auto& view = root.at("view");
        index.view.context = context_from_json(view.at("context"));
        index.view.lattice = lattice_from_json(view.at("lattice"));
        for (const auto& [key, value] : view.at("path_dictionary").items())
            index.view.path_dictionary.emplace(key, value.get<int>());
        index.view.node_paths = build_node_paths(index.tree, index.view.path_dictionary);
    } catch (const json::exception& e) {
        raise(Errc::BadIndexFile, std::string("index file malformed: ") + e.what());
    }

    if (warnings) {
        std::error_code ec;
        if (std::filesystem::exists(index.source_name, ec) && !ec) {
            std::ifstream src(index.source_name, std::ios::binary);
            if (src) {
                std::stringstream sb;
                sb << src.rdbuf();
                if (fnv1a_digest(sb.str()) != index.source_digest)
                    warnings->push_back("source document '" + index.source_name +
                                        "' changed since indexing; the index is stale");
            }
        }
    }
    return index;
}

} // namespace fcax

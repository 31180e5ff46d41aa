// fcax command line: index XML documents, query them through the concept
// lattice, export Hasse diagrams, inspect stored indexes.
//
// Exit codes: 0 success, 1 IO or malformed input, 2 query grammar error or
// unsupported construct, 3 element/path not found, 4 unknown export target.
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "fcax/dot.hpp"
#include "fcax/error.hpp"
#include "fcax/query.hpp"
#include "fcax/retrieval.hpp"
#include "fcax/store.hpp"

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fcax::raise(fcax::Errc::IoError, "file not found: " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

fcax::Index load_with_warnings(const std::string& path) {
    std::vector<std::string> warnings;
    fcax::Index index = fcax::load_index(path, &warnings);
    for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
    return index;
}

std::string level_text(int level) {
    return level < 0 ? "-" : std::to_string(level);
}

void print_lines(const std::vector<fcax::AnswerLine>& lines) {
    for (const auto& line : lines)
        std::cout << level_text(line.level) << "\t" << line.leaf_path << "\t"
                  << line.tag_key << "\t" << line.value << "\n";
}

int cmd_index(const std::string& input, const std::string& output) {
    fcax::Index index = fcax::build_index(read_file(input), input);
    fcax::save_index(index, output);
    std::cout << "indexed " << input << ": " << index.items.size() << " data items, "
              << index.classification.contexts.size() << " parent contexts, "
              << index.view.lattice.size() << " view concepts\n";
    return 0;
}

int cmd_query(const std::string& index_path, const std::string& query_text,
              bool levels, bool direct, bool as_json) {
    fcax::Index index = load_with_warnings(index_path);
    fcax::ParsedQuery query = fcax::parse_query(query_text);

    if (direct) {
        std::vector<int> selected =
            fcax::direct_pipeline_items(query, index.view, index.tree, index.items);
        std::vector<fcax::AnswerLine> lines;
        for (int id : selected) {
            const fcax::DataItem& item = index.items[static_cast<std::size_t>(id - 1)];
            lines.push_back({-1, id, fcax::canonical_path_string(index.tree, item.leaf_node),
                             item.leaf_tag_key, item.value});
        }
        if (as_json) {
            nlohmann::json out = nlohmann::json::array();
            for (const auto& line : lines)
                out.push_back({{"level", nullptr},
                               {"item", line.item_id},
                               {"path", line.leaf_path},
                               {"key", line.tag_key},
                               {"value", line.value}});
            std::cout << out.dump(2) << "\n";
        } else {
            print_lines(lines);
        }
        return 0;
    }

    fcax::QueryConcept concept_q = fcax::build_query_concept(query, index.view);
    fcax::AugmentedView augmented = fcax::insert_query(index.view, concept_q);
    fcax::AnswerSet answers = fcax::search_answers(augmented);

    if (levels) {
        // Raw ranked relevance buckets, before return-path filtering.
        for (const auto& [level, bucket] : answers.ranked) {
            for (int id : bucket) {
                const fcax::DataItem& item = index.items[static_cast<std::size_t>(id - 1)];
                std::cout << level << "\t"
                          << fcax::canonical_path_string(index.tree, item.leaf_node) << "\t"
                          << item.leaf_tag_key << "\t" << item.value << "\n";
            }
        }
        return 0;
    }

    std::vector<fcax::AnswerLine> lines = fcax::answer_to_elements(
        answers, query, index.tree, index.items, index.view, &std::cerr);
    if (as_json) {
        nlohmann::json out = nlohmann::json::array();
        for (const auto& line : lines) {
            nlohmann::json entry{{"item", line.item_id},
                                 {"path", line.leaf_path},
                                 {"key", line.tag_key},
                                 {"value", line.value}};
            if (line.level >= 0) entry["level"] = line.level;
            else entry["level"] = nullptr;
            out.push_back(std::move(entry));
        }
        std::cout << out.dump(2) << "\n";
    } else {
        print_lines(lines);
    }
    return 0;
}

int cmd_export(const std::string& index_path, const std::string& target,
               const std::string& format, const std::string& output) {
    if (format != "dot")
        fcax::raise(fcax::Errc::UnknownTarget, "unsupported format '" + format + "'");
    fcax::Index index = load_with_warnings(index_path);

    std::string dot;
    if (target == "view") {
        dot = fcax::lattice_to_dot(index.view.lattice, index.view.context, "view");
    } else {
        int node = fcax::resolve_path(index.tree, fcax::parse_canonical_path(target));
        auto it = node < 0 ? index.classification.contexts.end()
                           : index.classification.contexts.find(node);
        if (it == index.classification.contexts.end())
            fcax::raise(fcax::Errc::UnknownTarget,
                        "no context for target '" + target + "' (use a parent path or 'view')");
        dot = fcax::lattice_to_dot(fcax::build_lattice(it->second), it->second, target);
    }

    if (output.empty()) {
        std::cout << dot;
    } else {
        std::ofstream out(output, std::ios::binary | std::ios::trunc);
        if (!out) fcax::raise(fcax::Errc::IoError, "cannot write " + output);
        out << dot;
    }
    return 0;
}

int cmd_inspect(const std::string& index_path) {
    fcax::Index index = load_with_warnings(index_path);
    std::cout << "source: " << index.source_name << " (digest " << index.source_digest
              << ")\n";
    std::cout << "data items: " << index.items.size() << "\n";
    for (const fcax::DataItem& item : index.items) {
        std::size_t o = static_cast<std::size_t>(item.item_id - 1);
        std::cout << "  D" << item.item_id << "\t"
                  << fcax::canonical_path_string(index.tree, item.leaf_node) << "\t"
                  << item.value << "\t{";
        bool first = true;
        index.view.context.rows[o].for_each([&](std::size_t a) {
            if (!first) std::cout << ", ";
            std::cout << index.view.context.attributes[a];
            first = false;
        });
        std::cout << "}\n";
    }
    std::cout << "parent contexts: " << index.classification.contexts.size() << "\n";
    for (const auto& [node, ctx] : index.classification.contexts)
        std::cout << "  " << fcax::canonical_path_string(index.tree, node) << ": "
                  << ctx.object_count() << " objects x " << ctx.attribute_count()
                  << " attributes\n";
    std::cout << "view: " << index.view.context.object_count() << " objects x "
              << index.view.context.attribute_count() << " attributes, "
              << index.view.lattice.size() << " concepts\n";
    std::cout << "path dictionary:";
    for (const auto& [key, attr] : index.view.path_dictionary) {
        (void)attr;
        std::cout << " " << key;
    }
    std::cout << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Concept-lattice indexing and retrieval for XML documents"};
    app.require_subcommand(1);

    auto* index_cmd = app.add_subcommand("index", "Build an index from an XML document");
    std::string index_input, index_output;
    index_cmd->add_option("input", index_input, "XML document")->required();
    index_cmd->add_option("-o,--output", index_output, "index file to write")->required();

    auto* query_cmd = app.add_subcommand("query", "Run a query against an index");
    std::string query_index, query_text;
    bool flag_levels = false, flag_direct = false, flag_json = false;
    query_cmd->add_option("index", query_index, "index file")->required();
    query_cmd->add_option("-q,--query", query_text, "query text")->required();
    query_cmd->add_flag("--levels", flag_levels,
                        "print ranked relevance buckets instead of answers");
    query_cmd->add_flag("--direct", flag_direct,
                        "bypass the lattice; run the path pipeline only");
    query_cmd->add_flag("--json", flag_json, "structured output");

    auto* export_cmd = app.add_subcommand("export", "Export a lattice as DOT");
    std::string export_index, export_target, export_output;
    std::string export_format = "dot";
    export_cmd->add_option("index", export_index, "index file")->required();
    export_cmd->add_option("--target", export_target, "parent node path or 'view'")
        ->required();
    export_cmd->add_option("--format", export_format, "output format (dot)");
    export_cmd->add_option("-o,--output", export_output, "write to file instead of stdout");

    auto* inspect_cmd = app.add_subcommand("inspect", "Print the contents of an index");
    std::string inspect_index;
    inspect_cmd->add_option("index", inspect_index, "index file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*index_cmd) return cmd_index(index_input, index_output);
        if (*query_cmd)
            return cmd_query(query_index, query_text, flag_levels, flag_direct, flag_json);
        if (*export_cmd)
            return cmd_export(export_index, export_target, export_format, export_output);
        if (*inspect_cmd) return cmd_inspect(inspect_index);
    } catch (const fcax::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        switch (e.code()) {
        case fcax::Errc::GrammarError:
        case fcax::Errc::UnsupportedFeature:
            return 2;
        case fcax::Errc::PathNotFound:
        case fcax::Errc::EmptyIntent:
            return 3;
        case fcax::Errc::UnknownTarget:
            return 4;
        default:
            return 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

// Index persistence: a canonical JSON file (sorted keys, fixed orderings)
// so that save -> load -> save is byte-identical.
#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "fcax/view.hpp"
#include "fcax/xml.hpp"

namespace fcax {

struct Index {
    int format_version = 1;
    std::string source_name;
    std::string source_digest;  // FNV-1a 64 of the source bytes, hex
    XmlTree tree;
    std::vector<DataItem> items;
    NodeClassification classification;
    GeneralizedView view;
};

std::string fnv1a_digest(std::string_view bytes);

Index build_index(std::string_view xml, std::string source_name);

std::string index_to_json(const Index& index);

// Atomic: writes a temporary file next to `path`, then renames.
void save_index(const Index& index, const std::string& path);

// Per-parent lattices are rebuilt from the stored contexts; everything else
// is taken verbatim. When the source document is reachable and its digest
// changed, a staleness warning is appended (loading still succeeds).
Index load_index(const std::string& path, std::vector<std::string>* warnings = nullptr);

} // namespace fcax

#pragma once

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "fcax/store.hpp"

namespace fcax::testing {

inline std::string fixture_path() {
    const char* p = std::getenv("FCAX_FIXTURE");
    return p ? p : "data/bib.xml";
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

inline const std::string& fixture_text() {
    static std::string text = read_file(fixture_path());
    return text;
}

inline const Index& fixture_index() {
    static Index index = build_index(fixture_text(), fixture_path());
    return index;
}

} // namespace fcax::testing

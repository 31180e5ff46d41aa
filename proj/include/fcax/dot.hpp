// Hasse diagrams as Graphviz DOT, lower concepts drawn below upper ones.
#pragma once

#include <string>

#include "fcax/context.hpp"
#include "fcax/lattice.hpp"

namespace fcax {

// One node per concept labeled with extent and intent, one edge per cover
// pair (lower -> upper). Output is deterministic.
std::string lattice_to_dot(const ConceptLattice& lattice, const FormalContext& ctx,
                           const std::string& graph_name);

} // namespace fcax

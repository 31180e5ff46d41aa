// Concept lattices: batch construction, covering relation, incremental
// object insertion, neighborhood walks.
#pragma once

#include <string>
#include <utility>
#include <vector>

#include "fcax/bitset.hpp"
#include "fcax/context.hpp"

namespace fcax {

struct FormalConcept {
    Bitset extent;
    Bitset intent;
    friend bool operator==(const FormalConcept&, const FormalConcept&) = default;
};

struct ConceptLattice {
    // Canonical order: ascending extent size, ties by ascending extent as an
    // index sequence. The bottom is therefore first and the top last.
    std::vector<FormalConcept> concepts;
    // Transitive reduction of extent inclusion, (lower, upper), sorted.
    std::vector<std::pair<int, int>> cover_edges;
    int bottom = -1;
    int top = -1;

    std::size_t size() const { return concepts.size(); }
    int find_intent(const Bitset& intent) const;
    std::vector<std::vector<int>> upper_adjacency() const;
    std::vector<std::vector<int>> lower_adjacency() const;
};

// Orders concepts canonically, derives covers, locates bottom and top.
ConceptLattice lattice_from_concepts(std::vector<FormalConcept> concepts);

// All concepts of the context (closed attribute sets via lectic enumeration).
ConceptLattice build_lattice(const FormalContext& ctx);

enum class ConceptClass { Unchanged, Modified, Generator, New };

const char* concept_class_name(ConceptClass c);

struct InsertionResult {
    FormalContext context;      // the input context plus the new object
    ConceptLattice lattice;
    std::vector<ConceptClass> classes;  // parallel to lattice.concepts
    int object_concept = -1;    // concept whose intent is the new object's row
};

// Incremental insertion of one object. Unknown attributes are appended to
// the context with otherwise empty columns. The inputs are left untouched.
InsertionResult insert_object(const ConceptLattice& lattice,
                              const FormalContext& ctx,
                              const std::string& object,
                              const std::vector<std::string>& attributes);

// Concepts exactly `level` cover steps above `concept_id` (level 0 is the
// concept itself), ascending index order.
std::vector<int> upper_neighborhood(const ConceptLattice& lattice, int concept_id,
                                    int level);

} // namespace fcax

#include "fcax/lattice.hpp"

#include <algorithm>
#include <deque>
#include <map>

#include "fcax/error.hpp"

namespace fcax {

int ConceptLattice::find_intent(const Bitset& intent) const {
    for (std::size_t i = 0; i < concepts.size(); ++i)
        if (concepts[i].intent == intent) return static_cast<int>(i);
    return -1;
}

std::vector<std::vector<int>> ConceptLattice::upper_adjacency() const {
    std::vector<std::vector<int>> adj(concepts.size());
    for (auto [lo, hi] : cover_edges) adj[static_cast<std::size_t>(lo)].push_back(hi);
    return adj;
}

std::vector<std::vector<int>> ConceptLattice::lower_adjacency() const {
    std::vector<std::vector<int>> adj(concepts.size());
    for (auto [lo, hi] : cover_edges) adj[static_cast<std::size_t>(hi)].push_back(lo);
    return adj;
}

ConceptLattice lattice_from_concepts(std::vector<FormalConcept> concepts) {
    std::sort(concepts.begin(), concepts.end(),
              [](const FormalConcept& a, const FormalConcept& b) {
                  std::size_t ca = a.extent.count(), cb = b.extent.count();
                  if (ca != cb) return ca < cb;
                  return a.extent.precedes_same_count(b.extent);
              });

    ConceptLattice lat;
    lat.concepts = std::move(concepts);
    const auto& cs = lat.concepts;
    const int n = static_cast<int>(cs.size());

    // With the size-ascending order every proper subextent sits strictly to
    // the left, so candidate intermediates lie between the two endpoints.
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < j; ++i) {
            const Bitset& lo = cs[static_cast<std::size_t>(i)].extent;
            const Bitset& hi = cs[static_cast<std::size_t>(j)].extent;
            if (lo == hi || !lo.is_subset_of(hi)) continue;
            bool covered = true;
            for (int k = i + 1; k < j && covered; ++k) {
                const Bitset& mid = cs[static_cast<std::size_t>(k)].extent;
                if (mid != lo && mid != hi && lo.is_subset_of(mid) &&
                    mid.is_subset_of(hi))
                    covered = false;
            }
            if (covered) lat.cover_edges.emplace_back(i, j);
        }
    }
    std::sort(lat.cover_edges.begin(), lat.cover_edges.end());

    if (n > 0) {
        lat.bottom = 0;
        lat.top = n - 1;
    }
    return lat;
}

ConceptLattice build_lattice(const FormalContext& ctx) {
    const std::size_t m = ctx.attribute_count();
    std::vector<FormalConcept> concepts;

    // Lectic enumeration of closed attribute sets, smallest closure first.
    Bitset a = ctx.closure(Bitset(m));
    for (;;) {
        concepts.push_back({ctx.extent_of(a), a});
        bool advanced = false;
        for (std::size_t ii = m; ii-- > 0 && !advanced;) {
            if (a.test(ii)) continue;
            Bitset candidate(m);
            for (std::size_t j = 0; j < ii; ++j)
                if (a.test(j)) candidate.set(j);
            candidate.set(ii);
            Bitset closed = ctx.closure(candidate);
            // Valid successor only when the closure adds nothing below ii.
            bool canonical = true;
            for (std::size_t j = 0; j < ii && canonical; ++j)
                if (closed.test(j) && !a.test(j)) canonical = false;
            if (canonical) {
                a = closed;
                advanced = true;
            }
        }
        if (!advanced) break;
    }
    return lattice_from_concepts(std::move(concepts));
}

const char* concept_class_name(ConceptClass c) {
    switch (c) {
    case ConceptClass::Unchanged: return "unchanged";
    case ConceptClass::Modified: return "modified";
    case ConceptClass::Generator: return "generator";
    case ConceptClass::New: return "new";
    }
    return "?";
}

InsertionResult insert_object(const ConceptLattice& lattice,
                              const FormalContext& ctx,
                              const std::string& object,
                              const std::vector<std::string>& attributes) {
    for (const auto& label : ctx.objects)
        if (label == object)
            raise(Errc::DuplicateObject, "object '" + object + "' already present");

    // Extended context: the new object last, unknown attributes appended in
    // the order given.
    std::vector<std::string> new_attrs = ctx.attributes;
    for (const auto& label : attributes) {
        if (!ctx.has_attribute(label) &&
            std::find(new_attrs.begin(), new_attrs.end(), label) == new_attrs.end())
            new_attrs.push_back(label);
    }
    const bool widened = new_attrs.size() > ctx.attribute_count();

    std::vector<std::string> new_objects = ctx.objects;
    new_objects.push_back(object);
    FormalContext out = FormalContext::make(std::move(new_objects), std::move(new_attrs));
    for (std::size_t o = 0; o < ctx.object_count(); ++o)
        ctx.rows[o].for_each([&](std::size_t attr) { out.set_incident(o, attr); });
    const std::size_t g = ctx.object_count();
    for (const auto& label : attributes)
        out.set_incident(g, out.attribute_index(label));

    const std::size_t n_attrs = out.attribute_count();
    const Bitset row = out.rows[g];
    const Bitset full_intent = out.all_attributes();

    // Old concepts carried over to the widened context. An appended attribute
    // holds of no old object, so only the empty extent absorbs it into its
    // intent; every other intent is unchanged.
    struct Staged {
        Bitset extent;  // over the extended object set
        Bitset intent;
        ConceptClass cls;
    };
    std::vector<Staged> staged;
    staged.reserve(lattice.size() + 1);
    for (const auto& c : lattice.concepts) {
        Staged s;
        s.extent = c.extent.resized(g + 1);
        s.intent = c.extent.none() ? full_intent : c.intent.resized(n_attrs);
        s.cls = ConceptClass::Unchanged;
        staged.push_back(std::move(s));
    }
    // Widening can strip the old bottom of its "full intent" role; the
    // lattice then needs an explicit new bottom below it.
    if (widened && !lattice.concepts.empty() &&
        lattice.concepts[static_cast<std::size_t>(lattice.bottom)].extent.any())
        staged.push_back({Bitset(g + 1), full_intent, ConceptClass::Unchanged});

    std::sort(staged.begin(), staged.end(), [](const Staged& a, const Staged& b) {
        std::size_t ca = a.intent.count(), cb = b.intent.count();
        if (ca != cb) return ca < cb;
        return a.intent.precedes_same_count(b.intent);
    });

    // Ascending intent order guarantees each meet B & row is first produced
    // by its unique generator (the concept with the least such intent).
    std::vector<FormalConcept> result;
    std::vector<ConceptClass> result_cls;
    std::map<Bitset, std::size_t> seen_intents;
    auto emit = [&](Bitset extent, Bitset intent, ConceptClass cls) {
        seen_intents.emplace(intent, result.size());
        result.push_back({std::move(extent), std::move(intent)});
        result_cls.push_back(cls);
    };

    if (staged.empty()) {
        Bitset extent(g + 1);
        extent.set(g);
        emit(std::move(extent), row, ConceptClass::New);
        if (!(row == full_intent))
            emit(out.extent_of(full_intent), full_intent, ConceptClass::New);
    } else {
        for (auto& s : staged) {
            if (s.intent.is_subset_of(row)) {
                Bitset extent = s.extent;
                extent.set(g);
                emit(std::move(extent), std::move(s.intent), ConceptClass::Modified);
            } else {
                Bitset meet = s.intent & row;
                bool generates = !seen_intents.count(meet);
                emit(std::move(s.extent), std::move(s.intent),
                     generates ? ConceptClass::Generator : ConceptClass::Unchanged);
                if (generates) {
                    Bitset extent = out.extent_of(meet);
                    emit(std::move(extent), std::move(meet), ConceptClass::New);
                }
            }
        }
    }

    InsertionResult res;
    res.context = std::move(out);

    // Re-sort canonically, keeping the classification aligned.
    std::vector<std::size_t> order(result.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        std::size_t cx = result[x].extent.count(), cy = result[y].extent.count();
        if (cx != cy) return cx < cy;
        return result[x].extent.precedes_same_count(result[y].extent);
    });
    std::vector<FormalConcept> sorted;
    sorted.reserve(result.size());
    res.classes.reserve(result.size());
    for (std::size_t i : order) {
        sorted.push_back(std::move(result[i]));
        res.classes.push_back(result_cls[i]);
    }
    res.lattice = lattice_from_concepts(std::move(sorted));
    res.object_concept = res.lattice.find_intent(row);
    return res;
}

std::vector<int> upper_neighborhood(const ConceptLattice& lattice, int concept_id,
                                    int level) {
    if (concept_id < 0 || concept_id >= static_cast<int>(lattice.size()))
        raise(Errc::InvalidConcept,
              "concept index " + std::to_string(concept_id) + " out of range");
    if (level < 0)
        raise(Errc::InvalidConcept, "negative neighborhood level");

    auto adj = lattice.upper_adjacency();
    std::vector<int> dist(lattice.size(), -1);
    std::deque<int> queue{concept_id};
    dist[static_cast<std::size_t>(concept_id)] = 0;
    while (!queue.empty()) {
        int c = queue.front();
        queue.pop_front();
        for (int up : adj[static_cast<std::size_t>(c)]) {
            if (dist[static_cast<std::size_t>(up)] < 0) {
                dist[static_cast<std::size_t>(up)] = dist[static_cast<std::size_t>(c)] + 1;
                queue.push_back(up);
            }
        }
    }
    std::vector<int> out;
    for (std::size_t i = 0; i < dist.size(); ++i)
        if (dist[i] == level) out.push_back(static_cast<int>(i));
    return out;
}

} // namespace fcax

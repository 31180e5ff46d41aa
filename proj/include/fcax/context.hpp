// Single-valued and multi-valued formal contexts plus conceptual scaling.
#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "fcax/bitset.hpp"

namespace fcax {

// Cross table between named objects and named attributes. Rows and columns
// are kept in sync; labels are unique within their side.
struct FormalContext {
    std::vector<std::string> objects;
    std::vector<std::string> attributes;
    std::vector<Bitset> rows;   // one per object, indexed over attributes
    std::vector<Bitset> cols;   // one per attribute, indexed over objects

    static FormalContext make(std::vector<std::string> objects,
                              std::vector<std::string> attributes);

    std::size_t object_count() const { return objects.size(); }
    std::size_t attribute_count() const { return attributes.size(); }

    std::size_t object_index(const std::string& label) const;     // UnknownObject
    std::size_t attribute_index(const std::string& label) const;  // UnknownAttribute
    bool has_attribute(const std::string& label) const {
        return attr_index_.count(label) != 0;
    }

    bool incident(std::size_t o, std::size_t a) const { return rows[o].test(a); }
    void set_incident(std::size_t o, std::size_t a);
    bool incident(const std::string& o, const std::string& a) const {
        return incident(object_index(o), attribute_index(a));
    }
    void set_incident(const std::string& o, const std::string& a) {
        set_incident(object_index(o), attribute_index(a));
    }

    Bitset all_objects() const { return Bitset(objects.size(), true); }
    Bitset all_attributes() const { return Bitset(attributes.size(), true); }

    // Derivation operators. The empty object set derives every attribute and
    // vice versa.
    Bitset intent_of(const Bitset& object_set) const;
    Bitset extent_of(const Bitset& attribute_set) const;
    Bitset closure(const Bitset& attribute_set) const;

    // Label-level counterparts; outputs follow context order.
    std::vector<std::string> derive_intent(const std::vector<std::string>& objs) const;
    std::vector<std::string> derive_extent(const std::vector<std::string>& attrs) const;
    std::vector<std::string> closure(const std::vector<std::string>& attrs) const;

    Bitset object_set(const std::vector<std::string>& labels) const;
    Bitset attribute_set(const std::vector<std::string>& labels) const;
    std::vector<std::string> object_labels(const Bitset& set) const;
    std::vector<std::string> attribute_labels(const Bitset& set) const;

private:
    std::unordered_map<std::string, std::size_t> obj_index_;
    std::unordered_map<std::string, std::size_t> attr_index_;
};

// Attribute values instead of incidences; at most one value per cell.
struct MultiValuedContext {
    std::vector<std::string> objects;
    std::vector<std::string> attributes;
    std::vector<std::vector<std::optional<std::string>>> cells;  // [object][attribute]

    static MultiValuedContext make(std::vector<std::string> objects,
                                   std::vector<std::string> attributes);

    // FunctionalityViolation when the cell already holds a different value.
    void set_value(const std::string& object, const std::string& attribute,
                   std::string value);

    const std::optional<std::string>& value(const std::string& object,
                                            const std::string& attribute) const {
        return cells[object_index(object)][attribute_index(attribute)];
    }

    std::size_t object_index(const std::string& label) const;
    std::size_t attribute_index(const std::string& label) const;

private:
    std::unordered_map<std::string, std::size_t> obj_index_;
    std::unordered_map<std::string, std::size_t> attr_index_;
};

// Maps each value of one multi-valued attribute to derived one-valued
// attribute names.
struct ScaleDefinition {
    std::string attribute;
    std::unordered_map<std::string, std::vector<std::string>> value_attributes;

    // One derived attribute "attr=value" per distinct value.
    static ScaleDefinition nominal(const MultiValuedContext& mv,
                                   const std::string& attribute);
};

// Replaces every column of the multi-valued context by the derived columns
// of its scale. Derived attributes keep first-appearance order over objects.
FormalContext scale_context(const MultiValuedContext& mv,
                            const std::vector<ScaleDefinition>& scales);

} // namespace fcax

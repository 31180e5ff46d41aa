#include "fcax/context.hpp"

#include <stdexcept>

#include "fcax/error.hpp"

namespace fcax {
namespace {

std::unordered_map<std::string, std::size_t> index_labels(
        const std::vector<std::string>& labels, const char* side) {
    std::unordered_map<std::string, std::size_t> index;
    index.reserve(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i)
        if (!index.emplace(labels[i], i).second)
            throw std::invalid_argument(std::string("duplicate ") + side +
                                        " label '" + labels[i] + "'");
    return index;
}

} // namespace

FormalContext FormalContext::make(std::vector<std::string> objects,
                                  std::vector<std::string> attributes) {
    FormalContext ctx;
    ctx.objects = std::move(objects);
    ctx.attributes = std::move(attributes);
    ctx.obj_index_ = index_labels(ctx.objects, "object");
    ctx.attr_index_ = index_labels(ctx.attributes, "attribute");
    ctx.rows.assign(ctx.objects.size(), Bitset(ctx.attributes.size()));
    ctx.cols.assign(ctx.attributes.size(), Bitset(ctx.objects.size()));
    return ctx;
}

std::size_t FormalContext::object_index(const std::string& label) const {
    auto it = obj_index_.find(label);
    if (it == obj_index_.end())
        raise(Errc::UnknownObject, "unknown object '" + label + "'");
    return it->second;
}

std::size_t FormalContext::attribute_index(const std::string& label) const {
    auto it = attr_index_.find(label);
    if (it == attr_index_.end())
        raise(Errc::UnknownAttribute, "unknown attribute '" + label + "'");
    return it->second;
}

void FormalContext::set_incident(std::size_t o, std::size_t a) {
    rows[o].set(a);
    cols[a].set(o);
}

Bitset FormalContext::intent_of(const Bitset& object_set) const {
    Bitset out = all_attributes();
    object_set.for_each([&](std::size_t o) { out &= rows[o]; });
    return out;
}

Bitset FormalContext::extent_of(const Bitset& attribute_set) const {
    Bitset out = all_objects();
    attribute_set.for_each([&](std::size_t a) { out &= cols[a]; });
    return out;
}

Bitset FormalContext::closure(const Bitset& attribute_set) const {
    return intent_of(extent_of(attribute_set));
}

std::vector<std::string> FormalContext::derive_intent(
        const std::vector<std::string>& objs) const {
    return attribute_labels(intent_of(object_set(objs)));
}

std::vector<std::string> FormalContext::derive_extent(
        const std::vector<std::string>& attrs) const {
    return object_labels(extent_of(attribute_set(attrs)));
}

std::vector<std::string> FormalContext::closure(
        const std::vector<std::string>& attrs) const {
    return attribute_labels(closure(attribute_set(attrs)));
}

Bitset FormalContext::object_set(const std::vector<std::string>& labels) const {
    Bitset out(objects.size());
    for (const auto& label : labels) out.set(object_index(label));
    return out;
}

Bitset FormalContext::attribute_set(const std::vector<std::string>& labels) const {
    Bitset out(attributes.size());
    for (const auto& label : labels) out.set(attribute_index(label));
    return out;
}

std::vector<std::string> FormalContext::object_labels(const Bitset& set) const {
    std::vector<std::string> out;
    out.reserve(set.count());
    set.for_each([&](std::size_t i) { out.push_back(objects[i]); });
    return out;
}

std::vector<std::string> FormalContext::attribute_labels(const Bitset& set) const {
    std::vector<std::string> out;
    out.reserve(set.count());
    set.for_each([&](std::size_t i) { out.push_back(attributes[i]); });
    return out;
}

MultiValuedContext MultiValuedContext::make(std::vector<std::string> objects,
                                            std::vector<std::string> attributes) {
    MultiValuedContext mv;
    mv.objects = std::move(objects);
    mv.attributes = std::move(attributes);
    mv.obj_index_ = index_labels(mv.objects, "object");
    mv.attr_index_ = index_labels(mv.attributes, "attribute");
    mv.cells.assign(mv.objects.size(),
                    std::vector<std::optional<std::string>>(mv.attributes.size()));
    return mv;
}

std::size_t MultiValuedContext::object_index(const std::string& label) const {
    auto it = obj_index_.find(label);
    if (it == obj_index_.end())
        raise(Errc::UnknownObject, "unknown object '" + label + "'");
    return it->second;
}

std::size_t MultiValuedContext::attribute_index(const std::string& label) const {
    auto it = attr_index_.find(label);
    if (it == attr_index_.end())
        raise(Errc::UnknownAttribute, "unknown attribute '" + label + "'");
    return it->second;
}

void MultiValuedContext::set_value(const std::string& object,
                                   const std::string& attribute,
                                   std::string value) {
    auto& cell = cells[object_index(object)][attribute_index(attribute)];
    if (cell && *cell != value)
        raise(Errc::FunctionalityViolation,
              "attribute '" + attribute + "' of object '" + object +
                  "' already has value '" + *cell + "'");
    cell = std::move(value);
}

ScaleDefinition ScaleDefinition::nominal(const MultiValuedContext& mv,
                                         const std::string& attribute) {
    ScaleDefinition scale;
    scale.attribute = attribute;
    std::size_t a = mv.attribute_index(attribute);
    for (std::size_t o = 0; o < mv.objects.size(); ++o) {
        const auto& cell = mv.cells[o][a];
        if (cell && !scale.value_attributes.count(*cell))
            scale.value_attributes.emplace(*cell,
                                           std::vector<std::string>{attribute + "=" + *cell});
    }
    return scale;
}

FormalContext scale_context(const MultiValuedContext& mv,
                            const std::vector<ScaleDefinition>& scales) {
    std::unordered_map<std::string, const ScaleDefinition*> by_attr;
    for (const auto& s : scales) by_attr[s.attribute] = &s;

    // Derived attributes in first-appearance order: by source column, then by
    // object order within the column.
    std::vector<std::string> derived;
    std::unordered_map<std::string, std::size_t> derived_index;
    for (std::size_t a = 0; a < mv.attributes.size(); ++a) {
        auto it = by_attr.find(mv.attributes[a]);
        if (it == by_attr.end())
            raise(Errc::MissingScale,
                  "no scale for attribute '" + mv.attributes[a] + "'");
        for (std::size_t o = 0; o < mv.objects.size(); ++o) {
            const auto& cell = mv.cells[o][a];
            if (!cell) continue;
            auto ve = it->second->value_attributes.find(*cell);
            if (ve == it->second->value_attributes.end())
                raise(Errc::MissingScale,
                      "scale for '" + mv.attributes[a] + "' lacks value '" + *cell + "'");
            for (const auto& name : ve->second)
                if (derived_index.emplace(name, derived.size()).second)
                    derived.push_back(name);
        }
    }

    FormalContext out = FormalContext::make(mv.objects, std::move(derived));
    for (std::size_t a = 0; a < mv.attributes.size(); ++a) {
        const ScaleDefinition* scale = by_attr.at(mv.attributes[a]);
        for (std::size_t o = 0; o < mv.objects.size(); ++o) {
            const auto& cell = mv.cells[o][a];
            if (!cell) continue;
            for (const auto& name : scale->value_attributes.at(*cell))
                out.set_incident(o, derived_index.at(name));
        }
    }
    return out;
}

} // namespace fcax

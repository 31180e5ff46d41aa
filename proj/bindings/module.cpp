// Python bindings for the main operations: formal contexts, index building,
// lattice queries. The heavy structures stay on the C++ side; the python
// surface exchanges plain lists, tuples and dicts.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "fcax/dot.hpp"
#include "fcax/error.hpp"
#include "fcax/lattice.hpp"
#include "fcax/query.hpp"
#include "fcax/retrieval.hpp"
#include "fcax/store.hpp"
#include "fcax/view.hpp"
#include "fcax/xml.hpp"

namespace py = pybind11;

namespace {

// A formal context plus its lattice, rebuilt whenever the cross table
// changes so the two can never drift apart.
struct ContextHandle {
    fcax::FormalContext ctx;
    fcax::ConceptLattice lattice;

    ContextHandle(std::vector<std::string> objects, std::vector<std::string> attributes)
        : ctx(fcax::FormalContext::make(std::move(objects), std::move(attributes))),
          lattice(fcax::build_lattice(ctx)) {}

    void set(const std::string& object, const std::string& attribute) {
        ctx.set_incident(object, attribute);
        lattice = fcax::build_lattice(ctx);
    }

    std::vector<std::pair<std::vector<std::string>, std::vector<std::string>>>
    concepts() const {
        std::vector<std::pair<std::vector<std::string>, std::vector<std::string>>> out;
        for (const fcax::FormalConcept& c : lattice.concepts)
            out.emplace_back(ctx.object_labels(c.extent), ctx.attribute_labels(c.intent));
        return out;
    }

    // Incremental insertion; returns (class per concept, object concept index).
    std::pair<std::vector<std::string>, int> insert(
        const std::string& object, const std::vector<std::string>& attributes) {
        fcax::InsertionResult res = fcax::insert_object(lattice, ctx, object, attributes);
        ctx = std::move(res.context);
        lattice = std::move(res.lattice);
        std::vector<std::string> classes;
        for (fcax::ConceptClass c : res.classes)
            classes.emplace_back(fcax::concept_class_name(c));
        return {std::move(classes), res.object_concept};
    }
};

using AnswerRow = std::tuple<std::optional<int>, int, std::string, std::string, std::string>;

AnswerRow as_row(const fcax::AnswerLine& line) {
    std::optional<int> level;
    if (line.level >= 0) level = line.level;
    return {level, line.item_id, line.leaf_path, line.tag_key, line.value};
}

std::vector<AnswerRow> index_query(const fcax::Index& index, const std::string& text) {
    fcax::ParsedQuery q = fcax::parse_query(text);
    fcax::AugmentedView av =
        fcax::insert_query(index.view, fcax::build_query_concept(q, index.view));
    fcax::AnswerSet ans = fcax::search_answers(av);
    std::vector<AnswerRow> out;
    for (const fcax::AnswerLine& line :
         fcax::answer_to_elements(ans, q, index.tree, index.items, index.view, nullptr))
        out.push_back(as_row(line));
    return out;
}

std::vector<std::pair<int, std::vector<int>>> index_query_levels(
    const fcax::Index& index, const std::string& text) {
    fcax::ParsedQuery q = fcax::parse_query(text);
    fcax::AugmentedView av =
        fcax::insert_query(index.view, fcax::build_query_concept(q, index.view));
    return fcax::search_answers(av).ranked;
}

std::vector<AnswerRow> index_query_direct(const fcax::Index& index,
                                          const std::string& text) {
    fcax::ParsedQuery q = fcax::parse_query(text);
    std::vector<AnswerRow> out;
    for (int id : fcax::direct_pipeline_items(q, index.view, index.tree, index.items)) {
        const fcax::DataItem& item = index.items[static_cast<std::size_t>(id - 1)];
        out.push_back(as_row({-1, id, fcax::canonical_path_string(index.tree, item.leaf_node),
                              item.leaf_tag_key, item.value}));
    }
    return out;
}

std::string index_export_dot(const fcax::Index& index, const std::string& target) {
    if (target == "view")
        return fcax::lattice_to_dot(index.view.lattice, index.view.context, "view");
    int node = fcax::resolve_path(index.tree, fcax::parse_canonical_path(target));
    auto it = node < 0 ? index.classification.contexts.end()
                       : index.classification.contexts.find(node);
    if (it == index.classification.contexts.end())
        fcax::raise(fcax::Errc::UnknownTarget,
                    "no context for target '" + target + "' (use a parent path or 'view')");
    return fcax::lattice_to_dot(fcax::build_lattice(it->second), it->second, target);
}

std::vector<std::tuple<int, std::string, std::string, std::string>> leaf_rows(
    const fcax::XmlTree& tree, const std::vector<fcax::DataItem>& items) {
    std::vector<std::tuple<int, std::string, std::string, std::string>> out;
    for (const fcax::DataItem& item : items)
        out.emplace_back(item.item_id, fcax::canonical_path_string(tree, item.leaf_node),
                         item.leaf_tag_key, item.value);
    return out;
}

} // namespace

PYBIND11_MODULE(_fcax, m) {
    m.doc() = "Concept-lattice indexing and retrieval for XML documents";

    py::register_exception<fcax::Error>(m, "FcaxError");

    py::class_<ContextHandle>(m, "Context")
        .def(py::init<std::vector<std::string>, std::vector<std::string>>(),
             py::arg("objects"), py::arg("attributes"))
        .def_property_readonly("objects",
                               [](const ContextHandle& c) { return c.ctx.objects; })
        .def_property_readonly("attributes",
                               [](const ContextHandle& c) { return c.ctx.attributes; })
        .def("set", &ContextHandle::set, py::arg("object"), py::arg("attribute"))
        .def("incident",
             [](const ContextHandle& c, const std::string& o, const std::string& a) {
                 return c.ctx.incident(o, a);
             },
             py::arg("object"), py::arg("attribute"))
        .def("derive_intent",
             [](const ContextHandle& c, const std::vector<std::string>& objs) {
                 return c.ctx.derive_intent(objs);
             },
             py::arg("objects"))
        .def("derive_extent",
             [](const ContextHandle& c, const std::vector<std::string>& attrs) {
                 return c.ctx.derive_extent(attrs);
             },
             py::arg("attributes"))
        .def("closure",
             [](const ContextHandle& c, const std::vector<std::string>& attrs) {
                 return c.ctx.closure(attrs);
             },
             py::arg("attributes"))
        .def("concepts", &ContextHandle::concepts,
             "every concept as (extent labels, intent labels), canonical order")
        .def("cover_edges",
             [](const ContextHandle& c) { return c.lattice.cover_edges; },
             "Hasse diagram edges as (lower, upper) concept indices")
        .def("insert", &ContextHandle::insert, py::arg("object"), py::arg("attributes"),
             "incremental insertion; returns (concept classes, object concept index)");

    py::class_<fcax::Index>(m, "Index")
        .def_readonly("source_name", &fcax::Index::source_name)
        .def_readonly("source_digest", &fcax::Index::source_digest)
        .def_property_readonly("item_count",
                               [](const fcax::Index& i) { return i.items.size(); })
        .def_property_readonly("concept_count",
                               [](const fcax::Index& i) { return i.view.lattice.size(); })
        .def("data_items",
             [](const fcax::Index& i) { return leaf_rows(i.tree, i.items); },
             "every data item as (id, leaf path, tag key, value)")
        .def("path_dictionary",
             [](const fcax::Index& i) { return i.view.path_dictionary; })
        .def("query", &index_query, py::arg("text"),
             "lattice answers as (level or None, item id, leaf path, tag key, value)")
        .def("query_levels", &index_query_levels, py::arg("text"),
             "ranked relevance buckets as (level, item ids)")
        .def("query_direct", &index_query_direct, py::arg("text"),
             "path pipeline answers, bypassing the lattice")
        .def("export_dot", &index_export_dot, py::arg("target"),
             "DOT text for 'view' or a parent node path")
        .def("save",
             [](const fcax::Index& i, const std::string& path) {
                 fcax::save_index(i, path);
             },
             py::arg("path"))
        .def("to_json", [](const fcax::Index& i) { return fcax::index_to_json(i); });

    m.def("build_index",
          [](const std::string& xml, const std::string& name) {
              return fcax::build_index(xml, name);
          },
          py::arg("xml"), py::arg("name") = "document.xml");
    m.def("load_index",
          [](const std::string& path) {
              std::vector<std::string> warnings;
              fcax::Index index = fcax::load_index(path, &warnings);
              for (const std::string& w : warnings) {
                  py::gil_scoped_acquire gil;
                  PyErr_WarnEx(PyExc_RuntimeWarning, w.c_str(), 1);
              }
              return index;
          },
          py::arg("path"));
    m.def("leaf_data",
          [](const std::string& xml) {
              fcax::XmlTree tree = fcax::parse_document(xml);
              return leaf_rows(tree, fcax::extract_leaf_data(tree));
          },
          py::arg("xml"), "data items of a document without building an index");
    m.def("canonical_query",
          [](const std::string& text) { return fcax::unparse(fcax::parse_query(text)); },
          py::arg("text"), "parse and print back in canonical form");
}

// XQuery-lite frontend: parsing, path evaluation, query-concept assembly.
//
// Grammar (keywords case-insensitive):
//   query      = pathQuery | flworQuery ;
//   pathQuery  = docFn path projection? ;
//   flworQuery = "for" var "in" docFn path
//                ("where" var relPath "=" string)?
//                "return" (var | var relPath) ;
//   docFn      = ("doc" | "document") "(" name ")" ;
//   path       = ("/" step)+ ;        step = name ("[" integer "]")? ;
//   relPath    = ("/" step)+ ;        projection = "/(" name ("," name)* ")" ;
//   var        = "$" name ;           string = '"' chars '"' ;
//
// Surface predicates are one-based; internally positions are zero-based.
#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fcax/view.hpp"
#include "fcax/xml.hpp"

namespace fcax {

struct PathStep {
    std::string tag;
    std::optional<int> position;  // zero-based; absent means every position
    friend bool operator==(const PathStep&, const PathStep&) = default;
};

struct RelPath {
    std::vector<PathStep> steps;
    friend bool operator==(const RelPath&, const RelPath&) = default;
};

struct ReturnPath {
    bool identity = false;  // bare "$var": the matched element itself
    RelPath path;           // used when identity is false
    friend bool operator==(const ReturnPath&, const ReturnPath&) = default;
};

struct Conditional {
    RelPath path;
    std::string value;
    friend bool operator==(const Conditional&, const Conditional&) = default;
};

struct ParsedQuery {
    enum class Form { Path, Flwor };

    Form form = Form::Path;
    std::string source_doc;
    std::string var;  // FLWOR variable name, empty for path form
    std::vector<PathStep> search_path;
    std::optional<Conditional> conditional;
    std::vector<ReturnPath> return_paths;  // never empty after parsing

    friend bool operator==(const ParsedQuery&, const ParsedQuery&) = default;
};

// GrammarError with a character offset; UnsupportedFeature for constructs
// outside the subset ("//", "@", "*", non-equality comparisons, let/order).
ParsedQuery parse_query(std::string_view text);

// Canonical text form; parsing it again yields an equal ParsedQuery.
std::string unparse(const ParsedQuery& q);

// Extent is empty by construction; the intent is stored as attribute names
// because a conditional may name a value absent from the document, which
// only materializes as a column once the concept is inserted.
struct QueryConcept {
    std::vector<std::string> intent;  // Q_B, view attribute order, novel value last
};

// Nodes whose canonical path matches the pattern, document order.
// PathNotFound when nothing matches.
std::vector<int> eval_search_path(const GeneralizedView& view, const XmlTree& tree,
                                  const std::vector<PathStep>& path);

// Nodes having a descendant at the conditional's relative path whose text
// equals the value exactly. No conditional keeps the set unchanged.
std::vector<int> eval_conditional(const XmlTree& tree, const std::vector<int>& nodes,
                                  const std::optional<Conditional>& cond);

// For each node in document order, the elements selected by each return
// path, in return-path order. Identity paths emit the node itself.
std::vector<int> eval_return(const XmlTree& tree, const std::vector<int>& nodes,
                             const std::vector<ReturnPath>& return_paths);

// Q_B assembly: structural or tag-key attributes of every matched
// search-path node, the conditional's "value=..." content attribute and the
// attributes its relative path reaches, and the return paths' attributes.
QueryConcept build_query_concept(const ParsedQuery& q, const GeneralizedView& view);

} // namespace fcax

#include "fcax/query.hpp"

#include <algorithm>
#include <cassert>
#include <cctype>
#include <set>

#include "fcax/error.hpp"

namespace fcax {
namespace {

std::string lower(std::string s) {
    for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

enum class Tok {
    Name, Integer, String, Dollar, Slash, LParen, RParen,
    LBracket, RBracket, Comma, Eq, End,
};

struct Token {
    Tok kind;
    std::string text;
    std::size_t offset;
};

class Lexer {
public:
    explicit Lexer(std::string_view in) : in_(in) { next(); }

    const Token& peek() const { return current_; }

    Token take() {
        Token t = current_;
        next();
        return t;
    }

    [[noreturn]] void fail(const std::string& what, std::size_t offset) const {
        raise(Errc::GrammarError,
              "grammar error at offset " + std::to_string(offset) + ": " + what);
    }
    [[noreturn]] void fail(const std::string& what) const { fail(what, current_.offset); }

private:
    static bool name_char(char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' ||
               c == '-' || c == ':';
    }

    void next() {
        while (pos_ < in_.size() &&
               std::isspace(static_cast<unsigned char>(in_[pos_])))
            ++pos_;
        std::size_t at = pos_;
        if (pos_ >= in_.size()) {
            current_ = {Tok::End, "", at};
            return;
        }
        char c = in_[pos_];
        switch (c) {
        case '/':
            if (pos_ + 1 < in_.size() && in_[pos_ + 1] == '/')
                raise(Errc::UnsupportedFeature,
                      "descendant axis '//' is not supported");
            ++pos_;
            current_ = {Tok::Slash, "/", at};
            return;
        case '$': ++pos_; current_ = {Tok::Dollar, "$", at}; return;
        case '(': ++pos_; current_ = {Tok::LParen, "(", at}; return;
        case ')': ++pos_; current_ = {Tok::RParen, ")", at}; return;
        case '[': ++pos_; current_ = {Tok::LBracket, "[", at}; return;
        case ']': ++pos_; current_ = {Tok::RBracket, "]", at}; return;
        case ',': ++pos_; current_ = {Tok::Comma, ",", at}; return;
        case '=': ++pos_; current_ = {Tok::Eq, "=", at}; return;
        case '@':
            raise(Errc::UnsupportedFeature, "attribute axis '@' is not supported");
        case '*':
            raise(Errc::UnsupportedFeature, "wildcard '*' is not supported");
        case '<': case '>': case '!':
            raise(Errc::UnsupportedFeature,
                  "only '=' comparisons are supported in where clauses");
        case '"': {
            ++pos_;
            std::string text;
            while (pos_ < in_.size() && in_[pos_] != '"') text.push_back(in_[pos_++]);
            if (pos_ >= in_.size()) fail("unterminated string literal", at);
            ++pos_;
            current_ = {Tok::String, std::move(text), at};
            return;
        }
        default: break;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string text;
            while (pos_ < in_.size() &&
                   std::isdigit(static_cast<unsigned char>(in_[pos_])))
                text.push_back(in_[pos_++]);
            current_ = {Tok::Integer, std::move(text), at};
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::string text;
            while (pos_ < in_.size() && name_char(in_[pos_])) text.push_back(in_[pos_++]);
            current_ = {Tok::Name, std::move(text), at};
            return;
        }
        fail(std::string("unexpected character '") + c + "'", at);
    }

    std::string_view in_;
    std::size_t pos_ = 0;
    Token current_{Tok::End, "", 0};
};

class Parser {
public:
    explicit Parser(std::string_view text) : lex_(text) {}

    ParsedQuery parse() {
        ParsedQuery q;
        if (lex_.peek().kind == Tok::Name) {
            std::string kw = lower(lex_.peek().text);
            if (kw == "for") {
                parse_flwor(q);
                expect_end();
                return q;
            }
            if (kw == "let" || kw == "declare" || kw == "order")
                raise(Errc::UnsupportedFeature,
                      "'" + kw + "' clauses are not supported");
        }
        parse_path_query(q);
        expect_end();
        return q;
    }

private:
    Token expect(Tok kind, const char* what) {
        if (lex_.peek().kind != kind) lex_.fail(std::string("expected ") + what);
        return lex_.take();
    }

    void expect_end() {
        if (lex_.peek().kind != Tok::End) lex_.fail("trailing input after query");
    }

    std::string expect_keyword(const char* kw) {
        Token t = expect(Tok::Name, kw);
        if (lower(t.text) != kw) lex_.fail(std::string("expected '") + kw + "'", t.offset);
        return t.text;
    }

    std::string parse_doc_fn() {
        Token fn = expect(Tok::Name, "doc() or document()");
        std::string kw = lower(fn.text);
        if (kw != "doc" && kw != "document")
            lex_.fail("expected doc() or document()", fn.offset);
        expect(Tok::LParen, "'('");
        Token name = expect(Tok::Name, "document name");
        expect(Tok::RParen, "')'");
        return name.text;
    }

    PathStep parse_step() {
        Token name = expect(Tok::Name, "step name");
        PathStep step{name.text, std::nullopt};
        if (lex_.peek().kind == Tok::LBracket) {
            lex_.take();
            Token num = expect(Tok::Integer, "position");
            if (num.text.size() > 9) lex_.fail("position out of range", num.offset);
            int surface = std::stoi(num.text);
            if (surface < 1)
                lex_.fail("positions are one-based", num.offset);
            step.position = surface - 1;
            expect(Tok::RBracket, "']'");
        }
        return step;
    }

    // path with an optional trailing "/(name, ...)" projection
    void parse_path_query(ParsedQuery& q) {
        q.form = ParsedQuery::Form::Path;
        q.source_doc = parse_doc_fn();
        expect(Tok::Slash, "'/'");
        for (;;) {
            if (lex_.peek().kind == Tok::LParen) {
                parse_projection(q);
                return;
            }
            q.search_path.push_back(parse_step());
            if (lex_.peek().kind != Tok::Slash) break;
            lex_.take();
        }
        if (q.search_path.empty()) lex_.fail("empty search path");
        q.return_paths.push_back({true, {}});
    }

    void parse_projection(ParsedQuery& q) {
        if (q.search_path.empty()) lex_.fail("projection requires a preceding path");
        expect(Tok::LParen, "'('");
        for (;;) {
            Token name = expect(Tok::Name, "projection name");
            q.return_paths.push_back({false, RelPath{{PathStep{name.text, std::nullopt}}}});
            if (lex_.peek().kind == Tok::Comma) {
                lex_.take();
                continue;
            }
            break;
        }
        expect(Tok::RParen, "')'");
    }

    RelPath parse_rel_path() {
        RelPath rel;
        while (lex_.peek().kind == Tok::Slash) {
            lex_.take();
            rel.steps.push_back(parse_step());
        }
        if (rel.steps.empty()) lex_.fail("expected a relative path");
        return rel;
    }

    std::string parse_var() {
        expect(Tok::Dollar, "'$'");
        return expect(Tok::Name, "variable name").text;
    }

    void parse_flwor(ParsedQuery& q) {
        q.form = ParsedQuery::Form::Flwor;
        expect_keyword("for");
        q.var = parse_var();
        expect_keyword("in");
        q.source_doc = parse_doc_fn();
        expect(Tok::Slash, "'/'");
        q.search_path.push_back(parse_step());
        while (lex_.peek().kind == Tok::Slash) {
            lex_.take();
            q.search_path.push_back(parse_step());
        }

        if (lex_.peek().kind == Tok::Name && lower(lex_.peek().text) == "where") {
            lex_.take();
            Token at = lex_.peek();
            if (parse_var() != q.var)
                lex_.fail("where clause must use the for variable", at.offset);
            Conditional cond;
            cond.path = parse_rel_path();
            expect(Tok::Eq, "'='");
            Token value = expect(Tok::String, "quoted string");
            if (value.text.empty())
                lex_.fail("comparison value must be non-empty", value.offset);
            cond.value = std::move(value.text);
            q.conditional = std::move(cond);
        }

        expect_keyword("return");
        Token at = lex_.peek();
        if (parse_var() != q.var)
            lex_.fail("return clause must use the for variable", at.offset);
        if (lex_.peek().kind == Tok::Slash) {
            RelPath rel = parse_rel_path();
            // "$b/book" with $b already bound to book elements denotes the
            // element itself, not a nested child of the same name.
            if (rel.steps.size() == 1 && !rel.steps[0].position &&
                rel.steps[0].tag == q.search_path.back().tag)
                q.return_paths.push_back({true, {}});
            else
                q.return_paths.push_back({false, std::move(rel)});
        } else {
            q.return_paths.push_back({true, {}});
        }
    }

    Lexer lex_;
};

std::string step_text(const PathStep& step) {
    std::string out = step.tag;
    if (step.position) out += "[" + std::to_string(*step.position + 1) + "]";
    return out;
}

std::string path_text(const std::vector<PathStep>& steps) {
    std::string out;
    for (const PathStep& s : steps) out += "/" + step_text(s);
    return out;
}

bool step_matches(const PathStep& pattern, const CanonicalStep& step) {
    return pattern.tag == step.tag &&
           (!pattern.position || *pattern.position == step.position);
}

bool path_matches(const std::vector<PathStep>& pattern,
                  const std::vector<CanonicalStep>& steps) {
    if (pattern.size() != steps.size()) return false;
    for (std::size_t i = 0; i < pattern.size(); ++i)
        if (!step_matches(pattern[i], steps[i])) return false;
    return true;
}

// Entries sitting exactly `rel` below `base`.
std::vector<const NodePathEntry*> resolve_relative(const GeneralizedView& view,
                                                   const NodePathEntry& base,
                                                   const RelPath& rel) {
    std::vector<const NodePathEntry*> out;
    const std::size_t depth = base.path.steps.size() + rel.steps.size();
    for (const NodePathEntry& entry : view.node_paths) {
        if (entry.path.steps.size() != depth) continue;
        if (!std::equal(base.path.steps.begin(), base.path.steps.end(),
                        entry.path.steps.begin()))
            continue;
        bool ok = true;
        for (std::size_t i = 0; i < rel.steps.size() && ok; ++i)
            ok = step_matches(rel.steps[i], entry.path.steps[base.path.steps.size() + i]);
        if (ok) out.push_back(&entry);
    }
    return out;
}

} // namespace

ParsedQuery parse_query(std::string_view text) {
    return Parser(text).parse();
}

std::string unparse(const ParsedQuery& q) {
    std::string out;
    if (q.form == ParsedQuery::Form::Path) {
        out = "doc(" + q.source_doc + ")" + path_text(q.search_path);
        if (!(q.return_paths.size() == 1 && q.return_paths[0].identity)) {
            out += "/(";
            for (std::size_t i = 0; i < q.return_paths.size(); ++i) {
                if (i) out += ", ";
                out += q.return_paths[i].path.steps[0].tag;
            }
            out += ")";
        }
        return out;
    }
    out = "for $" + q.var + " in doc(" + q.source_doc + ")" + path_text(q.search_path);
    if (q.conditional)
        out += " where $" + q.var + path_text(q.conditional->path.steps) + " = \"" +
               q.conditional->value + "\"";
    out += " return $" + q.var;
    if (!q.return_paths[0].identity) out += path_text(q.return_paths[0].path.steps);
    return out;
}

std::vector<int> eval_search_path(const GeneralizedView& view, const XmlTree& tree,
                                  const std::vector<PathStep>& path) {
    assert(view.node_paths.size() == tree.size());
    (void)tree;
    std::vector<int> out;
    for (const NodePathEntry& entry : view.node_paths)
        if (path_matches(path, entry.path.steps)) out.push_back(entry.node);
    if (out.empty())
        raise(Errc::PathNotFound, "no element at path " + path_text(path));
    return out;
}

std::vector<int> eval_conditional(const XmlTree& tree, const std::vector<int>& nodes,
                                  const std::optional<Conditional>& cond) {
    if (!cond) return nodes;
    std::vector<int> out;
    for (int node : nodes) {
        std::vector<int> frontier{node};
        for (const PathStep& step : cond->path.steps) {
            std::vector<int> next;
            for (int n : frontier)
                for (int child : tree.node(n).children) {
                    const XmlNode& ch = tree.node(child);
                    if (ch.tag == step.tag &&
                        (!step.position || *step.position == ch.position))
                        next.push_back(child);
                }
            frontier = std::move(next);
        }
        bool hit = false;
        for (int n : frontier)
            if (tree.node(n).text == cond->value) { hit = true; break; }
        if (hit) out.push_back(node);
    }
    return out;
}

std::vector<int> eval_return(const XmlTree& tree, const std::vector<int>& nodes,
                             const std::vector<ReturnPath>& return_paths) {
    std::vector<int> sorted = nodes;
    std::sort(sorted.begin(), sorted.end());
    std::vector<int> out;
    for (int node : sorted) {
        for (const ReturnPath& rp : return_paths) {
            if (rp.identity) {
                out.push_back(node);
                continue;
            }
            std::vector<int> frontier{node};
            for (const PathStep& step : rp.path.steps) {
                std::vector<int> next;
                for (int n : frontier)
                    for (int child : tree.node(n).children) {
                        const XmlNode& ch = tree.node(child);
                        if (ch.tag == step.tag &&
                            (!step.position || *step.position == ch.position))
                            next.push_back(child);
                    }
                frontier = std::move(next);
            }
            out.insert(out.end(), frontier.begin(), frontier.end());
        }
    }
    return out;
}

QueryConcept build_query_concept(const ParsedQuery& q, const GeneralizedView& view) {
    std::vector<const NodePathEntry*> matched;
    for (const NodePathEntry& entry : view.node_paths)
        if (path_matches(q.search_path, entry.path.steps)) matched.push_back(&entry);
    if (matched.empty())
        raise(Errc::PathNotFound,
              "Not-Found-Element: no dictionary entry matches " +
                  path_text(q.search_path));

    std::set<int> attrs;
    for (const NodePathEntry* entry : matched)
        if (entry->attribute >= 0) attrs.insert(entry->attribute);

    std::optional<std::string> novel;
    if (q.conditional) {
        std::string name = "value=" + q.conditional->value;
        if (view.context.has_attribute(name))
            attrs.insert(static_cast<int>(view.context.attribute_index(name)));
        else
            novel = std::move(name);
        for (const NodePathEntry* entry : matched)
            for (const NodePathEntry* hit :
                 resolve_relative(view, *entry, q.conditional->path))
                if (hit->attribute >= 0) attrs.insert(hit->attribute);
    }
    for (const ReturnPath& rp : q.return_paths) {
        if (rp.identity) continue;
        for (const NodePathEntry* entry : matched)
            for (const NodePathEntry* hit : resolve_relative(view, *entry, rp.path))
                if (hit->attribute >= 0) attrs.insert(hit->attribute);
    }

    QueryConcept out;
    for (int a : attrs)
        out.intent.push_back(view.context.attributes[static_cast<std::size_t>(a)]);
    if (novel) out.intent.push_back(std::move(*novel));
    return out;
}

} // namespace fcax

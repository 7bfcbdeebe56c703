#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "mwo/error.hpp"
#include "mwo/ontology.hpp"
#include "mwo/vocabulary.hpp"

namespace mwo {

/// 1-based source location; columns count Unicode scalar values, not bytes.
struct SourcePosition {
    int line{1};
    int column{1};

    friend bool operator==(const SourcePosition&, const SourcePosition&) = default;
};

/// First-error-only parse failure with a precise location. `code()` is
/// ParseSyntax for grammar errors; service documents may also fail with
/// UnknownFeature, InvalidFeatureValue or DuplicateFeature.
class ParseError : public Error {
public:
    ParseError(ErrorCode code, SourcePosition position, std::string expected, std::string found)
        : Error(code, format(position, expected, found)),
          position_(position),
          expected_(std::move(expected)),
          found_(std::move(found)) {}

    SourcePosition position() const { return position_; }
    const std::string& expected() const { return expected_; }
    const std::string& found() const { return found_; }

private:
    static std::string format(SourcePosition pos, const std::string& expected, const std::string& found) {
        return std::to_string(pos.line) + ":" + std::to_string(pos.column) +
               ": expected " + expected + ", found " + found;
    }

    SourcePosition position_;
    std::string expected_;
    std::string found_;
};

/// A parsed MWO file: either an ontology document or a service description.
using Document = std::variant<Ontology, ServiceDescription>;

namespace detail {

enum class TokenKind { Ident, String, Integer, Punct, End };

struct Token {
    TokenKind kind{TokenKind::End};
    std::string text;          // ident text, decoded string value, punct char
    std::int64_t int_value{0};
    SourcePosition pos;

    std::string describe() const {
        switch (kind) {
            case TokenKind::End: return "end of input";
            case TokenKind::String: return "string literal";
            default: return "'" + text + "'";
        }
    }
};

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) {}

    Token next() {
        skip_trivia();
        Token tok;
        tok.pos = pos_;
        if (at_end()) return tok;
        char c = peek();
        if (is_ident_head(c)) {
            while (!at_end() && is_ident_tail(peek())) tok.text += take();
            tok.kind = TokenKind::Ident;
            return tok;
        }
        if (c == '"') return lex_string(tok);
        if (is_digit(c) || (c == '-' && src_.size() > offset_ + 1 && is_digit(src_[offset_ + 1])))
            return lex_integer(tok);
        if (c == ';' || c == ',' || c == '{' || c == '}' || c == '=' || c == '|') {
            tok.kind = TokenKind::Punct;
            tok.text += take();
            return tok;
        }
        throw ParseError(ErrorCode::ParseSyntax, pos_, "a token", "'" + std::string(1, c) + "'");
    }

private:
    bool at_end() const { return offset_ >= src_.size(); }
    char peek() const { return src_[offset_]; }

    char take() {
        char c = src_[offset_++];
        if (c == '\n') {
            ++pos_.line;
            pos_.column = 1;
        } else if ((static_cast<unsigned char>(c) & 0xC0) != 0x80) {
            ++pos_.column;  // count scalar values, skip UTF-8 continuation bytes
        }
        return c;
    }

    void skip_trivia() {
        while (!at_end()) {
            char c = peek();
            if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
                take();
            } else if (c == '#') {
                while (!at_end() && peek() != '\n') take();
            } else {
                break;
            }
        }
    }

    Token lex_string(Token tok) {
        take();  // opening quote
        for (;;) {
            if (at_end() || peek() == '\n')
                throw ParseError(ErrorCode::ParseSyntax, tok.pos, "closing '\"'", "end of line");
            char c = take();
            if (c == '"') break;
            if (c == '\\') {
                if (at_end())
                    throw ParseError(ErrorCode::ParseSyntax, tok.pos, "closing '\"'", "end of input");
                char esc = take();
                switch (esc) {
                    case '"': tok.text += '"'; break;
                    case '\\': tok.text += '\\'; break;
                    case 'n': tok.text += '\n'; break;
                    default:
                        throw ParseError(ErrorCode::ParseSyntax, pos_, "escape \\\", \\\\ or \\n",
                                         "'\\" + std::string(1, esc) + "'");
                }
            } else {
                tok.text += c;
            }
        }
        tok.kind = TokenKind::String;
        return tok;
    }

    Token lex_integer(Token tok) {
        std::string raw;
        if (peek() == '-') raw += take();
        while (!at_end() && is_digit(peek())) raw += take();
        __int128 v = 0;
        bool negative = raw.front() == '-';
        for (size_t i = negative ? 1 : 0; i < raw.size(); ++i) {
            v = v * 10 + (raw[i] - '0');
            if (v > __int128(INT64_MAX) + (negative ? 1 : 0))
                throw ParseError(ErrorCode::ParseSyntax, tok.pos, "integer in 64-bit range", "'" + raw + "'");
        }
        tok.kind = TokenKind::Integer;
        tok.text = raw;
        tok.int_value = static_cast<std::int64_t>(negative ? -v : v);
        return tok;
    }

    static bool is_digit(char c) { return c >= '0' && c <= '9'; }
    static bool is_ident_head(char c) {
        return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_';
    }
    static bool is_ident_tail(char c) { return is_ident_head(c) || is_digit(c) || c == '-'; }

    std::string_view src_;
    size_t offset_{0};
    SourcePosition pos_;
};

class Parser {
public:
    explicit Parser(std::string_view src) : lexer_(src) { advance(); }

    Ontology parse_ontology() {
        OntologyBuilder builder;
        // Edges, types and references are applied after all declarations so
        // statement order in the file does not matter.
        std::vector<std::pair<std::string, std::vector<std::string>>> class_edges;
        while (cur_.kind != TokenKind::End) {
            Token keyword = expect_ident("a statement keyword");
            if (keyword.text == "class") {
                parse_class(builder, class_edges);
            } else if (keyword.text == "objectProperty") {
                parse_property(builder, PropertyKind::Object);
            } else if (keyword.text == "datatypeProperty") {
                parse_property(builder, PropertyKind::Datatype);
            } else if (keyword.text == "annotationProperty") {
                parse_property(builder, PropertyKind::Annotation);
            } else if (keyword.text == "individual") {
                parse_individual(builder);
            } else if (keyword.text == "assert") {
                parse_assertion(builder);
            } else if (keyword.text == "annotate") {
                parse_annotation(builder);
            } else {
                throw ParseError(ErrorCode::ParseSyntax, keyword.pos, "a statement keyword", keyword.describe());
            }
        }
        for (auto& [cls, supers] : class_edges)
            for (auto& super : supers) builder.add_superclass(cls, super);
        std::vector<Violation> violations = builder.conflicts();
        Ontology ont = std::move(builder).build();
        auto found = ont.validate();
        violations.insert(violations.end(), found.begin(), found.end());
        if (!violations.empty()) throw ValidationError(std::move(violations));
        return ont;
    }

    ServiceDescription parse_service() {
        Token keyword = expect_ident("'service'");
        if (keyword.text != "service")
            throw ParseError(ErrorCode::ParseSyntax, keyword.pos, "'service'", keyword.describe());
        ServiceDescription service;
        service.name = expect_ident("a service name").text;
        expect_punct('{');
        while (!accept_punct('}')) {
            Token key = expect_ident("a feature key or '}'");
            const FeatureSpec* spec = find_feature(key.text);
            if (!spec)
                throw ParseError(ErrorCode::UnknownFeature, key.pos, "a vocabulary feature key", "'" + key.text + "'");
            if (service.features.count(key.text))
                throw ParseError(ErrorCode::DuplicateFeature, key.pos, "each feature at most once", "'" + key.text + "'");
            expect_punct('=');
            service.features.emplace(key.text, parse_feature(*spec));
            expect_punct(';');
        }
        expect_end();
        return service;
    }

    Document parse_document() {
        if (cur_.kind == TokenKind::Ident && cur_.text == "service") return parse_service();
        return parse_ontology();
    }

private:
    void parse_class(OntologyBuilder& builder,
                     std::vector<std::pair<std::string, std::vector<std::string>>>& edges) {
        std::string name = expect_ident("a class name").text;
        builder.declare_class(name);
        if (accept_keyword("subclassOf")) {
            std::vector<std::string> supers;
            supers.push_back(expect_ident("an identifier").text);
            while (accept_punct(',')) supers.push_back(expect_ident("an identifier").text);
            edges.emplace_back(std::move(name), std::move(supers));
        }
        expect_punct(';');
    }

    void parse_property(OntologyBuilder& builder, PropertyKind kind) {
        PropertyDecl decl;
        decl.kind = kind;
        decl.id = expect_ident("a property name").text;
        if (kind != PropertyKind::Annotation) {
            if (accept_keyword("domain")) decl.domain = expect_ident("a class name").text;
            if (accept_keyword("range")) {
                Token range = expect_ident(kind == PropertyKind::Datatype
                                               ? "'string', 'integer' or 'boolean'"
                                               : "a class name");
                if (kind == PropertyKind::Datatype) {
                    if (range.text == "string") decl.range_datatype = DatatypeKind::String;
                    else if (range.text == "integer") decl.range_datatype = DatatypeKind::Integer;
                    else if (range.text == "boolean") decl.range_datatype = DatatypeKind::Boolean;
                    else
                        throw ParseError(ErrorCode::ParseSyntax, range.pos,
                                         "'string', 'integer' or 'boolean'", range.describe());
                } else {
                    decl.range_class = range.text;
                }
            }
        }
        expect_punct(';');
        builder.declare_property(decl);
    }

    void parse_individual(OntologyBuilder& builder) {
        std::string name = expect_ident("an individual name").text;
        Token keyword = expect_ident("'typeOf'");
        if (keyword.text != "typeOf")
            throw ParseError(ErrorCode::ParseSyntax, keyword.pos, "'typeOf'", keyword.describe());
        builder.declare_individual(name, expect_ident("a class name").text);
        while (accept_punct(',')) builder.declare_individual(name, expect_ident("a class name").text);
        expect_punct(';');
    }

    void parse_assertion(OntologyBuilder& builder) {
        Assertion assertion;
        assertion.subject = expect_ident("an individual name").text;
        assertion.property = expect_ident("a property name").text;
        switch (cur_.kind) {
            case TokenKind::Ident:
                if (cur_.text == "true") assertion.object = true;
                else if (cur_.text == "false") assertion.object = false;
                else assertion.object = IndividualRef{cur_.text};
                advance();
                break;
            case TokenKind::String:
                assertion.object = cur_.text;
                advance();
                break;
            case TokenKind::Integer:
                assertion.object = cur_.int_value;
                advance();
                break;
            default:
                throw ParseError(ErrorCode::ParseSyntax, cur_.pos, "an assertion object", cur_.describe());
        }
        expect_punct(';');
        builder.add_assertion(std::move(assertion));
    }

    void parse_annotation(OntologyBuilder& builder) {
        Annotation ann;
        ann.entity = expect_ident("an entity name").text;
        ann.property = expect_ident("an annotation property name").text;
        if (cur_.kind != TokenKind::String)
            throw ParseError(ErrorCode::ParseSyntax, cur_.pos, "a string literal", cur_.describe());
        ann.value = cur_.text;
        advance();
        expect_punct(';');
        builder.add_annotation(std::move(ann));
    }

    FeatureValue parse_feature(const FeatureSpec& spec) {
        Token value = cur_;
        if (value.kind != TokenKind::Ident)
            throw ParseError(ErrorCode::InvalidFeatureValue, value.pos,
                             "a value for " + spec.key, value.describe());
        advance();
        switch (spec.kind) {
            case FeatureKind::Boolean:
                if (value.text == "true") return FeatureValue(true);
                if (value.text == "false") return FeatureValue(false);
                throw ParseError(ErrorCode::InvalidFeatureValue, value.pos, "'true' or 'false'", value.describe());
            case FeatureKind::Categorical:
                if (!allows_token(spec, value.text))
                    throw ParseError(ErrorCode::InvalidFeatureValue, value.pos,
                                     "a value for " + spec.key, value.describe());
                return FeatureValue(value.text);
            case FeatureKind::SetValued: {
                ModeSet set;
                for (;;) {
                    if (!allows_token(spec, value.text))
                        throw ParseError(ErrorCode::InvalidFeatureValue, value.pos,
                                         "a value for " + spec.key, value.describe());
                    set.insert(value.text);
                    if (!accept_punct('|')) break;
                    value = expect_ident("a value for " + spec.key);
                }
                return FeatureValue(std::move(set));
            }
        }
        throw ParseError(ErrorCode::InvalidFeatureValue, value.pos, "a feature value", value.describe());
    }

    void advance() { cur_ = lexer_.next(); }

    Token expect_ident(const std::string& what) {
        if (cur_.kind != TokenKind::Ident)
            throw ParseError(ErrorCode::ParseSyntax, cur_.pos, what, cur_.describe());
        Token tok = cur_;
        advance();
        return tok;
    }

    void expect_punct(char c) {
        if (cur_.kind != TokenKind::Punct || cur_.text[0] != c)
            throw ParseError(ErrorCode::ParseSyntax, cur_.pos, "'" + std::string(1, c) + "'", cur_.describe());
        advance();
    }

    bool accept_punct(char c) {
        if (cur_.kind == TokenKind::Punct && cur_.text[0] == c) {
            advance();
            return true;
        }
        return false;
    }

    bool accept_keyword(std::string_view keyword) {
        if (cur_.kind == TokenKind::Ident && cur_.text == keyword) {
            advance();
            return true;
        }
        return false;
    }

    void expect_end() {
        if (cur_.kind != TokenKind::End)
            throw ParseError(ErrorCode::ParseSyntax, cur_.pos, "end of input", cur_.describe());
    }

    Lexer lexer_;
    Token cur_;
};

}  // namespace detail

/// Parses an ontology document. Grammar errors raise ParseError (first error
/// only); structurally broken but well-formed input raises ValidationError
/// with the full violation list. The returned ontology always validates
/// cleanly.
inline Ontology parse_ontology(std::string_view text) {
    return detail::Parser(text).parse_ontology();
}

/// Parses a service description, enforcing the closed feature vocabulary.
inline ServiceDescription parse_service(std::string_view text) {
    return detail::Parser(text).parse_service();
}

/// Auto-detects the document kind from the leading keyword.
inline Document parse_document(std::string_view text) {
    return detail::Parser(text).parse_document();
}

namespace detail {

inline std::string quote(const std::string& raw) {
    std::string s = "\"";
    for (char c : raw) {
        switch (c) {
            case '"': s += "\\\""; break;
            case '\\': s += "\\\\"; break;
            case '\n': s += "\\n"; break;
            default: s += c;
        }
    }
    s += '"';
    return s;
}

inline std::string render_object(const AssertionObject& object) {
    switch (object.index()) {
        case 0: return std::get<IndividualRef>(object).name;
        case 1: return quote(std::get<std::string>(object));
        case 2: return std::to_string(std::get<std::int64_t>(object));
        default: return std::get<bool>(object) ? "true" : "false";
    }
}

inline std::string join_sorted(const std::set<std::string>& names) {
    std::string s;
    for (const auto& n : names) {
        if (!s.empty()) s += ", ";
        s += n;
    }
    return s;
}

}  // namespace detail

/// Canonical serialization: statements grouped (classes, properties,
/// individuals, assertions, annotations), each group sorted, one statement
/// per line, single spaces, LF endings. Canonical output is byte-stable and
/// reparses to an equal ontology.
inline std::string serialize(const Ontology& ont) {
    std::vector<std::string> lines;
    for (const auto& cls : ont.classes()) {
        std::string line = "class " + cls;
        auto it = ont.direct_superclasses().find(cls);
        if (it != ont.direct_superclasses().end() && !it->second.empty())
            line += " subclassOf " + detail::join_sorted(it->second);
        lines.push_back(line + " ;");
    }
    for (const auto& [name, decl] : ont.properties()) {
        std::string line;
        switch (decl.kind) {
            case PropertyKind::Object: line = "objectProperty "; break;
            case PropertyKind::Datatype: line = "datatypeProperty "; break;
            case PropertyKind::Annotation: line = "annotationProperty "; break;
        }
        line += name;
        if (decl.domain) line += " domain " + *decl.domain;
        if (decl.range_class) line += " range " + *decl.range_class;
        if (decl.range_datatype) line += " range " + std::string(to_keyword(*decl.range_datatype));
        lines.push_back(line + " ;");
    }
    for (const auto& [name, types] : ont.individuals())
        lines.push_back("individual " + name + " typeOf " + detail::join_sorted(types) + " ;");

    std::vector<std::string> assertion_lines;
    for (const auto& a : ont.assertions())
        assertion_lines.push_back("assert " + a.subject + " " + a.property + " " +
                                  detail::render_object(a.object) + " ;");
    std::sort(assertion_lines.begin(), assertion_lines.end());
    lines.insert(lines.end(), assertion_lines.begin(), assertion_lines.end());

    std::vector<std::string> annotation_lines;
    for (const auto& ann : ont.annotations())
        annotation_lines.push_back("annotate " + ann.entity + " " + ann.property + " " +
                                   detail::quote(ann.value) + " ;");
    std::sort(annotation_lines.begin(), annotation_lines.end());
    lines.insert(lines.end(), annotation_lines.begin(), annotation_lines.end());

    std::string out;
    for (const auto& line : lines) {
        out += line;
        out += '\n';
    }
    return out;
}

inline std::string serialize(const ServiceDescription& service) {
    std::string out = "service " + service.name + " {\n";
    for (const auto& [key, value] : service.features)
        out += key + " = " + to_text(value) + " ;\n";
    out += "}\n";
    return out;
}

inline std::string serialize(const Document& doc) {
    if (const auto* ont = std::get_if<Ontology>(&doc)) return serialize(*ont);
    return serialize(std::get<ServiceDescription>(doc));
}

}  // namespace mwo

#include "numrepair/schema.hpp"

#include "numrepair/error.hpp"

#include <cctype>
#include <set>
#include <sstream>

namespace numrepair {

std::string domain_name(Domain d) {
    switch (d) {
        case Domain::Integer: return "integer";
        case Domain::Real: return "real";
        case Domain::String: return "string";
    }
    return "?";
}

std::optional<std::size_t> RelationSchema::attribute_index(std::string_view attr) const {
    for (std::size_t i = 0; i < attributes.size(); ++i)
        if (attributes[i].name == attr) return i;
    return std::nullopt;
}

const AttributeSchema& RelationSchema::attribute(std::string_view attr) const {
    if (auto i = attribute_index(attr)) return attributes[*i];
    fail(Error::Kind::Validate,
         "relation " + name + " has no attribute '" + std::string(attr) + "'");
}

const RelationSchema* Schema::find_relation(std::string_view name) const {
    for (const auto& r : relations)
        if (r.name == name) return &r;
    return nullptr;
}

const RelationSchema& Schema::relation(std::string_view name) const {
    if (const auto* r = find_relation(name)) return *r;
    fail(Error::Kind::Validate, "unknown relation '" + std::string(name) + "'");
}

namespace {

struct SchemaLexer {
    std::string_view text;
    std::size_t pos = 0;
    int line = 1;

    void skip_space() {
        while (pos < text.size()) {
            char c = text[pos];
            if (c == '#') {
                while (pos < text.size() && text[pos] != '\n') ++pos;
            } else if (c == '\n') {
                ++line;
                ++pos;
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                ++pos;
            } else {
                break;
            }
        }
    }

    bool eof() {
        skip_space();
        return pos >= text.size();
    }

    char peek() {
        skip_space();
        return pos < text.size() ? text[pos] : '\0';
    }

    [[noreturn]] void error(const std::string& msg) {
        fail(Error::Kind::Parse, "schema line " + std::to_string(line) + ": " + msg);
    }

    std::string ident() {
        skip_space();
        std::size_t start = pos;
        while (pos < text.size()) {
            char c = text[pos];
            if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') ++pos;
            else break;
        }
        if (start == pos) error("expected an identifier");
        return std::string(text.substr(start, pos - start));
    }

    void expect(char c) {
        if (peek() != c) error(std::string("expected '") + c + "'");
        ++pos;
    }
};

Domain parse_domain(SchemaLexer& lx, const std::string& word) {
    if (word == "integer") return Domain::Integer;
    if (word == "real") return Domain::Real;
    if (word == "string") return Domain::String;
    lx.error("unknown domain '" + word + "' (expected integer, real or string)");
}

} // namespace

Schema parse_schema(std::string_view text) {
    Schema schema;
    SchemaLexer lx{text};
    while (!lx.eof()) {
        std::string kw = lx.ident();
        if (kw != "relation") lx.error("expected 'relation', got '" + kw + "'");

        RelationSchema rel;
        rel.name = lx.ident();
        if (schema.find_relation(rel.name))
            lx.error("duplicate relation '" + rel.name + "'");

        lx.expect('(');
        std::set<std::string> seen;
        while (true) {
            AttributeSchema attr;
            attr.name = lx.ident();
            if (!seen.insert(attr.name).second)
                lx.error("duplicate attribute '" + attr.name + "' in " + rel.name);
            lx.expect(':');
            attr.domain = parse_domain(lx, lx.ident());

            if (lx.peek() != ',' && lx.peek() != ')') {
                std::string word = lx.ident();
                if (word != "measure") lx.error("expected 'measure', ',' or ')'");
                if (attr.domain == Domain::String)
                    lx.error("measure attribute '" + attr.name + "' must be numeric");
                attr.measure = true;
            }
            rel.attributes.push_back(std::move(attr));

            if (lx.peek() == ',') { lx.expect(','); continue; }
            lx.expect(')');
            break;
        }
        schema.relations.push_back(std::move(rel));
    }
    if (schema.relations.empty())
        fail(Error::Kind::Parse, "schema declares no relations");
    return schema;
}

std::string print_schema(const Schema& schema) {
    std::ostringstream out;
    for (const auto& rel : schema.relations) {
        out << "relation " << rel.name << "(";
        for (std::size_t i = 0; i < rel.attributes.size(); ++i) {
            const auto& a = rel.attributes[i];
            if (i) out << ", ";
            out << a.name << ": " << domain_name(a.domain);
            if (a.measure) out << " measure";
        }
        out << ")\n";
    }
    return out.str();
}

} // namespace numrepair

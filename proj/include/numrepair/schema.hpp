#pragma once

#include "numrepair/value.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace numrepair {

struct AttributeSchema {
    std::string name;
    Domain domain = Domain::String;
    bool measure = false;
};

struct RelationSchema {
    std::string name;
    std::vector<AttributeSchema> attributes;

    std::optional<std::size_t> attribute_index(std::string_view attr) const;
    const AttributeSchema& attribute(std::string_view attr) const; // throws Validate
};

struct Schema {
    std::vector<RelationSchema> relations;

    const RelationSchema* find_relation(std::string_view name) const;
    const RelationSchema& relation(std::string_view name) const; // throws Validate
};

// Text form, one declaration per relation ('#' starts a comment):
//   relation Name(Attr: integer, Other: string, Amount: real measure)
Schema parse_schema(std::string_view text);

std::string print_schema(const Schema& schema);

} // namespace numrepair

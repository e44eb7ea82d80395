#pragma once

#include "numrepair/parser.hpp"
#include "numrepair/repair.hpp"

#include <filesystem>

namespace numrepair {

// A project directory: schema.txt, constraints.txt, one <Relation>.csv per
// relation, and an optional config.json with search limits.
struct Project {
    Instance instance;
    ConstraintSet constraints;
    Limits limits;
};

Project load_project(const std::filesystem::path& dir);

// JSON list of {"relation", "row", "attribute", "value"}; values are integers
// or strings Rational::parse understands.
UpdateSet load_update_file(const Instance& instance, const std::filesystem::path& file);

} // namespace numrepair

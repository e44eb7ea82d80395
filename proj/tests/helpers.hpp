#pragma once

#include "numrepair/project.hpp"

#include <filesystem>
#include <string>

namespace numrepair::testing {

inline std::filesystem::path fixture_dir(const std::string& name) {
    return std::filesystem::path(NUMREPAIR_FIXTURE_DIR) / name;
}

inline Project load_fixture(const std::string& name) {
    return load_project(fixture_dir(name));
}

inline Value num(long n) { return Value::number(Rational(n)); }
inline Value str(std::string s) { return Value::string(std::move(s)); }

inline CellRef cell(std::string relation, std::size_t row, std::string attr) {
    return CellRef{TupleId{std::move(relation), row}, std::move(attr)};
}

} // namespace numrepair::testing

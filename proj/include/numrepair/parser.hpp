#pragma once

#include "numrepair/ast.hpp"
#include "numrepair/schema.hpp"

#include <string>
#include <string_view>

namespace numrepair {

// Parses a constraint file:
//   function NAME(params) on Relation: sum(expr) [where cond]
//   [rule NAME:] Atom(...), ... -> linear <=|>=|= number
// Comments run from '#' to end of line. All names are resolved against the
// schema; unnamed constraints are named c1, c2, ... in file order.
ConstraintSet parse_constraints(const Schema& schema, std::string_view text);

// Canonical text form; parsing it again yields an equivalent set.
std::string print_constraints(const ConstraintSet& cs);

// Parses "Relation(v1, ..., vn)" with one literal per attribute.
GroundAtom parse_ground_atom(const Schema& schema, std::string_view text);

std::string print_ground_atom(const GroundAtom& atom);

} // namespace numrepair

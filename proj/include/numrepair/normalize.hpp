#pragma once

#include "numrepair/ast.hpp"

namespace numrepair {

struct ComparisonAtom {
    CondOperand lhs;
    CmpOp op = CmpOp::Eq;
    CondOperand rhs;
};

// Disjunctive normal form: a disjunction of conjunctions of comparisons.
// No disjuncts = false; a disjunct with no comparisons = true.
using Dnf = std::vector<std::vector<ComparisonAtom>>;

Dnf normalize_condition_dnf(const ConditionPtr& cond);

// Rewrites every '='-constraint into a ≤/≥ pair and every '≥' into '≤' with
// negated coefficients and bound. The result contains only ≤-constraints;
// derived constraints keep the original name in `source`.
ConstraintSet desugar_equalities(const ConstraintSet& cs);

} // namespace numrepair

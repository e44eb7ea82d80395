#pragma once

#include "numrepair/ast.hpp"
#include "numrepair/instance.hpp"

#include <span>
#include <string>
#include <vector>

namespace numrepair {

struct GroundAggTerm {
    Rational coefficient;
    std::string function;
    std::vector<Value> args;
};

struct GroundConstraint {
    std::string constraint; // name of the (possibly desugared) constraint
    std::string source;     // original rule name
    std::vector<std::pair<std::string, Value>> theta; // sorted by variable
    std::vector<GroundAggTerm> terms;
    Comparator cmp = Comparator::Le;
    Rational bound;
};

// One grounding per distinct substitution of the variables used in aggregate
// arguments, enumerated against the instance and ordered by theta values.
std::vector<GroundConstraint> ground_constraint(const Instance& instance,
                                                const ConstraintSet& cs,
                                                const AggregateConstraint& constraint);

// Exact sum of the body expression over rows satisfying the grounded
// condition; the empty selection sums to 0.
Rational eval_aggregation(const Instance& instance, const AggregationFunction& fn,
                          std::span<const Value> args);

// Parameters replaced by the given ground values.
ConditionPtr ground_condition(const AggregationFunction& fn, std::span<const Value> args);

bool eval_ground_condition(const Condition& cond, const RelationSchema& rel, const Row& row);

Rational eval_ground_lhs(const Instance& instance, const ConstraintSet& cs,
                         const GroundConstraint& gc);

bool comparator_holds(Comparator cmp, const Rational& lhs, const Rational& bound);

struct Violation {
    GroundConstraint ground;
    Rational lhs;
};

struct ViolationReport {
    std::vector<Violation> violations; // violated ground constraints only
    std::size_t checked = 0;           // total ground constraints evaluated

    bool consistent() const { return violations.empty(); }
};

ViolationReport check(const Instance& instance, const ConstraintSet& cs);

} // namespace numrepair

#pragma once

#include "numrepair/value.hpp"

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace numrepair {

// ---------------------------------------------------------------------------
// Attribute expressions: the linear bodies of aggregation functions.
// Trees are immutable and shared; clone-free copying is intentional.

struct AttrExpr;
using AttrExprPtr = std::shared_ptr<const AttrExpr>;

struct AttrExpr {
    enum class Kind { Constant, Attribute, Sum, Difference, Scale };

    Kind kind = Kind::Constant;
    Rational constant;     // Constant value; Scale factor
    std::string attribute; // Attribute
    AttrExprPtr lhs, rhs;  // Sum/Difference children; Scale child in lhs
};

AttrExprPtr attr_constant(Rational value);
AttrExprPtr attr_ref(std::string attribute);
AttrExprPtr attr_sum(AttrExprPtr lhs, AttrExprPtr rhs);
AttrExprPtr attr_diff(AttrExprPtr lhs, AttrExprPtr rhs);
AttrExprPtr attr_scale(Rational factor, AttrExprPtr sub);

// Flattened view: constant + Σ coefficient·attribute.
struct LinearProfile {
    Rational constant;
    std::map<std::string, Rational> coefficients;
};

LinearProfile linear_profile(const AttrExpr& expr);

// ---------------------------------------------------------------------------
// Selection conditions.

enum class CmpOp { Eq, Ne, Lt, Le, Gt, Ge };

CmpOp negate_op(CmpOp op);
std::string cmp_op_text(CmpOp op);
bool eval_cmp(CmpOp op, const Value& lhs, const Value& rhs);

struct CondOperand {
    enum class Kind { Attribute, Parameter, Constant };

    Kind kind = Kind::Constant;
    std::string name; // Attribute/Parameter
    Value constant;   // Constant

    friend auto operator<=>(const CondOperand&, const CondOperand&) = default;
};

struct Condition;
using ConditionPtr = std::shared_ptr<const Condition>;

struct Condition {
    enum class Kind { True, Compare, And, Or, Not };

    Kind kind = Kind::True;
    CondOperand lhs, rhs; // Compare
    CmpOp op = CmpOp::Eq; // Compare
    ConditionPtr a, b;    // And/Or children; Not child in a
};

ConditionPtr cond_true();
ConditionPtr cond_compare(CondOperand lhs, CmpOp op, CondOperand rhs);
ConditionPtr cond_and(ConditionPtr a, ConditionPtr b);
ConditionPtr cond_or(ConditionPtr a, ConditionPtr b);
ConditionPtr cond_not(ConditionPtr a);

// ---------------------------------------------------------------------------
// Aggregation functions and aggregate constraints.

struct AggregationFunction {
    // Coarse parameter typing, inferred from the comparisons a parameter
    // appears in. Enough to validate ground arguments.
    enum class ParamType { Any, Number, String };

    std::string name;
    std::string relation;
    std::vector<std::string> params;
    std::vector<ParamType> param_types;
    AttrExprPtr body;
    ConditionPtr condition;
};

struct AtomTerm {
    enum class Kind { Variable, Literal, Wildcard };

    Kind kind = Kind::Wildcard;
    std::string var;
    Value literal;
};

struct BodyAtom {
    std::string relation;
    std::vector<AtomTerm> terms;
};

struct AggArg {
    enum class Kind { Variable, Literal };

    Kind kind = Kind::Literal;
    std::string var;
    Value literal;
};

struct AggTerm {
    Rational coefficient;
    std::string function;
    std::vector<AggArg> args;
};

enum class Comparator { Le, Ge, Eq };

std::string comparator_text(Comparator cmp);

struct AggregateConstraint {
    std::string name;        // explicit rule name or generated c1, c2, ...
    std::string source;      // name before equality desugaring
    std::vector<BodyAtom> body;
    std::vector<AggTerm> terms;
    Comparator cmp = Comparator::Le;
    Rational bound;
};

struct ConstraintSet {
    std::vector<AggregationFunction> functions; // in declaration order
    std::vector<AggregateConstraint> constraints;

    const AggregationFunction* find_function(std::string_view name) const;
    const AggregationFunction& function(std::string_view name) const; // throws
};

// A fully ground atom R(v1,...,vn); doubles as the CQA query type.
struct GroundAtom {
    std::string relation;
    std::vector<Value> values;
};

} // namespace numrepair

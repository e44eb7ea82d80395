#include "numrepair/ast.hpp"

#include "numrepair/error.hpp"

namespace numrepair {

AttrExprPtr attr_constant(Rational value) {
    auto e = std::make_shared<AttrExpr>();
    e->kind = AttrExpr::Kind::Constant;
    e->constant = std::move(value);
    return e;
}

AttrExprPtr attr_ref(std::string attribute) {
    auto e = std::make_shared<AttrExpr>();
    e->kind = AttrExpr::Kind::Attribute;
    e->attribute = std::move(attribute);
    return e;
}

AttrExprPtr attr_sum(AttrExprPtr lhs, AttrExprPtr rhs) {
    auto e = std::make_shared<AttrExpr>();
    e->kind = AttrExpr::Kind::Sum;
    e->lhs = std::move(lhs);
    e->rhs = std::move(rhs);
    return e;
}

AttrExprPtr attr_diff(AttrExprPtr lhs, AttrExprPtr rhs) {
    auto e = std::make_shared<AttrExpr>();
    e->kind = AttrExpr::Kind::Difference;
    e->lhs = std::move(lhs);
    e->rhs = std::move(rhs);
    return e;
}

AttrExprPtr attr_scale(Rational factor, AttrExprPtr sub) {
    auto e = std::make_shared<AttrExpr>();
    e->kind = AttrExpr::Kind::Scale;
    e->constant = std::move(factor);
    e->lhs = std::move(sub);
    return e;
}

namespace {

void accumulate_profile(const AttrExpr& expr, const Rational& scale, LinearProfile& out) {
    switch (expr.kind) {
        case AttrExpr::Kind::Constant:
            out.constant += scale * expr.constant;
            return;
        case AttrExpr::Kind::Attribute:
            out.coefficients[expr.attribute] += scale;
            return;
        case AttrExpr::Kind::Sum:
            accumulate_profile(*expr.lhs, scale, out);
            accumulate_profile(*expr.rhs, scale, out);
            return;
        case AttrExpr::Kind::Difference:
            accumulate_profile(*expr.lhs, scale, out);
            accumulate_profile(*expr.rhs, -scale, out);
            return;
        case AttrExpr::Kind::Scale:
            accumulate_profile(*expr.lhs, scale * expr.constant, out);
            return;
    }
}

} // namespace

LinearProfile linear_profile(const AttrExpr& expr) {
    LinearProfile out;
    accumulate_profile(expr, Rational(1), out);
    std::erase_if(out.coefficients, [](const auto& kv) { return kv.second.is_zero(); });
    return out;
}

CmpOp negate_op(CmpOp op) {
    switch (op) {
        case CmpOp::Eq: return CmpOp::Ne;
        case CmpOp::Ne: return CmpOp::Eq;
        case CmpOp::Lt: return CmpOp::Ge;
        case CmpOp::Le: return CmpOp::Gt;
        case CmpOp::Gt: return CmpOp::Le;
        case CmpOp::Ge: return CmpOp::Lt;
    }
    fail(Error::Kind::Internal, "bad comparison operator");
}

std::string cmp_op_text(CmpOp op) {
    switch (op) {
        case CmpOp::Eq: return "=";
        case CmpOp::Ne: return "!=";
        case CmpOp::Lt: return "<";
        case CmpOp::Le: return "<=";
        case CmpOp::Gt: return ">";
        case CmpOp::Ge: return ">=";
    }
    return "?";
}

bool eval_cmp(CmpOp op, const Value& lhs, const Value& rhs) {
    switch (op) {
        case CmpOp::Eq: return lhs == rhs;
        case CmpOp::Ne: return lhs != rhs;
        case CmpOp::Lt: return lhs < rhs;
        case CmpOp::Le: return lhs <= rhs;
        case CmpOp::Gt: return lhs > rhs;
        case CmpOp::Ge: return lhs >= rhs;
    }
    return false;
}

ConditionPtr cond_true() {
    static const ConditionPtr t = std::make_shared<Condition>();
    return t;
}

ConditionPtr cond_compare(CondOperand lhs, CmpOp op, CondOperand rhs) {
    auto c = std::make_shared<Condition>();
    c->kind = Condition::Kind::Compare;
    c->lhs = std::move(lhs);
    c->rhs = std::move(rhs);
    c->op = op;
    return c;
}

ConditionPtr cond_and(ConditionPtr a, ConditionPtr b) {
    auto c = std::make_shared<Condition>();
    c->kind = Condition::Kind::And;
    c->a = std::move(a);
    c->b = std::move(b);
    return c;
}

ConditionPtr cond_or(ConditionPtr a, ConditionPtr b) {
    auto c = std::make_shared<Condition>();
    c->kind = Condition::Kind::Or;
    c->a = std::move(a);
    c->b = std::move(b);
    return c;
}

ConditionPtr cond_not(ConditionPtr a) {
    auto c = std::make_shared<Condition>();
    c->kind = Condition::Kind::Not;
    c->a = std::move(a);
    return c;
}

std::string comparator_text(Comparator cmp) {
    switch (cmp) {
        case Comparator::Le: return "<=";
        case Comparator::Ge: return ">=";
        case Comparator::Eq: return "=";
    }
    return "?";
}

const AggregationFunction* ConstraintSet::find_function(std::string_view name) const {
    for (const auto& f : functions)
        if (f.name == name) return &f;
    return nullptr;
}

const AggregationFunction& ConstraintSet::function(std::string_view name) const {
    if (const auto* f = find_function(name)) return *f;
    fail(Error::Kind::Validate, "unknown aggregation function '" + std::string(name) + "'");
}

} // namespace numrepair

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"

#include "numrepair/evaluator.hpp"
#include "numrepair/normalize.hpp"
#include "numrepair/parser.hpp"

#include <functional>
#include <random>

using namespace numrepair;
using namespace numrepair::testing;

namespace {

const Schema kSchema = parse_schema("relation T(V: integer measure, W: integer measure)");

bool eval_cond(const Condition& c, const Row& row) {
    return eval_ground_condition(c, kSchema.relations[0], row);
}

bool eval_dnf(const Dnf& dnf, const Row& row) {
    auto operand = [&](const CondOperand& o) -> Value {
        if (o.kind == CondOperand::Kind::Constant) return o.constant;
        REQUIRE(o.kind == CondOperand::Kind::Attribute);
        return row[*kSchema.relations[0].attribute_index(o.name)];
    };
    for (const auto& conj : dnf) {
        bool all = true;
        for (const auto& atom : conj)
            if (!eval_cmp(atom.op, operand(atom.lhs), operand(atom.rhs))) {
                all = false;
                break;
            }
        if (all) return true;
    }
    return false;
}

ConditionPtr random_condition(std::mt19937_64& rng, int depth) {
    std::uniform_int_distribution<int> kind(0, depth <= 0 ? 0 : 3);
    std::uniform_int_distribution<int> attr(0, 1);
    std::uniform_int_distribution<int> constant(-1, 2);
    std::uniform_int_distribution<int> op(0, 5);
    switch (kind(rng)) {
        case 1: return cond_and(random_condition(rng, depth - 1), random_condition(rng, depth - 1));
        case 2: return cond_or(random_condition(rng, depth - 1), random_condition(rng, depth - 1));
        case 3: return cond_not(random_condition(rng, depth - 1));
        default:
            return cond_compare(
                {CondOperand::Kind::Attribute, attr(rng) ? "W" : "V", {}},
                static_cast<CmpOp>(op(rng)),
                {CondOperand::Kind::Constant, "", Value::number(Rational(constant(rng)))});
    }
}

} // namespace

TEST_CASE("dnf agrees with the condition on every small assignment") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 200; ++trial) {
        ConditionPtr cond = random_condition(rng, 4);
        Dnf dnf = normalize_condition_dnf(cond);
        for (long v = -2; v <= 3; ++v)
            for (long w = -2; w <= 3; ++w) {
                Row row{num(v), num(w)};
                CAPTURE(trial);
                CAPTURE(v);
                CAPTURE(w);
                REQUIRE(eval_cond(*cond, row) == eval_dnf(dnf, row));
            }
    }
}

TEST_CASE("dnf edge shapes") {
    Dnf top = normalize_condition_dnf(cond_true());
    REQUIRE(top.size() == 1);
    CHECK(top[0].empty());
    // a contradiction built from not(true)
    Dnf none = normalize_condition_dnf(cond_not(cond_true()));
    CHECK(none.empty());
    // negation turns conjunction into a disjunction of negated atoms
    auto va = cond_compare({CondOperand::Kind::Attribute, "V", {}}, CmpOp::Eq,
                           {CondOperand::Kind::Constant, "", num(0)});
    auto wb = cond_compare({CondOperand::Kind::Attribute, "W", {}}, CmpOp::Le,
                           {CondOperand::Kind::Constant, "", num(1)});
    Dnf split = normalize_condition_dnf(cond_not(cond_and(va, wb)));
    REQUIRE(split.size() == 2);
    CHECK(split[0][0].op == CmpOp::Ne);
    CHECK(split[1][0].op == CmpOp::Gt);
}

TEST_CASE("comparison negation table") {
    CHECK(negate_op(CmpOp::Eq) == CmpOp::Ne);
    CHECK(negate_op(CmpOp::Ne) == CmpOp::Eq);
    CHECK(negate_op(CmpOp::Lt) == CmpOp::Ge);
    CHECK(negate_op(CmpOp::Ge) == CmpOp::Lt);
    CHECK(negate_op(CmpOp::Gt) == CmpOp::Le);
    CHECK(negate_op(CmpOp::Le) == CmpOp::Gt);
}

TEST_CASE("desugaring rewrites equalities and flips lower bounds") {
    Project p = load_fixture("cashbudget");
    ConstraintSet flat = desugar_equalities(p.constraints);

    // three equality rules become six one-sided constraints
    CHECK(flat.constraints.size() == 6);
    for (const auto& c : flat.constraints) CHECK(c.cmp == Comparator::Le);

    CHECK(flat.constraints[0].name == "detail_matches_aggregate:le");
    CHECK(flat.constraints[1].name == "detail_matches_aggregate:ge");
    CHECK(flat.constraints[0].source == "detail_matches_aggregate");
    CHECK(flat.constraints[1].source == "detail_matches_aggregate");

    // the flipped half negates coefficients and bound
    const auto& le = flat.constraints[0];
    const auto& ge = flat.constraints[1];
    REQUIRE(le.terms.size() == ge.terms.size());
    for (std::size_t i = 0; i < le.terms.size(); ++i) {
        CHECK(le.terms[i].function == ge.terms[i].function);
        CHECK(le.terms[i].coefficient == -ge.terms[i].coefficient);
    }
    CHECK(le.bound == -ge.bound);

    // functions are shared untouched
    CHECK(flat.functions.size() == p.constraints.functions.size());

    // desugaring preserves the violation set
    auto before = check(p.instance, p.constraints);
    auto after = check(p.instance, flat);
    CHECK(before.consistent() == after.consistent());
    CHECK(after.checked == 20); // each equality grounding doubled
    CHECK(after.violations.size() == 2);
    for (const auto& v : after.violations)
        CHECK((v.ground.source == "detail_matches_aggregate" ||
               v.ground.source == "net_inflow_balances"));
}

TEST_CASE("pure inequalities survive desugaring unchanged") {
    Schema s = parse_schema("relation T(V: integer measure)");
    ConstraintSet cs = parse_constraints(
        s, "function f() on T: sum(V)\nrule only: T(_) -> f() <= 3\n");
    ConstraintSet flat = desugar_equalities(cs);
    REQUIRE(flat.constraints.size() == 1);
    CHECK(flat.constraints[0].name == "only");
    CHECK(flat.constraints[0].source == "only");
    CHECK(flat.constraints[0].bound == Rational(3));
}

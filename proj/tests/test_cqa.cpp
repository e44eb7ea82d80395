#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "oracle.hpp"

#include "numrepair/cqa.hpp"
#include "numrepair/evaluator.hpp"
#include "numrepair/parser.hpp"
#include "numrepair/project.hpp"

using namespace numrepair;
using namespace numrepair::testing;

namespace {

GroundAtom atom(const Project& p, const std::string& text) {
    return parse_ground_atom(p.instance.schema(), text);
}

// Applies the witness and checks it is a consistent instance avoiding q.
void check_falsifier(const Project& p, const GroundAtom& q, const CqaVerdict& v) {
    REQUIRE(v.witness.has_value());
    Instance repaired = apply_update_set(p.instance, *v.witness);
    CHECK(check(repaired, p.constraints).consistent());
    bool holds = false;
    const auto& rel = p.instance.schema().relation(q.relation);
    for (const Row& row : repaired.rows(q.relation)) {
        bool equal = true;
        for (std::size_t i = 0; i < rel.attributes.size(); ++i)
            if (row[i] != q.values[i]) { equal = false; break; }
        if (equal) holds = true;
    }
    CHECK(!holds);
}

} // namespace

TEST_CASE("query validation") {
    Project p = load_fixture("cashbudget");
    const Schema& schema = p.instance.schema();

    CHECK_THROWS_AS(validate_query(schema, GroundAtom{"Nope", {}}), Error);
    CHECK_THROWS_AS(validate_query(schema, GroundAtom{"CashBudget", {num(2003)}}), Error);
    GroundAtom wrong_type{"CashBudget", {str("x"), str("Receipts"), str("cash sales"),
                                         str("det"), num(1)}};
    CHECK_THROWS_AS(validate_query(schema, wrong_type), Error);

    CHECK_THROWS_AS(atom(p, "CashBudget(2003, 'Receipts')"), Error);
    CHECK_THROWS_AS(atom(p, "Mystery(1)"), Error);
    GroundAtom ok = atom(p, "CashBudget(2003, 'Receipts', 'cash sales', 'det', 100)");
    CHECK(ok.values.size() == 5);
    CHECK(parse_ground_atom(schema, print_ground_atom(ok)).values == ok.values);
}

TEST_CASE("match tuples ignores measure values") {
    Project p = load_fixture("cashbudget");
    auto m = match_tuples(p.instance, atom(p, "CashBudget(2003, 'Receipts', 'cash sales', 'det', 77)"));
    REQUIRE(m.size() == 1);
    CHECK(m[0].row == 1);

    CHECK(match_tuples(p.instance, atom(p, "CashBudget(2003, 'Receipts', 'petty cash', 'det', 0)"))
              .empty());
}

TEST_CASE("net inflow under set semantics is refutable") {
    Project p = load_fixture("cashbudget");
    GroundAtom q = atom(p, "CashBudget(2003, 'Balance', 'net cash inflow', 'drv', 60)");

    CqaVerdict v = cqa(p.instance, p.constraints, q, Semantics::Set, p.limits);
    CHECK(v.holds_now);
    CHECK(v.answer == CqaAnswer::False);
    check_falsifier(p, q, v);
    // the falsifying repair changes the net inflow itself
    bool changed = false;
    for (const auto& u : v.witness->updates)
        if (u.cell == cell("CashBudget", 8, "Value")) changed = true;
    CHECK(changed);
}

TEST_CASE("net inflow under card semantics is certain") {
    Project p = load_fixture("cashbudget");
    GroundAtom q = atom(p, "CashBudget(2003, 'Balance', 'net cash inflow', 'drv', 60)");
    CqaVerdict v = cqa(p.instance, p.constraints, q, Semantics::Card, p.limits);
    CHECK(v.answer == CqaAnswer::True);
    CHECK(!v.witness);
}

TEST_CASE("the forced aggregate value is true, the stored one false") {
    Project p = load_fixture("cashbudget");

    GroundAtom fixed = atom(p, "CashBudget(2003, 'Receipts', 'total cash receipts', 'aggr', 220)");
    CqaVerdict v = cqa(p.instance, p.constraints, fixed, Semantics::Card, p.limits);
    CHECK(!v.holds_now);
    CHECK(v.answer == CqaAnswer::True);

    GroundAtom stored = atom(p, "CashBudget(2003, 'Receipts', 'total cash receipts', 'aggr', 250)");
    v = cqa(p.instance, p.constraints, stored, Semantics::Card, p.limits);
    CHECK(v.holds_now);
    CHECK(v.answer == CqaAnswer::False);
    REQUIRE(v.witness.has_value());
    REQUIRE(v.witness->size() == 1);
    CHECK(v.witness->updates[0].cell == cell("CashBudget", 3, "Value"));
    CHECK(v.witness->updates[0].new_value == num(220));
    check_falsifier(p, stored, v);
}

TEST_CASE("untouched year: certain under card, open under set") {
    Project p = load_fixture("cashbudget");
    GroundAtom q = atom(p, "CashBudget(2004, 'Balance', 'net cash inflow', 'drv', 10)");

    CqaVerdict card = cqa(p.instance, p.constraints, q, Semantics::Card, p.limits);
    CHECK(card.answer == CqaAnswer::True);

    // with 20 candidate cells and supports capped at 4, larger supports could
    // in principle reach 2004, so set semantics must not overclaim
    CqaVerdict set = cqa(p.instance, p.constraints, q, Semantics::Set, p.limits);
    CHECK(set.answer == CqaAnswer::Indeterminate);
}

TEST_CASE("a query false in the instance and in every repair") {
    Project p = load_fixture("cashbudget");
    GroundAtom q = atom(p, "CashBudget(2004, 'Balance', 'net cash inflow', 'drv', 999)");
    CqaVerdict v = cqa(p.instance, p.constraints, q, Semantics::Card, p.limits);
    CHECK(!v.holds_now);
    CHECK(v.answer == CqaAnswer::False);
    REQUIRE(v.witness.has_value());
    REQUIRE(v.witness->size() == 1);
    CHECK(v.witness->updates[0].new_value == num(220)); // any minimal repair avoids q
    check_falsifier(p, q, v);
}

TEST_CASE("no repair at all answers false with the flag set") {
    Schema s = parse_schema("relation T(Id: integer, V: integer measure)");
    Instance inst(s);
    inst.append_row("T", {num(1), num(0)});
    ConstraintSet cs = parse_constraints(
        s, "function n() on T: sum(1)\nrule r: T(_, _) -> n() <= 0\n");
    GroundAtom q{"T", {num(1), num(0)}};
    for (Semantics sem : {Semantics::Set, Semantics::Card}) {
        CqaVerdict v = cqa(inst, cs, q, sem, {});
        CHECK(v.answer == CqaAnswer::False);
        CHECK(v.no_repair);
        CHECK(!v.witness);
    }
}

TEST_CASE("consistent instances answer from the stored tuples") {
    Project p = load_fixture("cashbudget_repaired");
    GroundAtom there = atom(p, "CashBudget(2003, 'Receipts', 'total cash receipts', 'aggr', 220)");
    CqaVerdict v = cqa(p.instance, p.constraints, there, Semantics::Set, p.limits);
    CHECK(v.holds_now);
    CHECK(v.answer == CqaAnswer::True);

    GroundAtom absent = atom(p, "CashBudget(2003, 'Receipts', 'total cash receipts', 'aggr', 999)");
    v = cqa(p.instance, p.constraints, absent, Semantics::Card, p.limits);
    CHECK(!v.holds_now);
    CHECK(v.answer == CqaAnswer::False);
    REQUIRE(v.witness.has_value());
    CHECK(v.witness->empty()); // the instance itself is the refuting repair
}

TEST_CASE("verdicts agree with the oracle over the enumerated supports") {
    Project p = load_fixture("cashbudget");
    Limits limits = p.limits;
    limits.max_support_size = 3;
    SupportFamily card = minimal_supports(p.instance, p.constraints, Semantics::Card, limits);
    REQUIRE(card.complete);

    struct Case { const char* text; bool expect_true; };
    for (const Case& c : {
             Case{"CashBudget(2003, 'Receipts', 'total cash receipts', 'aggr', 220)", true},
             Case{"CashBudget(2003, 'Receipts', 'total cash receipts', 'aggr', 250)", false},
             Case{"CashBudget(2003, 'Balance', 'net cash inflow', 'drv', 60)", true},
             Case{"CashBudget(2004, 'Balance', 'net cash inflow', 'drv', 10)", true},
         }) {
        GroundAtom q = atom(p, c.text);
        CqaVerdict v = cqa(p.instance, p.constraints, q, Semantics::Card, limits);
        bool oracle = oracle_query_true(p.instance, p.constraints, q, card.sets, 60, 10);
        CAPTURE(c.text);
        CHECK(oracle == c.expect_true);
        CHECK((v.answer == CqaAnswer::True) == oracle);
    }
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"

#include "numrepair/error.hpp"
#include "numrepair/linear.hpp"
#include "numrepair/parser.hpp"
#include "numrepair/repair.hpp"
#include "numrepair/solver.hpp"

#include <algorithm>

using namespace numrepair;
using namespace numrepair::testing;

namespace {

const GroundConstraint& find_ground(const std::vector<GroundConstraint>& grounds,
                                    const std::string& name_prefix, const Value& first_theta) {
    for (const auto& gc : grounds)
        if (gc.constraint.starts_with(name_prefix) && !gc.theta.empty() &&
            gc.theta[0].second == first_theta)
            return gc;
    REQUIRE(false);
    return grounds.front();
}

} // namespace

TEST_CASE("adjusted constant subtracts frozen contributions") {
    Project p = load_fixture("cashbudget");
    ConstraintSet flat = desugar_equalities(p.constraints);
    Support s{cell("CashBudget", 3, "Value")}; // total cash receipts 2003

    const auto& detail_le = flat.constraints[0];
    REQUIRE(detail_le.name == "detail_matches_aggregate:le");
    auto grounds = ground_constraint(p.instance, flat, detail_le);
    const auto& gc = find_ground(grounds, "detail_matches_aggregate:le", str("Receipts"));

    // det sum (220) stays frozen, the aggregate side is the variable:
    // K' = 0 - 220 = -220
    CHECK(adjusted_constant(p.instance, flat, gc, s) == Rational(-220));

    const auto& detail_ge = flat.constraints[1];
    auto ge_grounds = ground_constraint(p.instance, flat, detail_ge);
    const auto& gc2 = find_ground(ge_grounds, "detail_matches_aggregate:ge", str("Receipts"));
    CHECK(adjusted_constant(p.instance, flat, gc2, s) == Rational(220));

    // with both detail cells in the support too, only row 2 (120) stays frozen
    Support wide{cell("CashBudget", 1, "Value"), cell("CashBudget", 3, "Value")};
    CHECK(adjusted_constant(p.instance, flat, gc, wide) == Rational(-120));

    // an untouched grounding keeps its plain bound
    const auto& gc_disb = find_ground(grounds, "detail_matches_aggregate:le", str("Disbursements"));
    CHECK(adjusted_constant(p.instance, flat, gc_disb, s) == Rational(-160) + Rational(160));
}

TEST_CASE("membership overrides shift the adjusted constant") {
    Schema schema = parse_schema("relation T(Id: integer, V: integer measure)");
    Instance inst(schema);
    inst.append_row("T", {num(0), num(2)});
    inst.append_row("T", {num(1), num(3)});
    ConstraintSet cs = parse_constraints(
        schema,
        "function pos() on T: sum(V) where V >= 0\nrule r: T(_, _) -> pos() <= 4\n");
    ConstraintSet flat = desugar_equalities(cs);
    auto grounds = ground_constraint(inst, flat, flat.constraints[0]);
    REQUIRE(grounds.size() == 1);

    Support s{cell("T", 0, "V")};
    // row 1 counts by default: K' = 4 - 3
    CHECK(adjusted_constant(inst, flat, grounds[0], s) == Rational(1));
    // forcing row 1 out of the sum restores the full bound
    MembershipPattern out{{{0, TupleId{"T", 1}}, false}};
    CHECK(adjusted_constant(inst, flat, grounds[0], s, out) == Rational(4));
}

TEST_CASE("single support cell forces the known repair value") {
    Project p = load_fixture("cashbudget");
    ConstraintSet flat = desugar_equalities(p.constraints);
    Support s{cell("CashBudget", 3, "Value")};

    BranchSet bs = encode_support(p.instance, flat, s);
    CHECK(bs.units.empty()); // fixture conditions never touch measures
    CHECK(bs.nominal_branch_count() == 1);

    auto branches = bs.branches(16);
    REQUIRE(branches.size() == 1);
    REQUIRE(branches[0].vars.size() == 1);
    CHECK(branches[0].vars[0].cell == *s.begin());
    CHECK(branches[0].vars[0].domain == Domain::Integer);
    CHECK(branches[0].vars[0].original == Rational(250));

    auto res = solve(branches[0]);
    REQUIRE(res.status == SolveStatus::Feasible);
    CHECK(res.witness.at(*s.begin()) == Rational(220));
}

TEST_CASE("empty support encodes the instance itself") {
    // the inconsistent fixture folds to violated constant rows, which the
    // enumerator prunes before yielding any branch
    Project broken = load_fixture("cashbudget");
    ConstraintSet flat = desugar_equalities(broken.constraints);
    CHECK(encode_support(broken.instance, flat, {}).branches(4).empty());
    CHECK(feasible(broken.instance, broken.constraints, {}).status == Feasibility::No);

    Project fixed = load_fixture("cashbudget_repaired");
    auto again = encode_support(fixed.instance, desugar_equalities(fixed.constraints), {})
                     .branches(4);
    REQUIRE(again.size() == 1);
    CHECK(again[0].vars.empty());
    CHECK(solve(again[0]).status == SolveStatus::Feasible);
}

TEST_CASE("support cells must be measure attributes of desugared sets") {
    Project p = load_fixture("cashbudget");
    ConstraintSet flat = desugar_equalities(p.constraints);
    CHECK_THROWS_AS(encode_support(p.instance, flat, {cell("CashBudget", 0, "Year")}), Error);
    CHECK_THROWS_AS(encode_support(p.instance, flat, {cell("CashBudget", 99, "Value")}), Error);
    // equality comparators must be desugared first
    CHECK_THROWS_AS(encode_support(p.instance, p.constraints, {cell("CashBudget", 3, "Value")}),
                    Error);
}

namespace {

struct Branchy {
    Schema schema = parse_schema("relation T(Id: integer, V: integer measure)");
    Instance inst{schema};
    ConstraintSet flat;

    // count of rows with V >= 3 must be at most `cap`
    explicit Branchy(long cap, std::vector<long> values) {
        for (std::size_t i = 0; i < values.size(); ++i)
            inst.append_row("T", {num(long(i)), num(values[i])});
        ConstraintSet cs = parse_constraints(
            schema, "function high() on T: sum(1) where V >= 3\n"
                    "rule r: T(_, _) -> high() <= " + std::to_string(cap) + "\n");
        flat = desugar_equalities(cs);
    }
};

} // namespace

TEST_CASE("membership choices branch over counted and uncounted rows") {
    Branchy b(1, {5, 5});
    Support s{cell("T", 0, "V"), cell("T", 1, "V")};
    BranchSet bs = encode_support(b.inst, b.flat, s);

    REQUIRE(bs.units.size() == 2);
    for (const auto& unit : bs.units) {
        CHECK(unit.function == "high");
        REQUIRE(unit.choices.size() == 2);
        // counted keeps V >= 3, uncounted freezes V < 3
        bool counted_seen = false, uncounted_seen = false;
        for (const auto& choice : unit.choices) {
            if (choice.counted) counted_seen = true;
            else uncounted_seen = true;
            REQUIRE(choice.rows.size() == 1);
        }
        CHECK(counted_seen);
        CHECK(uncounted_seen);
    }
    CHECK(bs.nominal_branch_count() == 4);

    // every branch system is solvable except both-counted (2 > 1)
    std::size_t feasible = 0, total = 0;
    bs.for_each_branch(
        [&](const LinearSystem& sys) {
            ++total;
            if (solve(sys).status == SolveStatus::Feasible) ++feasible;
            return false;
        },
        16);
    CHECK(total >= 3);
    CHECK(feasible == 3);
}

TEST_CASE("interval pruning removes hopeless branches") {
    // cap 0 and both rows already high: the both-counted branch dies early
    Branchy b(0, {5, 5});
    Support s{cell("T", 0, "V"), cell("T", 1, "V")};
    BranchSet bs = encode_support(b.inst, b.flat, s);
    auto stats = bs.for_each_branch([](const LinearSystem&) { return false; }, 16);
    CHECK(stats.yielded < bs.nominal_branch_count());
}

TEST_CASE("branch cap throws a resource error") {
    Branchy b(1, {5, 5});
    Support s{cell("T", 0, "V"), cell("T", 1, "V")};
    BranchSet bs = encode_support(b.inst, b.flat, s);
    try {
        bs.branches(1);
        FAIL("expected a resource error");
    } catch (const Error& e) {
        CHECK(e.kind() == Error::Kind::Resource);
    }
    // the cap counts yielded branches, so an exact fit passes
    CHECK_NOTHROW(bs.branches(bs.for_each_branch([](const LinearSystem&) { return false; },
                                                 64)
                                  .yielded));
}

TEST_CASE("early stop is reported") {
    Branchy b(1, {5, 5});
    Support s{cell("T", 0, "V"), cell("T", 1, "V")};
    BranchSet bs = encode_support(b.inst, b.flat, s);
    auto stats = bs.for_each_branch([](const LinearSystem&) { return true; }, 16);
    CHECK(stats.yielded == 1);
    CHECK(stats.stopped_early);
}

TEST_CASE("disequalities split into strict alternatives") {
    Schema schema = parse_schema("relation T(V: integer measure)");
    Instance inst(schema);
    inst.append_row("T", {num(0)});
    ConstraintSet cs = parse_constraints(
        schema, "function bad() on T: sum(1) where V != 0 and V != 1\n"
                "rule r: T(_) -> bad() <= 0\n");
    ConstraintSet flat = desugar_equalities(cs);
    BranchSet bs = encode_support(inst, flat, {cell("T", 0, "V")});

    REQUIRE(bs.units.size() == 1);
    // counted: four corners of (!= 0) x (!= 1); uncounted: V = 0 or V = 1
    std::size_t counted = 0, uncounted = 0;
    for (const auto& choice : bs.units[0].choices)
        (choice.counted ? counted : uncounted)++;
    CHECK(uncounted == 2);
    CHECK(counted <= 4); // single-cell interval filtering may drop corners
    CHECK(counted >= 1);

    // the uncounted branches admit exactly V in {0, 1}
    std::set<Rational> solutions;
    bs.for_each_branch(
        [&](const LinearSystem& sys) {
            auto res = solve(sys);
            if (res.status == SolveStatus::Feasible)
                solutions.insert(res.witness.at(cell("T", 0, "V")));
            return false;
        },
        64);
    for (const auto& v : solutions) CHECK((v == Rational(0) || v == Rational(1)));
    CHECK(solutions.size() == 2);
}

TEST_CASE("var order follows the support's cell order") {
    Project p = load_fixture("cashbudget");
    ConstraintSet flat = desugar_equalities(p.constraints);
    Support s{cell("CashBudget", 8, "Value"), cell("CashBudget", 1, "Value")};
    BranchSet bs = encode_support(p.instance, flat, s);
    REQUIRE(bs.vars.size() == 2);
    CHECK(bs.vars[0].cell.tuple.row == 1);
    CHECK(bs.vars[1].cell.tuple.row == 8);
}

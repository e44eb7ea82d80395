#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"

#include "numrepair/error.hpp"
#include "numrepair/instance.hpp"
#include "numrepair/schema.hpp"

using namespace numrepair;
using namespace numrepair::testing;

TEST_CASE("rational arithmetic stays canonical") {
    Rational a(6, 4);
    CHECK(a.str() == "3/2");
    CHECK(a == Rational(3, 2));
    CHECK((a + Rational(1, 2)).str() == "2");
    CHECK((a * Rational(2, 3)) == Rational(1));
    CHECK((Rational(1) / Rational(3)).str() == "1/3");
    CHECK(Rational(-4, 8).str() == "-1/2");
    CHECK(Rational(-4, 8).sign() == -1);
    CHECK(Rational(0).is_zero());
    CHECK(Rational(7, 2).floor() == Rational(3));
    CHECK(Rational(7, 2).ceil() == Rational(4));
    CHECK(Rational(-7, 2).floor() == Rational(-4));
    CHECK(Rational(-7, 2).ceil() == Rational(-3));
    CHECK(Rational(-5, 3).abs() == Rational(5, 3));
    CHECK(Rational(42).to_long() == 42);
    CHECK(Rational(3, 2) > Rational(1));
    CHECK(Rational(-1, 9) < Rational(0));
}

TEST_CASE("rational parsing accepts integers, decimals and fractions") {
    CHECK(Rational::parse("-3") == Rational(-3));
    CHECK(Rational::parse("2.75") == Rational(11, 4));
    CHECK(Rational::parse("7/2") == Rational(7, 2));
    CHECK(Rational::parse("-0.5") == Rational(-1, 2));
    CHECK(!Rational::parse("x"));
    CHECK(!Rational::parse(""));
    CHECK(!Rational::parse("1/0"));
    CHECK(!Rational::parse("1..5"));
    CHECK(!Rational::parse("1/2/3"));
}

TEST_CASE("division by zero throws") {
    CHECK_THROWS_AS(Rational(1) / Rational(0), Error);
}

TEST_CASE("values are typed and ordered") {
    Value n = num(5), s = str("x");
    CHECK(n.is_number());
    CHECK(s.is_string());
    CHECK(n.conforms(Domain::Integer));
    CHECK(n.conforms(Domain::Real));
    CHECK(!n.conforms(Domain::String));
    CHECK(!Value::number(Rational(1, 2)).conforms(Domain::Integer));
    CHECK(Value::number(Rational(1, 2)).conforms(Domain::Real));
    CHECK(s.conforms(Domain::String));
    CHECK(n.display() == "5");
    CHECK(s.display() == "'x'");
    CHECK(num(1) < num(2));
    CHECK(num(2) == num(2));
    CHECK_THROWS_AS(n.str(), Error);
    CHECK_THROWS_AS(s.num(), Error);
}

TEST_CASE("schema text round-trips") {
    Schema s = parse_schema(
        "# comment\n"
        "relation T(Id: integer, Name: string, Amount: real measure, N: integer measure)\n");
    REQUIRE(s.relations.size() == 1);
    const auto& rel = s.relations[0];
    CHECK(rel.name == "T");
    REQUIRE(rel.attributes.size() == 4);
    CHECK(rel.attributes[0].domain == Domain::Integer);
    CHECK(!rel.attributes[0].measure);
    CHECK(rel.attributes[2].domain == Domain::Real);
    CHECK(rel.attributes[2].measure);
    CHECK(rel.attribute_index("Amount") == 2);
    CHECK(!rel.attribute_index("amount"));
    CHECK_THROWS_AS(rel.attribute("missing"), Error);

    Schema again = parse_schema(print_schema(s));
    CHECK(print_schema(again) == print_schema(s));
}

TEST_CASE("schema rejects malformed declarations") {
    CHECK_THROWS_AS(parse_schema("relation T(Id: bogus)"), Error);
    CHECK_THROWS_AS(parse_schema("relation T()"), Error);
    CHECK_THROWS_AS(parse_schema("relation T(Id: integer) relation T(Id: integer)"), Error);
    CHECK_THROWS_AS(parse_schema("relation T(Id: integer, Id: string)"), Error);
    CHECK_THROWS_AS(parse_schema("relation T(Name: string measure)"), Error);
}

TEST_CASE("instances check domains and expose measure cells") {
    Schema s = parse_schema("relation T(Id: integer, V: integer measure, W: real measure)");
    Instance inst(s);
    TupleId t0 = inst.append_row("T", {num(1), num(10), num(20)});
    inst.append_row("T", {num(2), num(30), Value::number(Rational(1, 2))});
    CHECK(t0.row == 0);
    CHECK(inst.value(cell("T", 0, "V")) == num(10));
    CHECK_THROWS_AS(inst.append_row("T", {num(1), str("x"), num(0)}), Error);
    CHECK_THROWS_AS(inst.append_row("T", {num(1), Value::number(Rational(1, 2)), num(0)}), Error);
    CHECK_THROWS_AS(inst.append_row("T", {num(1), num(2)}), Error);
    CHECK_THROWS_AS(inst.append_row("U", {num(1)}), Error);

    auto cells = inst.measure_cells();
    REQUIRE(cells.size() == 4);
    CHECK(cells[0] == cell("T", 0, "V"));
    CHECK(cells[1] == cell("T", 0, "W"));
    CHECK(cells[3] == cell("T", 1, "W"));

    inst.set_value(cell("T", 0, "V"), num(99));
    CHECK(inst.value(cell("T", 0, "V")) == num(99));
    CHECK_THROWS_AS(inst.set_value(cell("T", 0, "V"), Value::number(Rational(1, 2))), Error);
    CHECK_THROWS_AS(inst.set_value(cell("T", 5, "V"), num(1)), Error);
}

TEST_CASE("csv parsing round-trips and validates") {
    Schema s = parse_schema("relation T(Id: integer, Name: string, V: integer measure)");
    const auto& rel = s.relations[0];
    auto rows = parse_relation_csv(rel, "Id,Name,V\n1,alpha,10\n2,\"with, comma\",-3\n", "t.csv");
    REQUIRE(rows.size() == 2);
    CHECK(rows[0][1] == str("alpha"));
    CHECK(rows[1][1] == str("with, comma"));
    CHECK(rows[1][2] == num(-3));

    Instance inst(s);
    inst.append_row("T", rows[0]);
    inst.append_row("T", rows[1]);
    auto text = print_relation_csv(inst, "T");
    auto again = parse_relation_csv(rel, text, "round");
    CHECK(again == inst.rows("T"));

    CHECK_THROWS_AS(parse_relation_csv(rel, "Id,V,Name\n", "t.csv"), Error);
    CHECK_THROWS_AS(parse_relation_csv(rel, "Id,Name,V\n1,a\n", "t.csv"), Error);
    CHECK_THROWS_AS(parse_relation_csv(rel, "Id,Name,V\nx,a,1\n", "t.csv"), Error);
}

TEST_CASE("update sets validate their targets") {
    Schema s = parse_schema("relation T(Id: integer, V: integer measure)");
    Instance inst(s);
    inst.append_row("T", {num(1), num(10)});

    auto ok = validate_update_set(inst, {{cell("T", 0, "V"), num(11)}});
    CHECK(ok.size() == 1);
    CHECK(ok.support() == std::set<CellRef>{cell("T", 0, "V")});

    // non-measure target
    CHECK_THROWS_AS(validate_update_set(inst, {{cell("T", 0, "Id"), num(2)}}), Error);
    // duplicate cell
    CHECK_THROWS_AS(validate_update_set(
                        inst, {{cell("T", 0, "V"), num(11)}, {cell("T", 0, "V"), num(12)}}),
                    Error);
    // unchanged value
    CHECK_THROWS_AS(validate_update_set(inst, {{cell("T", 0, "V"), num(10)}}), Error);
    // domain violation
    CHECK_THROWS_AS(
        validate_update_set(inst, {{cell("T", 0, "V"), Value::number(Rational(1, 2))}}), Error);
    // unknown row
    CHECK_THROWS_AS(validate_update_set(inst, {{cell("T", 9, "V"), num(1)}}), Error);

    Instance updated = apply_update_set(inst, ok);
    CHECK(updated.value(cell("T", 0, "V")) == num(11));
    CHECK(inst.value(cell("T", 0, "V")) == num(10));
}

TEST_CASE("error kinds are preserved") {
    try {
        fail(Error::Kind::Resource, "boom");
    } catch (const Error& e) {
        CHECK(e.kind() == Error::Kind::Resource);
        CHECK(std::string(e.what()).find("boom") != std::string::npos);
    }
}

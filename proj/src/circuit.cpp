#include "numrepair/circuit.hpp"

#include "numrepair/error.hpp"

#include <fstream>
#include <random>

namespace numrepair {

namespace {

const char* kSchemaText =
    "relation gate(IDGate: integer, norVal: integer measure, orVal: integer measure)\n"
    "relation gateInput(IDGate: integer, IDIngoing: integer, Val: integer measure)\n"
    "relation input(IDInput: integer, Val: integer measure)\n";

const char* kConstraintsText =
    "function NORVal(g) on gate: sum(norVal) where IDGate = g\n"
    "function ORVal(g) on gate: sum(orVal) where IDGate = g\n"
    "function IngoingVal(g, i) on gateInput: sum(Val) where IDGate = g and IDIngoing = i\n"
    "function IngoingSum(g) on gateInput: sum(Val) where IDGate = g\n"
    "function InputVal(i) on input: sum(Val) where IDInput = i\n"
    "function ValidInput() on input: sum(1) where Val != 0 and Val != 1\n"
    "function ValidGate() on gate: sum(1)"
    " where (norVal != 0 and norVal != 1) or (orVal != 0 and orVal != 1)\n"
    "\n"
    "rule valid_values: gate(_, _, _) -> ValidInput() + ValidGate() = 0\n"
    "rule complementary: gate(g, _, _) -> ORVal(g) + NORVal(g) = 1\n"
    "rule or_within_sum: gate(g, _, _) -> ORVal(g) - IngoingSum(g) <= 0\n"
    "rule or_covers_edges: gateInput(g, i, _) -> IngoingVal(g, i) - ORVal(g) <= 0\n"
    "rule edge_copies_source: gateInput(g, i, _) ->"
    " IngoingVal(g, i) - NORVal(i) - InputVal(i) = 0\n"
    "rule output_true: gate(_, _, _) -> NORVal(0) = 1\n";

} // namespace

void validate_circuit(const Circuit& c) {
    if (c.num_gates < 1) fail(Error::Kind::Validate, "a circuit needs at least one gate");
    if (c.num_inputs < 1) fail(Error::Kind::Validate, "a circuit needs at least one input");
    if (c.gates.size() != c.num_gates)
        fail(Error::Kind::Validate, "gate list does not match num_gates");
    std::size_t nodes = c.num_gates + c.num_inputs;
    for (std::size_t g = 0; g < c.num_gates; ++g) {
        if (c.gates[g].sources.empty())
            fail(Error::Kind::Validate, "gate " + std::to_string(g) + " has no ingoing edge");
        for (std::size_t s : c.gates[g].sources)
            if (s <= g || s >= nodes)
                fail(Error::Kind::Validate, "gate " + std::to_string(g) +
                                            " has an invalid source " + std::to_string(s));
    }
}

Circuit gen_circuit(std::size_t num_gates, std::size_t num_inputs, std::uint64_t seed) {
    if (num_gates < 1 || num_inputs < 1)
        fail(Error::Kind::Validate, "gen_circuit needs at least one gate and one input");
    Circuit c;
    c.num_gates = num_gates;
    c.num_inputs = num_inputs;
    c.gates.resize(num_gates);
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> fanin(1, 3);
    for (std::size_t g = 0; g < num_gates; ++g) {
        std::uniform_int_distribution<std::size_t> source(g + 1, num_gates + num_inputs - 1);
        int k = fanin(rng);
        for (int e = 0; e < k; ++e) c.gates[g].sources.push_back(source(rng));
    }
    validate_circuit(c);
    return c;
}

bool brute_force_sat(const Circuit& c) {
    validate_circuit(c);
    if (c.num_inputs > 20)
        fail(Error::Kind::Resource, "brute_force_sat refuses more than 20 inputs");
    std::size_t nodes = c.num_gates + c.num_inputs;
    std::vector<int> val(nodes, 0);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << c.num_inputs); ++mask) {
        for (std::size_t i = 0; i < c.num_inputs; ++i)
            val[c.num_gates + i] = (mask >> i) & 1;
        for (std::size_t g = c.num_gates; g-- > 0;) {
            int any = 0;
            for (std::size_t s : c.gates[g].sources) any |= val[s];
            val[g] = any ? 0 : 1;
        }
        if (val[0] == 1) return true;
    }
    return false;
}

CircuitEncoding encode_circuit(const Circuit& c) {
    validate_circuit(c);
    Schema schema = parse_schema(kSchemaText);
    Instance instance(schema);
    Value minus_one = Value::number(Rational(-1));
    for (std::size_t g = 0; g < c.num_gates; ++g) {
        instance.append_row("gate",
                            {Value::number(Rational(static_cast<long>(g))), minus_one, minus_one});
        for (std::size_t s : c.gates[g].sources)
            instance.append_row("gateInput", {Value::number(Rational(static_cast<long>(g))),
                                              Value::number(Rational(static_cast<long>(s))),
                                              minus_one});
    }
    for (std::size_t i = 0; i < c.num_inputs; ++i)
        instance.append_row("input", {Value::number(Rational(static_cast<long>(c.num_gates + i))),
                                      minus_one});
    CircuitEncoding enc{std::move(instance),
                        parse_constraints(schema, kConstraintsText),
                        kSchemaText, kConstraintsText};
    return enc;
}

void write_circuit_project(const Circuit& c, const std::filesystem::path& dir) {
    CircuitEncoding enc = encode_circuit(c);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) fail(Error::Kind::Load, "cannot create " + dir.string() + ": " + ec.message());
    auto put = [&](const std::filesystem::path& name, const std::string& text) {
        std::ofstream out(dir / name, std::ios::binary);
        if (!out) fail(Error::Kind::Load, "cannot write " + (dir / name).string());
        out << text;
    };
    put("schema.txt", enc.schema_text);
    put("constraints.txt", enc.constraints_text);
    for (const auto& rel : enc.instance.schema().relations)
        put(rel.name + ".csv", print_relation_csv(enc.instance, rel.name));
}

} // namespace numrepair

#pragma once

#include "numrepair/instance.hpp"
#include "numrepair/parser.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace numrepair {

// NOR circuit over node ids: gates occupy 0..num_gates-1 with 0 the output,
// inputs occupy num_gates..num_gates+num_inputs-1. Every source of gate g has
// an id strictly greater than g, which keeps the graph acyclic.
struct Gate {
    std::vector<std::size_t> sources; // duplicates allowed
};

struct Circuit {
    std::size_t num_gates = 0;
    std::size_t num_inputs = 0;
    std::vector<Gate> gates; // gates[g] describes node g

    bool is_input(std::size_t id) const { return id >= num_gates; }
};

void validate_circuit(const Circuit& c);

// Deterministic in the seed; fan-in uniform in {1,2,3}.
Circuit gen_circuit(std::size_t num_gates, std::size_t num_inputs, std::uint64_t seed);

// True iff some input assignment drives the output gate to 1. Enumerates all
// assignments; more than 20 inputs is refused.
bool brute_force_sat(const Circuit& c);

struct CircuitEncoding {
    Instance instance;
    ConstraintSet constraints;
    std::string schema_text;
    std::string constraints_text;
};

// The gate/gateInput/input encoding with every measure cell set to -1. The
// encoded instance violates the constraints by construction; it has a repair
// iff the circuit is satisfiable.
CircuitEncoding encode_circuit(const Circuit& c);

// Writes schema.txt, constraints.txt and one CSV per relation.
void write_circuit_project(const Circuit& c, const std::filesystem::path& dir);

} // namespace numrepair

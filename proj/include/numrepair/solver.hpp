#pragma once

#include "numrepair/linear.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace numrepair {

struct SolverOptions {
    // Scale factor for the internal search box used to bound integer
    // branching. The box is a heuristic device only: infeasibility is
    // reported as such only when no pruning certificate relied on it.
    long box_scale = 2;
    // Optional hard box |x| <= explicit_box added as ordinary rows. These are
    // real constraints and participate in infeasibility certificates.
    std::optional<Rational> explicit_box;
    std::uint64_t max_nodes = 200000;
};

enum class SolveStatus { Feasible, Infeasible, BoundExhausted };

std::string solve_status_text(SolveStatus status);

struct SolveResult {
    SolveStatus status = SolveStatus::BoundExhausted;
    std::map<CellRef, Rational> witness;        // populated when Feasible
    std::vector<std::string> certificate_notes; // rows behind an Infeasible verdict
    std::uint64_t nodes = 0;
};

// Decides satisfiability of the rows over the declared variable domains
// (exact rational arithmetic; integer variables via branch and bound).
SolveResult solve(const LinearSystem& sys, const SolverOptions& options = {});

// Checks that the assignment covers every variable, respects integer domains
// and satisfies every row.
bool verify(const LinearSystem& sys, const std::map<CellRef, Rational>& assignment);

} // namespace numrepair

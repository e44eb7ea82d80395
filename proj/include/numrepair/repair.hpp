#pragma once

#include "numrepair/solver.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace numrepair {

enum class Semantics { Set, Card };

std::string semantics_text(Semantics s);

struct Limits {
    std::size_t max_support_size = 4;
    std::uint64_t branch_cap = 4096;
    SolverOptions solver;
};

enum class Feasibility { Yes, No, Indeterminate };

std::string feasibility_text(Feasibility f);

struct FeasibilityOutcome {
    Feasibility status = Feasibility::Indeterminate;
    UpdateSet witness; // populated when Yes; cells left unchanged are dropped
    std::vector<std::string> notes;
};

// Measure cells that can influence some aggregate used by the constraints,
// either through a summed attribute or through a selection condition. Cells
// outside this pool never belong to a minimal support.
Support candidate_cells(const Instance& instance, const ConstraintSet& cs);

// Decides whether changing only cells inside `support` can make the instance
// consistent. Branches over condition memberships; each branch goes to the
// exact solver.
FeasibilityOutcome feasible(const Instance& instance, const ConstraintSet& cs,
                            const Support& support, const Limits& limits = {});

// Feasibility over the whole candidate pool: does any repair exist at all?
FeasibilityOutcome repair_exists(const Instance& instance, const ConstraintSet& cs,
                                 const Limits& limits = {});

struct SupportFamily {
    bool consistent = false;            // instance satisfied the constraints as-is
    std::optional<std::size_t> kstar;   // smallest feasible support cardinality
    std::vector<Support> sets;          // inclusion-minimal feasible supports
    std::vector<UpdateSet> samples;     // parallel to sets; every cell changed
    bool complete = true;               // false when limits truncated the search
    // True when every listed set is certainly minimal (no undecided smaller
    // support could invalidate it). Size truncation alone keeps this true.
    bool minimality_certain = true;
    std::vector<std::string> notes;
};

// Enumerates supports level by level up to limits.max_support_size. With Card
// semantics the search stops at the first feasible level; with Set semantics
// it continues through the size limit. A consistent instance yields the
// family containing only the empty support.
SupportFamily minimal_supports(const Instance& instance, const ConstraintSet& cs,
                               Semantics semantics, const Limits& limits = {});

struct RepairVerdict {
    bool is_repair = false;             // applies cleanly and removes every violation
    Feasibility minimal = Feasibility::Indeterminate; // under the chosen semantics
    std::vector<std::string> notes;
};

// Classifies a candidate update set. Set-minimality tests every
// one-cell-removed subset; card-minimality searches for a strictly smaller
// feasible support.
RepairVerdict check_repair(const Instance& instance, const ConstraintSet& cs,
                           const UpdateSet& updates, Semantics semantics,
                           const Limits& limits = {});

} // namespace numrepair

#pragma once

#include "numrepair/evaluator.hpp"
#include "numrepair/instance.hpp"
#include "numrepair/normalize.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace numrepair {

using Support = std::set<CellRef>;

enum class RowRel { Le, Lt, Eq };

std::string row_rel_text(RowRel rel);

struct LinRow {
    std::vector<Rational> coeffs; // dense, aligned with LinearSystem::vars
    RowRel rel = RowRel::Le;
    Rational rhs;
    std::string note; // provenance: ground constraint or frozen conjunct
};

struct SystemVar {
    CellRef cell;
    Domain domain = Domain::Real;
    Rational original;
};

struct LinearSystem {
    std::vector<SystemVar> vars;
    std::vector<LinRow> rows;

    std::optional<std::size_t> var_index(const CellRef& cell) const;
};

// K' of Lemma-style bound adjustment: K minus the constant contributions of
// counted tuples (cells outside the support at their stored values).
// `overrides` fixes membership for (term index, tuple) pairs whose condition
// depends on support cells; unlisted tuples count per the original instance.
using MembershipPattern = std::map<std::pair<std::size_t, TupleId>, bool>;

Rational adjusted_constant(const Instance& instance, const ConstraintSet& cs,
                           const GroundConstraint& gc, const Support& support,
                           const MembershipPattern& overrides = {});

struct SparseVec {
    std::map<std::size_t, Rational> entries;

    void add(std::size_t var, const Rational& v);
    bool empty() const { return entries.empty(); }
};

struct SparseRow {
    SparseVec lhs;
    RowRel rel = RowRel::Le;
    Rational rhs;
    std::string note;
};

// The branched family of linear systems for one support: every branch fixes,
// for each (tuple, grounded condition) whose truth depends on support cells,
// which DNF disjunct of the condition (or of its negation) the repaired tuple
// satisfies. Branches are enumerated lazily in a fixed order; construction is
// via encode_support only.
class BranchSet {
public:
    struct Choice {
        bool counted = false;            // tuple satisfies the condition
        std::vector<SparseRow> rows;     // frozen conjuncts of the disjunct
        std::string label;
    };

    struct Unit {
        TupleId tuple;
        std::string function;
        std::vector<Value> args;
        std::vector<Choice> choices;
    };

    struct PendingTerm {
        std::size_t unit = 0;
        SparseVec sym; // the tuple's support-cell contribution if counted
        Rational cst;  // its constant contribution if counted
    };

    struct ARow {
        SparseVec sym;  // contributions of tuples with fixed membership
        Rational cst;
        Rational bound; // K of the desugared ground constraint
        std::vector<PendingTerm> pending;
        std::string note;
    };

    std::vector<SystemVar> vars;
    std::vector<SparseRow> base_rows; // complete rows (no pending terms)
    std::vector<ARow> a_rows;         // rows with membership-dependent terms
    std::vector<Unit> units;

    // Product of per-unit choice counts; 0 when some unit has no viable choice.
    std::uint64_t nominal_branch_count() const;

    struct EnumStats {
        std::uint64_t yielded = 0;
        std::uint64_t pruned_nodes = 0;
        bool stopped_early = false;
    };

    // Depth-first enumeration with interval-based pruning of provably
    // infeasible subtrees. `visit` returns true to stop early. Throws a
    // resource error when more than `branch_cap` branches would be yielded.
    EnumStats for_each_branch(const std::function<bool(const LinearSystem&)>& visit,
                              std::uint64_t branch_cap) const;

    std::vector<LinearSystem> branches(std::uint64_t branch_cap) const;
};

// Requires a desugared (≤-only) constraint set and a support of measure cells.
BranchSet encode_support(const Instance& instance, const ConstraintSet& cs,
                         const Support& support);

} // namespace numrepair

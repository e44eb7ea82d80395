#include "numrepair/repair.hpp"

#include "numrepair/error.hpp"

#include <algorithm>

namespace numrepair {

std::string semantics_text(Semantics s) {
    return s == Semantics::Set ? "set" : "card";
}

std::string feasibility_text(Feasibility f) {
    switch (f) {
        case Feasibility::Yes: return "yes";
        case Feasibility::No: return "no";
        case Feasibility::Indeterminate: return "indeterminate";
    }
    return "?";
}

Support candidate_cells(const Instance& instance, const ConstraintSet& cs) {
    // relation -> attributes that feed some used aggregation function
    std::map<std::string, std::set<std::string>> touched;
    std::set<std::string> used;
    for (const auto& c : cs.constraints)
        for (const auto& t : c.terms) used.insert(t.function);
    for (const auto& fn : cs.functions) {
        if (!used.count(fn.name)) continue;
        auto& attrs = touched[fn.relation];
        for (const auto& [attr, coef] : linear_profile(*fn.body).coefficients)
            if (!coef.is_zero()) attrs.insert(attr);
        std::vector<ConditionPtr> stack{fn.condition};
        while (!stack.empty()) {
            ConditionPtr c = stack.back();
            stack.pop_back();
            if (!c) continue;
            if (c->kind == Condition::Kind::Compare) {
                if (c->lhs.kind == CondOperand::Kind::Attribute) attrs.insert(c->lhs.name);
                if (c->rhs.kind == CondOperand::Kind::Attribute) attrs.insert(c->rhs.name);
            }
            stack.push_back(c->a);
            stack.push_back(c->b);
        }
    }

    Support pool;
    for (const auto& [relation, attrs] : touched) {
        const auto& rel = instance.schema().relation(relation);
        std::size_t count = instance.rows(relation).size();
        for (const auto& attr : attrs) {
            if (!rel.attribute(attr).measure) continue;
            for (std::size_t r = 0; r < count; ++r)
                pool.insert(CellRef{TupleId{relation, r}, attr});
        }
    }
    return pool;
}

namespace {

FeasibilityOutcome feasible_desugared(const Instance& instance, const ConstraintSet& desugared,
                                      const Support& support, const Limits& limits) {
    FeasibilityOutcome out;
    try {
        BranchSet bs = encode_support(instance, desugared, support);
        bool hit_bound = false;
        std::optional<std::map<CellRef, Rational>> witness;
        bs.for_each_branch(
            [&](const LinearSystem& sys) {
                SolveResult r = solve(sys, limits.solver);
                if (r.status == SolveStatus::Feasible) {
                    witness = std::move(r.witness);
                    return true;
                }
                if (r.status == SolveStatus::BoundExhausted) hit_bound = true;
                return false;
            },
            limits.branch_cap);
        if (witness) {
            std::vector<AtomicUpdate> ups;
            for (const auto& [cell, value] : *witness) {
                if (instance.value(cell).num() == value) continue;
                ups.push_back(AtomicUpdate{cell, Value::number(value)});
            }
            out.witness = validate_update_set(instance, std::move(ups));
            out.status = Feasibility::Yes;
        } else if (hit_bound) {
            out.status = Feasibility::Indeterminate;
            out.notes.push_back("solver exhausted its node or box budget on some branch");
        } else {
            out.status = Feasibility::No;
        }
    } catch (const Error& e) {
        if (e.kind() != Error::Kind::Resource) throw;
        out.status = Feasibility::Indeterminate;
        out.notes.push_back(e.what());
    }
    return out;
}

} // namespace

FeasibilityOutcome feasible(const Instance& instance, const ConstraintSet& cs,
                            const Support& support, const Limits& limits) {
    return feasible_desugared(instance, desugar_equalities(cs), support, limits);
}

FeasibilityOutcome repair_exists(const Instance& instance, const ConstraintSet& cs,
                                 const Limits& limits) {
    return feasible_desugared(instance, desugar_equalities(cs),
                              candidate_cells(instance, cs), limits);
}

SupportFamily minimal_supports(const Instance& instance, const ConstraintSet& cs,
                               Semantics semantics, const Limits& limits) {
    SupportFamily family;
    ConstraintSet desugared = desugar_equalities(cs);

    if (check(instance, cs).consistent()) {
        family.consistent = true;
        family.kstar = 0;
        family.sets.push_back(Support{});
        family.samples.push_back(UpdateSet{});
        return family;
    }

    Support pool = candidate_cells(instance, cs);
    std::vector<CellRef> cells(pool.begin(), pool.end());
    std::size_t max_k = std::min(limits.max_support_size, cells.size());

    std::set<Support> feasible_prev; // every feasible support of size k-1
    bool saw_indeterminate = false;

    for (std::size_t k = 1; k <= max_k; ++k) {
        std::set<Support> feasible_cur;

        // All k-subsets of the pool in lexicographic order.
        std::vector<std::size_t> idx(k);
        for (std::size_t i = 0; i < k; ++i) idx[i] = i;
        while (true) {
            Support s;
            for (std::size_t i : idx) s.insert(cells[i]);

            bool derived = false;
            if (k > 1) {
                for (const CellRef& c : s) {
                    Support sub = s;
                    sub.erase(c);
                    if (feasible_prev.count(sub)) { derived = true; break; }
                }
            }
            if (derived) {
                feasible_cur.insert(std::move(s));
            } else {
                FeasibilityOutcome fo = feasible_desugared(instance, desugared, s, limits);
                if (fo.status == Feasibility::Yes) {
                    if (fo.witness.support() != s) {
                        // Only possible when an indeterminate subset was in
                        // fact feasible: the witness certifies that itself.
                        family.complete = false;
                        family.notes.push_back("support {" + [&] {
                            std::string t;
                            for (const CellRef& c : s) t += (t.empty() ? "" : ", ") + c.str();
                            return t;
                        }() + "} is feasible but provably not minimal; dropped");
                    } else {
                        family.sets.push_back(s);
                        family.samples.push_back(std::move(fo.witness));
                    }
                    feasible_cur.insert(std::move(s));
                } else if (fo.status == Feasibility::Indeterminate) {
                    saw_indeterminate = true;
                    for (const auto& note : fo.notes) family.notes.push_back(note);
                }
            }

            // next combination
            std::size_t i = k;
            while (i > 0 && idx[i - 1] == cells.size() - k + (i - 1)) --i;
            if (i == 0) break;
            ++idx[i - 1];
            for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
        }

        if (!family.kstar && !family.sets.empty()) family.kstar = k;
        if (semantics == Semantics::Card && family.kstar) break;
        feasible_prev = std::move(feasible_cur);
    }

    if (saw_indeterminate) {
        family.complete = false;
        family.minimality_certain = false;
        family.notes.push_back("some supports could not be decided within resource limits");
    }
    // A truncated pool matters for Set semantics always, and for Card
    // semantics only when no feasible level was reached.
    bool truncated = cells.size() > limits.max_support_size;
    if (truncated && (semantics == Semantics::Set || !family.kstar)) {
        family.complete = false;
        family.notes.push_back("support search limited to size " +
                               std::to_string(limits.max_support_size) + " of " +
                               std::to_string(cells.size()) + " candidate cells");
    }
    if (family.sets.empty() && family.complete)
        family.notes.push_back("no repair exists: every candidate support is infeasible");
    return family;
}

RepairVerdict check_repair(const Instance& instance, const ConstraintSet& cs,
                           const UpdateSet& updates, Semantics semantics,
                           const Limits& limits) {
    RepairVerdict verdict;
    validate_update_set(instance, updates.updates);
    Instance repaired = apply_update_set(instance, updates);
    ViolationReport report = check(repaired, cs);
    verdict.is_repair = report.consistent();
    if (!verdict.is_repair) {
        verdict.minimal = Feasibility::No;
        verdict.notes.push_back("updates leave " + std::to_string(report.violations.size()) +
                                " ground constraint(s) violated");
        return verdict;
    }

    ConstraintSet desugared = desugar_equalities(cs);
    Support s = updates.support();

    if (s.empty()) {
        verdict.minimal = Feasibility::Yes; // the empty repair of a consistent instance
        return verdict;
    }

    if (check(instance, cs).consistent()) {
        verdict.minimal = Feasibility::No;
        verdict.notes.push_back("instance is already consistent; the empty repair is smaller");
        return verdict;
    }

    if (semantics == Semantics::Set) {
        bool indeterminate = false;
        for (const CellRef& c : s) {
            Support sub = s;
            sub.erase(c);
            FeasibilityOutcome fo = feasible_desugared(instance, desugared, sub, limits);
            if (fo.status == Feasibility::Yes) {
                verdict.minimal = Feasibility::No;
                verdict.notes.push_back("already repairable without touching " + c.str());
                return verdict;
            }
            if (fo.status == Feasibility::Indeterminate) indeterminate = true;
        }
        verdict.minimal = indeterminate ? Feasibility::Indeterminate : Feasibility::Yes;
        if (indeterminate)
            verdict.notes.push_back("minimality undecided within resource limits");
        return verdict;
    }

    // Card semantics: look for any feasible support strictly smaller. A
    // single-cell repair of an inconsistent instance is trivially minimal.
    if (s.size() == 1) {
        verdict.minimal = Feasibility::Yes;
        return verdict;
    }
    Limits narrowed = limits;
    narrowed.max_support_size = s.size() - 1;
    SupportFamily smaller = minimal_supports(instance, cs, Semantics::Card, narrowed);
    if (smaller.kstar) {
        verdict.minimal = Feasibility::No;
        verdict.notes.push_back("a repair exists changing only " +
                                std::to_string(*smaller.kstar) + " cell(s)");
    } else if (!smaller.complete) {
        verdict.minimal = Feasibility::Indeterminate;
        verdict.notes.push_back("minimality undecided within resource limits");
    } else {
        verdict.minimal = Feasibility::Yes;
    }
    return verdict;
}

} // namespace numrepair

#include "numrepair/cqa.hpp"

#include "numrepair/error.hpp"

#include <algorithm>

namespace numrepair {

std::string cqa_answer_text(CqaAnswer a) {
    switch (a) {
        case CqaAnswer::True: return "true";
        case CqaAnswer::False: return "false";
        case CqaAnswer::Indeterminate: return "indeterminate";
    }
    return "?";
}

void validate_query(const Schema& schema, const GroundAtom& query) {
    const RelationSchema* rel = schema.find_relation(query.relation);
    if (!rel) fail(Error::Kind::Validate, "unknown relation " + query.relation + " in query");
    if (query.values.size() != rel->attributes.size())
        fail(Error::Kind::Validate,
             "query for " + query.relation + " carries " + std::to_string(query.values.size()) +
             " values, schema has " + std::to_string(rel->attributes.size()) + " attributes");
    for (std::size_t i = 0; i < query.values.size(); ++i)
        if (!query.values[i].conforms(rel->attributes[i].domain))
            fail(Error::Kind::Validate, "query value " + query.values[i].display() +
                                        " does not fit attribute " + rel->attributes[i].name);
}

std::vector<TupleId> match_tuples(const Instance& instance, const GroundAtom& query) {
    validate_query(instance.schema(), query);
    const RelationSchema& rel = instance.schema().relation(query.relation);
    std::vector<TupleId> out;
    const auto& rows = instance.rows(query.relation);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        bool ok = true;
        for (std::size_t i = 0; i < rel.attributes.size(); ++i) {
            if (rel.attributes[i].measure) continue;
            if (rows[r][i] != query.values[i]) { ok = false; break; }
        }
        if (ok) out.push_back(TupleId{query.relation, r});
    }
    return out;
}

namespace {

bool query_holds(const Instance& instance, const GroundAtom& query) {
    const RelationSchema& rel = instance.schema().relation(query.relation);
    for (const Row& row : instance.rows(query.relation)) {
        bool equal = true;
        for (std::size_t i = 0; i < rel.attributes.size(); ++i)
            if (row[i] != query.values[i]) { equal = false; break; }
        if (equal) return true;
    }
    return false;
}

struct FalsifyOption {
    std::size_t var = 0;
    bool below = false; // var < bound when true, var > bound otherwise
    Rational bound;
};

enum class SupportOutcome { Falsified, NotFalsifiable, Indeterminate };

struct SupportFalsification {
    SupportOutcome outcome = SupportOutcome::Indeterminate;
    std::optional<std::map<CellRef, Rational>> solution;
    std::vector<std::string> notes;
};

// Decides whether some solution over `support` avoids the query: every
// matched tuple must differ from q on at least one measure attribute.
SupportFalsification falsify_over_support(const Instance& instance,
                                          const ConstraintSet& desugared,
                                          const GroundAtom& query,
                                          const std::vector<TupleId>& matched,
                                          const Support& support, const Limits& limits) {
    SupportFalsification out;
    const RelationSchema& rel = instance.schema().relation(query.relation);

    BranchSet bs = encode_support(instance, desugared, support);

    // Per tuple, the ways it can end up different from q. Tuples that already
    // differ on a frozen cell impose nothing; a tuple with no way to differ
    // forces q over this support.
    std::vector<std::vector<FalsifyOption>> per_tuple;
    for (const TupleId& t : matched) {
        bool frozen_differs = false;
        std::vector<FalsifyOption> options;
        for (std::size_t i = 0; i < rel.attributes.size(); ++i) {
            if (!rel.attributes[i].measure) continue;
            CellRef cell{t, rel.attributes[i].name};
            const Rational& target = query.values[i].num();
            if (auto var = [&]() -> std::optional<std::size_t> {
                    for (std::size_t v = 0; v < bs.vars.size(); ++v)
                        if (bs.vars[v].cell == cell) return v;
                    return std::nullopt;
                }()) {
                options.push_back(FalsifyOption{*var, true, target});
                options.push_back(FalsifyOption{*var, false, target});
            } else if (instance.value(cell).num() != target) {
                frozen_differs = true;
                break;
            }
        }
        if (frozen_differs) continue;
        if (options.empty()) {
            out.outcome = SupportOutcome::NotFalsifiable;
            out.notes.push_back("a matched tuple of " + t.relation + " is forced equal to the query");
            return out;
        }
        per_tuple.push_back(std::move(options));
    }

    bool hit_bound = false;
    std::optional<std::map<CellRef, Rational>> found;
    try {
        bs.for_each_branch(
            [&](const LinearSystem& sys) {
                std::vector<std::size_t> pick(per_tuple.size(), 0);
                while (true) {
                    LinearSystem augmented = sys;
                    for (std::size_t i = 0; i < per_tuple.size(); ++i) {
                        const FalsifyOption& opt = per_tuple[i][pick[i]];
                        LinRow row;
                        row.coeffs.assign(sys.vars.size(), Rational(0));
                        row.coeffs[opt.var] = opt.below ? Rational(1) : Rational(-1);
                        row.rel = RowRel::Lt;
                        row.rhs = opt.below ? opt.bound : -opt.bound;
                        row.note = sys.vars[opt.var].cell.str() + (opt.below ? " < " : " > ") +
                                   opt.bound.str() + " (avoids query)";
                        augmented.rows.push_back(std::move(row));
                    }
                    SolveResult r = solve(augmented, limits.solver);
                    if (r.status == SolveStatus::Feasible) {
                        found = std::move(r.witness);
                        return true;
                    }
                    if (r.status == SolveStatus::BoundExhausted) hit_bound = true;

                    std::size_t i = 0;
                    while (i < pick.size() && ++pick[i] == per_tuple[i].size()) pick[i++] = 0;
                    if (i == pick.size()) break;
                }
                return false;
            },
            limits.branch_cap);
    } catch (const Error& e) {
        if (e.kind() != Error::Kind::Resource) throw;
        out.outcome = SupportOutcome::Indeterminate;
        out.notes.push_back(e.what());
        return out;
    }

    if (found) {
        out.outcome = SupportOutcome::Falsified;
        out.solution = std::move(found);
    } else if (hit_bound) {
        out.outcome = SupportOutcome::Indeterminate;
        out.notes.push_back("solver exhausted its budget while probing a falsification");
    } else {
        out.outcome = SupportOutcome::NotFalsifiable;
    }
    return out;
}

UpdateSet updates_from_solution(const Instance& instance,
                                const std::map<CellRef, Rational>& solution) {
    std::vector<AtomicUpdate> ups;
    for (const auto& [cell, value] : solution) {
        if (instance.value(cell).num() == value) continue;
        ups.push_back(AtomicUpdate{cell, Value::number(value)});
    }
    return validate_update_set(instance, std::move(ups));
}

} // namespace

CqaVerdict cqa(const Instance& instance, const ConstraintSet& cs, const GroundAtom& query,
               Semantics semantics, const Limits& limits) {
    CqaVerdict verdict;
    verdict.semantics = semantics;
    verdict.limits = limits;
    validate_query(instance.schema(), query);
    verdict.holds_now = query_holds(instance, query);

    std::vector<TupleId> matched = match_tuples(instance, query);
    SupportFamily family = minimal_supports(instance, cs, semantics, limits);
    for (const auto& note : family.notes) verdict.notes.push_back(note);

    if (family.consistent) {
        verdict.answer = verdict.holds_now ? CqaAnswer::True : CqaAnswer::False;
        if (!verdict.holds_now) verdict.witness = UpdateSet{}; // the empty repair
        return verdict;
    }

    if (family.sets.empty()) {
        if (family.complete) {
            verdict.answer = CqaAnswer::False;
            verdict.no_repair = true;
            verdict.notes.push_back("no repair exists, so no repair satisfies the query");
        } else {
            verdict.answer = CqaAnswer::Indeterminate;
        }
        return verdict;
    }

    ConstraintSet desugared = desugar_equalities(cs);
    bool any_indeterminate = false;
    bool falsified_uncertain = false;
    std::optional<UpdateSet> falsifier;

    for (std::size_t i = 0; i < family.sets.size() && !falsifier; ++i) {
        SupportFalsification f = falsify_over_support(instance, desugared, query, matched,
                                                      family.sets[i], limits);
        for (const auto& note : f.notes) verdict.notes.push_back(note);
        switch (f.outcome) {
            case SupportOutcome::Falsified:
                if (!family.minimality_certain) {
                    falsified_uncertain = true;
                    break;
                }
                falsifier = updates_from_solution(instance, *f.solution);
                if (falsifier->support() != family.sets[i])
                    fail(Error::Kind::Internal,
                         "falsifying solution does not use the whole minimal support");
                break;
            case SupportOutcome::Indeterminate:
                any_indeterminate = true;
                break;
            case SupportOutcome::NotFalsifiable:
                break;
        }
    }

    if (falsifier) {
        Instance repaired = apply_update_set(instance, *falsifier);
        if (!check(repaired, cs).consistent() || query_holds(repaired, query))
            fail(Error::Kind::Internal, "falsifying witness failed verification");
        verdict.answer = CqaAnswer::False;
        verdict.witness = std::move(falsifier);
        return verdict;
    }
    if (falsified_uncertain) {
        verdict.answer = CqaAnswer::Indeterminate;
        verdict.notes.push_back("a falsifying solution exists but its minimality is undecided");
        return verdict;
    }
    if (any_indeterminate || !family.complete) {
        verdict.answer = CqaAnswer::Indeterminate;
        return verdict;
    }
    verdict.answer = CqaAnswer::True;
    return verdict;
}

} // namespace numrepair

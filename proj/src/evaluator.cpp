#include "numrepair/evaluator.hpp"

#include "numrepair/error.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace numrepair {

namespace {

// Backtracking conjunctive-query matcher over the body atoms.
struct Matcher {
    const Instance& instance;
    const AggregateConstraint& constraint;
    std::map<std::string, Value> binding;

    template <typename F>
    void run(std::size_t atom_idx, F&& emit) {
        if (atom_idx == constraint.body.size()) {
            emit(binding);
            return;
        }
        const BodyAtom& atom = constraint.body[atom_idx];
        for (const Row& row : instance.rows(atom.relation)) {
            std::vector<std::string> bound_here;
            bool ok = true;
            for (std::size_t i = 0; i < atom.terms.size() && ok; ++i) {
                const AtomTerm& term = atom.terms[i];
                switch (term.kind) {
                    case AtomTerm::Kind::Wildcard:
                        break;
                    case AtomTerm::Kind::Literal:
                        ok = row[i] == term.literal;
                        break;
                    case AtomTerm::Kind::Variable: {
                        auto it = binding.find(term.var);
                        if (it == binding.end()) {
                            binding.emplace(term.var, row[i]);
                            bound_here.push_back(term.var);
                        } else {
                            ok = it->second == row[i];
                        }
                        break;
                    }
                }
            }
            if (ok) run(atom_idx + 1, emit);
            for (const auto& v : bound_here) binding.erase(v);
        }
    }
};

std::vector<std::string> aggregate_variables(const AggregateConstraint& c) {
    std::set<std::string> vars;
    for (const auto& t : c.terms)
        for (const auto& a : t.args)
            if (a.kind == AggArg::Kind::Variable) vars.insert(a.var);
    return {vars.begin(), vars.end()};
}

} // namespace

std::vector<GroundConstraint> ground_constraint(const Instance& instance,
                                                const ConstraintSet& cs,
                                                const AggregateConstraint& constraint) {
    (void)cs;
    std::vector<std::string> agg_vars = aggregate_variables(constraint);

    std::map<std::vector<Value>, bool> seen;
    Matcher m{instance, constraint, {}};
    m.run(0, [&](const std::map<std::string, Value>& binding) {
        std::vector<Value> key;
        key.reserve(agg_vars.size());
        for (const auto& v : agg_vars) key.push_back(binding.at(v));
        seen.emplace(std::move(key), true);
    });

    std::vector<GroundConstraint> out;
    out.reserve(seen.size());
    for (const auto& [values, _] : seen) {
        GroundConstraint gc;
        gc.constraint = constraint.name;
        gc.source = constraint.source;
        gc.cmp = constraint.cmp;
        gc.bound = constraint.bound;
        for (std::size_t i = 0; i < agg_vars.size(); ++i)
            gc.theta.emplace_back(agg_vars[i], values[i]);
        std::map<std::string, Value> theta(gc.theta.begin(), gc.theta.end());
        for (const auto& t : constraint.terms) {
            GroundAggTerm gt;
            gt.coefficient = t.coefficient;
            gt.function = t.function;
            for (const auto& a : t.args)
                gt.args.push_back(a.kind == AggArg::Kind::Variable ? theta.at(a.var)
                                                                   : a.literal);
            gc.terms.push_back(std::move(gt));
        }
        out.push_back(std::move(gc));
    }
    return out;
}

namespace {

ConditionPtr substitute_params(const ConditionPtr& cond,
                               const std::map<std::string, Value>& params) {
    if (!cond) return cond_true();
    switch (cond->kind) {
        case Condition::Kind::True:
            return cond;
        case Condition::Kind::Compare: {
            auto subst = [&](const CondOperand& o) {
                if (o.kind != CondOperand::Kind::Parameter) return o;
                CondOperand r;
                r.kind = CondOperand::Kind::Constant;
                r.constant = params.at(o.name);
                return r;
            };
            return cond_compare(subst(cond->lhs), cond->op, subst(cond->rhs));
        }
        case Condition::Kind::Not:
            return cond_not(substitute_params(cond->a, params));
        case Condition::Kind::And:
            return cond_and(substitute_params(cond->a, params),
                            substitute_params(cond->b, params));
        case Condition::Kind::Or:
            return cond_or(substitute_params(cond->a, params),
                           substitute_params(cond->b, params));
    }
    fail(Error::Kind::Internal, "bad condition node");
}

} // namespace

ConditionPtr ground_condition(const AggregationFunction& fn, std::span<const Value> args) {
    if (args.size() != fn.params.size())
        fail(Error::Kind::Validate,
             fn.name + " takes " + std::to_string(fn.params.size()) + " arguments, got " +
             std::to_string(args.size()));
    using PT = AggregationFunction::ParamType;
    for (std::size_t i = 0; i < args.size(); ++i) {
        PT want = fn.param_types[i];
        if (want == PT::Number && !args[i].is_number())
            fail(Error::Kind::Validate, fn.name + ": argument " + std::to_string(i + 1) +
                 " must be numeric, got " + args[i].display());
        if (want == PT::String && !args[i].is_string())
            fail(Error::Kind::Validate, fn.name + ": argument " + std::to_string(i + 1) +
                 " must be a string, got " + args[i].display());
    }
    std::map<std::string, Value> params;
    for (std::size_t i = 0; i < args.size(); ++i) params.emplace(fn.params[i], args[i]);
    return substitute_params(fn.condition, params);
}

bool eval_ground_condition(const Condition& cond, const RelationSchema& rel, const Row& row) {
    switch (cond.kind) {
        case Condition::Kind::True:
            return true;
        case Condition::Kind::Compare: {
            auto value_of = [&](const CondOperand& o) -> Value {
                switch (o.kind) {
                    case CondOperand::Kind::Constant:
                        return o.constant;
                    case CondOperand::Kind::Attribute: {
                        auto idx = rel.attribute_index(o.name);
                        if (!idx) fail(Error::Kind::Internal,
                                       "unresolved attribute " + o.name + " in condition");
                        return row[*idx];
                    }
                    case CondOperand::Kind::Parameter:
                        fail(Error::Kind::Internal,
                             "unsubstituted parameter " + o.name + " in condition");
                }
                fail(Error::Kind::Internal, "bad operand");
            };
            return eval_cmp(cond.op, value_of(cond.lhs), value_of(cond.rhs));
        }
        case Condition::Kind::Not:
            return !eval_ground_condition(*cond.a, rel, row);
        case Condition::Kind::And:
            return eval_ground_condition(*cond.a, rel, row) &&
                   eval_ground_condition(*cond.b, rel, row);
        case Condition::Kind::Or:
            return eval_ground_condition(*cond.a, rel, row) ||
                   eval_ground_condition(*cond.b, rel, row);
    }
    fail(Error::Kind::Internal, "bad condition node");
}

Rational eval_aggregation(const Instance& instance, const AggregationFunction& fn,
                          std::span<const Value> args) {
    ConditionPtr cond = ground_condition(fn, args);
    const auto& rel = instance.schema().relation(fn.relation);
    LinearProfile profile = linear_profile(*fn.body);

    Rational total(0);
    for (const Row& row : instance.rows(fn.relation)) {
        if (!eval_ground_condition(*cond, rel, row)) continue;
        Rational v = profile.constant;
        for (const auto& [attr, coef] : profile.coefficients) {
            auto idx = rel.attribute_index(attr);
            v += coef * row[*idx].num();
        }
        total += v;
    }
    return total;
}

Rational eval_ground_lhs(const Instance& instance, const ConstraintSet& cs,
                         const GroundConstraint& gc) {
    Rational lhs(0);
    for (const auto& t : gc.terms)
        lhs += t.coefficient * eval_aggregation(instance, cs.function(t.function), t.args);
    return lhs;
}

bool comparator_holds(Comparator cmp, const Rational& lhs, const Rational& bound) {
    switch (cmp) {
        case Comparator::Le: return lhs <= bound;
        case Comparator::Ge: return lhs >= bound;
        case Comparator::Eq: return lhs == bound;
    }
    return false;
}

ViolationReport check(const Instance& instance, const ConstraintSet& cs) {
    ViolationReport report;
    for (const auto& constraint : cs.constraints) {
        for (auto& gc : ground_constraint(instance, cs, constraint)) {
            ++report.checked;
            Rational lhs = eval_ground_lhs(instance, cs, gc);
            if (!comparator_holds(gc.cmp, lhs, gc.bound))
                report.violations.push_back(Violation{std::move(gc), std::move(lhs)});
        }
    }
    std::stable_sort(report.violations.begin(), report.violations.end(),
                     [](const Violation& a, const Violation& b) {
                         if (a.ground.constraint != b.ground.constraint)
                             return a.ground.constraint < b.ground.constraint;
                         auto va = a.ground.theta, vb = b.ground.theta;
                         return va < vb;
                     });
    return report;
}

} // namespace numrepair

#include "numrepair/normalize.hpp"

#include "numrepair/error.hpp"

namespace numrepair {

namespace {

Dnf dnf_of(const Condition& c, bool negated) {
    switch (c.kind) {
        case Condition::Kind::True:
            return negated ? Dnf{} : Dnf{{}};
        case Condition::Kind::Compare: {
            ComparisonAtom atom{c.lhs, negated ? negate_op(c.op) : c.op, c.rhs};
            return Dnf{{std::move(atom)}};
        }
        case Condition::Kind::Not:
            return dnf_of(*c.a, !negated);
        case Condition::Kind::And:
        case Condition::Kind::Or: {
            bool conjunction = (c.kind == Condition::Kind::And) != negated;
            Dnf a = dnf_of(*c.a, negated);
            Dnf b = dnf_of(*c.b, negated);
            if (!conjunction) {
                a.insert(a.end(), std::make_move_iterator(b.begin()),
                         std::make_move_iterator(b.end()));
                return a;
            }
            Dnf out;
            out.reserve(a.size() * b.size());
            for (const auto& ca : a)
                for (const auto& cb : b) {
                    std::vector<ComparisonAtom> merged = ca;
                    merged.insert(merged.end(), cb.begin(), cb.end());
                    out.push_back(std::move(merged));
                }
            return out;
        }
    }
    fail(Error::Kind::Internal, "bad condition node");
}

} // namespace

Dnf normalize_condition_dnf(const ConditionPtr& cond) {
    if (!cond) return Dnf{{}};
    return dnf_of(*cond, false);
}

ConstraintSet desugar_equalities(const ConstraintSet& cs) {
    ConstraintSet out;
    out.functions = cs.functions;
    for (const auto& c : cs.constraints) {
        auto negate_terms = [&](AggregateConstraint& n) {
            for (auto& t : n.terms) t.coefficient = -t.coefficient;
            n.bound = -n.bound;
        };
        switch (c.cmp) {
            case Comparator::Le:
                out.constraints.push_back(c);
                break;
            case Comparator::Ge: {
                AggregateConstraint n = c;
                n.cmp = Comparator::Le;
                negate_terms(n);
                out.constraints.push_back(std::move(n));
                break;
            }
            case Comparator::Eq: {
                AggregateConstraint le = c;
                le.cmp = Comparator::Le;
                le.name = c.name + ":le";
                out.constraints.push_back(std::move(le));

                AggregateConstraint ge = c;
                ge.cmp = Comparator::Le;
                ge.name = c.name + ":ge";
                negate_terms(ge);
                out.constraints.push_back(std::move(ge));
                break;
            }
        }
    }
    return out;
}

} // namespace numrepair

#include "numrepair/linear.hpp"

#include "numrepair/error.hpp"

#include <algorithm>
#include <sstream>

namespace numrepair {

std::string row_rel_text(RowRel rel) {
    switch (rel) {
        case RowRel::Le: return "<=";
        case RowRel::Lt: return "<";
        case RowRel::Eq: return "=";
    }
    return "?";
}

std::optional<std::size_t> LinearSystem::var_index(const CellRef& cell) const {
    for (std::size_t i = 0; i < vars.size(); ++i)
        if (vars[i].cell == cell) return i;
    return std::nullopt;
}

void SparseVec::add(std::size_t var, const Rational& v) {
    if (v.is_zero()) return;
    auto it = entries.find(var);
    if (it == entries.end()) {
        entries.emplace(var, v);
        return;
    }
    it->second += v;
    if (it->second.is_zero()) entries.erase(it);
}

namespace {

// ---------------------------------------------------------------------------
// Interval reasoning shared by choice filtering and branch pruning. Bounds are
// outer approximations, so an empty interval proves infeasibility while a
// non-empty one proves nothing.

struct Bound {
    bool present = false;
    Rational value;
    bool strict = false;
};

struct Interval {
    Bound lo, hi;

    bool empty() const {
        if (!lo.present || !hi.present) return false;
        if (lo.value > hi.value) return true;
        return lo.value == hi.value && (lo.strict || hi.strict);
    }
};

void integerize(Bound& b, bool is_lower) {
    if (!b.present) return;
    if (b.value.is_integer()) {
        if (b.strict) {
            b.value += is_lower ? Rational(1) : Rational(-1);
            b.strict = false;
        }
    } else {
        b.value = is_lower ? b.value.ceil() : b.value.floor();
        b.strict = false;
    }
}

bool improve_lower(Bound& dst, const Rational& v, bool strict) {
    if (!dst.present || v > dst.value || (v == dst.value && strict && !dst.strict)) {
        dst = Bound{true, v, strict};
        return true;
    }
    return false;
}

bool improve_upper(Bound& dst, const Rational& v, bool strict) {
    if (!dst.present || v < dst.value || (v == dst.value && strict && !dst.strict)) {
        dst = Bound{true, v, strict};
        return true;
    }
    return false;
}

struct CRow {
    const SparseVec* lhs;
    RowRel rel;
    Rational rhs;
};

// Infimum of Σ coef·x over the intervals; second = whether it is attained.
std::optional<std::pair<Rational, bool>> sparse_min(const SparseVec& v,
                                                    const std::vector<Interval>& iv) {
    Rational total(0);
    bool attained = true;
    for (const auto& [var, coef] : v.entries) {
        const Bound& b = coef.sign() > 0 ? iv[var].lo : iv[var].hi;
        if (!b.present) return std::nullopt;
        total += coef * b.value;
        attained &= !b.strict;
    }
    return std::make_pair(std::move(total), attained);
}

// One directional pass of Σ sign·coef·x ≤ sign·rhs over the row.
bool tighten_le(std::vector<Interval>& iv, const std::vector<SystemVar>& vars,
                const SparseVec& lhs, int sign, const Rational& rhs, bool strict,
                bool& changed) {
    for (const auto& [target, raw_coef] : lhs.entries) {
        Rational a = sign > 0 ? raw_coef : -raw_coef;
        Rational rest(0);
        bool rest_strict = false;
        bool bounded = true;
        for (const auto& [j, raw_cj] : lhs.entries) {
            if (j == target) continue;
            Rational cj = sign > 0 ? raw_cj : -raw_cj;
            const Bound& b = cj.sign() > 0 ? iv[j].lo : iv[j].hi;
            if (!b.present) { bounded = false; break; }
            rest += cj * b.value;
            rest_strict |= b.strict;
        }
        if (!bounded) continue;
        Rational budget = (sign > 0 ? rhs : -rhs) - rest;
        Rational bnd = budget / a;
        bool s = strict || rest_strict;
        bool improved;
        if (a.sign() > 0) {
            Bound nb{true, bnd, s};
            if (vars[target].domain == Domain::Integer) integerize(nb, false);
            improved = improve_upper(iv[target].hi, nb.value, nb.strict);
        } else {
            Bound nb{true, bnd, s};
            if (vars[target].domain == Domain::Integer) integerize(nb, true);
            improved = improve_lower(iv[target].lo, nb.value, nb.strict);
        }
        changed |= improved;
        if (iv[target].empty()) return false;
    }
    return true;
}

bool constant_row_holds(RowRel rel, const Rational& rhs) {
    switch (rel) {
        case RowRel::Le: return Rational(0) <= rhs;
        case RowRel::Lt: return Rational(0) < rhs;
        case RowRel::Eq: return rhs.is_zero();
    }
    return false;
}

// Bound-consistency propagation; returns false on proven infeasibility.
bool propagate(std::vector<Interval>& iv, const std::vector<CRow>& rows,
               const std::vector<SystemVar>& vars) {
    for (const CRow& r : rows)
        if (r.lhs->empty() && !constant_row_holds(r.rel, r.rhs)) return false;

    std::size_t max_rounds = 3 + 2 * vars.size();
    for (std::size_t round = 0; round < max_rounds; ++round) {
        bool changed = false;
        for (const CRow& r : rows) {
            if (r.lhs->empty()) continue;
            switch (r.rel) {
                case RowRel::Le:
                    if (!tighten_le(iv, vars, *r.lhs, +1, r.rhs, false, changed)) return false;
                    break;
                case RowRel::Lt:
                    if (!tighten_le(iv, vars, *r.lhs, +1, r.rhs, true, changed)) return false;
                    break;
                case RowRel::Eq:
                    if (!tighten_le(iv, vars, *r.lhs, +1, r.rhs, false, changed)) return false;
                    if (!tighten_le(iv, vars, *r.lhs, -1, r.rhs, false, changed)) return false;
                    break;
            }
        }
        if (!changed) break;
    }
    return true;
}

std::string args_text(const std::vector<Value>& args) {
    std::string s;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (i) s += ",";
        s += args[i].display();
    }
    return s;
}

std::string theta_text(const GroundConstraint& gc) {
    std::string s;
    for (std::size_t i = 0; i < gc.theta.size(); ++i) {
        if (i) s += ", ";
        s += gc.theta[i].first + "=" + gc.theta[i].second.display();
    }
    return s.empty() ? "{}" : "{" + s + "}";
}

std::string sparse_text(const SparseVec& v, const std::vector<SystemVar>& vars) {
    if (v.empty()) return "0";
    std::string s;
    bool first = true;
    for (const auto& [var, coef] : v.entries) {
        if (!first) s += coef.sign() < 0 ? " - " : " + ";
        else if (coef.sign() < 0) s += "-";
        Rational a = coef.abs();
        if (a != Rational(1)) s += a.str() + "*";
        s += vars[var].cell.str();
        first = false;
    }
    return s;
}

// ---------------------------------------------------------------------------
// Support encoding.

struct Operand {
    std::optional<std::size_t> var;
    Value constant;
};

class Encoder {
public:
    Encoder(const Instance& instance, const ConstraintSet& cs, const Support& support)
        : instance_(instance), cs_(cs) {
        for (const CellRef& cell : support) {
            const auto& rel = instance.schema().relation(cell.tuple.relation);
            const auto& attr = rel.attribute(cell.attribute);
            if (!attr.measure)
                fail(Error::Kind::Validate, cell.str() + " is not a measure attribute");
            SystemVar v;
            v.cell = cell;
            v.domain = attr.domain;
            v.original = instance.value(cell).num();
            var_of_.emplace(cell, bs_.vars.size());
            bs_.vars.push_back(std::move(v));
        }
    }

    BranchSet run() {
        for (const auto& constraint : cs_.constraints) {
            if (constraint.cmp != Comparator::Le)
                fail(Error::Kind::Internal,
                     "encode_support requires a desugared (<=-only) constraint set");
            for (const auto& gc : ground_constraint(instance_, cs_, constraint))
                encode_ground(gc);
        }
        finish();
        return std::move(bs_);
    }

private:
    struct TermContribution {
        SparseVec sym;
        Rational cst;

        bool is_zero() const { return sym.empty() && cst.is_zero(); }
    };

    void encode_ground(const GroundConstraint& gc) {
        BranchSet::ARow row;
        row.bound = gc.bound;
        row.note = gc.constraint + " @ " + theta_text(gc);

        for (const auto& term : gc.terms) {
            const auto& fn = cs_.function(term.function);
            const auto& rel = instance_.schema().relation(fn.relation);
            ConditionPtr cond = ground_condition(fn, term.args);
            LinearProfile profile = linear_profile(*fn.body);
            std::vector<std::string> cond_attrs = condition_attributes(*cond);

            const auto& rows = instance_.rows(fn.relation);
            for (std::size_t r = 0; r < rows.size(); ++r) {
                TupleId tid{fn.relation, r};
                TermContribution contrib =
                    contribution(rel, rows[r], tid, profile, term.coefficient);

                bool depends = false;
                for (const auto& attr : cond_attrs)
                    if (var_of_.count(CellRef{tid, attr})) { depends = true; break; }

                if (!depends) {
                    if (eval_ground_condition(*cond, rel, rows[r])) {
                        for (const auto& [v, c] : contrib.sym.entries) row.sym.add(v, c);
                        row.cst += contrib.cst;
                    }
                    continue;
                }
                if (contrib.is_zero()) continue;

                std::size_t unit = unit_for(tid, fn, term.args, *cond, rel, rows[r]);
                BranchSet::PendingTerm p;
                p.unit = unit;
                p.sym = std::move(contrib.sym);
                p.cst = std::move(contrib.cst);
                row.pending.push_back(std::move(p));
            }
        }

        if (row.pending.empty()) {
            SparseRow base;
            base.lhs = std::move(row.sym);
            base.rel = RowRel::Le;
            base.rhs = row.bound - row.cst;
            base.note = row.note;
            bs_.base_rows.push_back(std::move(base));
        } else {
            bs_.a_rows.push_back(std::move(row));
        }
    }

    TermContribution contribution(const RelationSchema& rel, const Row& row, const TupleId& tid,
                                  const LinearProfile& profile, const Rational& ci) {
        TermContribution c;
        c.cst = ci * profile.constant;
        for (const auto& [attr, coef] : profile.coefficients) {
            Rational scaled = ci * coef;
            auto it = var_of_.find(CellRef{tid, attr});
            if (it != var_of_.end()) {
                c.sym.add(it->second, scaled);
            } else {
                auto idx = rel.attribute_index(attr);
                c.cst += scaled * row[*idx].num();
            }
        }
        return c;
    }

    static std::vector<std::string> condition_attributes(const Condition& cond) {
        std::set<std::string> attrs;
        collect_attrs(cond, attrs);
        return {attrs.begin(), attrs.end()};
    }

    static void collect_attrs(const Condition& c, std::set<std::string>& out) {
        switch (c.kind) {
            case Condition::Kind::True:
                return;
            case Condition::Kind::Compare:
                if (c.lhs.kind == CondOperand::Kind::Attribute) out.insert(c.lhs.name);
                if (c.rhs.kind == CondOperand::Kind::Attribute) out.insert(c.rhs.name);
                return;
            case Condition::Kind::Not:
                collect_attrs(*c.a, out);
                return;
            case Condition::Kind::And:
            case Condition::Kind::Or:
                collect_attrs(*c.a, out);
                collect_attrs(*c.b, out);
                return;
        }
    }

    std::size_t unit_for(const TupleId& tid, const AggregationFunction& fn,
                         const std::vector<Value>& args, const Condition& cond,
                         const RelationSchema& rel, const Row& row) {
        UnitKey key{tid, fn.name, args};
        auto it = unit_of_.find(key);
        if (it != unit_of_.end()) return it->second;

        BranchSet::Unit unit;
        unit.tuple = tid;
        unit.function = fn.name;
        unit.args = args;
        build_choices(unit, cond, rel, row, tid);
        std::size_t idx = bs_.units.size();
        bs_.units.push_back(std::move(unit));
        unit_of_.emplace(std::move(key), idx);
        return idx;
    }

    void build_choices(BranchSet::Unit& unit, const Condition& cond, const RelationSchema& rel,
                       const Row& row, const TupleId& tid) {
        auto counted_dnf = normalize_condition_dnf(
            std::make_shared<Condition>(cond));
        auto uncounted_dnf = normalize_condition_dnf(
            cond_not(std::make_shared<Condition>(cond)));

        auto expand = [&](const std::vector<ComparisonAtom>& conj, bool counted,
                          std::size_t alt) {
            std::vector<std::vector<SparseRow>> protos(1);
            for (const ComparisonAtom& atom : conj) {
                Operand l = resolve(atom.lhs, rel, row, tid);
                Operand r = resolve(atom.rhs, rel, row, tid);
                if (!l.var && !r.var) {
                    if (eval_cmp(atom.op, l.constant, r.constant)) continue;
                    return; // conjunct false under frozen values: dead disjunct
                }
                if (!append_comparison(protos, l, atom.op, r)) return;
            }
            for (auto& proto : protos) {
                if (!locally_viable(proto)) continue;
                BranchSet::Choice choice;
                choice.counted = counted;
                choice.rows = std::move(proto);
                choice.label = unit.function + "(" + args_text(unit.args) + ") " +
                               (counted ? "in" : "out") + " alt" + std::to_string(alt) +
                               " for " + unit.tuple.relation + "[" +
                               std::to_string(unit.tuple.row) + "]";
                unit.choices.push_back(std::move(choice));
            }
        };

        for (std::size_t d = 0; d < counted_dnf.size(); ++d) expand(counted_dnf[d], true, d);
        for (std::size_t d = 0; d < uncounted_dnf.size(); ++d) expand(uncounted_dnf[d], false, d);
    }

    Operand resolve(const CondOperand& o, const RelationSchema& rel, const Row& row,
                    const TupleId& tid) {
        Operand out;
        switch (o.kind) {
            case CondOperand::Kind::Constant:
                out.constant = o.constant;
                return out;
            case CondOperand::Kind::Attribute: {
                auto it = var_of_.find(CellRef{tid, o.name});
                if (it != var_of_.end()) out.var = it->second;
                else out.constant = row[*rel.attribute_index(o.name)];
                return out;
            }
            case CondOperand::Kind::Parameter:
                fail(Error::Kind::Internal, "unsubstituted parameter " + o.name);
        }
        fail(Error::Kind::Internal, "bad operand");
    }

    // Emits the comparison into every proto, forking on ≠. Returns false when
    // the comparison is unsatisfiable at the type level.
    bool append_comparison(std::vector<std::vector<SparseRow>>& protos, const Operand& l,
                           CmpOp op, const Operand& r) {
        SparseVec lhs;
        Rational rhs(0);
        if (l.var) lhs.add(*l.var, Rational(1));
        else {
            if (!l.constant.is_number())
                fail(Error::Kind::Internal, "string operand compared against a measure cell");
            rhs -= l.constant.num();
        }
        if (r.var) lhs.add(*r.var, Rational(-1));
        else {
            if (!r.constant.is_number())
                fail(Error::Kind::Internal, "string operand compared against a measure cell");
            rhs += r.constant.num();
        }
        // lhs ◇ rhs with ◇ = op

        auto negated = [&] {
            SparseRow s;
            for (const auto& [v, c] : lhs.entries) s.lhs.add(v, -c);
            s.rhs = -rhs;
            return s;
        };
        auto straight = [&] {
            SparseRow s;
            s.lhs = lhs;
            s.rhs = rhs;
            return s;
        };

        auto push_all = [&](SparseRow row_tmpl, RowRel rel) {
            row_tmpl.rel = rel;
            row_tmpl.note = sparse_text(row_tmpl.lhs, bs_.vars) + " " + row_rel_text(rel) +
                            " " + row_tmpl.rhs.str() + " (frozen conjunct)";
            for (auto& p : protos) p.push_back(row_tmpl);
        };

        switch (op) {
            case CmpOp::Eq: push_all(straight(), RowRel::Eq); return true;
            case CmpOp::Le: push_all(straight(), RowRel::Le); return true;
            case CmpOp::Lt: push_all(straight(), RowRel::Lt); return true;
            case CmpOp::Ge: push_all(negated(), RowRel::Le); return true;
            case CmpOp::Gt: push_all(negated(), RowRel::Lt); return true;
            case CmpOp::Ne: {
                SparseRow below = straight();
                below.rel = RowRel::Lt;
                below.note = sparse_text(below.lhs, bs_.vars) + " < " + below.rhs.str() +
                             " (frozen conjunct)";
                SparseRow above = negated();
                above.rel = RowRel::Lt;
                above.note = sparse_text(above.lhs, bs_.vars) + " < " + above.rhs.str() +
                             " (frozen conjunct)";
                std::vector<std::vector<SparseRow>> forked;
                forked.reserve(protos.size() * 2);
                for (const auto& p : protos) {
                    auto a = p;
                    a.push_back(below);
                    forked.push_back(std::move(a));
                    auto b = p;
                    b.push_back(above);
                    forked.push_back(std::move(b));
                }
                protos = std::move(forked);
                return true;
            }
        }
        return false;
    }

    // Single-variable interval check; multi-variable rows are not filtered.
    bool locally_viable(const std::vector<SparseRow>& rows) {
        std::map<std::size_t, Interval> iv;
        for (const SparseRow& r : rows) {
            if (r.lhs.entries.empty()) {
                if (!constant_row_holds(r.rel, r.rhs)) return false;
                continue;
            }
            if (r.lhs.entries.size() != 1) continue;
            auto [v, a] = *r.lhs.entries.begin();
            Interval& box = iv[v];
            Rational bnd = r.rhs / a;
            bool is_int = bs_.vars[v].domain == Domain::Integer;
            auto upper = [&](bool strict) {
                Bound nb{true, bnd, strict};
                if (is_int) integerize(nb, false);
                improve_upper(box.hi, nb.value, nb.strict);
            };
            auto lower = [&](bool strict) {
                Bound nb{true, bnd, strict};
                if (is_int) integerize(nb, true);
                improve_lower(box.lo, nb.value, nb.strict);
            };
            switch (r.rel) {
                case RowRel::Eq:
                    upper(false);
                    lower(false);
                    break;
                case RowRel::Le:
                    a.sign() > 0 ? upper(false) : lower(false);
                    break;
                case RowRel::Lt:
                    a.sign() > 0 ? upper(true) : lower(true);
                    break;
            }
            if (box.empty()) return false;
        }
        return true;
    }

    void finish() {
        // Nothing further: rows and units were accumulated in place.
    }

    struct UnitKey {
        TupleId tuple;
        std::string function;
        std::vector<Value> args;

        bool operator<(const UnitKey& o) const {
            if (auto c = tuple <=> o.tuple; c != 0) return c < 0;
            if (function != o.function) return function < o.function;
            return args < o.args;
        }
    };

    const Instance& instance_;
    const ConstraintSet& cs_;
    BranchSet bs_;
    std::map<CellRef, std::size_t> var_of_;
    std::map<UnitKey, std::size_t> unit_of_;
};

} // namespace

Rational adjusted_constant(const Instance& instance, const ConstraintSet& cs,
                           const GroundConstraint& gc, const Support& support,
                           const MembershipPattern& overrides) {
    Rational subtracted(0);
    for (std::size_t i = 0; i < gc.terms.size(); ++i) {
        const auto& term = gc.terms[i];
        const auto& fn = cs.function(term.function);
        const auto& rel = instance.schema().relation(fn.relation);
        ConditionPtr cond = ground_condition(fn, term.args);
        LinearProfile profile = linear_profile(*fn.body);

        const auto& rows = instance.rows(fn.relation);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            TupleId tid{fn.relation, r};
            bool counted;
            if (auto it = overrides.find({i, tid}); it != overrides.end())
                counted = it->second;
            else
                counted = eval_ground_condition(*cond, rel, rows[r]);
            if (!counted) continue;
            Rational c = profile.constant;
            for (const auto& [attr, coef] : profile.coefficients) {
                if (support.count(CellRef{tid, attr})) continue;
                c += coef * rows[r][*rel.attribute_index(attr)].num();
            }
            subtracted += term.coefficient * c;
        }
    }
    return gc.bound - subtracted;
}

BranchSet encode_support(const Instance& instance, const ConstraintSet& cs,
                         const Support& support) {
    return Encoder(instance, cs, support).run();
}

// ---------------------------------------------------------------------------
// Branch enumeration.

std::uint64_t BranchSet::nominal_branch_count() const {
    std::uint64_t n = 1;
    for (const Unit& u : units) {
        if (u.choices.empty()) return 0;
        if (n > UINT64_MAX / u.choices.size()) return UINT64_MAX;
        n *= u.choices.size();
    }
    return n;
}

namespace {

struct PartialRow {
    SparseVec folded;
    Rational rhs;
    std::vector<const BranchSet::PendingTerm*> undecided;
};

// Builds the node's complete rows and partially folded rows, then decides by
// interval propagation whether the subtree can still contain a feasible leaf.
bool node_viable(const BranchSet& bs, const std::vector<std::size_t>& chosen,
                 std::size_t depth, std::vector<Interval>& iv) {
    std::vector<CRow> complete;
    std::vector<SparseVec> storage;
    storage.reserve(bs.a_rows.size());
    std::vector<PartialRow> partial;

    for (const SparseRow& r : bs.base_rows) complete.push_back({&r.lhs, r.rel, r.rhs});
    for (std::size_t u = 0; u < depth; ++u)
        for (const SparseRow& r : bs.units[u].choices[chosen[u]].rows)
            complete.push_back({&r.lhs, r.rel, r.rhs});

    for (const auto& arow : bs.a_rows) {
        SparseVec folded = arow.sym;
        Rational cst = arow.cst;
        std::vector<const BranchSet::PendingTerm*> undecided;
        for (const auto& p : arow.pending) {
            if (p.unit < depth) {
                if (bs.units[p.unit].choices[chosen[p.unit]].counted) {
                    for (const auto& [v, c] : p.sym.entries) folded.add(v, c);
                    cst += p.cst;
                }
            } else {
                undecided.push_back(&p);
            }
        }
        if (undecided.empty()) {
            storage.push_back(std::move(folded));
            complete.push_back({&storage.back(), RowRel::Le, arow.bound - cst});
        } else {
            partial.push_back(PartialRow{std::move(folded), arow.bound - cst,
                                         std::move(undecided)});
        }
    }

    iv.assign(bs.vars.size(), Interval{});
    if (!propagate(iv, complete, bs.vars)) return false;

    for (const auto& pr : partial) {
        auto base = sparse_min(pr.folded, iv);
        if (!base) continue;
        Rational total = base->first;
        bool attained = base->second;
        bool unbounded = false;
        for (const auto* p : pr.undecided) {
            const auto& unit = bs.units[p->unit];
            std::optional<std::pair<Rational, bool>> best;
            bool has_uncounted = false, has_counted = false;
            for (const auto& ch : unit.choices) (ch.counted ? has_counted : has_uncounted) = true;
            if (has_uncounted) best = std::make_pair(Rational(0), true);
            if (has_counted) {
                auto m = sparse_min(p->sym, iv);
                if (!m) { unbounded = true; break; }
                m->first += p->cst;
                if (!best || m->first < best->first) best = m;
                else if (m->first == best->first) best->second |= m->second;
            }
            if (!best) return false; // unit with no choices: dead subtree
            total += best->first;
            attained &= best->second;
        }
        if (unbounded) continue;
        if (total > pr.rhs || (total == pr.rhs && !attained)) return false;
    }
    return true;
}

void materialize(const BranchSet& bs, const std::vector<std::size_t>& chosen,
                 LinearSystem& out) {
    out.vars = bs.vars;
    out.rows.clear();
    std::size_t n = bs.vars.size();
    auto densify = [&](const SparseVec& v) {
        std::vector<Rational> dense(n, Rational(0));
        for (const auto& [var, c] : v.entries) dense[var] = c;
        return dense;
    };
    for (const SparseRow& r : bs.base_rows)
        out.rows.push_back(LinRow{densify(r.lhs), r.rel, r.rhs, r.note});
    for (std::size_t u = 0; u < bs.units.size(); ++u) {
        const auto& choice = bs.units[u].choices[chosen[u]];
        for (const SparseRow& r : choice.rows)
            out.rows.push_back(LinRow{densify(r.lhs), r.rel, r.rhs,
                                      r.note + " [" + choice.label + "]"});
    }
    for (const auto& arow : bs.a_rows) {
        SparseVec folded = arow.sym;
        Rational cst = arow.cst;
        for (const auto& p : arow.pending)
            if (bs.units[p.unit].choices[chosen[p.unit]].counted) {
                for (const auto& [v, c] : p.sym.entries) folded.add(v, c);
                cst += p.cst;
            }
        out.rows.push_back(LinRow{densify(folded), RowRel::Le, arow.bound - cst, arow.note});
    }
}

} // namespace

BranchSet::EnumStats BranchSet::for_each_branch(
    const std::function<bool(const LinearSystem&)>& visit, std::uint64_t branch_cap) const {
    EnumStats stats;
    std::vector<std::size_t> chosen(units.size(), 0);
    std::vector<Interval> iv;
    LinearSystem scratch;

    auto dfs = [&](auto&& self, std::size_t depth) -> bool {
        if (!node_viable(*this, chosen, depth, iv)) {
            ++stats.pruned_nodes;
            return false;
        }
        if (depth == units.size()) {
            if (stats.yielded >= branch_cap)
                fail(Error::Kind::Resource,
                     "branch cap " + std::to_string(branch_cap) + " exceeded while " +
                     "enumerating condition branches (" +
                     std::to_string(nominal_branch_count()) + " nominal branches)");
            materialize(*this, chosen, scratch);
            ++stats.yielded;
            if (visit(scratch)) {
                stats.stopped_early = true;
                return true;
            }
            return false;
        }
        for (std::size_t c = 0; c < units[depth].choices.size(); ++c) {
            chosen[depth] = c;
            if (self(self, depth + 1)) return true;
        }
        return false;
    };
    dfs(dfs, 0);
    return stats;
}

std::vector<LinearSystem> BranchSet::branches(std::uint64_t branch_cap) const {
    std::vector<LinearSystem> out;
    for_each_branch([&](const LinearSystem& sys) {
        out.push_back(sys);
        return false;
    }, branch_cap);
    return out;
}

} // namespace numrepair

#include "numrepair/solver.hpp"

#include "numrepair/error.hpp"

#include <algorithm>
#include <set>

namespace numrepair {

std::string solve_status_text(SolveStatus status) {
    switch (status) {
        case SolveStatus::Feasible: return "feasible";
        case SolveStatus::Infeasible: return "infeasible";
        case SolveStatus::BoundExhausted: return "bound-exhausted";
    }
    return "?";
}

namespace {

constexpr std::size_t kRowBlowupCap = 20000;

// Σ a·x ≤ k (strict ⇒ <) with the set of source rows it was derived from.
struct IRow {
    std::vector<Rational> a;
    Rational k;
    bool strict = false;
    std::set<std::size_t> origins;
};

struct EliminationStep {
    std::size_t var = 0;
    std::vector<IRow> rows; // rows mentioning var at the time of elimination
};

struct FmResult {
    bool feasible = false;
    std::vector<Rational> witness;        // per variable, when feasible
    std::set<std::size_t> certificate;    // origins of a violated constant row
};

void normalize_row(IRow& r) {
    for (const Rational& c : r.a) {
        if (c.is_zero()) continue;
        Rational scale = c.abs();
        if (scale == Rational(1)) return;
        for (Rational& x : r.a) x = x / scale;
        r.k = r.k / scale;
        return;
    }
}

// Keeps, per left-hand side and origin cleanliness, only the tightest row.
// Splitting by cleanliness preserves certificates that avoid the heuristic
// search box even when a box-derived row is numerically tighter.
void dedup_rows(std::vector<IRow>& rows, std::size_t clean_origin_limit) {
    auto dirty = [&](const IRow& r) {
        for (std::size_t id : r.origins)
            if (id >= clean_origin_limit) return true;
        return false;
    };
    std::map<std::pair<std::vector<Rational>, bool>, std::size_t> best;
    std::vector<IRow> out;
    for (IRow& r : rows) {
        normalize_row(r);
        auto [it, fresh] = best.emplace(std::make_pair(r.a, dirty(r)), out.size());
        if (fresh) {
            out.push_back(std::move(r));
            continue;
        }
        IRow& kept = out[it->second];
        bool stronger = r.k < kept.k || (r.k == kept.k && r.strict && !kept.strict);
        if (stronger) kept = std::move(r);
    }
    rows = std::move(out);
}

FmResult fm_solve(std::vector<IRow> rows, std::size_t nvars,
                  const std::vector<Domain>& domains, std::size_t clean_origin_limit) {
    FmResult res;
    std::vector<EliminationStep> steps;
    std::vector<bool> eliminated(nvars, false);

    dedup_rows(rows, clean_origin_limit);
    for (std::size_t round = 0; round < nvars; ++round) {
        // Pick the remaining variable producing the fewest combined rows.
        std::size_t pick = nvars;
        std::size_t best_cost = SIZE_MAX;
        for (std::size_t v = 0; v < nvars; ++v) {
            if (eliminated[v]) continue;
            std::size_t pos = 0, neg = 0;
            for (const IRow& r : rows) {
                int s = r.a[v].sign();
                if (s > 0) ++pos;
                else if (s < 0) ++neg;
            }
            std::size_t cost = pos * neg;
            if (cost < best_cost) { best_cost = cost; pick = v; }
        }
        if (pick == nvars) break;
        eliminated[pick] = true;

        EliminationStep step;
        step.var = pick;
        std::vector<IRow> pos, neg, rest;
        for (IRow& r : rows) {
            int s = r.a[pick].sign();
            if (s > 0) pos.push_back(std::move(r));
            else if (s < 0) neg.push_back(std::move(r));
            else rest.push_back(std::move(r));
        }
        for (const IRow& r : pos) step.rows.push_back(r);
        for (const IRow& r : neg) step.rows.push_back(r);

        for (const IRow& p : pos) {
            for (const IRow& n : neg) {
                IRow c;
                c.a.assign(nvars, Rational(0));
                Rational ps = p.a[pick];          // > 0
                Rational ns = n.a[pick].abs();     // > 0
                for (std::size_t j = 0; j < nvars; ++j)
                    c.a[j] = p.a[j] / ps + n.a[j] / ns;
                c.k = p.k / ps + n.k / ns;
                c.strict = p.strict || n.strict;
                c.origins = p.origins;
                c.origins.insert(n.origins.begin(), n.origins.end());
                rest.push_back(std::move(c));
            }
        }
        rows = std::move(rest);
        dedup_rows(rows, clean_origin_limit);
        if (rows.size() > kRowBlowupCap)
            fail(Error::Kind::Resource, "linear solver row blowup (" +
                                        std::to_string(rows.size()) + " rows)");
        steps.push_back(std::move(step));
    }

    const IRow* violated = nullptr;
    for (const IRow& r : rows) {
        bool zero = true;
        for (const Rational& c : r.a)
            if (!c.is_zero()) { zero = false; break; }
        if (!zero) fail(Error::Kind::Internal, "non-constant row after elimination");
        if (r.k.sign() < 0 || (r.k.is_zero() && r.strict)) {
            bool clean = true;
            for (std::size_t id : r.origins)
                if (id >= clean_origin_limit) { clean = false; break; }
            if (!violated || clean) violated = &r;
            if (clean) break;
        }
    }
    if (violated) {
        res.feasible = false;
        res.certificate = violated->origins;
        return res;
    }

    // Back-substitution in reverse elimination order.
    res.feasible = true;
    res.witness.assign(nvars, Rational(0));
    for (auto it = steps.rbegin(); it != steps.rend(); ++it) {
        std::size_t v = it->var;
        std::optional<Rational> lo, hi;
        bool lo_strict = false, hi_strict = false;
        for (const IRow& r : it->rows) {
            Rational rest(0);
            for (std::size_t j = 0; j < nvars; ++j)
                if (j != v && !r.a[j].is_zero()) rest += r.a[j] * res.witness[j];
            Rational bnd = (r.k - rest) / r.a[v];
            if (r.a[v].sign() > 0) {
                if (!hi || bnd < *hi) { hi = bnd; hi_strict = r.strict; }
                else if (bnd == *hi) hi_strict |= r.strict;
            } else {
                if (!lo || bnd > *lo) { lo = bnd; lo_strict = r.strict; }
                else if (bnd == *lo) lo_strict |= r.strict;
            }
        }
        bool want_int = domains[v] == Domain::Integer;
        res.witness[v] = [&]() -> Rational {
            if (!lo && !hi) return Rational(0);
            if (lo && hi) {
                if (*lo == *hi) return *lo; // both nonstrict by FM feasibility
                if (want_int) {
                    Rational n = lo->is_integer() ? (lo_strict ? *lo + Rational(1) : *lo)
                                                  : lo->ceil();
                    if (n < *hi || (n == *hi && !hi_strict)) return n;
                }
                return (*lo + *hi) / Rational(2);
            }
            if (lo) {
                if (want_int)
                    return lo->is_integer() ? (lo_strict ? *lo + Rational(1) : *lo)
                                            : lo->ceil();
                return lo_strict ? *lo + Rational(1) : *lo;
            }
            if (want_int)
                return hi->is_integer() ? (hi_strict ? *hi - Rational(1) : *hi)
                                        : hi->floor();
            return hi_strict ? *hi - Rational(1) : *hi;
        }();
    }
    return res;
}

} // namespace

SolveResult solve(const LinearSystem& sys, const SolverOptions& options) {
    SolveResult result;
    std::size_t n = sys.vars.size();
    std::vector<Domain> domains(n);
    for (std::size_t i = 0; i < n; ++i) domains[i] = sys.vars[i].domain;

    std::vector<IRow> base;
    std::vector<std::string> notes;
    auto push = [&](std::vector<Rational> a, Rational k, bool strict, std::string note) {
        IRow r;
        r.a = std::move(a);
        r.k = std::move(k);
        r.strict = strict;
        r.origins = {notes.size()};
        notes.push_back(std::move(note));
        base.push_back(std::move(r));
    };

    for (const LinRow& row : sys.rows) {
        switch (row.rel) {
            case RowRel::Le:
                push(row.coeffs, row.rhs, false, row.note);
                break;
            case RowRel::Lt:
                push(row.coeffs, row.rhs, true, row.note);
                break;
            case RowRel::Eq: {
                push(row.coeffs, row.rhs, false, row.note);
                std::vector<Rational> neg(n);
                for (std::size_t j = 0; j < n; ++j) neg[j] = -row.coeffs[j];
                push(std::move(neg), -row.rhs, false, row.note);
                break;
            }
        }
    }

    if (options.explicit_box) {
        Rational b = options.explicit_box->abs();
        for (std::size_t v = 0; v < n; ++v) {
            std::vector<Rational> up(n, Rational(0)), down(n, Rational(0));
            up[v] = Rational(1);
            down[v] = Rational(-1);
            push(std::move(up), b, false, sys.vars[v].cell.str() + " <= " + b.str() + " (box)");
            push(std::move(down), b, false,
                 "-" + sys.vars[v].cell.str() + " <= " + b.str() + " (box)");
        }
    }

    std::size_t first_search_row = notes.size();

    // Heuristic search box for integer branching; large enough that missing a
    // solution outside it is only reported as BoundExhausted, never as
    // Infeasible.
    Rational mass(1);
    for (const LinRow& row : sys.rows) {
        for (const Rational& c : row.coeffs) mass += c.abs();
        mass += row.rhs.abs();
    }
    for (const SystemVar& v : sys.vars) mass += v.original.abs();
    Rational box = Rational(options.box_scale) * mass;

    std::vector<IRow> search;
    for (std::size_t v = 0; v < n; ++v) {
        if (domains[v] != Domain::Integer) continue;
        std::vector<Rational> up(n, Rational(0)), down(n, Rational(0));
        up[v] = Rational(1);
        down[v] = Rational(-1);
        IRow r1{std::move(up), box, false, {notes.size()}};
        notes.push_back(sys.vars[v].cell.str() + " within search box");
        IRow r2{std::move(down), box, false, {notes.size()}};
        notes.push_back(sys.vars[v].cell.str() + " within search box");
        search.push_back(std::move(r1));
        search.push_back(std::move(r2));
    }

    bool used_search_box = false;
    bool exhausted = false;
    std::optional<std::vector<Rational>> found;
    std::set<std::size_t> first_clean_certificate;
    bool have_certificate = false;

    std::vector<IRow> branch_rows;
    auto is_search_origin = [&](std::size_t id) { return id >= first_search_row; };

    auto dfs = [&](auto&& self) -> bool {
        if (found) return true;
        if (++result.nodes > options.max_nodes) {
            exhausted = true;
            return true;
        }
        std::vector<IRow> rows = base;
        rows.insert(rows.end(), search.begin(), search.end());
        rows.insert(rows.end(), branch_rows.begin(), branch_rows.end());
        FmResult fm = fm_solve(std::move(rows), n, domains, first_search_row);
        if (!fm.feasible) {
            bool clean = true;
            for (std::size_t id : fm.certificate)
                if (is_search_origin(id)) { clean = false; break; }
            if (!clean) used_search_box = true;
            else if (!have_certificate) {
                first_clean_certificate = fm.certificate;
                have_certificate = true;
            }
            return false;
        }
        std::size_t frac = n;
        for (std::size_t v = 0; v < n; ++v)
            if (domains[v] == Domain::Integer && !fm.witness[v].is_integer()) {
                frac = v;
                break;
            }
        if (frac == n) {
            found = fm.witness;
            return true;
        }
        Rational fl = fm.witness[frac].floor();
        {
            std::vector<Rational> a(n, Rational(0));
            a[frac] = Rational(1);
            branch_rows.push_back(IRow{std::move(a), fl, false, {}});
            bool stop = self(self);
            branch_rows.pop_back();
            if (stop) return true;
        }
        {
            std::vector<Rational> a(n, Rational(0));
            a[frac] = Rational(-1);
            branch_rows.push_back(IRow{std::move(a), -(fl + Rational(1)), false, {}});
            bool stop = self(self);
            branch_rows.pop_back();
            if (stop) return true;
        }
        return false;
    };
    dfs(dfs);

    if (found) {
        result.status = SolveStatus::Feasible;
        for (std::size_t v = 0; v < n; ++v)
            result.witness.emplace(sys.vars[v].cell, (*found)[v]);
        return result;
    }
    if (exhausted || used_search_box) {
        result.status = SolveStatus::BoundExhausted;
        return result;
    }
    result.status = SolveStatus::Infeasible;
    if (have_certificate) {
        std::set<std::string> uniq;
        for (std::size_t id : first_clean_certificate) uniq.insert(notes[id]);
        result.certificate_notes.assign(uniq.begin(), uniq.end());
    }
    return result;
}

bool verify(const LinearSystem& sys, const std::map<CellRef, Rational>& assignment) {
    std::vector<Rational> x(sys.vars.size());
    for (std::size_t v = 0; v < sys.vars.size(); ++v) {
        auto it = assignment.find(sys.vars[v].cell);
        if (it == assignment.end()) return false;
        if (sys.vars[v].domain == Domain::Integer && !it->second.is_integer()) return false;
        x[v] = it->second;
    }
    for (const LinRow& row : sys.rows) {
        Rational lhs(0);
        for (std::size_t v = 0; v < x.size(); ++v)
            if (!row.coeffs[v].is_zero()) lhs += row.coeffs[v] * x[v];
        switch (row.rel) {
            case RowRel::Le:
                if (!(lhs <= row.rhs)) return false;
                break;
            case RowRel::Lt:
                if (!(lhs < row.rhs)) return false;
                break;
            case RowRel::Eq:
                if (lhs != row.rhs) return false;
                break;
        }
    }
    return true;
}

} // namespace numrepair

#include "reference.hpp"

#include <algorithm>
#include <set>
#include <tuple>
#include <vector>

namespace numrepair::testing {

namespace {

struct RefRow {
    std::vector<Rational> a;
    Rational k;
    bool strict = false;

    auto tie() const { return std::make_tuple(a, k, strict); }
};

std::vector<RefRow> initial_rows(const LinearSystem& sys) {
    std::vector<RefRow> rows;
    for (const auto& r : sys.rows) {
        RefRow row{r.coeffs, r.rhs, r.rel == RowRel::Lt};
        rows.push_back(row);
        if (r.rel == RowRel::Eq) {
            for (auto& c : row.a) c = -c;
            row.k = -row.k;
            rows.push_back(row);
        }
    }
    return rows;
}

} // namespace

bool ref_real_feasible(const LinearSystem& sys) {
    std::vector<RefRow> rows = initial_rows(sys);
    const std::size_t n = sys.vars.size();

    for (std::size_t v = 0; v < n; ++v) {
        std::vector<RefRow> pos, neg, rest;
        for (auto& r : rows) {
            int s = r.a[v].sign();
            (s > 0 ? pos : s < 0 ? neg : rest).push_back(std::move(r));
        }
        std::set<std::tuple<std::vector<Rational>, Rational, bool>> seen;
        rows.clear();
        auto push = [&](RefRow row) {
            bool constant = std::all_of(row.a.begin(), row.a.end(),
                                        [](const Rational& c) { return c.is_zero(); });
            if (constant && (row.k.sign() > 0 || (row.k.is_zero() && !row.strict)))
                return; // trivially true
            if (seen.insert(row.tie()).second) rows.push_back(std::move(row));
        };
        for (auto& r : rest) push(std::move(r));
        for (const auto& p : pos) {
            for (const auto& q : neg) {
                RefRow combo;
                combo.a.resize(n);
                const Rational ps = p.a[v], qs = -q.a[v];
                for (std::size_t i = 0; i < n; ++i) combo.a[i] = p.a[i] * qs + q.a[i] * ps;
                combo.k = p.k * qs + q.k * ps;
                combo.strict = p.strict || q.strict;
                push(std::move(combo));
            }
        }
    }

    for (const auto& r : rows) {
        if (r.k.sign() < 0) return false;
        if (r.k.is_zero() && r.strict) return false;
    }
    return true;
}

bool ref_grid_feasible(const LinearSystem& sys, long lo, long hi) {
    const std::size_t n = sys.vars.size();
    std::vector<long> point(n, lo);
    for (;;) {
        bool ok = true;
        for (const auto& r : sys.rows) {
            Rational lhs;
            for (std::size_t i = 0; i < n; ++i)
                if (!r.coeffs[i].is_zero()) lhs += r.coeffs[i] * Rational(point[i]);
            bool holds = r.rel == RowRel::Eq ? lhs == r.rhs
                       : r.rel == RowRel::Lt ? lhs < r.rhs
                                             : lhs <= r.rhs;
            if (!holds) { ok = false; break; }
        }
        if (ok) return true;

        std::size_t pos = 0;
        while (pos < n && ++point[pos] > hi) point[pos++] = lo;
        if (pos == n) return false;
    }
}

} // namespace numrepair::testing

#include "gen.hpp"

#include <random>
#include <string>

namespace numrepair::testing {

GenInstance gen_instance(std::uint64_t index) {
    std::mt19937_64 rng(0x5eed0000 + index);
    auto pick = [&](long lo, long hi) {
        return std::uniform_int_distribution<long>(lo, hi)(rng);
    };

    const std::size_t rows = (index <= 30 || (index > 55 && index <= 85)) ? 2 : 3;
    const std::size_t measures = index <= 55 ? 1 : 2;

    std::string schema_text = "relation R(K: integer, G: string, A: integer measure";
    if (measures == 2) schema_text += ", B: integer measure";
    schema_text += ")";
    Schema schema = parse_schema(schema_text);

    Instance instance(schema);
    for (std::size_t r = 0; r < rows; ++r) {
        Row row;
        row.push_back(Value::number(Rational(long(r))));
        row.push_back(Value::string(pick(0, 1) ? "a" : "b"));
        for (std::size_t m = 0; m < measures; ++m)
            row.push_back(Value::number(Rational(pick(-5, 5))));
        instance.append_row("R", std::move(row));
    }

    ConstraintSet cs;
    const int nfun = int(pick(1, 3));
    for (int f = 0; f < nfun; ++f) {
        AggregationFunction fn;
        fn.name = "f" + std::to_string(f + 1);
        fn.relation = "R";

        switch (pick(0, measures == 2 ? 5 : 3)) {
            case 0: fn.body = attr_ref("A"); break;
            case 1: fn.body = attr_scale(Rational(pick(0, 1) ? 2 : -1), attr_ref("A")); break;
            case 2: fn.body = attr_constant(Rational(1)); break;
            case 3: fn.body = attr_sum(attr_ref("A"), attr_constant(Rational(pick(-2, 2)))); break;
            case 4: fn.body = attr_ref("B"); break;
            default: fn.body = attr_diff(attr_ref("A"), attr_ref("B")); break;
        }

        switch (pick(0, 4)) {
            case 0: fn.condition = cond_true(); break;
            case 1:
                fn.condition = cond_compare({CondOperand::Kind::Attribute, "G", {}}, CmpOp::Eq,
                                            {CondOperand::Kind::Constant, "", Value::string("a")});
                break;
            case 2:
                fn.condition = cond_compare({CondOperand::Kind::Attribute, "K", {}}, CmpOp::Le,
                                            {CondOperand::Kind::Constant, "", Value::number(Rational(1))});
                break;
            case 3:
                fn.condition = cond_compare({CondOperand::Kind::Attribute, "K", {}}, CmpOp::Ne,
                                            {CondOperand::Kind::Constant, "", Value::number(Rational(0))});
                break;
            default:
                fn.params = {"p"};
                fn.param_types = {AggregationFunction::ParamType::String};
                fn.condition = cond_compare({CondOperand::Kind::Attribute, "G", {}}, CmpOp::Eq,
                                            {CondOperand::Kind::Parameter, "p", {}});
                break;
        }
        cs.functions.push_back(std::move(fn));
    }

    const int ncon = int(pick(1, 3));
    for (int c = 0; c < ncon; ++c) {
        AggregateConstraint con;
        con.name = "r" + std::to_string(c + 1);
        con.source = con.name;

        const bool bind_g = pick(0, 1) == 1;
        BodyAtom atom;
        atom.relation = "R";
        atom.terms.resize(2 + measures); // wildcards by default
        if (bind_g) atom.terms[1] = AtomTerm{AtomTerm::Kind::Variable, "y", {}};
        con.body.push_back(std::move(atom));

        const int nterms = int(pick(1, 2));
        for (int t = 0; t < nterms; ++t) {
            AggTerm term;
            long coef = pick(-2, 2);
            term.coefficient = Rational(coef == 0 ? 1 : coef);
            const auto& fn = cs.functions[std::size_t(pick(0, nfun - 1))];
            term.function = fn.name;
            for (std::size_t p = 0; p < fn.params.size(); ++p) {
                if (bind_g && pick(0, 1))
                    term.args.push_back({AggArg::Kind::Variable, "y", {}});
                else
                    term.args.push_back(
                        {AggArg::Kind::Literal, "", Value::string(pick(0, 1) ? "a" : "b")});
            }
            con.terms.push_back(std::move(term));
        }

        switch (pick(0, 2)) {
            case 0: con.cmp = Comparator::Le; break;
            case 1: con.cmp = Comparator::Ge; break;
            default: con.cmp = Comparator::Eq; break;
        }
        con.bound = Rational(pick(-5, 5));
        cs.constraints.push_back(std::move(con));
    }

    return {std::move(instance), std::move(cs)};
}

LinearSystem gen_system(std::uint64_t index, bool integer_domain) {
    std::mt19937_64 rng(0xa11ce000 + index);
    auto pick = [&](long lo, long hi) {
        return std::uniform_int_distribution<long>(lo, hi)(rng);
    };
    auto ratio = [&]() { return Rational(pick(-9, 9), pick(1, 9)); };

    LinearSystem sys;
    const std::size_t n = std::size_t(pick(1, 4));
    for (std::size_t v = 0; v < n; ++v)
        sys.vars.push_back({CellRef{TupleId{"sys", v}, "x"},
                            integer_domain ? Domain::Integer : Domain::Real, Rational(0)});

    const int nrows = int(pick(2, 6));
    for (int r = 0; r < nrows; ++r) {
        LinRow row;
        row.coeffs.resize(n);
        bool nonzero = false;
        for (std::size_t v = 0; v < n; ++v) {
            if (pick(0, 3) == 0) continue; // sparse zeros
            row.coeffs[v] = ratio();
            nonzero |= !row.coeffs[v].is_zero();
        }
        if (!nonzero) row.coeffs[std::size_t(pick(0, long(n) - 1))] = ratio();
        long rel = pick(0, 9);
        row.rel = rel < 6 ? RowRel::Le : rel < 8 ? RowRel::Lt : RowRel::Eq;
        row.rhs = ratio();
        row.note = "row " + std::to_string(r);
        sys.rows.push_back(std::move(row));
    }

    if (integer_domain) {
        for (std::size_t v = 0; v < n; ++v) {
            LinRow up, down;
            up.coeffs.assign(n, Rational(0));
            down.coeffs.assign(n, Rational(0));
            up.coeffs[v] = Rational(1);
            down.coeffs[v] = Rational(-1);
            up.rhs = Rational(5);
            down.rhs = Rational(5);
            up.note = "box hi " + std::to_string(v);
            down.note = "box lo " + std::to_string(v);
            sys.rows.push_back(std::move(up));
            sys.rows.push_back(std::move(down));
        }
    }
    return sys;
}

} // namespace numrepair::testing

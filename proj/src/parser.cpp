#include "numrepair/parser.hpp"

#include "numrepair/error.hpp"

#include <cctype>
#include <map>
#include <set>
#include <sstream>

namespace numrepair {

namespace {

enum class Tok {
    Ident, Number, String, Wildcard,
    LParen, RParen, Comma, Colon, Arrow, Plus, Minus, Star,
    Eq, Ne, Lt, Le, Gt, Ge,
    End,
};

struct Token {
    Tok kind;
    std::string text;
    Rational number;
    int line = 1, col = 1;
};

class Lexer {
public:
    Lexer(std::string_view text, std::string origin)
        : text_(text), origin_(std::move(origin)) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        while (true) {
            skip();
            Token t = next();
            bool end = t.kind == Tok::End;
            out.push_back(std::move(t));
            if (end) return out;
        }
    }

private:
    [[noreturn]] void error(const std::string& msg) const {
        fail(Error::Kind::Parse,
             origin_ + " " + std::to_string(line_) + ":" + std::to_string(col_) + ": " + msg);
    }

    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

    char advance() {
        char c = text_[pos_++];
        if (c == '\n') { ++line_; col_ = 1; }
        else ++col_;
        return c;
    }

    void skip() {
        while (pos_ < text_.size()) {
            char c = peek();
            if (c == '#') {
                while (pos_ < text_.size() && peek() != '\n') advance();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else {
                break;
            }
        }
    }

    Token next() {
        Token t;
        t.line = line_;
        t.col = col_;
        if (pos_ >= text_.size()) { t.kind = Tok::End; return t; }

        char c = peek();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::string word;
            while (pos_ < text_.size()) {
                char d = peek();
                if (std::isalnum(static_cast<unsigned char>(d)) || d == '_') word += advance();
                else break;
            }
            if (word == "_") { t.kind = Tok::Wildcard; return t; }
            t.kind = Tok::Ident;
            t.text = std::move(word);
            return t;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string num;
            while (std::isdigit(static_cast<unsigned char>(peek()))) num += advance();
            if (peek() == '.' || peek() == '/') {
                num += advance();
                if (!std::isdigit(static_cast<unsigned char>(peek())))
                    error("malformed number '" + num + "'");
                while (std::isdigit(static_cast<unsigned char>(peek()))) num += advance();
            }
            auto r = Rational::parse(num);
            if (!r) error("malformed number '" + num + "'");
            t.kind = Tok::Number;
            t.number = std::move(*r);
            t.text = std::move(num);
            return t;
        }
        if (c == '\'') {
            advance();
            std::string s;
            while (true) {
                if (pos_ >= text_.size() || peek() == '\n') error("unterminated string literal");
                char d = advance();
                if (d == '\'') break;
                s += d;
            }
            t.kind = Tok::String;
            t.text = std::move(s);
            return t;
        }

        advance();
        switch (c) {
            case '(': t.kind = Tok::LParen; return t;
            case ')': t.kind = Tok::RParen; return t;
            case ',': t.kind = Tok::Comma; return t;
            case ':': t.kind = Tok::Colon; return t;
            case '+': t.kind = Tok::Plus; return t;
            case '*': t.kind = Tok::Star; return t;
            case '-':
                if (peek() == '>') { advance(); t.kind = Tok::Arrow; return t; }
                t.kind = Tok::Minus;
                return t;
            case '=': t.kind = Tok::Eq; return t;
            case '!':
                if (peek() == '=') { advance(); t.kind = Tok::Ne; return t; }
                error("stray '!'");
            case '<':
                if (peek() == '=') { advance(); t.kind = Tok::Le; return t; }
                t.kind = Tok::Lt;
                return t;
            case '>':
                if (peek() == '=') { advance(); t.kind = Tok::Ge; return t; }
                t.kind = Tok::Gt;
                return t;
            default:
                error(std::string("unexpected character '") + c + "'");
        }
    }

    std::string_view text_;
    std::string origin_;
    std::size_t pos_ = 0;
    int line_ = 1, col_ = 1;
};

bool is_cmp_tok(Tok k) {
    return k == Tok::Eq || k == Tok::Ne || k == Tok::Lt || k == Tok::Le ||
           k == Tok::Gt || k == Tok::Ge;
}

CmpOp cmp_of(Tok k) {
    switch (k) {
        case Tok::Eq: return CmpOp::Eq;
        case Tok::Ne: return CmpOp::Ne;
        case Tok::Lt: return CmpOp::Lt;
        case Tok::Le: return CmpOp::Le;
        case Tok::Gt: return CmpOp::Gt;
        case Tok::Ge: return CmpOp::Ge;
        default: fail(Error::Kind::Internal, "not a comparison token");
    }
}

bool numeric_domain(Domain d) { return d != Domain::String; }

class ConstraintParser {
public:
    ConstraintParser(const Schema& schema, std::string_view text, std::string origin)
        : schema_(schema), origin_(std::move(origin)) {
        tokens_ = Lexer(text, origin_).run();
    }

    ConstraintSet parse_file() {
        ConstraintSet cs;
        while (cur().kind != Tok::End) {
            if (cur().kind != Tok::Ident) error(cur(), "expected 'function', 'rule' or a relation name");
            if (cur().text == "function") parse_function(cs);
            else parse_constraint(cs);
        }
        check_names(cs);
        return cs;
    }

    GroundAtom parse_atom_only() {
        GroundAtom atom;
        atom.relation = expect_ident("relation name");
        const auto* rel = schema_.find_relation(atom.relation);
        if (!rel) error(prev(), "unknown relation '" + atom.relation + "'");
        expect(Tok::LParen, "'('");
        while (true) {
            atom.values.push_back(parse_literal());
            if (cur().kind == Tok::Comma) { ++idx_; continue; }
            break;
        }
        expect(Tok::RParen, "')'");
        expect(Tok::End, "end of query");
        if (atom.values.size() != rel->attributes.size())
            fail(Error::Kind::Validate,
                 origin_ + ": " + atom.relation + " takes " +
                 std::to_string(rel->attributes.size()) + " values, got " +
                 std::to_string(atom.values.size()));
        for (std::size_t i = 0; i < atom.values.size(); ++i)
            if (!atom.values[i].conforms(rel->attributes[i].domain))
                fail(Error::Kind::Validate,
                     origin_ + ": value " + atom.values[i].display() + " is not in domain " +
                     domain_name(rel->attributes[i].domain) + " of " + atom.relation + "." +
                     rel->attributes[i].name);
        return atom;
    }

private:
    const Token& cur() const { return tokens_[idx_]; }
    const Token& prev() const { return tokens_[idx_ ? idx_ - 1 : 0]; }

    [[noreturn]] void error(const Token& at, const std::string& msg) const {
        fail(Error::Kind::Parse, origin_ + " " + std::to_string(at.line) + ":" +
             std::to_string(at.col) + ": " + msg);
    }

    void expect(Tok k, const std::string& what) {
        if (cur().kind != k) error(cur(), "expected " + what);
        ++idx_;
    }

    bool accept(Tok k) {
        if (cur().kind != k) return false;
        ++idx_;
        return true;
    }

    bool accept_word(const std::string& w) {
        if (cur().kind == Tok::Ident && cur().text == w) { ++idx_; return true; }
        return false;
    }

    std::string expect_ident(const std::string& what) {
        if (cur().kind != Tok::Ident) error(cur(), "expected " + what);
        return tokens_[idx_++].text;
    }

    Rational expect_number(const std::string& what) {
        bool neg = accept(Tok::Minus);
        if (cur().kind != Tok::Number) error(cur(), "expected " + what);
        Rational r = tokens_[idx_++].number;
        return neg ? -r : r;
    }

    Value parse_literal() {
        if (cur().kind == Tok::String) return Value::string(tokens_[idx_++].text);
        return Value::number(expect_number("a literal"));
    }

    // ---- aggregation function definitions ----

    void parse_function(ConstraintSet& cs) {
        ++idx_; // "function"
        AggregationFunction fn;
        fn.name = expect_ident("a function name");
        if (cs.find_function(fn.name)) error(prev(), "duplicate function '" + fn.name + "'");

        expect(Tok::LParen, "'('");
        if (!accept(Tok::RParen)) {
            while (true) {
                std::string p = expect_ident("a parameter name");
                for (const auto& q : fn.params)
                    if (q == p) error(prev(), "duplicate parameter '" + p + "'");
                fn.params.push_back(std::move(p));
                if (accept(Tok::Comma)) continue;
                expect(Tok::RParen, "')' after parameters");
                break;
            }
        }
        fn.param_types.assign(fn.params.size(), AggregationFunction::ParamType::Any);

        if (!accept_word("on")) error(cur(), "expected 'on'");
        fn.relation = expect_ident("a relation name");
        const auto* rel = schema_.find_relation(fn.relation);
        if (!rel) error(prev(), "unknown relation '" + fn.relation + "'");
        expect(Tok::Colon, "':'");
        if (!accept_word("sum")) error(cur(), "expected 'sum'");
        expect(Tok::LParen, "'('");
        fn.body = parse_attrexpr(*rel);
        expect(Tok::RParen, "')' after the sum body");

        if (accept_word("where")) fn.condition = parse_or(*rel, fn);
        else fn.condition = cond_true();

        infer_param_types(fn, *rel);
        cs.functions.push_back(std::move(fn));
    }

    AttrExprPtr parse_attrexpr(const RelationSchema& rel) {
        AttrExprPtr e = parse_aeterm(rel);
        while (true) {
            if (accept(Tok::Plus)) e = attr_sum(std::move(e), parse_aeterm(rel));
            else if (accept(Tok::Minus)) e = attr_diff(std::move(e), parse_aeterm(rel));
            else if (cur().kind == Tok::Star)
                error(cur(), "products of attribute expressions are not allowed (non-linear)");
            else return e;
        }
    }

    AttrExprPtr parse_aeterm(const RelationSchema& rel) {
        if (cur().kind == Tok::Number || (cur().kind == Tok::Minus)) {
            Rational n = expect_number("a number");
            if (accept(Tok::Star)) {
                if (accept(Tok::LParen)) {
                    AttrExprPtr sub = parse_attrexpr(rel);
                    expect(Tok::RParen, "')'");
                    return attr_scale(std::move(n), std::move(sub));
                }
                return attr_scale(std::move(n), attr_ref(expect_attr(rel)));
            }
            return attr_constant(std::move(n));
        }
        if (cur().kind == Tok::Ident) {
            auto e = attr_ref(expect_attr(rel));
            if (cur().kind == Tok::Star)
                error(cur(), "products of attribute expressions are not allowed (non-linear)");
            return e;
        }
        error(cur(), "expected a number or an attribute");
    }

    std::string expect_attr(const RelationSchema& rel) {
        std::string name = expect_ident("an attribute of " + rel.name);
        const auto* found = rel.attribute_index(name) ? &rel.attribute(name) : nullptr;
        if (!found) error(prev(), rel.name + " has no attribute '" + name + "'");
        if (!numeric_domain(found->domain))
            error(prev(), "attribute '" + name + "' is not numeric");
        return name;
    }

    // ---- conditions ----

    ConditionPtr parse_or(const RelationSchema& rel, AggregationFunction& fn) {
        ConditionPtr c = parse_and(rel, fn);
        while (accept_word("or")) c = cond_or(std::move(c), parse_and(rel, fn));
        return c;
    }

    ConditionPtr parse_and(const RelationSchema& rel, AggregationFunction& fn) {
        ConditionPtr c = parse_not(rel, fn);
        while (accept_word("and")) c = cond_and(std::move(c), parse_not(rel, fn));
        return c;
    }

    ConditionPtr parse_not(const RelationSchema& rel, AggregationFunction& fn) {
        if (accept_word("not")) return cond_not(parse_not(rel, fn));
        if (accept(Tok::LParen)) {
            ConditionPtr c = parse_or(rel, fn);
            expect(Tok::RParen, "')'");
            return c;
        }
        CondOperand lhs = parse_operand(rel, fn);
        if (!is_cmp_tok(cur().kind)) error(cur(), "expected a comparison operator");
        CmpOp op = cmp_of(tokens_[idx_++].kind);
        CondOperand rhs = parse_operand(rel, fn);
        return cond_compare(std::move(lhs), op, std::move(rhs));
    }

    CondOperand parse_operand(const RelationSchema& rel, AggregationFunction& fn) {
        CondOperand o;
        if (cur().kind == Tok::Ident) {
            std::string name = tokens_[idx_++].text;
            bool is_param = false;
            for (const auto& p : fn.params) is_param |= p == name;
            bool is_attr = rel.attribute_index(name).has_value();
            if (is_param && is_attr)
                error(prev(), "'" + name + "' names both a parameter and an attribute");
            if (!is_param && !is_attr)
                error(prev(), "'" + name + "' is neither a parameter nor an attribute of " + rel.name);
            o.kind = is_param ? CondOperand::Kind::Parameter : CondOperand::Kind::Attribute;
            o.name = std::move(name);
            return o;
        }
        o.kind = CondOperand::Kind::Constant;
        o.constant = parse_literal();
        return o;
    }

    enum class OperandKind { Number, String, Param };

    // Coarse type checking: numbers and strings never compare.
    void infer_param_types(AggregationFunction& fn, const RelationSchema& rel) {
        auto param_slot = [&](const std::string& name) -> std::size_t {
            for (std::size_t i = 0; i < fn.params.size(); ++i)
                if (fn.params[i] == name) return i;
            fail(Error::Kind::Internal, "unresolved parameter " + name);
        };
        auto kind_of = [&](const CondOperand& o, std::size_t& slot) {
            switch (o.kind) {
                case CondOperand::Kind::Attribute:
                    return numeric_domain(rel.attribute(o.name).domain) ? OperandKind::Number
                                                                        : OperandKind::String;
                case CondOperand::Kind::Constant:
                    return o.constant.is_number() ? OperandKind::Number : OperandKind::String;
                case CondOperand::Kind::Parameter:
                    slot = param_slot(o.name);
                    return OperandKind::Param;
            }
            fail(Error::Kind::Internal, "bad operand");
        };
        using PT = AggregationFunction::ParamType;
        auto unify = [&](PT& t, PT other) {
            if (other == PT::Any) return true;
            if (t == PT::Any) { t = other; return true; }
            return t == other;
        };

        // Iterate to a fixpoint so param-param comparisons propagate.
        for (int round = 0; round < 2; ++round) {
            walk_compares(fn.condition, [&](const Condition& cmp) {
                std::size_t ls = 0, rs = 0;
                OperandKind lk = kind_of(cmp.lhs, ls);
                OperandKind rk = kind_of(cmp.rhs, rs);
                auto as_pt = [](OperandKind k) {
                    return k == OperandKind::Number ? PT::Number : PT::String;
                };
                bool ok = true;
                if (lk == OperandKind::Param && rk == OperandKind::Param) {
                    PT merged = fn.param_types[ls];
                    ok = unify(merged, fn.param_types[rs]);
                    if (ok) fn.param_types[ls] = fn.param_types[rs] = merged;
                } else if (lk == OperandKind::Param) {
                    ok = unify(fn.param_types[ls], as_pt(rk));
                } else if (rk == OperandKind::Param) {
                    ok = unify(fn.param_types[rs], as_pt(lk));
                } else {
                    ok = lk == rk;
                }
                if (!ok)
                    fail(Error::Kind::Parse,
                         origin_ + ": in function " + fn.name +
                         ", comparison mixes numeric and string operands");
            });
        }
    }

    template <typename F>
    static void walk_compares(const ConditionPtr& c, F&& f) {
        if (!c) return;
        switch (c->kind) {
            case Condition::Kind::True: return;
            case Condition::Kind::Compare: f(*c); return;
            case Condition::Kind::Not: walk_compares(c->a, f); return;
            case Condition::Kind::And:
            case Condition::Kind::Or:
                walk_compares(c->a, f);
                walk_compares(c->b, f);
                return;
        }
    }

    // ---- constraints ----

    void parse_constraint(ConstraintSet& cs) {
        AggregateConstraint c;
        if (cur().text == "rule") {
            ++idx_;
            c.name = expect_ident("a rule name");
            expect(Tok::Colon, "':'");
        } else {
            c.name = "c" + std::to_string(cs.constraints.size() + 1);
        }
        c.source = c.name;

        // body variable → schema domain of its first binding position
        std::map<std::string, Domain> vars;
        while (true) {
            c.body.push_back(parse_body_atom(vars));
            if (accept(Tok::Comma)) continue;
            break;
        }
        expect(Tok::Arrow, "'->'");

        bool first = true;
        while (true) {
            Rational sign(1);
            if (accept(Tok::Minus)) sign = Rational(-1);
            else if (!accept(Tok::Plus) && !first) break;
            c.terms.push_back(parse_agg_term(cs, vars, sign));
            first = false;
        }

        if (cur().kind == Tok::Le) c.cmp = Comparator::Le;
        else if (cur().kind == Tok::Ge) c.cmp = Comparator::Ge;
        else if (cur().kind == Tok::Eq) c.cmp = Comparator::Eq;
        else error(cur(), "expected '<=', '>=' or '='");
        ++idx_;
        c.bound = expect_number("the constraint bound");
        cs.constraints.push_back(std::move(c));
    }

    BodyAtom parse_body_atom(std::map<std::string, Domain>& vars) {
        BodyAtom atom;
        atom.relation = expect_ident("a relation name");
        const auto* rel = schema_.find_relation(atom.relation);
        if (!rel) error(prev(), "unknown relation '" + atom.relation + "'");
        expect(Tok::LParen, "'('");
        std::size_t pos = 0;
        while (true) {
            if (pos >= rel->attributes.size())
                error(cur(), atom.relation + " has only " +
                      std::to_string(rel->attributes.size()) + " attributes");
            const auto& attr = rel->attributes[pos];
            AtomTerm term;
            if (accept(Tok::Wildcard)) {
                term.kind = AtomTerm::Kind::Wildcard;
            } else if (cur().kind == Tok::Ident) {
                if (attr.measure)
                    error(cur(), "measure attribute " + atom.relation + "." + attr.name +
                          " must be bound to '_' in constraint bodies");
                term.kind = AtomTerm::Kind::Variable;
                term.var = tokens_[idx_++].text;
                Domain d = attr.domain;
                auto [it, fresh] = vars.emplace(term.var, d);
                if (!fresh && (it->second == Domain::String) != (d == Domain::String))
                    error(prev(), "variable '" + term.var + "' joins string and numeric attributes");
            } else {
                if (attr.measure)
                    error(cur(), "measure attribute " + atom.relation + "." + attr.name +
                          " must be bound to '_' in constraint bodies");
                term.kind = AtomTerm::Kind::Literal;
                term.literal = parse_literal();
                if (!term.literal.conforms(attr.domain) &&
                    !(attr.domain == Domain::Integer && term.literal.is_number()))
                    error(prev(), "literal " + term.literal.display() + " does not fit " +
                          atom.relation + "." + attr.name);
                if (attr.domain == Domain::Integer && term.literal.is_number() &&
                    !term.literal.num().is_integer())
                    error(prev(), "literal " + term.literal.display() + " does not fit " +
                          atom.relation + "." + attr.name);
            }
            atom.terms.push_back(std::move(term));
            ++pos;
            if (accept(Tok::Comma)) continue;
            expect(Tok::RParen, "')'");
            break;
        }
        if (pos != rel->attributes.size())
            error(prev(), atom.relation + " needs " + std::to_string(rel->attributes.size()) +
                  " terms, got " + std::to_string(pos));
        return atom;
    }

    AggTerm parse_agg_term(const ConstraintSet& cs, const std::map<std::string, Domain>& vars,
                           Rational sign) {
        AggTerm term;
        term.coefficient = std::move(sign);
        if (cur().kind == Tok::Number) {
            term.coefficient *= tokens_[idx_++].number;
            expect(Tok::Star, "'*' after a coefficient");
        }
        term.function = expect_ident("an aggregation function name");
        const auto* fn = cs.find_function(term.function);
        if (!fn) error(prev(), "unknown aggregation function '" + term.function + "'");
        expect(Tok::LParen, "'('");
        if (!accept(Tok::RParen)) {
            while (true) {
                AggArg arg;
                if (cur().kind == Tok::Ident) {
                    arg.kind = AggArg::Kind::Variable;
                    arg.var = tokens_[idx_++].text;
                    auto it = vars.find(arg.var);
                    if (it == vars.end())
                        error(prev(), "aggregate argument '" + arg.var +
                              "' does not occur in the constraint body");
                } else if (cur().kind == Tok::Wildcard) {
                    error(cur(), "'_' cannot be an aggregate argument");
                } else {
                    arg.kind = AggArg::Kind::Literal;
                    arg.literal = parse_literal();
                }
                term.args.push_back(std::move(arg));
                if (accept(Tok::Comma)) continue;
                expect(Tok::RParen, "')'");
                break;
            }
        }
        if (term.args.size() != fn->params.size())
            error(prev(), term.function + " takes " + std::to_string(fn->params.size()) +
                  " arguments, got " + std::to_string(term.args.size()));
        using PT = AggregationFunction::ParamType;
        for (std::size_t i = 0; i < term.args.size(); ++i) {
            PT want = fn->param_types[i];
            if (want == PT::Any) continue;
            bool is_num = term.args[i].kind == AggArg::Kind::Variable
                        ? vars.at(term.args[i].var) != Domain::String
                        : term.args[i].literal.is_number();
            if (is_num != (want == PT::Number))
                error(prev(), "argument " + std::to_string(i + 1) + " of " + term.function +
                      " has the wrong type");
        }
        return term;
    }

    void check_names(const ConstraintSet& cs) {
        std::set<std::string> names;
        for (const auto& c : cs.constraints)
            if (!names.insert(c.name).second)
                fail(Error::Kind::Parse, origin_ + ": duplicate constraint name '" + c.name + "'");
    }

    const Schema& schema_;
    std::string origin_;
    std::vector<Token> tokens_;
    std::size_t idx_ = 0;
};

// ---- printing ----

void print_attrexpr(std::ostream& out, const AttrExpr& e, bool parenthesize_compound);

void print_ae_operand(std::ostream& out, const AttrExpr& e) {
    // The grammar has no bare parentheses; compound right operands are
    // printed as a scale of 1 so the text stays parseable.
    if (e.kind == AttrExpr::Kind::Sum || e.kind == AttrExpr::Kind::Difference) {
        out << "1 * (";
        print_attrexpr(out, e, false);
        out << ")";
        return;
    }
    print_attrexpr(out, e, false);
}

void print_attrexpr(std::ostream& out, const AttrExpr& e, bool) {
    switch (e.kind) {
        case AttrExpr::Kind::Constant:
            out << e.constant.str();
            return;
        case AttrExpr::Kind::Attribute:
            out << e.attribute;
            return;
        case AttrExpr::Kind::Sum:
            print_attrexpr(out, *e.lhs, false);
            out << " + ";
            print_ae_operand(out, *e.rhs);
            return;
        case AttrExpr::Kind::Difference:
            print_attrexpr(out, *e.lhs, false);
            out << " - ";
            print_ae_operand(out, *e.rhs);
            return;
        case AttrExpr::Kind::Scale:
            out << e.constant.str() << " * (";
            print_attrexpr(out, *e.lhs, false);
            out << ")";
            return;
    }
}

void print_operand(std::ostream& out, const CondOperand& o) {
    if (o.kind == CondOperand::Kind::Constant) out << o.constant.display();
    else out << o.name;
}

void print_cond(std::ostream& out, const Condition& c, int parent_prec);

int cond_prec(const Condition& c) {
    switch (c.kind) {
        case Condition::Kind::Or: return 1;
        case Condition::Kind::And: return 2;
        default: return 3;
    }
}

void print_cond(std::ostream& out, const Condition& c, int parent_prec) {
    int prec = cond_prec(c);
    bool parens = prec < parent_prec;
    if (parens) out << "(";
    switch (c.kind) {
        case Condition::Kind::True:
            // Unreachable from printing call sites: a True condition means
            // the where-clause is omitted entirely.
            out << "0 = 0";
            break;
        case Condition::Kind::Compare:
            print_operand(out, c.lhs);
            out << " " << cmp_op_text(c.op) << " ";
            print_operand(out, c.rhs);
            break;
        case Condition::Kind::And:
            print_cond(out, *c.a, 2);
            out << " and ";
            print_cond(out, *c.b, 2);
            break;
        case Condition::Kind::Or:
            print_cond(out, *c.a, 1);
            out << " or ";
            print_cond(out, *c.b, 1);
            break;
        case Condition::Kind::Not:
            out << "not ";
            print_cond(out, *c.a, 3);
            break;
    }
    if (parens) out << ")";
}

} // namespace

ConstraintSet parse_constraints(const Schema& schema, std::string_view text) {
    return ConstraintParser(schema, text, "constraints").parse_file();
}

GroundAtom parse_ground_atom(const Schema& schema, std::string_view text) {
    return ConstraintParser(schema, text, "query").parse_atom_only();
}

std::string print_ground_atom(const GroundAtom& atom) {
    std::ostringstream out;
    out << atom.relation << "(";
    for (std::size_t i = 0; i < atom.values.size(); ++i)
        out << (i ? ", " : "") << atom.values[i].display();
    out << ")";
    return out.str();
}

std::string print_constraints(const ConstraintSet& cs) {
    std::ostringstream out;
    for (const auto& fn : cs.functions) {
        out << "function " << fn.name << "(";
        for (std::size_t i = 0; i < fn.params.size(); ++i)
            out << (i ? ", " : "") << fn.params[i];
        out << ") on " << fn.relation << ": sum(";
        print_attrexpr(out, *fn.body, false);
        out << ")";
        if (fn.condition && fn.condition->kind != Condition::Kind::True) {
            out << " where ";
            print_cond(out, *fn.condition, 0);
        }
        out << "\n";
    }
    if (!cs.functions.empty() && !cs.constraints.empty()) out << "\n";
    for (const auto& c : cs.constraints) {
        out << "rule " << c.name << ": ";
        for (std::size_t i = 0; i < c.body.size(); ++i) {
            if (i) out << ", ";
            out << c.body[i].relation << "(";
            for (std::size_t j = 0; j < c.body[i].terms.size(); ++j) {
                const auto& t = c.body[i].terms[j];
                if (j) out << ", ";
                switch (t.kind) {
                    case AtomTerm::Kind::Wildcard: out << "_"; break;
                    case AtomTerm::Kind::Variable: out << t.var; break;
                    case AtomTerm::Kind::Literal: out << t.literal.display(); break;
                }
            }
            out << ")";
        }
        out << " -> ";
        for (std::size_t i = 0; i < c.terms.size(); ++i) {
            const auto& t = c.terms[i];
            Rational coef = t.coefficient;
            if (i == 0) {
                if (coef.sign() < 0) { out << "-"; coef = -coef; }
            } else {
                out << (coef.sign() < 0 ? " - " : " + ");
                coef = coef.abs();
            }
            if (coef != Rational(1)) out << coef.str() << " * ";
            out << t.function << "(";
            for (std::size_t j = 0; j < t.args.size(); ++j) {
                const auto& a = t.args[j];
                if (j) out << ", ";
                if (a.kind == AggArg::Kind::Variable) out << a.var;
                else out << a.literal.display();
            }
            out << ")";
        }
        out << " " << comparator_text(c.cmp) << " " << c.bound.str() << "\n";
    }
    return out.str();
}

} // namespace numrepair

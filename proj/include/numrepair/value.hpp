#pragma once

#include "numrepair/error.hpp"
#include "numrepair/rational.hpp"

#include <compare>
#include <string>
#include <variant>

namespace numrepair {

enum class Domain { Integer, Real, String };

std::string domain_name(Domain d);

// A typed cell value: a rational number or an uninterpreted string.
class Value {
public:
    Value() : v_(Rational(0)) {}

    static Value number(Rational r) { return Value(std::move(r)); }
    static Value string(std::string s) { return Value(std::move(s)); }

    bool is_number() const { return std::holds_alternative<Rational>(v_); }
    bool is_string() const { return !is_number(); }

    const Rational& num() const {
        if (!is_number()) fail(Error::Kind::Internal, "value is not numeric");
        return std::get<Rational>(v_);
    }
    const std::string& str() const {
        if (!is_string()) fail(Error::Kind::Internal, "value is not a string");
        return std::get<std::string>(v_);
    }

    bool conforms(Domain d) const {
        switch (d) {
            case Domain::Integer: return is_number() && num().is_integer();
            case Domain::Real: return is_number();
            case Domain::String: return is_string();
        }
        return false;
    }

    // Human-facing form; strings are quoted to stay unambiguous next to numbers.
    std::string display() const {
        return is_number() ? num().str() : "'" + str() + "'";
    }

    friend bool operator==(const Value& a, const Value& b) { return a.v_ == b.v_; }
    friend std::strong_ordering operator<=>(const Value& a, const Value& b) {
        if (a.v_.index() != b.v_.index())
            return a.v_.index() <=> b.v_.index();
        if (a.is_number()) return a.num() <=> b.num();
        return a.str() <=> b.str();
    }

private:
    explicit Value(Rational r) : v_(std::move(r)) {}
    explicit Value(std::string s) : v_(std::move(s)) {}

    std::variant<Rational, std::string> v_;
};

} // namespace numrepair

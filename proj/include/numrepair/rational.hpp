#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdlib>
#include <optional>
#include <string>
#include <string_view>

namespace numrepair {

// Arbitrary-precision rational, always kept canonical (den > 0, gcd = 1).
// Thin wrapper over mpq_class so GMP stays an implementation detail.
class Rational {
public:
    Rational() : q_(0) {}
    Rational(long n) : q_(n) {} // NOLINT: implicit by design, mirrors int literals
    Rational(long num, long den);

    explicit Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

    // Accepts "-3", "2.75", "7/2". Returns nullopt on anything else.
    static std::optional<Rational> parse(std::string_view text);

    // Canonical form: "p" when integral, else "p/q".
    std::string str() const;

    bool is_integer() const { return q_.get_den() == 1; }
    bool is_zero() const { return sgn(q_) == 0; }
    int sign() const { return sgn(q_); }

    Rational floor() const;
    Rational ceil() const;
    Rational abs() const { return Rational(mpq_class(::abs(q_))); }

    // Requires is_integer() and fit; used only for small counts.
    long to_long() const;

    Rational operator-() const { return Rational(mpq_class(-q_)); }
    Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
    Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
    Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        int c = cmp(a.q_, b.q_);
        return c < 0 ? std::strong_ordering::less
             : c > 0 ? std::strong_ordering::greater
                     : std::strong_ordering::equal;
    }

    const mpq_class& raw() const { return q_; }

private:
    mpq_class q_;
};

} // namespace numrepair

#include "numrepair/rational.hpp"

#include "numrepair/error.hpp"

#include <cctype>

namespace numrepair {

Rational::Rational(long num, long den) : q_(num, den) {
    if (den == 0) fail(Error::Kind::Internal, "rational with zero denominator");
    q_.canonicalize();
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) fail(Error::Kind::Internal, "rational division by zero");
    q_ /= o.q_;
    return *this;
}

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

} // namespace

std::optional<Rational> Rational::parse(std::string_view text) {
    std::string_view s = text;
    bool negative = false;
    if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
        negative = s[0] == '-';
        s.remove_prefix(1);
    }
    if (s.empty()) return std::nullopt;

    mpq_class q;
    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        std::string_view num = s.substr(0, slash);
        std::string_view den = s.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den)) return std::nullopt;
        mpz_class d(std::string(den), 10);
        if (d == 0) return std::nullopt;
        q = mpq_class(mpz_class(std::string(num), 10), d);
    } else if (auto dot = s.find('.'); dot != std::string_view::npos) {
        std::string_view ip = s.substr(0, dot);
        std::string_view fp = s.substr(dot + 1);
        if (!all_digits(ip) || !all_digits(fp)) return std::nullopt;
        mpz_class scale;
        mpz_ui_pow_ui(scale.get_mpz_t(), 10, fp.size());
        mpz_class whole = mpz_class(std::string(ip), 10) * scale
                        + mpz_class(std::string(fp), 10);
        q = mpq_class(whole, scale);
    } else {
        if (!all_digits(s)) return std::nullopt;
        q = mpq_class(mpz_class(std::string(s), 10));
    }
    q.canonicalize();
    if (negative) q = -q;
    return Rational(std::move(q));
}

std::string Rational::str() const {
    return q_.get_str();
}

Rational Rational::floor() const {
    mpz_class r;
    mpz_fdiv_q(r.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
    return Rational(mpq_class(r));
}

Rational Rational::ceil() const {
    mpz_class r;
    mpz_cdiv_q(r.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
    return Rational(mpq_class(r));
}

long Rational::to_long() const {
    if (!is_integer() || !q_.get_num().fits_slong_p())
        fail(Error::Kind::Internal, "rational does not fit a long: " + str());
    return q_.get_num().get_si();
}

} // namespace numrepair

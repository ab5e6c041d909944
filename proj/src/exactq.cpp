#include "qhahn/exactq.hpp"

#include <ostream>

namespace qhahn {

namespace {

mpz_class parse_mpz(std::string_view s, const char* what) {
    if (s.empty())
        throw ParseError(std::string("empty ") + what + " in rational literal");
    // mpz_class(string) accepts leading whitespace and a few bases; be stricter.
    std::size_t i = (s[0] == '+' || s[0] == '-') ? 1 : 0;
    if (i == s.size())
        throw ParseError(std::string("malformed ") + what + " in rational literal");
    for (std::size_t j = i; j < s.size(); ++j)
        if (s[j] < '0' || s[j] > '9')
            throw ParseError(std::string("malformed ") + what + " in rational literal: '" + std::string(s) + "'");
    // GMP does not accept a leading '+'.
    std::string digits(s[0] == '+' ? s.substr(1) : s);
    return mpz_class(digits, 10);
}

} // namespace

Rational::Rational(long num, long den) : Rational(mpz_class((signed long)num), mpz_class((signed long)den)) {}

Rational::Rational(const mpz_class& num, const mpz_class& den) {
    if (sgn(den) == 0)
        throw ParseError("rational with zero denominator");
    v_ = mpq_class(num, den);
    v_.canonicalize();
}

Rational Rational::parse(std::string_view s) {
    auto slash = s.find('/');
    if (slash == std::string_view::npos)
        return Rational(parse_mpz(s, "numerator"), mpz_class(1));
    mpz_class num = parse_mpz(s.substr(0, slash), "numerator");
    std::string_view den_sv = s.substr(slash + 1);
    if (!den_sv.empty() && (den_sv[0] == '+' || den_sv[0] == '-'))
        throw ParseError("denominator must be a positive decimal integer: '" + std::string(s) + "'");
    mpz_class den = parse_mpz(den_sv, "denominator");
    if (sgn(den) <= 0)
        throw ParseError("denominator must be positive: '" + std::string(s) + "'");
    return Rational(num, den);
}

std::string Rational::str() const {
    if (is_integer())
        return v_.get_num().get_str();
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

Rational Rational::inv() const {
    if (is_zero())
        throw Error("inverse of zero");
    return Rational(mpq_class(1) / v_);
}

Rational operator/(const Rational& a, const Rational& b) {
    if (b.is_zero())
        throw Error("rational division by zero");
    return Rational(mpq_class(a.v_ / b.v_));
}

Rational Rational::pow(long e) const {
    if (e == 0)
        return Rational(1);
    const Rational base = e > 0 ? *this : inv();
    unsigned long k = e > 0 ? (unsigned long)e : (unsigned long)(-e);
    mpz_class num, den;
    mpz_pow_ui(num.get_mpz_t(), base.num().get_mpz_t(), k);
    mpz_pow_ui(den.get_mpz_t(), base.den().get_mpz_t(), k);
    return Rational(num, den);
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

Lattice::Lattice(Rational q, Rational omega, bool uniform)
    : q_(std::move(q)), omega_(std::move(omega)), uniform_(uniform) {
    if (uniform_) {
        if (!q_.is_one() || !omega_.is_one())
            throw InvalidLattice("uniform lattice is exactly (q, omega) = (1, 1)");
    } else {
        if (q_.is_zero())
            throw InvalidLattice("lattice requires q != 0");
        if (q_.is_one())
            throw InvalidLattice("q = 1 requires the uniform lattice");
        if (q_ == Rational(-1))
            throw InvalidLattice("|q| = 1 is outside the Hahn operator's domain");
    }
}

Lattice Lattice::dual() const {
    if (uniform_)
        return *this;
    return Lattice(q_.inv(), omega_ / q_, false);
}

Rational qbracket(long n, const Lattice& lat) {
    if (n < 0)
        throw Error("qbracket requires n >= 0");
    if (lat.is_uniform())
        return Rational(n);
    return (lat.q().pow(n) - Rational(1)) / (lat.q() - Rational(1));
}

Rational qfactorial(long n, const Lattice& lat) {
    if (n < 0)
        throw Error("qfactorial requires n >= 0");
    Rational acc(1);
    for (long k = 1; k <= n; ++k)
        acc *= qbracket(k, lat);
    return acc;
}

Rational qpochhammer(const Rational& a, const Lattice& lat, long k) {
    if (k < 0)
        throw Error("qpochhammer requires k >= 0");
    Rational acc(1);
    Rational qj(1);
    for (long j = 0; j < k; ++j) {
        acc *= Rational(1) - a * qj;
        qj *= lat.q();
    }
    return acc;
}

} // namespace qhahn

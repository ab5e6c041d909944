#pragma once

#include <gmpxx.h>

#include <iosfwd>
#include <string>
#include <string_view>

#include "qhahn/errors.hpp"

namespace qhahn {

/**
 * Exact rational scalar.
 *
 * Always stored canonically: numerator and denominator coprime, denominator
 * positive. Every coefficient in the library is one of these; no rounding
 * happens anywhere.
 */
class Rational {
public:
    Rational() : v_(0) {}
    Rational(int n) : v_(n) {}
    Rational(long n) : v_((signed long)n) {}
    Rational(long num, long den);
    explicit Rational(const mpz_class& n) : v_(n) {}
    Rational(const mpz_class& num, const mpz_class& den);

    /// Parses "p" or "p/q" with p a signed and q a positive decimal integer.
    static Rational parse(std::string_view s);

    /// Serializes in lowest terms, omitting "/1" for integers.
    std::string str() const;

    const mpz_class& num() const { return v_.get_num(); }
    const mpz_class& den() const { return v_.get_den(); }

    bool is_zero() const { return sgn(v_) == 0; }
    bool is_one() const { return v_ == 1; }
    bool is_integer() const { return v_.get_den() == 1; }
    int sign() const { return sgn(v_); }

    Rational inv() const;
    Rational pow(long e) const;
    Rational abs() const { return Rational(mpq_class(::abs(v_))); }

    friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.v_)); }
    friend Rational operator+(const Rational& a, const Rational& b) { return Rational(mpq_class(a.v_ + b.v_)); }
    friend Rational operator-(const Rational& a, const Rational& b) { return Rational(mpq_class(a.v_ - b.v_)); }
    friend Rational operator*(const Rational& a, const Rational& b) { return Rational(mpq_class(a.v_ * b.v_)); }
    friend Rational operator/(const Rational& a, const Rational& b);

    Rational& operator+=(const Rational& b) { v_ += b.v_; return *this; }
    Rational& operator-=(const Rational& b) { v_ -= b.v_; return *this; }
    Rational& operator*=(const Rational& b) { v_ *= b.v_; return *this; }
    Rational& operator/=(const Rational& b) { *this = *this / b; return *this; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r);

private:
    explicit Rational(mpq_class v) : v_(std::move(v)) {}
    mpq_class v_;
};

/**
 * The q-linear lattice x(s+1) = q x(s) + omega.
 *
 * Two modes:
 *  - q-mode: q != 0, |q| != 1 (so q != 1 and q != -1);
 *  - uniform mode: exactly (q, omega) = (1, 1), realizing x(s) = s with the
 *    forward difference operator. The uniform flag is part of the value; a
 *    lattice with q = 1 and the flag unset is rejected.
 */
class Lattice {
public:
    Lattice(Rational q, Rational omega, bool uniform);

    static Lattice q_lattice(Rational q, Rational omega) { return Lattice(std::move(q), std::move(omega), false); }
    static Lattice uniform() { return Lattice(Rational(1), Rational(1), true); }

    const Rational& q() const { return q_; }
    const Rational& omega() const { return omega_; }
    bool is_uniform() const { return uniform_; }

    /// The lattice (1/q, omega/q) of the operator L_{1/q, omega/q}.
    /// The uniform lattice is its own dual.
    Lattice dual() const;

    friend bool operator==(const Lattice& a, const Lattice& b) {
        return a.q_ == b.q_ && a.omega_ == b.omega_ && a.uniform_ == b.uniform_;
    }

private:
    Rational q_;
    Rational omega_;
    bool uniform_;
};

/// [n] = (q^n - 1)/(q - 1); equals n on the uniform lattice.
Rational qbracket(long n, const Lattice& lat);

/// [n]! = [1][2]...[n]; empty product is 1.
Rational qfactorial(long n, const Lattice& lat);

/// (a; q)_k = prod_{j=0}^{k-1} (1 - a q^j); empty product is 1.
Rational qpochhammer(const Rational& a, const Lattice& lat, long k);

} // namespace qhahn

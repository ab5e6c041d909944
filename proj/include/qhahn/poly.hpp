#pragma once

#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

#include "qhahn/exactq.hpp"

namespace qhahn {

/**
 * Dense univariate polynomial in the lattice variable x, exact rational
 * coefficients. Index i holds the coefficient of x^i; trailing zeros are
 * never stored, so the zero polynomial has an empty coefficient vector and
 * degree() == -1.
 */
class Poly {
public:
    Poly() = default;
    explicit Poly(const Rational& constant);
    explicit Poly(std::vector<Rational> coeffs);

    static Poly zero() { return Poly(); }
    static Poly one() { return Poly(Rational(1)); }
    static Poly x() { return monomial(1); }
    static Poly monomial(int k, const Rational& c = Rational(1));

    int degree() const { return (int)c_.size() - 1; } // -1 for the zero polynomial
    bool is_zero() const { return c_.empty(); }
    bool is_monic() const { return !c_.empty() && c_.back().is_one(); }
    bool is_constant() const { return c_.size() <= 1; }

    /// Coefficient of x^i; zero beyond the stored degree.
    const Rational& coeff(int i) const;
    Rational leading() const { return c_.empty() ? Rational(0) : c_.back(); }
    const std::vector<Rational>& coeffs() const { return c_; }

    Rational eval(const Rational& x0) const;
    Poly monic() const; // divide by the leading coefficient; zero stays zero

    friend Poly operator-(const Poly& f);
    friend Poly operator+(const Poly& a, const Poly& b);
    friend Poly operator-(const Poly& a, const Poly& b);
    friend Poly operator*(const Poly& a, const Poly& b);
    friend Poly operator*(const Rational& c, const Poly& f);
    friend Poly operator*(const Poly& f, const Rational& c) { return c * f; }

    Poly& operator+=(const Poly& b) { *this = *this + b; return *this; }
    Poly& operator-=(const Poly& b) { *this = *this - b; return *this; }
    Poly& operator*=(const Poly& b) { *this = *this * b; return *this; }

    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    friend std::ostream& operator<<(std::ostream& os, const Poly& f);

private:
    void trim();
    std::vector<Rational> c_;
};

/// Euclidean division: f = g*quot + rem with deg rem < deg g. Requires g != 0.
std::pair<Poly, Poly> divmod(const Poly& f, const Poly& g);

/// Quotient of an exact division; throws NotDivisible when the remainder is nonzero.
Poly exact_divide(const Poly& f, const Poly& g);

/// f(a*x + b).
Poly affine_substitute(const Poly& f, const Rational& a, const Rational& b);

/// f(s+k) in the x variable: composition with the k-fold iterate of x -> qx + omega.
Poly lattice_shift(const Poly& f, long k, const Lattice& lat);

/**
 * The Hahn operator L_{q,omega} f = (f(qx+omega) - f(x)) / ((q-1)x + omega).
 *
 * Computed by expanding the numerator and dividing exactly in the polynomial
 * ring; the division always succeeds because the numerator vanishes at the
 * fixed point of the lattice map. On the uniform lattice this is the forward
 * difference f(x+1) - f(x).
 */
Poly hahn_apply(const Poly& f, const Lattice& lat);

/// L_{1/q, omega/q} f, the operator of the second boxed structure relation.
Poly hahn_apply_dual(const Poly& f, const Lattice& lat);

/// k-fold application of hahn_apply.
Poly iterated_hahn(const Poly& f, long k, const Lattice& lat);

} // namespace qhahn

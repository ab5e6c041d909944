#include "qhahn/poly.hpp"

#include <ostream>

namespace qhahn {

Poly::Poly(const Rational& constant) {
    if (!constant.is_zero())
        c_.push_back(constant);
}

Poly::Poly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

Poly Poly::monomial(int k, const Rational& c) {
    if (c.is_zero())
        return Poly();
    std::vector<Rational> v((std::size_t)k + 1, Rational(0));
    v.back() = c;
    return Poly(std::move(v));
}

void Poly::trim() {
    while (!c_.empty() && c_.back().is_zero())
        c_.pop_back();
}

const Rational& Poly::coeff(int i) const {
    static const Rational kZero(0);
    if (i < 0 || i >= (int)c_.size())
        return kZero;
    return c_[(std::size_t)i];
}

Rational Poly::eval(const Rational& x0) const {
    Rational acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it)
        acc = acc * x0 + *it;
    return acc;
}

Poly Poly::monic() const {
    if (is_zero())
        return *this;
    return leading().inv() * *this;
}

Poly operator-(const Poly& f) {
    std::vector<Rational> v = f.c_;
    for (auto& c : v)
        c = -c;
    return Poly(std::move(v));
}

Poly operator+(const Poly& a, const Poly& b) {
    std::vector<Rational> v(std::max(a.c_.size(), b.c_.size()), Rational(0));
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i < a.c_.size())
            v[i] += a.c_[i];
        if (i < b.c_.size())
            v[i] += b.c_[i];
    }
    return Poly(std::move(v));
}

Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero())
        return Poly();
    std::vector<Rational> v(a.c_.size() + b.c_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
        for (std::size_t j = 0; j < b.c_.size(); ++j)
            v[i + j] += a.c_[i] * b.c_[j];
    return Poly(std::move(v));
}

Poly operator*(const Rational& c, const Poly& f) {
    if (c.is_zero())
        return Poly();
    std::vector<Rational> v = f.c_;
    for (auto& x : v)
        x *= c;
    return Poly(std::move(v));
}

std::ostream& operator<<(std::ostream& os, const Poly& f) {
    if (f.is_zero())
        return os << "0";
    bool first = true;
    for (int i = f.degree(); i >= 0; --i) {
        const Rational& c = f.coeff(i);
        if (c.is_zero())
            continue;
        if (!first)
            os << " + ";
        first = false;
        os << "(" << c << ")";
        if (i >= 1)
            os << "*x";
        if (i >= 2)
            os << "^" << i;
    }
    return os;
}

std::pair<Poly, Poly> divmod(const Poly& f, const Poly& g) {
    if (g.is_zero())
        throw Error("polynomial division by zero");
    Poly rem = f;
    std::vector<Rational> quot;
    const int dg = g.degree();
    if (rem.degree() >= dg)
        quot.assign((std::size_t)(rem.degree() - dg) + 1, Rational(0));
    const Rational lg = g.leading();
    while (!rem.is_zero() && rem.degree() >= dg) {
        const int k = rem.degree() - dg;
        const Rational c = rem.leading() / lg;
        quot[(std::size_t)k] = c;
        rem -= Poly::monomial(k, c) * g;
    }
    return {Poly(std::move(quot)), rem};
}

Poly exact_divide(const Poly& f, const Poly& g) {
    auto [quot, rem] = divmod(f, g);
    if (!rem.is_zero())
        throw NotDivisible("polynomial division leaves a nonzero remainder");
    return quot;
}

Poly affine_substitute(const Poly& f, const Rational& a, const Rational& b) {
    // Horner in (a*x + b).
    Poly arg(std::vector<Rational>{b, a});
    Poly acc;
    for (int i = f.degree(); i >= 0; --i)
        acc = acc * arg + Poly(f.coeff(i));
    return acc;
}

Poly lattice_shift(const Poly& f, long k, const Lattice& lat) {
    if (k == 0)
        return f;
    // The k-fold iterate of x -> qx + omega is x -> q^k x + omega [k];
    // for k < 0 it is x -> q^k x - omega q^k [-k].
    Rational a = lat.q().pow(k);
    Rational b = k > 0 ? lat.omega() * qbracket(k, lat)
                       : -(lat.omega() * a * qbracket(-k, lat));
    return affine_substitute(f, a, b);
}

Poly hahn_apply(const Poly& f, const Lattice& lat) {
    Poly denom(std::vector<Rational>{lat.omega(), lat.q() - Rational(1)});
    if (denom.is_zero())
        throw DegenerateOperator("Hahn operator undefined for (q, omega) = (1, 0)");
    Poly numer = lattice_shift(f, 1, lat) - f;
    return exact_divide(numer, denom);
}

Poly hahn_apply_dual(const Poly& f, const Lattice& lat) { return hahn_apply(f, lat.dual()); }

Poly iterated_hahn(const Poly& f, long k, const Lattice& lat) {
    if (k < 0)
        throw Error("iterated_hahn requires k >= 0");
    Poly g = f;
    for (long i = 0; i < k; ++i)
        g = hahn_apply(g, lat);
    return g;
}

} // namespace qhahn

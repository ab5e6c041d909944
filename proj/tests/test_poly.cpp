#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "qhahn/poly.hpp"

using namespace qhahn;

namespace {

Rational R(const char* s) { return Rational::parse(s); }
Poly P(std::vector<Rational> c) { return Poly(std::move(c)); }

const Lattice kHalfShift = Lattice::q_lattice(R("1/2"), Rational(1));
const Lattice kHalf = Lattice::q_lattice(R("1/2"), Rational(0));
const Lattice kTwoShift = Lattice::q_lattice(Rational(2), Rational(1));
const Lattice kTwo = Lattice::q_lattice(Rational(2), Rational(0));

Poly random_poly(std::mt19937_64& rng, int maxdeg) {
    std::uniform_int_distribution<int> deg(0, maxdeg);
    std::uniform_int_distribution<long> num(-6, 6);
    std::uniform_int_distribution<long> den(1, 4);
    std::vector<Rational> c((std::size_t)deg(rng) + 1, Rational(0));
    for (auto& x : c)
        x = Rational(num(rng), den(rng));
    return Poly(std::move(c));
}

} // namespace

TEST_CASE("degree bookkeeping and trimming") {
    CHECK(Poly().degree() == -1);
    CHECK(Poly(Rational(0)).is_zero());
    CHECK(P({Rational(1), Rational(0), Rational(0)}).degree() == 0);
    CHECK(Poly::x().degree() == 1);
    CHECK((Poly::x() - Poly::x()).is_zero());
    const Poly f = P({Rational(1), Rational(2)});
    const Poly g = P({Rational(0), Rational(0), Rational(3)});
    CHECK((f * g).degree() == f.degree() + g.degree());
}

TEST_CASE("affine_substitute examples") {
    const Poly x2 = Poly::monomial(2);
    CHECK(affine_substitute(x2, Rational(1), Rational(0)) == x2);
    CHECK(affine_substitute(Poly::x(), Rational(2), Rational(1)) == P({Rational(1), Rational(2)}));
    // (x/2 + 1)^2 + 1 = x^2/4 + x + 2
    const Poly f = x2 + Poly::one();
    CHECK(affine_substitute(f, R("1/2"), Rational(1)) == P({Rational(2), Rational(1), R("1/4")}));
}

TEST_CASE("lattice_shift examples") {
    CHECK(lattice_shift(Poly::x(), -1, kTwoShift) == P({R("-1/2"), R("1/2")}));
    const Poly f = P({Rational(3), Rational(-1), Rational(2)});
    CHECK(lattice_shift(f, 0, kTwoShift) == f);
    CHECK(lattice_shift(Poly::x(), 2, kTwoShift) == P({Rational(3), Rational(4)}));
}

TEST_CASE("shift inversion on degree <= 20") {
    std::mt19937_64 rng(7);
    for (const Lattice& lat : {kHalfShift, kTwoShift, Lattice::uniform()}) {
        for (int rep = 0; rep < 8; ++rep) {
            const Poly f = random_poly(rng, 20);
            for (long k : {1L, 2L, 5L}) {
                CHECK(lattice_shift(lattice_shift(f, k, lat), -k, lat) == f);
                CHECK(lattice_shift(lattice_shift(f, -k, lat), k, lat) == f);
            }
        }
    }
}

TEST_CASE("hahn_apply examples") {
    CHECK(hahn_apply(Poly::one(), kHalfShift).is_zero());
    CHECK(hahn_apply(Poly::x(), kHalfShift) == Poly::one());
    // q = 1/2, omega = 1: Delta(x^2) = [2] x + omega = (3/2) x + 1
    CHECK(hahn_apply(Poly::monomial(2), kHalfShift) == P({Rational(1), R("3/2")}));
    CHECK(hahn_apply_dual(Poly::monomial(2), kHalf) == P({Rational(0), Rational(3)}));
    CHECK(hahn_apply_dual(Poly::one(), kHalf).is_zero());
    CHECK(hahn_apply_dual(Poly::x(), kHalf) == Poly::one());
}

TEST_CASE("hahn division is exact for monomials up to degree 30") {
    for (const Lattice& lat : {kHalfShift, kTwoShift, kHalf, kTwo,
                               Lattice::q_lattice(R("2/3"), R("-3/5")), Lattice::uniform()}) {
        for (int n = 0; n <= 30; ++n)
            CHECK_NOTHROW(hahn_apply(Poly::monomial(n), lat));
    }
}

TEST_CASE("leading-coefficient law of the Hahn operator") {
    for (const Lattice& lat : {kHalfShift, kTwoShift, kHalf, Lattice::uniform()}) {
        for (int n = 1; n <= 12; ++n) {
            const Poly d = hahn_apply(Poly::monomial(n), lat);
            CHECK(d.degree() == n - 1);
            CHECK(d.leading() == qbracket(n, lat));
        }
    }
    // At omega = 0 the image of a monomial is exactly [n] x^{n-1}.
    for (int n = 1; n <= 12; ++n)
        CHECK(hahn_apply(Poly::monomial(n), kHalf) == Poly::monomial(n - 1, qbracket(n, kHalf)));
}

TEST_CASE("hahn_apply is linear") {
    std::mt19937_64 rng(11);
    const Poly f = random_poly(rng, 9);
    const Poly g = random_poly(rng, 9);
    const Rational c = R("7/3");
    CHECK(hahn_apply(f + c * g, kHalfShift) ==
          hahn_apply(f, kHalfShift) + c * hahn_apply(g, kHalfShift));
}

TEST_CASE("product rule at omega = 0: Delta(fg) = f(qx) Delta g + g Delta f") {
    std::mt19937_64 rng(13);
    for (const Lattice& lat : {kHalf, kTwo}) {
        for (int rep = 0; rep < 10; ++rep) {
            const Poly f = random_poly(rng, 8);
            const Poly g = random_poly(rng, 8);
            const Poly lhs = hahn_apply(f * g, lat);
            const Poly rhs = affine_substitute(f, lat.q(), Rational(0)) * hahn_apply(g, lat) +
                             g * hahn_apply(f, lat);
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("uniform mode is the forward difference") {
    std::mt19937_64 rng(17);
    for (int rep = 0; rep < 6; ++rep) {
        const Poly f = random_poly(rng, 10);
        const Poly expect = affine_substitute(f, Rational(1), Rational(1)) - f;
        CHECK(hahn_apply(f, Lattice::uniform()) == expect);
    }
}

TEST_CASE("exact_divide examples") {
    const Poly diff_sq = P({Rational(-1), Rational(0), Rational(1)});
    CHECK(exact_divide(diff_sq, P({Rational(-1), Rational(1)})) == P({Rational(1), Rational(1)}));
    CHECK_THROWS_AS(exact_divide(Poly::x(), P({Rational(1), Rational(1)})), NotDivisible);
    CHECK(exact_divide(Poly(), Poly::x()).is_zero());
    CHECK_THROWS_AS(divmod(Poly::x(), Poly()), Error);
}

TEST_CASE("iterated_hahn examples") {
    CHECK(iterated_hahn(Poly::monomial(3), 3, kTwo) == Poly(Rational(21)));
    CHECK(iterated_hahn(Poly::x(), 2, kTwo).is_zero());
    CHECK(iterated_hahn(Poly::monomial(2), 2, kHalfShift) == Poly(R("3/2")));
    CHECK(iterated_hahn(Poly::monomial(2), 0, kHalfShift) == Poly::monomial(2));
}

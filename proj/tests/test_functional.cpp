#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "qhahn/functional.hpp"

using namespace qhahn;

namespace {

Rational R(const char* s) { return Rational::parse(s); }
Poly P(std::vector<Rational> c) { return Poly(std::move(c)); }

const Lattice kHalf = Lattice::q_lattice(R("1/2"), Rational(0));
const Lattice kTwoThirdsShift = Lattice::q_lattice(R("2/3"), Rational(1));

MomentFunctional mf(std::vector<Rational> m, const Lattice& lat = kHalf) {
    return MomentFunctional(std::move(m), lat, "explicit");
}

MomentFunctional harmonic_example(const Lattice& lat, int horizon) {
    std::vector<Rational> m;
    for (int n = 0; n <= horizon; ++n)
        m.push_back(Rational(n + 1));
    return MomentFunctional(std::move(m), lat, "explicit");
}

Poly random_poly(std::mt19937_64& rng, int maxdeg) {
    std::uniform_int_distribution<int> deg(0, maxdeg);
    std::uniform_int_distribution<long> num(-5, 5);
    std::uniform_int_distribution<long> den(1, 3);
    std::vector<Rational> c((std::size_t)deg(rng) + 1, Rational(0));
    for (auto& x : c)
        x = Rational(num(rng), den(rng));
    return Poly(std::move(c));
}

MomentFunctional random_functional(std::mt19937_64& rng, const Lattice& lat, int horizon) {
    std::uniform_int_distribution<long> num(-4, 4);
    std::uniform_int_distribution<long> den(1, 3);
    std::vector<Rational> m;
    m.push_back(Rational(1));
    for (int n = 1; n <= horizon; ++n)
        m.push_back(Rational(num(rng), den(rng)));
    return MomentFunctional(std::move(m), lat, "random");
}

} // namespace

TEST_CASE("pairing") {
    const auto u = mf({Rational(1), Rational(2), Rational(5)});
    CHECK(u.pair(P({Rational(1), Rational(0), Rational(1)})) == Rational(6));
    CHECK(u.pair(Poly()).is_zero());
    const auto sym = mf({Rational(1), Rational(0), Rational(1), Rational(0)});
    CHECK(sym.pair(Poly::monomial(3)).is_zero());
    CHECK_THROWS_AS(u.pair(Poly::monomial(3)), HorizonExceeded);
}

TEST_CASE("apply_delta") {
    const auto u = harmonic_example(kHalf, 6);
    const auto du = apply_delta(u);
    CHECK(du.moment(0).is_zero());
    // q = 1/2, omega = 0: Delta x^2 = [2] x, so (Delta u)_2 = -[2] (u)_1 = -3.
    CHECK(du.moment(2) == Rational(-3));
    CHECK(du.horizon() == u.horizon());

    const auto w = harmonic_example(Lattice::uniform(), 4);
    CHECK(apply_delta(w).moment(1) == -w.moment(0));
}

TEST_CASE("multiply") {
    const auto u = mf({Rational(1), Rational(2), Rational(5)});
    CHECK(multiply(u, Poly::one()).moments() == u.moments());
    CHECK(multiply(u, Poly::x()).moments() == std::vector<Rational>{Rational(2), Rational(5)});
    CHECK(multiply(u, P({Rational(1), Rational(1)})).moments() ==
          std::vector<Rational>{Rational(3), Rational(7)});
    CHECK_THROWS_AS(multiply(u, Poly::monomial(3)), HorizonExceeded);
}

TEST_CASE("divide_linear realizes theta_c") {
    // c = 0 shifts the moments up: ((x)^{-1}u)_n = (u)_{n-1}.
    const auto u = mf({Rational(1), Rational(2), Rational(5)});
    CHECK(divide_linear(u, Rational(0)).moments() ==
          std::vector<Rational>{Rational(0), Rational(1), Rational(2), Rational(5)});
    // c = 1, moments (1,1,1): theta_1(x^2) = x + 1, so moment 2 is 2.
    const auto w = mf({Rational(1), Rational(1), Rational(1)});
    CHECK(divide_linear(w, Rational(1)).moment(2) == Rational(2));
    // theta_0 applied to a delta-at-zero functional annihilates everything above 1.
    const auto d0 = mf({Rational(1), Rational(0), Rational(0), Rational(0)});
    const auto r = divide_linear(d0, Rational(0));
    CHECK(r.moment(0).is_zero());
    CHECK(r.moment(1) == Rational(1));
    CHECK(r.moment(2).is_zero());
}

TEST_CASE("multiply by (x-c) undoes divide_linear exactly") {
    std::mt19937_64 rng(23);
    for (const Rational& c : {Rational(0), Rational(1), R("-2/3")}) {
        const auto u = random_functional(rng, kHalf, 7);
        const auto round = multiply(divide_linear(u, c), Poly::x() - Poly(c));
        CHECK(round.horizon() == u.horizon());
        for (int n = 0; n <= u.horizon(); ++n)
            CHECK(round.moment(n) == u.moment(n));
    }
}

TEST_CASE("delta_of_product matches the direct evaluation order") {
    const auto u = harmonic_example(kHalf, 8);
    SUBCASE("g = 1 reduces to apply_delta") {
        const auto lhs = delta_of_product(Poly::one(), u);
        const auto rhs = apply_delta(u);
        for (int n = 0; n <= lhs.horizon(); ++n)
            CHECK(lhs.moment(n) == rhs.moment(n));
    }
    SUBCASE("random g across lattices") {
        std::mt19937_64 rng(29);
        for (const Lattice& lat : {kHalf, kTwoThirdsShift, Lattice::uniform()}) {
            for (int rep = 0; rep < 12; ++rep) {
                const auto w = random_functional(rng, lat, 10);
                Poly g = random_poly(rng, 4);
                if (g.is_zero())
                    g = Poly::one();
                const auto lhs = delta_of_product(g, w);
                const auto rhs = apply_delta(multiply(w, g));
                REQUIRE(lhs.horizon() == rhs.horizon());
                for (int n = 0; n <= lhs.horizon(); ++n)
                    CHECK(lhs.moment(n) == rhs.moment(n));
            }
        }
    }
}

TEST_CASE("pearson_moments for Phi = 1, Psi = -x at q = 1/2") {
    const PearsonPair pp(Poly::one(), P({Rational(0), Rational(-1)}));
    CHECK(pearson_free_count(pp) == 0);
    const auto u = pearson_moments(pp, kHalf, {}, 10);
    CHECK(u.moment(0) == Rational(1));
    CHECK(u.moment(1).is_zero());
    CHECK(u.moment(2) == Rational(1));
    CHECK(u.moment(3).is_zero());
    CHECK(u.moment(4) == R("7/4"));
    for (int n = 1; n <= 9; n += 2)
        CHECK(u.moment(n).is_zero());
    CHECK_THROWS_AS(pearson_moments(pp, kHalf, {Rational(0)}, 10), WrongFreeCount);
}

TEST_CASE("hankel determinants") {
    CHECK(hankel_dets(mf({Rational(1), Rational(0), Rational(1)}), 1) ==
          std::vector<Rational>{Rational(1), Rational(1)});
    CHECK(hankel_dets(mf({Rational(1), Rational(1), Rational(1)}), 1)[1].is_zero());
    CHECK_THROWS_AS(hankel_dets(mf({Rational(1), Rational(1)}), 1), HorizonExceeded);
}

TEST_CASE("smop_from_moments two-step example") {
    const auto u = mf({Rational(1), Rational(0), Rational(1), Rational(0), Rational(3)});
    const auto seq = smop_from_moments(u, 2);
    CHECK(seq.poly(1) == Poly::x());
    CHECK(seq.poly(2) == P({Rational(-1), Rational(0), Rational(1)}));
    CHECK(seq.beta(0).is_zero());
    CHECK(seq.beta(1).is_zero());
    CHECK(seq.gamma(1) == Rational(1));
}

TEST_CASE("symmetric moments give beta = 0 and gamma_1 = m2") {
    const PearsonPair pp(Poly::one(), P({Rational(0), Rational(-1)}));
    const auto u = pearson_moments(pp, kHalf, {}, 16);
    const auto seq = smop_from_moments(u, 8);
    for (int n = 0; n < 8; ++n)
        CHECK(seq.beta(n).is_zero());
    CHECK(seq.gamma(1) == Rational(1));
}

TEST_CASE("not quasi-definite moments are rejected") {
    const auto u = mf({Rational(1), Rational(1), Rational(1), Rational(1)});
    CHECK_THROWS_AS(smop_from_moments(u, 1), NotQuasiDefinite);
}

TEST_CASE("Favard round-trip and moment recovery") {
    const PearsonPair pp(Poly::one(), P({Rational(0), Rational(-1)}));
    const auto u = pearson_moments(pp, kHalf, {}, 20);
    const auto seq = smop_from_moments(u, 8);

    // Rebuild from the extracted recurrence; must agree coefficient for coefficient.
    std::vector<Poly> rebuilt{Poly::one()};
    for (int n = 0; n < 8; ++n) {
        Poly next = (Poly::x() - Poly(seq.beta(n))) * rebuilt.back();
        if (n >= 1)
            next -= seq.gamma(n) * rebuilt[(std::size_t)n - 1];
        rebuilt.push_back(next);
    }
    for (int n = 0; n <= 8; ++n)
        CHECK(rebuilt[(std::size_t)n] == seq.poly(n));

    // The Favard functional of the extracted recurrence data reproduces the moments.
    std::vector<Rational> gamma;
    for (int n = 1; n <= 7; ++n)
        gamma.push_back(seq.gamma(n));
    const auto v = moments_from_ttrr(std::vector<Rational>(8, Rational(0)), gamma, 8, kHalf, "favard");
    for (int n = 0; n <= 8; ++n)
        CHECK(v.moment(n) == u.moment(n));
}

TEST_CASE("gamma_n equals the Hankel determinant ratio") {
    const PearsonPair pp(Poly::one(), P({Rational(0), Rational(-1)}));
    const auto u = pearson_moments(pp, kHalf, {}, 20);
    const auto seq = smop_from_moments(u, 8);
    const auto dets = hankel_dets(u, 8);
    for (int n = 2; n <= 7; ++n)
        CHECK(seq.gamma(n) * dets[(std::size_t)n - 1] * dets[(std::size_t)n - 1] ==
              dets[(std::size_t)n] * dets[(std::size_t)n - 2]);
    CHECK(seq.gamma(1) * dets[0] * dets[0] == dets[1] * Rational(1));
}

TEST_CASE("dual-sequence identity <r_n^{-1} B_n u, B_m> = delta_nm") {
    const PearsonPair pp(Poly::one(), P({Rational(0), Rational(-1)}));
    const auto u = pearson_moments(pp, kHalf, {}, 20);
    const auto seq = smop_from_moments(u, 6);
    for (int n = 0; n <= 3; ++n) {
        const auto un = multiply(u, seq.norm(n).inv() * seq.poly(n));
        for (int m = 0; m <= 3; ++m)
            CHECK(un.pair(seq.poly(m)) == (n == m ? Rational(1) : Rational(0)));
    }
}

TEST_CASE("expand_in_basis") {
    std::vector<Poly> basis{Poly::one(), Poly::x(), P({Rational(-1), Rational(0), Rational(1)})};
    CHECK(expand_in_basis(basis[2], basis) ==
          std::vector<Rational>{Rational(0), Rational(0), Rational(1)});
    CHECK(expand_in_basis(Poly::monomial(2), basis) ==
          std::vector<Rational>{Rational(1), Rational(0), Rational(1)});
    CHECK(expand_in_basis(Poly(), basis) ==
          std::vector<Rational>{Rational(0), Rational(0), Rational(0)});
    std::vector<Poly> bad{Poly::one(), P({Rational(1), Rational(2)})};
    CHECK_THROWS_AS(expand_in_basis(Poly::x(), bad), BasisNotGradedMonic);
}

TEST_CASE("admissibility screen") {
    const Lattice lat = Lattice::q_lattice(Rational(2), Rational(0));
    CHECK(admissible(PearsonPair(Poly::monomial(2), Poly::x()), lat, 20));
    CHECK(admissible(PearsonPair(Poly::one(), P({Rational(1), Rational(0), Rational(0), Rational(2)})), lat, 20));
    CHECK_FALSE(admissible(PearsonPair(Poly::monomial(2), P({Rational(0), Rational(-2)})), lat, 20));
}

TEST_CASE("solve_pearson_psi recovers the defining Psi") {
    const Poly psi = P({Rational(0), Rational(-1)});
    const PearsonPair pp(Poly::one(), psi);
    const auto u = pearson_moments(pp, kHalf, {}, 20);
    CHECK(solve_pearson_psi(Poly::one(), u, 3, 16) == psi);
}

TEST_CASE("reduce_pair") {
    const Poly psi = P({Rational(0), Rational(-1)});
    const PearsonPair pp(Poly::one(), psi);
    const auto u = pearson_moments(pp, kHalf, {}, 24);

    SUBCASE("Phi = 1 comes back unchanged") {
        auto [mp, cls] = reduce_pair(pp, u, 12);
        CHECK(cls == 0);
        CHECK(mp.phi == Poly::one());
        CHECK(mp.psi == psi);
    }
    SUBCASE("a pair inflated by x reduces back to class 0") {
        // Delta(x u) = ((1 - x^2)/q) u for this functional; q = 1/2.
        const Poly psi_inflated = P({Rational(2), Rational(0), Rational(-2)});
        const PearsonPair inflated(Poly::x(), psi_inflated);
        CHECK(pearson_holds(inflated, u, 18));
        auto [mp, cls] = reduce_pair(inflated, u, 12);
        CHECK(cls == 0);
        CHECK(mp.phi == Poly::one());
        CHECK(mp.psi == psi);
    }
    SUBCASE("a wrong pair is rejected") {
        const PearsonPair wrong(Poly::x(), P({Rational(1), Rational(1)}));
        CHECK_THROWS_AS(reduce_pair(wrong, u, 12), PearsonViolated);
    }
}

TEST_CASE("rational root extraction") {
    // (x - 1/2)(x + 3)^2 x
    const Poly f = (Poly::x() - Poly(R("1/2"))) * (Poly::x() + Poly(Rational(3))) *
                   (Poly::x() + Poly(Rational(3))) * Poly::x();
    auto roots = rational_roots(f);
    std::sort(roots.begin(), roots.end());
    CHECK(roots == std::vector<Rational>{Rational(-3), Rational(-3), Rational(0), R("1/2")});
    CHECK(rational_roots(P({Rational(1), Rational(0), Rational(1)})).empty());
}

#include "qhahn/families.hpp"

#include <algorithm>

namespace qhahn {

std::string family_name(FamilyTag tag) {
    switch (tag) {
    case FamilyTag::BigQJacobi: return "big_q_jacobi";
    case FamilyTag::QLaguerre: return "q_laguerre";
    case FamilyTag::AlSalamCarlitzI: return "al_salam_carlitz_1";
    case FamilyTag::QCharlier: return "q_charlier";
    }
    throw Error("unknown family tag");
}

FamilyTag family_from_name(const std::string& name) {
    if (name == "big_q_jacobi") return FamilyTag::BigQJacobi;
    if (name == "q_laguerre") return FamilyTag::QLaguerre;
    if (name == "al_salam_carlitz_1") return FamilyTag::AlSalamCarlitzI;
    if (name == "q_charlier") return FamilyTag::QCharlier;
    throw ParseError("unknown family '" + name + "'");
}

namespace {

Rational param(const std::map<std::string, Rational>& params, const std::string& key) {
    auto it = params.find(key);
    if (it == params.end())
        throw DegenerateParameters("missing family parameter '" + key + "'");
    return it->second;
}

/// (x; q)_k = prod_{j<k} (1 - q^j x).
Poly x_pochhammer(const Rational& q, int k) {
    Poly acc = Poly::one();
    Rational qj(1);
    for (int j = 0; j < k; ++j) {
        acc *= Poly(std::vector<Rational>{Rational(1), -qj});
        qj *= q;
    }
    return acc;
}

/// prod_{j<k} (x - q^j).
Poly x_minus_qpowers(const Rational& q, int k) {
    Poly acc = Poly::one();
    Rational qj(1);
    for (int j = 0; j < k; ++j) {
        acc *= Poly(std::vector<Rational>{-qj, Rational(1)});
        qj *= q;
    }
    return acc;
}

Rational nonzero(const Rational& r, const char* what) {
    if (r.is_zero())
        throw DegenerateParameters(std::string("vanishing factor in ") + what);
    return r;
}

// Series definitions follow the standard basic hypergeometric forms; the q-Laguerre
// parameter enters as the rational a = q^alpha.

Poly big_q_jacobi_raw(int n, const Rational& a, const Rational& b, const Rational& c, const Rational& q) {
    const Lattice lq = Lattice::q_lattice(q, Rational(0));
    Poly sum;
    const Rational ab = a * b;
    for (int k = 0; k <= n; ++k) {
        const Rational num = qpochhammer(q.pow(-n), lq, k) * qpochhammer(ab * q.pow(n + 1), lq, k);
        const Rational den = nonzero(qpochhammer(a * q, lq, k), "(aq;q)_k") *
                             nonzero(qpochhammer(c * q, lq, k), "(cq;q)_k") *
                             qpochhammer(q, lq, k);
        sum += (num / den * q.pow(k)) * x_pochhammer(q, k);
    }
    return sum;
}

Poly q_laguerre_raw(int n, const Rational& a, const Rational& q) {
    const Lattice lq = Lattice::q_lattice(q, Rational(0));
    if (a.is_zero())
        throw DegenerateParameters("q-Laguerre needs a != 0");
    Poly sum;
    for (int k = 0; k <= n; ++k) {
        const Rational num = qpochhammer(q.pow(-n), lq, k);
        const Rational den = nonzero(qpochhammer(a * q, lq, k), "(aq;q)_k") * qpochhammer(q, lq, k);
        const Rational z = q.pow((long)k * (k - 1) / 2) * (a * q.pow(n + 1)).pow(k);
        sum += Poly::monomial(k, num / den * z);
    }
    return sum;
}

Poly al_salam_carlitz1_raw(int n, const Rational& a, const Rational& q) {
    const Lattice lq = Lattice::q_lattice(q, Rational(0));
    if (a.is_zero())
        throw DegenerateParameters("Al-Salam Carlitz I needs a != 0");
    Poly sum;
    for (int k = 0; k <= n; ++k) {
        const Rational coeff = qpochhammer(q.pow(-n), lq, k) / qpochhammer(q, lq, k) * (q / a).pow(k);
        sum += coeff * x_minus_qpowers(q, k);
    }
    return (-a).pow(n) * q.pow((long)n * (n - 1) / 2) * sum;
}

Poly q_charlier_raw(int n, const Rational& a, const Rational& q) {
    const Lattice lq = Lattice::q_lattice(q, Rational(0));
    if (a.is_zero())
        throw DegenerateParameters("q-Charlier needs a != 0");
    Poly sum;
    for (int k = 0; k <= n; ++k) {
        const Rational coeff = qpochhammer(q.pow(-n), lq, k) / qpochhammer(q, lq, k) *
                               (-(q.pow(n + 1) / a)).pow(k);
        sum += coeff * x_pochhammer(q, k);
    }
    return sum;
}

using Coeff = Table1Row::Coeff;

Table1Row make_row(FamilyTag tag, const std::map<std::string, Rational>& params, const Rational& q) {
    const Lattice lq = Lattice::q_lattice(q, Rational(0)); // brackets in the printed formulas
    const Rational one(1);
    auto br = [lq](int n) { return qbracket(n, lq); };
    const Coeff zero = [](int) { return Rational(0); };

    Table1Row row{tag,
                  params,
                  tag == FamilyTag::QCharlier ? Lattice::q_lattice(q.inv(), Rational(0))
                                              : Lattice::q_lattice(q, Rational(0)),
                  Poly(),
                  Poly(),
                  zero, zero, zero, zero, zero, zero, zero, zero,
                  {},
                  {},
                  false,
                  Poly()};

    switch (tag) {
    case FamilyTag::BigQJacobi: {
        const Rational a = param(params, "a"), b = param(params, "b"), c = param(params, "c");
        const Rational ab = a * b;
        row.phi = (a * q) * Poly(std::vector<Rational>{c, -(b + c), b});
        row.sigmaPoly = q.inv() * (Poly::x() - Poly(a * q)) * (Poly::x() - Poly(c * q));
        row.alphaHat = [=](int n) { return ab * q * br(n); };
        row.alphaTilde = [=](int n) { return q.pow(-n) * br(n); };
        row.betaHat = [=](int n) {
            const Rational num = c + a * b * b * q.pow(2 * n + 1) +
                                 b * (one - c * q.pow(n) - c * q.pow(n + 1) -
                                      a * q.pow(n) * (one + q - c * q.pow(n + 1)));
            return -(a * q * br(n)) * (one - ab * q.pow(n + 1)) * num /
                   ((one - ab * q.pow(2 * n)) * (one - ab * q.pow(2 * n + 2)));
        };
        row.betaTilde = [=](int n) {
            const Rational num = c + a * a * b * q.pow(2 * n + 1) +
                                 a * (one - c * q.pow(n) - c * q.pow(n + 1) -
                                      b * q.pow(n) * (one + q - c * q.pow(n + 1)));
            return q * br(n) * (one - ab * q.pow(n + 1)) * num /
                   ((one - ab * q.pow(2 * n)) * (one - ab * q.pow(2 * n + 2)));
        };
        row.gammaHat = [=](int n) {
            const Rational num = (one - a * q.pow(n)) * (one - b * q.pow(n)) * (one - ab * q.pow(n)) *
                                 (c - ab * q.pow(n)) * (one - c * q.pow(n)) * (one - ab * q.pow(n + 1));
            const Rational den = (one - ab * q.pow(2 * n)) * (one - ab * q.pow(2 * n)) *
                                 (one - ab * q.pow(2 * n - 1)) * (one - ab * q.pow(2 * n + 1));
            return a * q * br(n) * num / den;
        };
        row.gammaTilde = [row, q](int n) { return q.pow(n) * row.gammaHat(n); };
        row.delta = [row, q, ab, one](int n) {
            return -(q.pow(n) * (one - q) / (one - ab * q.pow(n + 1))) * row.betaHat(n);
        };
        row.eps = [row, q, ab, one](int n) {
            return ab * q.pow(2 * n) * (one - q.pow(n - 1)) * (one - q) /
                   ((one - ab * q.pow(n)) * (one - ab * q.pow(n + 1))) * row.gammaHat(n);
        };
        break;
    }
    case FamilyTag::QLaguerre: {
        const Rational a = param(params, "a");
        if (a.is_zero())
            throw DegenerateParameters("q-Laguerre needs a != 0");
        row.phi = Poly(std::vector<Rational>{Rational(0), a, a});
        row.sigmaPoly = Poly(std::vector<Rational>{Rational(0), q.inv()});
        row.alphaHat = [=](int n) { return a * br(n); };
        row.betaHat = [=](int n) { return q.pow(-2 * n - 1) * br(n) * (one + q - a * q.pow(n + 1)); };
        row.gammaHat = [=](int n) { return a.inv() * q.pow(1 - 4 * n) * br(n) * (one - a * q.pow(n)); };
        row.betaTilde = [=](int n) { return q.pow(-n) * br(n); };
        // The table prints a^{-1} q^{1-3n} (1-a q^n) here, but the relation
        // itself (and gamma-tilde = q^n gamma-hat) carries an extra [n].
        row.gammaTilde = [=](int n) { return a.inv() * q.pow(1 - 3 * n) * br(n) * (one - a * q.pow(n)); };
        row.delta = [row, a, q, one](int n) { return a.inv() * (one - q) * row.betaHat(n); };
        row.eps = [row, a, q, one](int n) { return a.inv() * (one - q.pow(n - 1)) * (one - q) * row.gammaHat(n); };
        break;
    }
    case FamilyTag::AlSalamCarlitzI: {
        const Rational a = param(params, "a");
        if (a.is_zero())
            throw DegenerateParameters("Al-Salam Carlitz I needs a != 0");
        row.phi = Poly(a);
        row.sigmaPoly = (Poly::one() - Poly::x()) * (Poly(a) - Poly::x());
        row.alphaTilde = [=](int n) { return q.pow(1 - n) * br(n); };
        row.betaTilde = [=](int n) { return q * (one + a) * br(n); };
        row.gammaTilde = [=](int n) { return a * q.pow(n) * br(n); };
        break;
    }
    case FamilyTag::QCharlier: {
        const Rational a = param(params, "a");
        if (a.is_zero())
            throw DegenerateParameters("q-Charlier needs a != 0");
        row.phi = Poly(std::vector<Rational>{Rational(0), Rational(-1), Rational(1)});
        row.sigmaPoly = Poly(std::vector<Rational>{Rational(0), a / q});
        row.alphaHat = [=](int n) { return br(n); };
        row.betaHat = [=](int n) { return q.pow(-2 * n - 1) * br(n) * (a + a * q + q.pow(n + 1)); };
        row.gammaHat = [=](int n) { return a * q.pow(1 - 4 * n) * br(n) * (a + q.pow(n)); };
        row.betaTilde = [=](int n) { return a * q.pow(-n) * br(n); };
        row.gammaTilde = [row, q](int n) { return q.pow(n) * row.gammaHat(n); };
        row.delta = [row, q, one](int n) { return (one - q) * row.betaHat(n); };
        row.eps = [row, q, one](int n) { return (one - q.pow(n - 1)) * (one - q) * row.gammaHat(n); };
        break;
    }
    }

    // The table pairs (phi, hatted) with L_{q,0} and (sigma, tilded) with
    // L_{1/q,0} throughout; which of the two is the lattice operator depends
    // on the family's lattice. Al-Salam Carlitz I prints no hatted row; its
    // phi-relation coefficients reduce to (0, 0, a [n]).
    switch (tag) {
    case FamilyTag::BigQJacobi:
        row.first = {row.phi, row.alphaHat, row.betaHat, row.gammaHat};
        row.second = {row.sigmaPoly, row.alphaTilde, row.betaTilde, row.gammaTilde};
        row.canonical_phi = row.phi.monic();
        break;
    case FamilyTag::QLaguerre:
        row.first = {row.phi, row.alphaHat, row.betaHat, row.gammaHat};
        row.second = {row.sigmaPoly, row.alphaTilde, row.betaTilde, row.gammaTilde};
        row.canonical_phi = row.phi.monic();
        break;
    case FamilyTag::AlSalamCarlitzI: {
        const Rational a = param(params, "a");
        row.first = {row.phi, zero, zero, [=](int n) { return a * br(n); }};
        row.second = {row.sigmaPoly, row.alphaTilde, row.betaTilde, row.gammaTilde};
        row.canonical_phi = Poly::one();
        break;
    }
    case FamilyTag::QCharlier:
        // Lattice parameter is 1/q, so L_{1/q,0} is the lattice operator here.
        row.first = {row.sigmaPoly, row.alphaTilde, row.betaTilde, row.gammaTilde};
        row.second = {row.phi, row.alphaHat, row.betaHat, row.gammaHat};
        row.third_uses_dual = true;
        row.canonical_phi = row.sigmaPoly.monic();
        break;
    }
    return row;
}

} // namespace

void Table1Row::check_denominators(int N) const {
    try {
        for (int n = 0; n <= N; ++n) {
            alphaHat(n); betaHat(n); gammaHat(n);
            alphaTilde(n); betaTilde(n); gammaTilde(n);
            delta(n); eps(n);
        }
    } catch (const Error& e) {
        throw DegenerateParameters(std::string("table evaluator degenerates: ") + e.what());
    }
}

Poly family_monic_poly(FamilyTag tag, const std::map<std::string, Rational>& params,
                       const Rational& q, int n) {
    Poly raw;
    switch (tag) {
    case FamilyTag::BigQJacobi:
        raw = big_q_jacobi_raw(n, param(params, "a"), param(params, "b"), param(params, "c"), q);
        break;
    case FamilyTag::QLaguerre:
        raw = q_laguerre_raw(n, param(params, "a"), q);
        break;
    case FamilyTag::AlSalamCarlitzI:
        raw = al_salam_carlitz1_raw(n, param(params, "a"), q);
        break;
    case FamilyTag::QCharlier:
        raw = q_charlier_raw(n, param(params, "a"), q);
        break;
    }
    if (raw.degree() != n)
        throw DegenerateParameters(family_name(tag) + " degenerates at degree " + std::to_string(n));
    return raw.monic();
}

Family table1_family(FamilyTag tag, const std::map<std::string, Rational>& params,
                     const Rational& q, int N) {
    Table1Row row = make_row(tag, params, q);
    row.check_denominators(N + 1);

    const int M = 2 * N + 6;
    std::vector<Poly> polys;
    polys.reserve((std::size_t)M + 1);
    for (int n = 0; n <= M; ++n)
        polys.push_back(family_monic_poly(tag, params, q, n));

    // Recurrence extraction doubles as a validation pass: x B_n must expand
    // with nothing below B_{n-1}.
    std::vector<Rational> beta, gamma;
    for (int n = 0; n < M; ++n) {
        const Poly xb = Poly::x() * polys[(std::size_t)n];
        const auto coeffs =
            expand_in_basis(xb, std::span<const Poly>(polys.data(), (std::size_t)n + 2));
        for (int j = 0; j < n - 1; ++j)
            if (!coeffs[(std::size_t)j].is_zero())
                throw Error(family_name(tag) + ": x B_n expansion leaves the three-term band at n = " +
                            std::to_string(n));
        beta.push_back(coeffs[(std::size_t)n]);
        if (n >= 1)
            gamma.push_back(coeffs[(std::size_t)n - 1]);
    }

    MomentFunctional u =
        moments_from_ttrr(beta, gamma, M, row.lat, family_name(tag) + " moments");
    OrthoSequence seq(std::vector<Poly>(polys.begin(), polys.begin() + N + 1), std::move(u));
    return Family{std::move(seq), std::move(row)};
}

QFreudData qfreud_on(const Rational& c1, const Rational& c2, const Rational& K,
                     const Lattice& lat, int N, bool require_defining_relation) {
    if (c1.is_zero())
        throw DegenerateParameters("q-Freud needs c_1 != 0");
    if (c2.is_zero())
        throw DegenerateParameters("q-Freud needs c_2 != 0");
    const Rational q = lat.q();
    const int M = 2 * N + 6;

    std::vector<Rational> c{Rational(0), c1, c2};
    for (int n = 2; n + 1 <= M; ++n) {
        const Rational den = K * q.pow(-n - 1) * c[(std::size_t)n] * c[(std::size_t)n - 1];
        if (den.is_zero())
            throw RecurrenceBreakdown("q-Freud recurrence denominator vanishes at n = " + std::to_string(n));
        const Rational num = q * qbracket(n, lat) * c[(std::size_t)n - 1] +
                             K * q.pow(-n + 1) * c[(std::size_t)n] * c[(std::size_t)n - 1] * c[(std::size_t)n - 2] -
                             qbracket(n - 1, lat) * c[(std::size_t)n];
        c.push_back(num / den);
        if (c.back().is_zero())
            throw RecurrenceBreakdown("q-Freud produces c_" + std::to_string(n + 1) + " = 0");
    }

    std::vector<Rational> a(c.size(), Rational(0));
    for (std::size_t n = 2; n < c.size(); ++n)
        a[n] = K * q.pow(-(long)n) * c[n] * c[n - 1] * c[n - 2];

    std::vector<Poly> polys{Poly::one(), Poly::x()};
    for (int n = 1; n < M; ++n)
        polys.push_back(Poly::x() * polys[(std::size_t)n] - c[(std::size_t)n] * polys[(std::size_t)n - 1]);

    if (require_defining_relation) {
        for (int n = 2; n <= std::min(N + 2, M); ++n) {
            Poly rhs = qbracket(n, lat) * polys[(std::size_t)n - 1];
            if (n >= 3)
                rhs += a[(std::size_t)n] * polys[(std::size_t)n - 3];
            if (hahn_apply(polys[(std::size_t)n], lat) != rhs)
                throw DefiningRelationFailed("Delta P_n = [n] P_{n-1} + a_n P_{n-3} fails at n = " +
                                             std::to_string(n));
        }
    }

    MomentFunctional u = moments_from_ttrr(std::vector<Rational>((std::size_t)M, Rational(0)),
                                           std::vector<Rational>(c.begin() + 1, c.end()), M, lat,
                                           "q-freud moments");
    for (int n = 1; n <= M; n += 2)
        if (!u.moment(n).is_zero())
            throw Error("q-Freud functional fails to be symmetric at moment " + std::to_string(n));

    OrthoSequence seq(std::vector<Poly>(polys.begin(), polys.begin() + N + 1), u);
    const Poly psi = -(K * q.pow(-3)) * polys[3] - c1.inv() * polys[1];

    // The printed moment relation is over-determined; report, never gate.
    bool momrel = true;
    int first_fail = -1;
    const Rational coeff2 = c1.inv() - (qbracket(3, lat) * c2 + a[3]) / (q * (Rational(1) + q));
    for (int n = 0; n + 4 <= M; ++n) {
        const Rational lhs = qbracket(n + 1, lat) * u.moment(n);
        const Rational rhs = K * q.pow(-3) * u.moment(n + 4) + coeff2 * u.moment(n + 2);
        if (lhs != rhs) {
            momrel = false;
            first_fail = n;
            break;
        }
    }

    return QFreudData{std::move(c), std::move(a), K, std::move(seq), psi, momrel, first_fail};
}

QFreudData qfreud(const Rational& c1, const Rational& c2, const Rational& K,
                  const Rational& q, int N) {
    return qfreud_on(c1, c2, K, Lattice::q_lattice(q, Rational(0)), N, true);
}

std::vector<std::vector<Rational>> qfreud_monomial_coeffs(const QFreudData& data, int N) {
    const Lattice& lat = data.seq.u().lattice();
    auto lam_at = [](const std::vector<std::vector<Rational>>& lam, int n, int j) {
        if (n < 0 || j < 0 || j > n)
            return Rational(0);
        return lam[(std::size_t)n][(std::size_t)j];
    };
    std::vector<std::vector<Rational>> lam;
    for (int n = 0; n <= N; ++n) {
        std::vector<Rational> rown((std::size_t)n + 1, Rational(0));
        rown[0] = Rational(1);
        for (int k = 0; 2 * k + 2 <= n; ++k) {
            const Rational den = qbracket(n - 2 * k - 2, lat) - qbracket(n, lat);
            if (den.is_zero())
                throw RecurrenceBreakdown("lambda recurrence denominator vanishes at (n, k) = (" +
                                          std::to_string(n) + ", " + std::to_string(k) + ")");
            const Rational num = qbracket(n, lat) * data.c.at((std::size_t)n - 1) * lam_at(lam, n - 2, 2 * k) +
                                 data.a.at((std::size_t)n) * lam_at(lam, n - 3, 2 * k);
            rown[(std::size_t)(2 * k + 2)] = num / den;
        }
        lam.push_back(std::move(rown));
    }
    return lam;
}

UniformFreudAnalog discrete_freud_analog(const Rational& c1, const Rational& c2,
                                         const Rational& K, int N) {
    if (c1.is_zero() || c2.is_zero())
        throw DegenerateParameters("Freud analog needs c_1, c_2 != 0");
    const Lattice lat = Lattice::uniform();
    // P_3 = x^3 - (c_1 + c_2) x from the symmetric recurrence seed.
    const Poly p3(std::vector<Rational>{Rational(0), -(c1 + c2), Rational(0), Rational(1)});
    const Poly psi = -K * p3 - c1.inv() * Poly::x();
    const PearsonPair pp(Poly::one(), psi);
    MomentFunctional u =
        pearson_moments(pp, lat, {Rational(0), c1}, 2 * N + 6).with_origin("discrete freud analog");
    OrthoSequence seq = smop_from_moments(u, N);
    return UniformFreudAnalog{std::move(seq), pp};
}

Class1Data class1_example(const Poly& psi, const Rational& m1, const Lattice& lat, int N) {
    if (psi.degree() != 2)
        throw WrongDegree("class-1 example needs deg Psi = 2");
    const PearsonPair pp(Poly::one(), psi);
    MomentFunctional u = pearson_moments(pp, lat, {m1}, 2 * N + 6).with_origin("class-1 moments");
    OrthoSequence seq = smop_from_moments(u, N);

    const Rational q = lat.q();
    const Rational C = -(q * psi.leading());
    std::vector<Rational> rho{Rational(0)};
    for (int n = 1; n + 1 <= N - 1; ++n)
        rho.push_back(q.pow(n + 1) / C * qbracket(n + 1, lat) / seq.gamma(n + 1));
    std::vector<Rational> v0;
    for (int n = 0; n + 2 <= N - 1; ++n)
        v0.push_back(seq.gamma(n + 2) * seq.gamma(n + 1) * C / (q.pow(n) * qbracket(n + 2, lat)) +
                     rho.at((std::size_t)n) - q * seq.beta(n) - lat.omega());
    std::vector<Rational> lam{Rational(0)};
    for (int n = 1; n + 1 <= N - 1; ++n)
        lam.push_back(seq.gamma(n + 1) * seq.gamma(n) * C / (q.pow(n) * qbracket(n + 1, lat)));

    return Class1Data{psi, m1, C, std::move(seq), std::move(rho), std::move(v0), std::move(lam)};
}

} // namespace qhahn

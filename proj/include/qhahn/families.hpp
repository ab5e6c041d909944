#pragma once

#include <functional>
#include <map>
#include <string>

#include "qhahn/functional.hpp"

namespace qhahn {

enum class FamilyTag { BigQJacobi, QLaguerre, AlSalamCarlitzI, QCharlier };

std::string family_name(FamilyTag tag);
FamilyTag family_from_name(const std::string& name);

/**
 * One row of the q-classical coefficient table: the structure-relation
 * multipliers phi(x) and sigma(x) and closed-form evaluators for the
 * coefficients of the three relations
 *
 *   first:   M_first(x)  Delta      B_n = A_n B_{n+1} + B_n B_n + G_n B_{n-1}
 *   second:  M_second(x) Delta_dual B_n = ...
 *   third:   B_n = B_n^[1] + delta_n B_{n-1}^[1] + eps_n B_{n-2}^[1]
 *
 * where Delta is the Hahn operator of the family's lattice and Delta_dual the
 * one of its dual lattice. Each evaluator carries the table's printed formula;
 * entries the table omits evaluate to zero. first/second hold the multiplier
 * and coefficient set that actually pair with each operator for this family.
 */
struct Table1Row {
    using Coeff = std::function<Rational(int)>;

    FamilyTag tag;
    std::map<std::string, Rational> params;
    Lattice lat;

    Poly phi;       // multiplier printed as phi(x)
    Poly sigmaPoly; // multiplier printed as sigma(x)

    Coeff alphaHat, betaHat, gammaHat;
    Coeff alphaTilde, betaTilde, gammaTilde;
    Coeff delta, eps;

    struct Relation {
        Poly mult;
        Coeff a, b, g;
    };
    Relation first;  // pairs with the lattice operator Delta
    Relation second; // pairs with the dual operator

    /// The third relation's difference sequence always lives on the L_{q,0}
    /// side; for q-Charlier that is the dual of the family lattice.
    bool third_uses_dual = false;

    /// Monic Phi of the lattice-side Pearson equation (feeds the
    /// characterization machinery).
    Poly canonical_phi;

    /// Degenerate-parameter screen for all evaluators up to index N.
    void check_denominators(int N) const;
};

struct Family {
    OrthoSequence seq;
    Table1Row row;
};

/**
 * Builds a Table 1 family to length N: polynomials from the basic
 * hypergeometric series definitions (monic-normalized), the moment functional
 * recovered through the extracted recurrence, exact orthogonality re-verified.
 * The q-Charlier family lives on the lattice (1/q, 0); the others on (q, 0).
 */
Family table1_family(FamilyTag tag, const std::map<std::string, Rational>& params,
                     const Rational& q, int N);

/// Monic member of degree n, straight from the series definition.
Poly family_monic_poly(FamilyTag tag, const std::map<std::string, Rational>& params,
                       const Rational& q, int n);

/**
 * q-Freud data: coefficients c_n of the symmetric recurrence
 * x P_n = P_{n+1} + c_n P_{n-1} solved from the string equation
 *   q [n] c_{n-1} + K q^{-n+1} c_n c_{n-1} c_{n-2}
 *     = [n-1] c_n + K q^{-n-1} c_{n+1} c_n c_{n-1},
 * a_n = K q^{-n} c_n c_{n-1} c_{n-2}, and the lowering relation
 * Delta P_n = [n] P_{n-1} + a_n P_{n-3} re-verified exactly for every n.
 */
struct QFreudData {
    std::vector<Rational> c; // c_0 = 0, c_1, ..., indexed by n
    std::vector<Rational> a; // a_n for n >= 2 (a[0], a[1] unused zeros)
    Rational K;
    OrthoSequence seq;
    Poly psi;                 // -K q^{-3} P_3 - c_1^{-1} P_1
    bool momrel_holds;        // the printed moment relation, reported only
    int momrel_first_failure; // -1 when it holds
};

QFreudData qfreud(const Rational& c1, const Rational& c2, const Rational& K,
                  const Rational& q, int N);

/// Same construction on an arbitrary lattice (used for the uniform-mode analog).
QFreudData qfreud_on(const Rational& c1, const Rational& c2, const Rational& K,
                     const Lattice& lat, int N, bool require_defining_relation);

/**
 * Discrete (uniform-lattice) Freud analog: the class-2 pair Phi = 1,
 * Psi = -K P_3 - c_1^{-1} P_1 assembled from the q = 1 recurrence data, with
 * moments generated from the Pearson equation (free moments (u)_1 = 0,
 * (u)_2 = c_1). The literal lowering relation Delta P_n = n P_{n-1} + a_n P_{n-3}
 * cannot survive at omega = 1 (Delta x^2 = 2x + 1 already breaks it), so the
 * uniform analog is defined through the Pearson side.
 */
struct UniformFreudAnalog {
    OrthoSequence seq;
    PearsonPair pp;
};

UniformFreudAnalog discrete_freud_analog(const Rational& c1, const Rational& c2,
                                         const Rational& K, int N);

/// Monomial coefficients lambda_{n,j} of P_n(x) = sum_j lambda_{n,j} x^{n-j},
/// generated by the even-index recurrence; must match the polynomials exactly.
std::vector<std::vector<Rational>> qfreud_monomial_coeffs(const QFreudData& data, int N);

/**
 * The class-1 example: Phi = 1, deg Psi = 2, moments from the Pearson
 * recurrence with one free moment m1, plus the example's closed-form
 * coefficient sequences rho_n, v_{n,0}, lambda_{n,n-1}.
 */
struct Class1Data {
    Poly psi;
    Rational m1;
    Rational C; // -q * leading coefficient of psi
    OrthoSequence seq;
    std::vector<Rational> rho; // rho_0 = 0, rho_n for n >= 1
    std::vector<Rational> v0;  // v_{n,0}
    std::vector<Rational> lam; // lambda_{n,n-1}, entry 0 unused zero
};

Class1Data class1_example(const Poly& psi, const Rational& m1, const Lattice& lat, int N);

} // namespace qhahn

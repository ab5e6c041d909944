#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qhahn/poly.hpp"

namespace qhahn {

/**
 * A moment functional known through the finite prefix (u)_0 .. (u)_horizon of
 * its moments. Functionals never extend themselves: any pairing that would
 * read past the horizon throws HorizonExceeded instead of truncating.
 */
class MomentFunctional {
public:
    MomentFunctional(std::vector<Rational> moments, Lattice lat, std::string origin);

    int horizon() const { return (int)m_.size() - 1; }
    const Rational& moment(int n) const;
    const std::vector<Rational>& moments() const { return m_; }
    const Lattice& lattice() const { return lat_; }
    const std::string& origin() const { return origin_; }

    /// <u, f> = sum_i coeff_i(f) (u)_i. Throws HorizonExceeded for deg f > horizon.
    Rational pair(const Poly& f) const;

    MomentFunctional truncated(int new_horizon) const;
    MomentFunctional with_origin(std::string origin) const;

private:
    std::vector<Rational> m_;
    Lattice lat_;
    std::string origin_;
};

/// <Delta u, f> := -<u, Delta f>. The horizon is preserved.
MomentFunctional apply_delta(const MomentFunctional& u);

/// <g u, f> := <u, g f>. The horizon shrinks by deg g.
MomentFunctional multiply(const MomentFunctional& u, const Poly& g);

/// <(x-c)^{-1} u, f> := <u, theta_c(f)> with theta_c(f) = (f(x) - f(c))/(x - c).
MomentFunctional divide_linear(const MomentFunctional& u, const Rational& c);

/// Pointwise sum on the common horizon (lattices must agree).
MomentFunctional add(const MomentFunctional& a, const MomentFunctional& b);

/**
 * The product rule at the functional level:
 *   Delta(g u) = g(q^{-1}(x - omega)) Delta u + Delta(g(q^{-1}(x - omega))) u,
 * evaluated through the right-hand side. Must agree with
 * apply_delta(multiply(u, g)) exactly; that equality is itself under test.
 */
MomentFunctional delta_of_product(const Poly& g, const MomentFunctional& u);

/**
 * Admissible pair (Phi, Psi) of a Pearson equation Delta(Phi u) = Psi u.
 * Phi monic of degree t, deg Psi = p >= 1; sigma = max(t-2, p-1).
 */
struct PearsonPair {
    PearsonPair(Poly phi_in, Poly psi_in);

    Poly phi;
    Poly psi;

    int t() const { return phi.degree(); }
    int p() const { return psi.degree(); }
    int sigma() const { return std::max(t() - 2, p() - 1); }
    /// The piecewise band exponent: sigma(0) = p-1, sigma(n) = sigma for n >= 1.
    int sigma_of(int n) const { return n == 0 ? p() - 1 : sigma(); }
};

/**
 * Monic orthogonal sequence B_0..B_N for a quasi-definite functional, with the
 * TTRR data extracted and every stored invariant re-verified at construction:
 * graded monic degrees, exact orthogonality within the horizon, nonzero norms
 * r_n = <u, B_n^2>, the exact three-term recurrence
 * B_{n+1} = (x - beta_n) B_n - gamma_n B_{n-1}, and gamma_n != 0.
 */
class OrthoSequence {
public:
    OrthoSequence(std::vector<Poly> polys, MomentFunctional u);

    int N() const { return (int)polys_.size() - 1; }
    const Poly& poly(int n) const { return polys_.at((std::size_t)n); }
    const std::vector<Poly>& polys() const { return polys_; }
    const Rational& beta(int n) const { return beta_.at((std::size_t)n); }     // 0..N-1
    const Rational& gamma(int n) const { return gamma_.at((std::size_t)n - 1); } // 1..N-1
    const Rational& norm(int n) const { return norms_.at((std::size_t)n); }    // 0..N
    const MomentFunctional& u() const { return u_; }

private:
    std::vector<Poly> polys_;
    std::vector<Rational> beta_;
    std::vector<Rational> gamma_;
    std::vector<Rational> norms_;
    MomentFunctional u_;
};

/// det H_0 .. det H_N of the leading principal Hankel submatrices H_n = ((u)_{i+j}).
std::vector<Rational> hankel_dets(const MomentFunctional& u, int N);

/// Monic orthogonal polynomials via the triangular moment system (Gram-Schmidt
/// on the moment matrix). Throws NotQuasiDefinite when a system is singular.
OrthoSequence smop_from_moments(const MomentFunctional& u, int N);

/// Coefficients c_k with f = sum c_k basis[k], for a graded monic basis.
std::vector<Rational> expand_in_basis(const Poly& f, std::span<const Poly> basis);

/**
 * Admissibility screen. Pairs with p != t-1 are admissible outright. For
 * p = t-1 the normalized top datum a = [Delta]^p Psi(0) / [p]! is evaluated at
 * the working q and the pair is rejected only for a in {-1, ..., -Nbound}.
 */
bool admissible(const PearsonPair& pp, const Lattice& lat, int Nbound);

/**
 * Admissibility against the exact excluded set at the working q,
 * {-[1], ..., -[Nbound]}: these brackets are the denominators the condition
 * protects (the integer set above is their q -> 1 limit and can false-reject;
 * e.g. lc Psi = -2 is harmless whenever [n] != 2 for all n). The reduction and
 * the theorem verifiers use this form.
 */
bool admissible_exact(const PearsonPair& pp, const Lattice& lat, int Nbound);

/// Number of free low-order moments in the generic degree pattern:
/// max(p, t-1) - 1 (indices 1 .. max(p, t-1) - 1).
int pearson_free_count(const PearsonPair& pp);

/**
 * The moment indices the Pearson constraints leave undetermined, derived per
 * instance by exact elimination of <Delta(Phi u) - Psi u, x^n> = 0 over
 * (u)_1..(u)_N. Equals {1, ..., max(p, t-1) - 1} in the generic pattern but
 * can differ when leading terms cancel (e.g. deg Phi >= deg Psi + 2).
 */
std::vector<int> pearson_free_indices(const PearsonPair& pp, const Lattice& lat, int N);

/**
 * Moments of the functional defined by <Delta(Phi u) - Psi u, x^n> = 0 for all
 * n, with (u)_0 = 1 and the undetermined moments supplied in `free`, ordered
 * by ascending index as reported by pearson_free_indices. Inconsistent
 * constraint systems raise SingularRecurrence; every generated moment is
 * re-verified through the functional-calculus path before returning.
 */
MomentFunctional pearson_moments(const PearsonPair& pp, const Lattice& lat,
                                 const std::vector<Rational>& free, int N);

/// Largest n for which <Delta(Phi u) - Psi u, x^n> is computable, or -1.
int pearson_checkable_to(const PearsonPair& pp, const MomentFunctional& u);

/// Checks Delta(Phi u) = Psi u on moments 0..upto (clipped to the horizon).
bool pearson_holds(const PearsonPair& pp, const MomentFunctional& u, int upto);

/**
 * The unique polynomial Psi with Delta(Phi u) = Psi u and deg Psi <= pmax, if
 * one exists; solved from the Hankel system and verified against all further
 * computable moment constraints up to ncheck. Throws NoPearsonPair otherwise.
 */
Poly solve_pearson_psi(const Poly& phi, const MomentFunctional& u, int pmax, int ncheck);

/**
 * Class reduction: tries every monic divisor of Phi assembled from its
 * rational linear factors, solves for the matching Psi, and returns the
 * admissible pair minimizing max(deg Phi - 2, deg Psi - 1) together with that
 * class. Two distinct minimizers raise NonUniqueMinimalPair.
 */
std::pair<PearsonPair, int> reduce_pair(const PearsonPair& pp, const MomentFunctional& u, int Ncheck);

/// Moments of the Favard functional of a monic TTRR, normalized to (u)_0 = 1.
/// Needs beta_0..beta_{horizon-1} and gamma_1..gamma_{horizon-1}.
MomentFunctional moments_from_ttrr(const std::vector<Rational>& beta,
                                   const std::vector<Rational>& gamma, int horizon,
                                   const Lattice& lat, std::string origin);

/// Rational roots of f with multiplicity (exhaustive over divisor candidates).
std::vector<Rational> rational_roots(const Poly& f);

/// Exact determinant (Gaussian elimination over the rationals).
Rational determinant(std::vector<std::vector<Rational>> m);

/// Solves the square system a x = rhs exactly; empty optional when singular.
std::optional<std::vector<Rational>> solve_linear(std::vector<std::vector<Rational>> a,
                                                  std::vector<Rational> rhs);

} // namespace qhahn

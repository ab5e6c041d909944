#include "qhahn/functional.hpp"

#include <algorithm>
#include <climits>
#include <map>
#include <set>

namespace qhahn {

MomentFunctional::MomentFunctional(std::vector<Rational> moments, Lattice lat, std::string origin)
    : m_(std::move(moments)), lat_(std::move(lat)), origin_(std::move(origin)) {
    if (m_.empty())
        throw Error("a moment functional stores at least (u)_0");
}

const Rational& MomentFunctional::moment(int n) const {
    if (n < 0 || n > horizon())
        throw HorizonExceeded("moment " + std::to_string(n) + " beyond horizon " + std::to_string(horizon()));
    return m_[(std::size_t)n];
}

Rational MomentFunctional::pair(const Poly& f) const {
    if (f.degree() > horizon())
        throw HorizonExceeded("pairing needs moment " + std::to_string(f.degree()) +
                              " beyond horizon " + std::to_string(horizon()));
    Rational acc(0);
    for (int i = 0; i <= f.degree(); ++i)
        acc += f.coeff(i) * m_[(std::size_t)i];
    return acc;
}

MomentFunctional MomentFunctional::truncated(int new_horizon) const {
    if (new_horizon < 0 || new_horizon > horizon())
        throw HorizonExceeded("cannot truncate to horizon " + std::to_string(new_horizon));
    return MomentFunctional(std::vector<Rational>(m_.begin(), m_.begin() + new_horizon + 1), lat_, origin_);
}

MomentFunctional MomentFunctional::with_origin(std::string origin) const {
    return MomentFunctional(m_, lat_, std::move(origin));
}

MomentFunctional apply_delta(const MomentFunctional& u) {
    std::vector<Rational> m;
    m.reserve((std::size_t)u.horizon() + 1);
    for (int n = 0; n <= u.horizon(); ++n)
        m.push_back(-u.pair(hahn_apply(Poly::monomial(n), u.lattice())));
    return MomentFunctional(std::move(m), u.lattice(), "delta(" + u.origin() + ")");
}

MomentFunctional multiply(const MomentFunctional& u, const Poly& g) {
    if (g.degree() > u.horizon())
        throw HorizonExceeded("multiply needs horizon >= deg g");
    const int new_h = u.horizon() - std::max(g.degree(), 0);
    std::vector<Rational> m;
    m.reserve((std::size_t)new_h + 1);
    for (int n = 0; n <= new_h; ++n) {
        Rational acc(0);
        for (int j = 0; j <= g.degree(); ++j)
            acc += g.coeff(j) * u.moment(n + j);
        m.push_back(acc);
    }
    return MomentFunctional(std::move(m), u.lattice(), "mul(" + u.origin() + ")");
}

MomentFunctional divide_linear(const MomentFunctional& u, const Rational& c) {
    // theta_c(x^n) = sum_{i<n} c^{n-1-i} x^i, so the result's moment n only
    // needs (u)_0..(u)_{n-1}: one extra moment is genuinely computable.
    const int new_h = u.horizon() + 1;
    std::vector<Rational> m;
    m.reserve((std::size_t)new_h + 1);
    m.push_back(Rational(0));
    for (int n = 1; n <= new_h; ++n) {
        Rational acc(0);
        Rational cp(1);
        for (int i = n - 1; i >= 0; --i) {
            acc += cp * u.moment(i);
            cp *= c;
        }
        m.push_back(acc);
    }
    return MomentFunctional(std::move(m), u.lattice(), "divlin(" + u.origin() + ")");
}

MomentFunctional add(const MomentFunctional& a, const MomentFunctional& b) {
    if (!(a.lattice() == b.lattice()))
        throw Error("adding functionals over different lattices");
    const int h = std::min(a.horizon(), b.horizon());
    std::vector<Rational> m;
    m.reserve((std::size_t)h + 1);
    for (int n = 0; n <= h; ++n)
        m.push_back(a.moment(n) + b.moment(n));
    return MomentFunctional(std::move(m), a.lattice(), "sum");
}

MomentFunctional delta_of_product(const Poly& g, const MomentFunctional& u) {
    const Poly g_back = lattice_shift(g, -1, u.lattice());
    MomentFunctional lhs = multiply(apply_delta(u), g_back);
    MomentFunctional rhs = multiply(u, hahn_apply(g_back, u.lattice()));
    return add(lhs, rhs).with_origin("delta_of_product(" + u.origin() + ")");
}

PearsonPair::PearsonPair(Poly phi_in, Poly psi_in) : phi(std::move(phi_in)), psi(std::move(psi_in)) {
    if (!phi.is_monic())
        throw Error("Pearson pair requires a monic Phi");
    if (psi.degree() < 1)
        throw WrongDegree("Pearson pair requires deg Psi >= 1");
}

OrthoSequence::OrthoSequence(std::vector<Poly> polys, MomentFunctional u)
    : polys_(std::move(polys)), u_(std::move(u)) {
    if (polys_.empty())
        throw Error("empty orthogonal sequence");
    const int N = (int)polys_.size() - 1;
    for (int n = 0; n <= N; ++n)
        if (polys_[(std::size_t)n].degree() != n || !polys_[(std::size_t)n].is_monic())
            throw Error("sequence member " + std::to_string(n) + " is not monic of degree " + std::to_string(n));
    if (u_.horizon() < 2 * N)
        throw HorizonExceeded("orthogonal sequence of length " + std::to_string(N) +
                              " needs horizon >= " + std::to_string(2 * N));

    for (int n = 0; n <= N; ++n) {
        Rational r = u_.pair(polys_[(std::size_t)n] * polys_[(std::size_t)n]);
        if (r.is_zero())
            throw NotQuasiDefinite("<u, B_" + std::to_string(n) + "^2> = 0");
        norms_.push_back(std::move(r));
    }
    for (int n = 0; n <= N; ++n)
        for (int m = n + 1; m <= N; ++m)
            if (!u_.pair(polys_[(std::size_t)n] * polys_[(std::size_t)m]).is_zero())
                throw Error("orthogonality fails at <u, B_" + std::to_string(n) + " B_" + std::to_string(m) + ">");

    for (int n = 0; n + 1 <= N; ++n) {
        beta_.push_back(u_.pair(Poly::x() * polys_[(std::size_t)n] * polys_[(std::size_t)n]) / norms_[(std::size_t)n]);
        if (n >= 1)
            gamma_.push_back(norms_[(std::size_t)n] / norms_[(std::size_t)n - 1]);
    }
    for (std::size_t i = 0; i < gamma_.size(); ++i)
        if (gamma_[i].is_zero())
            throw NotQuasiDefinite("gamma_" + std::to_string(i + 1) + " = 0");

    // TTRR must hold coefficient-for-coefficient, not only in pairings.
    for (int n = 0; n + 1 <= N; ++n) {
        Poly rhs = (Poly::x() - Poly(beta_[(std::size_t)n])) * polys_[(std::size_t)n];
        if (n >= 1)
            rhs -= gamma_[(std::size_t)n - 1] * polys_[(std::size_t)n - 1];
        if (rhs != polys_[(std::size_t)n + 1])
            throw Error("three-term recurrence fails at n = " + std::to_string(n));
    }
}

std::vector<Rational> hankel_dets(const MomentFunctional& u, int N) {
    if (u.horizon() < 2 * N)
        throw HorizonExceeded("hankel_dets needs horizon >= 2N");
    std::vector<Rational> dets;
    dets.reserve((std::size_t)N + 1);
    for (int n = 0; n <= N; ++n) {
        std::vector<std::vector<Rational>> m((std::size_t)n + 1, std::vector<Rational>((std::size_t)n + 1));
        for (int i = 0; i <= n; ++i)
            for (int j = 0; j <= n; ++j)
                m[(std::size_t)i][(std::size_t)j] = u.moment(i + j);
        dets.push_back(determinant(std::move(m)));
    }
    return dets;
}

Rational determinant(std::vector<std::vector<Rational>> m) {
    const std::size_t n = m.size();
    Rational det(1);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && m[piv][col].is_zero())
            ++piv;
        if (piv == n)
            return Rational(0);
        if (piv != col) {
            std::swap(m[piv], m[col]);
            det = -det;
        }
        det *= m[col][col];
        const Rational inv = m[col][col].inv();
        for (std::size_t r = col + 1; r < n; ++r) {
            if (m[r][col].is_zero())
                continue;
            const Rational f = m[r][col] * inv;
            for (std::size_t c = col; c < n; ++c)
                m[r][c] -= f * m[col][c];
        }
    }
    return det;
}

std::optional<std::vector<Rational>> solve_linear(std::vector<std::vector<Rational>> a,
                                                  std::vector<Rational> rhs) {
    const std::size_t n = a.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && a[piv][col].is_zero())
            ++piv;
        if (piv == n)
            return std::nullopt;
        if (piv != col) {
            std::swap(a[piv], a[col]);
            std::swap(rhs[piv], rhs[col]);
        }
        const Rational inv = a[col][col].inv();
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || a[r][col].is_zero())
                continue;
            const Rational f = a[r][col] * inv;
            for (std::size_t c = col; c < n; ++c)
                a[r][c] -= f * a[col][c];
            rhs[r] -= f * rhs[col];
        }
    }
    std::vector<Rational> x(n);
    for (std::size_t i = 0; i < n; ++i)
        x[i] = rhs[i] / a[i][i];
    return x;
}

OrthoSequence smop_from_moments(const MomentFunctional& u, int N) {
    if (u.horizon() < 2 * N)
        throw HorizonExceeded("smop_from_moments needs horizon >= 2N");
    std::vector<Poly> polys;
    polys.push_back(Poly::one());
    for (int n = 1; n <= N; ++n) {
        // B_n = x^n + sum_{k<n} c_k x^k with <u, B_n x^j> = 0 for j < n.
        std::vector<std::vector<Rational>> a((std::size_t)n, std::vector<Rational>((std::size_t)n));
        std::vector<Rational> rhs((std::size_t)n);
        for (int j = 0; j < n; ++j) {
            for (int k = 0; k < n; ++k)
                a[(std::size_t)j][(std::size_t)k] = u.moment(j + k);
            rhs[(std::size_t)j] = -u.moment(j + n);
        }
        auto c = solve_linear(std::move(a), std::move(rhs));
        if (!c)
            throw NotQuasiDefinite("moment system singular at degree " + std::to_string(n));
        c->push_back(Rational(1));
        polys.push_back(Poly(std::move(*c)));
    }
    return OrthoSequence(std::move(polys), u);
}

std::vector<Rational> expand_in_basis(const Poly& f, std::span<const Poly> basis) {
    for (std::size_t k = 0; k < basis.size(); ++k)
        if (basis[k].degree() != (int)k || !basis[k].is_monic())
            throw BasisNotGradedMonic("basis member " + std::to_string(k) + " is not monic of degree " + std::to_string(k));
    if (f.degree() >= (int)basis.size())
        throw BasisNotGradedMonic("basis too short for deg f = " + std::to_string(f.degree()));
    std::vector<Rational> out(basis.size(), Rational(0));
    Poly residual = f;
    for (int k = f.degree(); k >= 0; --k) {
        const Rational c = residual.coeff(k);
        if (!c.is_zero()) {
            out[(std::size_t)k] = c;
            residual -= c * basis[(std::size_t)k];
        }
    }
    return out;
}

bool admissible(const PearsonPair& pp, const Lattice& lat, int Nbound) {
    if (pp.p() != pp.t() - 1)
        return true;
    const Rational a = iterated_hahn(pp.psi, pp.p(), lat).coeff(0) / qfactorial(pp.p(), lat);
    if (!a.is_integer() || a.sign() >= 0)
        return true;
    return -a > Rational(Nbound);
}

bool admissible_exact(const PearsonPair& pp, const Lattice& lat, int Nbound) {
    if (pp.p() != pp.t() - 1)
        return true;
    const Rational a = iterated_hahn(pp.psi, pp.p(), lat).coeff(0) / qfactorial(pp.p(), lat);
    for (int n = 1; n <= Nbound; ++n)
        if (a == -qbracket(n, lat))
            return false;
    return true;
}

int pearson_free_count(const PearsonPair& pp) { return std::max(pp.p(), pp.t() - 1) - 1; }

namespace {

/// Phi * Delta(x^n) + Psi * x^n: <u, .> = 0 is the n-th Pearson moment constraint.
Poly pearson_constraint_poly(const PearsonPair& pp, const Lattice& lat, int n) {
    return pp.phi * hahn_apply(Poly::monomial(n), lat) + pp.psi * Poly::monomial(n);
}

/**
 * Row-reduces the Pearson constraints over the unknowns (u)_1..(u)_N, pivoting
 * each row on its highest-index unknown. Generically row n pins (u)_{n+d} with
 * d = max(p, t-1); the elimination also covers the patterns where leading
 * terms cancel (deg Phi >= deg Psi + 2 at n = 0). Returns full reduced rows,
 * their pivot columns, and the free columns.
 */
struct PearsonSystem {
    std::vector<std::vector<Rational>> rows; // index 0 = rhs for (u)_0 = 1, 1..N unknowns
    std::vector<int> pivots;                 // pivot column per kept row
    std::vector<int> free_cols;              // ascending
};

PearsonSystem reduce_pearson_system(const PearsonPair& pp, const Lattice& lat, int N) {
    PearsonSystem sys;
    for (int n = 0; n <= N; ++n) {
        const Poly g = pearson_constraint_poly(pp, lat, n);
        if (g.degree() > N)
            break; // later constraints involve moments past the horizon
        std::vector<Rational> row((std::size_t)N + 1, Rational(0));
        for (int i = 0; i <= g.degree(); ++i)
            row[(std::size_t)i] = g.coeff(i);
        // Eliminate previous pivots.
        for (std::size_t k = 0; k < sys.rows.size(); ++k) {
            const int p = sys.pivots[k];
            if (row[(std::size_t)p].is_zero())
                continue;
            const Rational f = row[(std::size_t)p] / sys.rows[k][(std::size_t)p];
            for (int c = 0; c <= N; ++c)
                row[(std::size_t)c] -= f * sys.rows[k][(std::size_t)c];
        }
        int piv = N;
        while (piv >= 1 && row[(std::size_t)piv].is_zero())
            --piv;
        if (piv == 0) {
            if (!row[0].is_zero())
                throw SingularRecurrence("Pearson constraint " + std::to_string(n) +
                                         " is inconsistent with (u)_0 = 1");
            continue; // redundant row
        }
        sys.rows.push_back(std::move(row));
        sys.pivots.push_back(piv);
    }
    // Full reduction so each pivot row touches only its pivot and free columns.
    for (std::size_t k = 0; k < sys.rows.size(); ++k)
        for (std::size_t j = 0; j < sys.rows.size(); ++j) {
            if (j == k || sys.rows[j][(std::size_t)sys.pivots[k]].is_zero())
                continue;
            const Rational f =
                sys.rows[j][(std::size_t)sys.pivots[k]] / sys.rows[k][(std::size_t)sys.pivots[k]];
            for (int c = 0; c <= N; ++c)
                sys.rows[j][(std::size_t)c] -= f * sys.rows[k][(std::size_t)c];
        }
    std::vector<bool> pivoted((std::size_t)N + 1, false);
    for (int p : sys.pivots)
        pivoted[(std::size_t)p] = true;
    for (int c = 1; c <= N; ++c)
        if (!pivoted[(std::size_t)c])
            sys.free_cols.push_back(c);
    return sys;
}

} // namespace

std::vector<int> pearson_free_indices(const PearsonPair& pp, const Lattice& lat, int N) {
    return reduce_pearson_system(pp, lat, N).free_cols;
}

MomentFunctional pearson_moments(const PearsonPair& pp, const Lattice& lat,
                                 const std::vector<Rational>& free, int N) {
    const PearsonSystem sys = reduce_pearson_system(pp, lat, N);
    if (free.size() != sys.free_cols.size()) {
        std::string idx;
        for (int c : sys.free_cols)
            idx += (idx.empty() ? "" : ", ") + std::to_string(c);
        throw WrongFreeCount("pair (t=" + std::to_string(pp.t()) + ", p=" + std::to_string(pp.p()) +
                             ") leaves " + std::to_string(sys.free_cols.size()) +
                             " free moments (indices " + idx + "), got " +
                             std::to_string(free.size()));
    }

    std::vector<Rational> m((std::size_t)N + 1, Rational(0));
    m[0] = Rational(1);
    for (std::size_t i = 0; i < free.size(); ++i)
        m[(std::size_t)sys.free_cols[i]] = free[i];
    for (std::size_t k = 0; k < sys.rows.size(); ++k) {
        const int p = sys.pivots[k];
        Rational acc = sys.rows[k][0]; // the (u)_0 = 1 contribution
        for (int c : sys.free_cols)
            acc += sys.rows[k][(std::size_t)c] * m[(std::size_t)c];
        m[(std::size_t)p] = -acc / sys.rows[k][(std::size_t)p];
    }

    MomentFunctional u(std::move(m), lat, "pearson");
    // Independent re-verification through the functional-calculus path.
    if (!pearson_holds(pp, u, u.horizon()))
        throw Error("pearson_moments self-check failed");
    return u;
}

int pearson_checkable_to(const PearsonPair& pp, const MomentFunctional& u) {
    return u.horizon() - std::max(pp.t(), pp.p());
}

bool pearson_holds(const PearsonPair& pp, const MomentFunctional& u, int upto) {
    const MomentFunctional lhs = apply_delta(multiply(u, pp.phi));
    const MomentFunctional rhs = multiply(u, pp.psi);
    const int top = std::min({lhs.horizon(), rhs.horizon(), upto});
    for (int n = 0; n <= top; ++n)
        if (lhs.moment(n) != rhs.moment(n))
            return false;
    return true;
}

Poly solve_pearson_psi(const Poly& phi, const MomentFunctional& u, int pmax, int ncheck) {
    if (pmax < 1)
        throw Error("solve_pearson_psi needs pmax >= 1");
    if (u.horizon() < 2 * pmax || u.horizon() < phi.degree())
        throw HorizonExceeded("solve_pearson_psi needs horizon >= 2 pmax");
    const MomentFunctional v = apply_delta(multiply(u, phi));
    std::vector<std::vector<Rational>> a((std::size_t)pmax + 1, std::vector<Rational>((std::size_t)pmax + 1));
    std::vector<Rational> rhs((std::size_t)pmax + 1);
    for (int n = 0; n <= pmax; ++n) {
        for (int j = 0; j <= pmax; ++j)
            a[(std::size_t)n][(std::size_t)j] = u.moment(n + j);
        rhs[(std::size_t)n] = v.moment(n);
    }
    auto e = solve_linear(std::move(a), std::move(rhs));
    if (!e)
        throw NotQuasiDefinite("Hankel system singular while solving for Psi");
    Poly psi(std::move(*e));
    const int top = std::min({ncheck, v.horizon(), u.horizon() - std::max(psi.degree(), 0)});
    for (int n = pmax + 1; n <= top; ++n) {
        Rational acc(0);
        for (int j = 0; j <= psi.degree(); ++j)
            acc += psi.coeff(j) * u.moment(n + j);
        if (acc != v.moment(n))
            throw NoPearsonPair("no polynomial Psi of degree <= " + std::to_string(pmax) +
                                " matches Delta(Phi u) on moment " + std::to_string(n));
    }
    if (psi.degree() < 1)
        throw NoPearsonPair("matching Psi degenerates to degree " + std::to_string(psi.degree()));
    return psi;
}

namespace {

std::vector<mpz_class> divisors_of(const mpz_class& n_in) {
    mpz_class n = ::abs(n_in);
    if (n == 0)
        throw Error("divisors of zero requested");
    std::map<mpz_class, int> fac;
    mpz_class d = 2;
    while (d * d <= n && d < 100000) {
        while (mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t())) {
            ++fac[d];
            n /= d;
        }
        ++d;
    }
    if (n > 1) {
        if (mpz_probab_prime_p(n.get_mpz_t(), 40) == 0 && n > 100000)
            throw FactorSearchExceeded("coefficient too large to factor for the rational root search");
        ++fac[n];
    }
    std::vector<mpz_class> divs{1};
    for (const auto& [p, e] : fac) {
        const std::size_t sz = divs.size();
        mpz_class pk = 1;
        for (int k = 1; k <= e; ++k) {
            pk *= p;
            for (std::size_t i = 0; i < sz; ++i)
                divs.push_back(divs[i] * pk);
        }
    }
    return divs;
}

} // namespace

std::vector<Rational> rational_roots(const Poly& f) {
    std::vector<Rational> roots;
    if (f.degree() < 1)
        return roots;
    // Clear denominators to a primitive integer polynomial.
    mpz_class den_lcm = 1;
    for (int i = 0; i <= f.degree(); ++i)
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), f.coeff(i).den().get_mpz_t());
    std::vector<mpz_class> ic;
    for (int i = 0; i <= f.degree(); ++i) {
        Rational c = f.coeff(i) * Rational(den_lcm);
        ic.push_back(c.num());
    }
    Poly g = f;
    while (g.degree() >= 1 && g.coeff(0).is_zero()) {
        roots.push_back(Rational(0));
        g = exact_divide(g, Poly::x());
    }
    if (g.degree() < 1)
        return roots;
    mpz_class a0 = 1, alead = 1;
    for (int i = 0; i <= g.degree(); ++i) {
        Rational c = g.coeff(i) * Rational(den_lcm);
        if (i == 0)
            a0 = c.num();
        if (i == g.degree())
            alead = c.num();
    }
    std::set<std::pair<std::string, std::string>> seen;
    std::vector<Rational> candidates;
    for (const auto& p : divisors_of(a0))
        for (const auto& s : divisors_of(alead))
            for (int sign = -1; sign <= 1; sign += 2) {
                Rational r(sign * p, s);
                auto key = std::make_pair(r.num().get_str(), r.den().get_str());
                if (seen.insert(key).second)
                    candidates.push_back(r);
            }
    for (const auto& r : candidates) {
        while (g.degree() >= 1 && g.eval(r).is_zero()) {
            roots.push_back(r);
            g = exact_divide(g, Poly::x() - Poly(r));
        }
    }
    return roots;
}

std::pair<PearsonPair, int> reduce_pair(const PearsonPair& pp, const MomentFunctional& u, int Ncheck) {
    const int checkable = std::min(Ncheck, pearson_checkable_to(pp, u));
    if (!pearson_holds(pp, u, checkable))
        throw PearsonViolated("the given pair does not satisfy the Pearson equation on the given moments");

    const std::vector<Rational> roots = rational_roots(pp.phi);
    const int pmax = pp.sigma() + 1;
    const int nbound = 2 * Ncheck;

    std::vector<std::pair<PearsonPair, int>> minimizers;
    int best = INT_MAX;
    const std::size_t subsets = (std::size_t)1 << roots.size();
    std::set<std::vector<Rational>> tried; // divisor root multisets already handled
    for (std::size_t mask = 0; mask < subsets; ++mask) {
        std::vector<Rational> chosen;
        for (std::size_t i = 0; i < roots.size(); ++i)
            if (mask & ((std::size_t)1 << i))
                chosen.push_back(roots[i]);
        std::sort(chosen.begin(), chosen.end());
        if (!tried.insert(chosen).second)
            continue;
        Poly d = Poly::one();
        for (const auto& r : chosen)
            d *= Poly::x() - Poly(r);
        const Poly phi1 = exact_divide(pp.phi, d);
        Poly psi1;
        try {
            psi1 = solve_pearson_psi(phi1, u, pmax, Ncheck);
        } catch (const NoPearsonPair&) {
            continue;
        }
        PearsonPair cand(phi1, psi1);
        if (!admissible_exact(cand, u.lattice(), nbound))
            continue;
        const int cls = cand.sigma();
        if (cls < best) {
            best = cls;
            minimizers.clear();
        }
        if (cls == best) {
            bool dup = false;
            for (const auto& m : minimizers)
                dup = dup || (m.first.phi == cand.phi && m.first.psi == cand.psi);
            if (!dup)
                minimizers.emplace_back(std::move(cand), cls);
        }
    }
    if (minimizers.empty())
        throw NoPearsonPair("no admissible pair found during reduction");
    if (minimizers.size() > 1)
        throw NonUniqueMinimalPair("two distinct pairs attain the minimal class " + std::to_string(best));
    return minimizers.front();
}

MomentFunctional moments_from_ttrr(const std::vector<Rational>& beta,
                                   const std::vector<Rational>& gamma, int horizon,
                                   const Lattice& lat, std::string origin) {
    if ((int)beta.size() < horizon || (int)gamma.size() < horizon - 1)
        throw Error("moments_from_ttrr needs beta_0..beta_{H-1} and gamma_1..gamma_{H-1}");
    // Expand x^k in the Favard basis; the moment is the B_0 coordinate.
    std::vector<Rational> m{Rational(1)};
    std::vector<Rational> e{Rational(1)}; // coordinates of x^k
    for (int k = 1; k <= horizon; ++k) {
        std::vector<Rational> next((std::size_t)k + 1, Rational(0));
        for (int j = 0; j < (int)e.size(); ++j) {
            const Rational& c = e[(std::size_t)j];
            if (c.is_zero())
                continue;
            next[(std::size_t)j + 1] += c;
            next[(std::size_t)j] += c * beta[(std::size_t)j];
            if (j >= 1)
                next[(std::size_t)j - 1] += c * gamma[(std::size_t)j - 1];
        }
        e = std::move(next);
        m.push_back(e[0]);
    }
    return MomentFunctional(std::move(m), lat, std::move(origin));
}

} // namespace qhahn

#pragma once

#include <deque>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qhahn/families.hpp"

namespace qhahn {

enum class RelationId {
    FirstStruct,
    SecondStructClassical,
    ClassicalTrio,
    SemiclassicalFirst,
    Diagonal,
    Lemma31III,
    Lemma31P,
    Prop34,
    Thm31,
    Thm34,
    QFreudSecond,
    Class1Pair,
};

std::string relation_id_name(RelationId id);
RelationId relation_id_from_name(const std::string& name);

/// Band bookkeeping of a finite-type relation: basis indices claimed at row n.
struct Band {
    int nmin;
    int lo_offset;
    int hi_offset;
    int hi_offset_at0; // the piecewise sigma(0) = p-1 exception; same as hi_offset when unused
    int lo(int n) const { return n + lo_offset; }
    int hi(int n) const { return n + (n == 0 ? hi_offset_at0 : hi_offset); }
};

/// One named family of extracted coefficients, keyed by (n, nu).
struct CoeffTable {
    std::string name;
    std::map<std::pair<int, int>, Rational> entries;

    void add(int n, int nu, Rational value) { entries[{n, nu}] = std::move(value); }
    const Rational* find(int n, int nu) const {
        auto it = entries.find({n, nu});
        return it == entries.end() ? nullptr : &it->second;
    }
    /// Value with out-of-table entries reading as zero.
    Rational at(int n, int nu) const {
        const Rational* v = find(n, nu);
        return v ? *v : Rational(0);
    }
};

struct Witness {
    int n;
    int nu;
    Poly residual;
};

struct RelationReport {
    explicit RelationReport(RelationId id_) : id(id_) {}

    RelationId id;
    int n_min = 0;
    int n_max = -1; // range actually checked after clipping
    bool pass = true;
    std::optional<Witness> witness;
    std::deque<CoeffTable> coefficients;

    CoeffTable& table(const std::string& name);
    const CoeffTable* find_table(const std::string& name) const;
    void fail(int n, int nu, Poly residual);
};

/// Monic difference sequence B_n^[1] = [n+1]^{-1} Delta B_{n+1}, n <= N-1.
std::vector<Poly> diff_sequence(const OrthoSequence& seq, const Lattice& lat);

/// Phi B_n^[1] = sum_{nu=n-sigma}^{n+t} lambda_{n,nu} B_nu with nonvanishing
/// lower edge; the classical first structure relation when sigma = 0.
RelationReport verify_first_structure(const OrthoSequence& seq, const Poly& phi, int sigma,
                                      const Lattice& lat);

/// The three boxed q-classical relations with the Table 1 coefficients.
RelationReport verify_classical_trio(const OrthoSequence& seq, const Table1Row& row,
                                     const Lattice& lat);

/// Second structure relation: B_n = sum_{nu=n-t}^{n} theta_{n,nu} B_nu^[1], theta_{n,n} = 1.
RelationReport verify_second_structure_classical(const OrthoSequence& seq, int t,
                                                 const Lattice& lat);

/// Def. 1.1 plus the Proposition it carries: band and edge checks on
/// phi B_n = sum theta_{n,nu} B_nu^[1], then the induced Pearson-type equation
/// for Omega_{n+sigma}, its psi_n, and the Omega compatibility identity.
RelationReport verify_diagonal(const OrthoSequence& seq, const Poly& phi, int sigma,
                               const Lattice& lat);

/// Exhaustive exact search for diagonal pairs (phi, sigma) with
/// deg phi <= tmax, sigma <= sigmamax. Every returned candidate re-verified.
std::vector<std::pair<Poly, int>> diagonal_search(const OrthoSequence& seq, int tmax,
                                                  int sigmamax, const Lattice& lat);

/// lambda_{n,nu} = r_nu^{-1} <u, Phi B_n^[1] B_nu> over 0 <= nu <= n+t.
CoeffTable compute_lambda_table(const OrthoSequence& seq, const Poly& phi, const Lattice& lat);

RelationReport verify_lemma31(const OrthoSequence& seq, const PearsonPair& pp, const Lattice& lat);
RelationReport verify_lemma31p(const OrthoSequence& seq, const PearsonPair& pp, const Lattice& lat);
RelationReport verify_prop34(const OrthoSequence& seq, const PearsonPair& pp, const Lattice& lat);
RelationReport verify_thm31(const OrthoSequence& seq, const PearsonPair& pp, const Lattice& lat);
RelationReport verify_thm34(const OrthoSequence& seq, const PearsonPair& pp, const Lattice& lat);

/// The q-Freud sequence's second structure relation and its collapsed form
/// (x^2 + v~_{n,0}) B_n = B_{n+2}^[1] + rho~_n B_n^[1].
RelationReport verify_qfreud_second(const QFreudData& data);

/// The class-1 example's two closed-form relations and its Psi expansion.
RelationReport verify_class1_pair(const Class1Data& data);

/// The full characterization set on a uniform-lattice instance (Thms 4.1/4.2
/// plus the lemmas they rest on); requires the functional's lattice to be
/// uniform.
std::vector<RelationReport> verify_uniform(const OrthoSequence& seq, const PearsonPair& pp);

} // namespace qhahn

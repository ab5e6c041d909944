#include "qhahn/suite.hpp"

#include <atomic>
#include <random>
#include <sstream>
#include <thread>

namespace qhahn {

namespace {

Rational R(const char* s) { return Rational::parse(s); }

struct FamilySpec {
    FamilyTag tag;
    std::map<std::string, Rational> params;
};

const std::vector<FamilySpec>& family_grid() {
    static const std::vector<FamilySpec> grid{
        {FamilyTag::BigQJacobi, {{"a", R("1/3")}, {"b", R("1/5")}, {"c", R("1/7")}}},
        {FamilyTag::QLaguerre, {{"a", R("1/3")}}},
        {FamilyTag::AlSalamCarlitzI, {{"a", R("2")}}},
        {FamilyTag::QCharlier, {{"a", R("1/3")}}},
    };
    return grid;
}

const std::vector<Rational>& q_grid() {
    static const std::vector<Rational> qs{R("1/2"), R("2/3"), R("3/2")};
    return qs;
}

constexpr int kFamilyN = 11; // covers n <= 10 everywhere the criteria ask for
constexpr int kFreudN = 12;
constexpr int kClass1N = 12; // diagonal_search(tmax=3, sigmamax=5) needs >= 12

PearsonPair canonical_pair(const Family& fam) {
    const int pmax = std::max(fam.row.canonical_phi.degree(), 1) + 1;
    return PearsonPair(fam.row.canonical_phi,
                       solve_pearson_psi(fam.row.canonical_phi, fam.seq.u(), pmax, 18));
}

struct Built {
    std::vector<Family> families; // family_grid x q_grid, row-major
    std::vector<QFreudData> freud;
    std::vector<Class1Data> class1;
};

Built build_everything(unsigned threads) {
    const auto& fams = family_grid();
    const auto& qs = q_grid();
    Built out;
    out.families.reserve(fams.size() * qs.size());

    struct Task {
        std::size_t slot;
        FamilySpec spec;
        Rational q;
    };
    std::vector<Task> tasks;
    for (std::size_t i = 0; i < fams.size(); ++i)
        for (std::size_t j = 0; j < qs.size(); ++j)
            tasks.push_back({i * qs.size() + j, fams[i], qs[j]});

    std::vector<std::optional<Family>> slots(tasks.size());
    std::vector<std::exception_ptr> errors(tasks.size());
    unsigned nthreads = threads ? threads : std::thread::hardware_concurrency();
    if (nthreads == 0)
        nthreads = 1;
    nthreads = std::min<unsigned>(nthreads, (unsigned)tasks.size());
    std::vector<std::thread> pool;
    std::atomic<std::size_t> next{0};
    for (unsigned w = 0; w < nthreads; ++w)
        pool.emplace_back([&] {
            for (std::size_t k = next.fetch_add(1); k < tasks.size(); k = next.fetch_add(1)) {
                try {
                    slots[tasks[k].slot] =
                        table1_family(tasks[k].spec.tag, tasks[k].spec.params, tasks[k].q, kFamilyN);
                } catch (...) {
                    errors[tasks[k].slot] = std::current_exception();
                }
            }
        });
    for (auto& th : pool)
        th.join();
    for (std::size_t k = 0; k < slots.size(); ++k) {
        if (errors[k])
            std::rethrow_exception(errors[k]);
        out.families.push_back(std::move(*slots[k]));
    }

    out.freud.push_back(qfreud(R("1/2"), R("1/3"), R("4"), R("1/2"), kFreudN));
    out.freud.push_back(qfreud(R("1/3"), R("1/5"), R("4"), R("2/3"), kFreudN));
    out.freud.push_back(qfreud(R("2"), R("1/2"), R("3"), R("3/2"), kFreudN));

    out.class1.push_back(class1_example(Poly(std::vector<Rational>{R("1"), R("0"), R("-1")}),
                                        R("0"), Lattice::q_lattice(R("1/2"), R("0")), kClass1N));
    out.class1.push_back(class1_example(Poly(std::vector<Rational>{R("1"), R("1/2"), R("-2")}),
                                        R("1/3"), Lattice::q_lattice(R("2/3"), R("1")), kClass1N));
    return out;
}

std::string instance_name(std::size_t idx) {
    const auto& fams = family_grid();
    const auto& qs = q_grid();
    return family_name(fams[idx / qs.size()].tag) + "(q=" + qs[idx % qs.size()].str() + ")";
}

struct Tally {
    bool pass = true;
    std::ostringstream detail;

    void expect(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail << (detail.tellp() > 0 ? "; " : "") << what;
        }
    }
    void expect_report(const RelationReport& rep, const std::string& where) {
        std::ostringstream what;
        what << where << " " << relation_id_name(rep.id) << " failed";
        if (rep.witness)
            what << " at n=" << rep.witness->n << ", nu=" << rep.witness->nu;
        expect(rep.pass, what.str());
    }
    std::string str(const std::string& ok_text) const {
        return pass ? ok_text : detail.str();
    }
};

// --- criterion bodies -------------------------------------------------------

CriterionResult criterion1(const Built& built) {
    Tally t;
    for (std::size_t k = 0; k < built.families.size(); ++k) {
        const Family& fam = built.families[k];
        const RelationReport rep = verify_classical_trio(fam.seq, fam.row, fam.row.lat);
        t.expect_report(rep, instance_name(k));
        t.expect(rep.n_min <= 2 && rep.n_max >= 10, instance_name(k) + " trio range short");
    }
    return {1, "Table 1 trio across families and q values", t.pass,
            t.str("3 relations x 4 families x 3 q values, n = 2..10, exact")};
}

CriterionResult criterion2(const Built& built) {
    Tally t;
    const auto& qs = q_grid();
    for (std::size_t k = 0; k < built.families.size(); ++k) {
        const Family& fam = built.families[k];
        const Rational q = qs[k % qs.size()];
        const FamilyTag tag = fam.row.tag;
        if (tag == FamilyTag::QCharlier)
            continue; // image identity exercised in the unit tests
        const auto b1 = diff_sequence(fam.seq, fam.row.lat);
        std::map<std::string, Rational> shifted = fam.row.params;
        bool rescale = false;
        if (tag == FamilyTag::BigQJacobi) {
            shifted["a"] = shifted["a"] * q;
            shifted["b"] = shifted["b"] * q;
            shifted["c"] = shifted["c"] * q;
            rescale = true;
        } else if (tag == FamilyTag::QLaguerre) {
            shifted["a"] = shifted["a"] * q;
            rescale = true;
        }
        for (int n = 0; n <= 9; ++n) {
            Poly img = family_monic_poly(tag, shifted, q, n);
            if (rescale)
                img = q.pow(-n) * affine_substitute(img, q, Rational(0));
            if (b1[(std::size_t)n] != img) {
                t.expect(false, instance_name(k) + " image fails at n=" + std::to_string(n));
                break;
            }
        }
    }
    return {2, "Difference-sequence images match the Table 1 identifications", t.pass,
            t.str("Big q-Jacobi shift, q-Laguerre a->aq, Al-Salam Carlitz fixed point, n <= 9")};
}

CriterionResult criterion3(const Built& built) {
    Tally t;
    for (std::size_t k = 0; k < built.families.size(); ++k) {
        const Family& fam = built.families[k];
        const int tcanon = fam.row.canonical_phi.degree();
        const RelationReport rep =
            verify_second_structure_classical(fam.seq, tcanon, fam.row.lat);
        t.expect_report(rep, instance_name(k));
        t.expect(rep.n_max >= 10, instance_name(k) + " range short");
        // thm34 at sigma = 0 re-derives the same table; the collapse
        // comparison is part of verify_thm34 itself.
        const PearsonPair pp = canonical_pair(fam);
        t.expect(pp.sigma() == 0, instance_name(k) + " unexpected class");
        t.expect_report(verify_thm34(fam.seq, pp, fam.row.lat), instance_name(k));
    }
    return {3, "Second structure relation and its thm34 collapse", t.pass,
            t.str("second structure relation for all families to n = 10; thm34 sigma=0 table identical")};
}

CriterionResult criterion4(const Built& built) {
    Tally t;
    for (const QFreudData& fd : built.freud) {
        const Lattice& lat = fd.seq.u().lattice();
        const std::string name = "q-freud(q=" + lat.q().str() + ")";
        // Construction already re-verified the lowering relation, the a_n
        // closed form feeds it, and symmetry was checked; assert key facts
        // again through the public surface.
        t.expect(fd.seq.beta(3).is_zero(), name + " beta_3 != 0");
        for (int n = 1; n <= 2 * kFreudN; n += 2)
            t.expect(fd.seq.u().moment(n).is_zero(), name + " odd moment " + std::to_string(n));
        const auto lam = qfreud_monomial_coeffs(fd, kFreudN);
        for (int n = 0; n <= kFreudN && t.pass; ++n)
            for (int j = 0; j <= n; ++j)
                if (lam[(std::size_t)n][(std::size_t)j] != fd.seq.poly(n).coeff(n - j)) {
                    t.expect(false, name + " lambda table mismatch at (" + std::to_string(n) +
                                        "," + std::to_string(j) + ")");
                    break;
                }
        // Lemma 5.1: the Psi solved from the moments alone equals
        // -K q^{-3} P_3 - c_1^{-1} P_1, with exactly those basis coefficients.
        const Poly psi_solved = solve_pearson_psi(Poly::one(), fd.seq.u(), 3, 18);
        t.expect(psi_solved == fd.psi, name + " Lemma 5.1 Psi mismatch");
        const std::vector<Poly> basis(fd.seq.polys().begin(), fd.seq.polys().begin() + 4);
        const auto exp_psi = expand_in_basis(fd.psi, basis);
        t.expect(exp_psi[3] == -(fd.K * lat.q().pow(-3)), name + " Psi B3 coefficient");
        t.expect(exp_psi[1] == -fd.c[1].inv(), name + " Psi B1 coefficient");
        t.expect(exp_psi[0].is_zero() && exp_psi[2].is_zero(), name + " Psi stray coefficients");

        t.expect_report(verify_qfreud_second(fd), name);
        auto [mp, cls] = reduce_pair(PearsonPair(Poly::one(), fd.psi), fd.seq.u(), 16);
        t.expect(cls == 2 && mp.phi == Poly::one(), name + " class != 2");
        t.detail << (t.detail.tellp() > 0 ? "; " : "") << name << " momrel "
                 << (fd.momrel_holds ? "holds" : ("fails first at n=" +
                                                  std::to_string(fd.momrel_first_failure)))
                 << " (reported, not gated)";
    }
    const std::string detail = t.detail.str();
    return {4, "q-Freud lowering relation, lambda table, Psi expansion, collapsed relation, class 2", t.pass,
            detail};
}

CriterionResult criterion5(const Built& built) {
    Tally t;
    for (const Class1Data& cd : built.class1) {
        const Lattice& lat = cd.seq.u().lattice();
        const std::string name = "class1(q=" + lat.q().str() + ",w=" + lat.omega().str() + ")";
        t.expect_report(verify_class1_pair(cd), name);
        const auto found = diagonal_search(cd.seq, 3, 5, lat);
        t.expect(found.empty(), name + " unexpectedly diagonal");
        auto [mp, cls] = reduce_pair(PearsonPair(Poly::one(), cd.psi), cd.seq.u(), 16);
        t.expect(cls == 1 && mp.phi == Poly::one(), name + " class != 1");
    }
    return {5, "Class-1 example: both closed-form relations, Psi expansion, non-diagonality, class 1",
            t.pass, t.str("two documented (Psi, m1) instances, tmax=3, sigmamax=5 search empty")};
}

CriterionResult criterion6(const Built& built) {
    Tally t;
    auto run_all = [&](const OrthoSequence& seq, const PearsonPair& pp, const Lattice& lat,
                       const std::string& name) {
        t.expect_report(verify_lemma31(seq, pp, lat), name);
        t.expect_report(verify_lemma31p(seq, pp, lat), name);
        t.expect_report(verify_prop34(seq, pp, lat), name);
        t.expect_report(verify_thm31(seq, pp, lat), name);
        try {
            t.expect_report(verify_thm34(seq, pp, lat), name);
        } catch (const Error& e) {
            t.expect(false, name + " thm34 threw: " + e.what());
        }
    };
    for (std::size_t k = 0; k < built.families.size(); ++k) {
        const Family& fam = built.families[k];
        run_all(fam.seq, canonical_pair(fam), fam.row.lat, instance_name(k));
    }
    for (const QFreudData& fd : built.freud)
        run_all(fd.seq, PearsonPair(Poly::one(), fd.psi), fd.seq.u().lattice(),
                "q-freud(q=" + fd.seq.u().lattice().q().str() + ")");
    for (const Class1Data& cd : built.class1)
        run_all(cd.seq, PearsonPair(Poly::one(), cd.psi), cd.seq.u().lattice(),
                "class1(q=" + cd.seq.u().lattice().q().str() + ")");
    return {6, "Characterization suite (lemma31, lemma31p, prop34, thm31, thm34)", t.pass,
            t.str("all families x 3 q values + q-Freud x 3 + class-1 x 2, full ranges")};
}

CriterionResult criterion7(const Built& /*built*/) {
    Tally t;
    try {
        const auto analog = discrete_freud_analog(R("1/2"), R("1/3"), R("4"), kFreudN);
        const Lattice lat = Lattice::uniform();
        t.expect(qbracket(7, lat) == Rational(7), "[n] != n at q = 1");
        t.expect(hahn_apply(Poly::monomial(2), lat) ==
                     Poly(std::vector<Rational>{Rational(1), Rational(2)}),
                 "Delta != forward difference at q = 1");
        for (const auto& rep : verify_uniform(analog.seq, analog.pp))
            t.expect_report(rep, "uniform analog");
    } catch (const Error& e) {
        t.expect(false, std::string("uniform analog threw: ") + e.what());
    }
    return {7, "Uniform lattice: the criterion-6 suite on the discrete Freud analog", t.pass,
            t.str("[n] = n, Delta = forward difference, all five verifiers exact")};
}

CriterionResult criterion8(const Built& built) {
    Tally t;

    // Product rule vs direct evaluation order on 50 random (g, u) instances.
    {
        std::mt19937_64 rng(20240817);
        std::uniform_int_distribution<long> num(-4, 4);
        std::uniform_int_distribution<long> den(1, 3);
        std::uniform_int_distribution<int> deg(0, 4);
        const std::vector<Lattice> lats{Lattice::q_lattice(R("1/2"), R("0")),
                                        Lattice::q_lattice(R("2/3"), R("1")),
                                        Lattice::q_lattice(R("3/2"), R("-1/2")),
                                        Lattice::uniform()};
        for (int rep = 0; rep < 50; ++rep) {
            const Lattice& lat = lats[(std::size_t)rep % lats.size()];
            std::vector<Rational> m{Rational(1)};
            for (int n = 1; n <= 12; ++n)
                m.push_back(Rational(num(rng), den(rng)));
            const MomentFunctional u(std::move(m), lat, "random");
            std::vector<Rational> g((std::size_t)deg(rng) + 1, Rational(0));
            for (auto& c : g)
                c = Rational(num(rng), den(rng));
            Poly gp(std::move(g));
            if (gp.is_zero())
                gp = Poly::one();
            const MomentFunctional lhs = delta_of_product(gp, u);
            const MomentFunctional rhs = apply_delta(multiply(u, gp));
            for (int n = 0; n <= std::min(lhs.horizon(), rhs.horizon()); ++n)
                if (lhs.moment(n) != rhs.moment(n)) {
                    t.expect(false, "product-rule mismatch, instance " + std::to_string(rep));
                    break;
                }
        }
    }

    // Favard round-trip: the moment route reproduces the series-built family.
    {
        const Family& fam = built.families[0];
        const OrthoSequence regen = smop_from_moments(fam.seq.u(), fam.seq.N());
        for (int n = 0; n <= fam.seq.N(); ++n)
            if (regen.poly(n) != fam.seq.poly(n)) {
                t.expect(false, "Favard round-trip mismatch at n=" + std::to_string(n));
                break;
            }
        std::vector<Poly> rebuilt{Poly::one()};
        for (int n = 0; n + 1 <= fam.seq.N(); ++n) {
            Poly next = (Poly::x() - Poly(fam.seq.beta(n))) * rebuilt.back();
            if (n >= 1)
                next -= fam.seq.gamma(n) * rebuilt[(std::size_t)n - 1];
            rebuilt.push_back(std::move(next));
        }
        for (int n = 0; n <= fam.seq.N(); ++n)
            if (rebuilt[(std::size_t)n] != fam.seq.poly(n)) {
                t.expect(false, "TTRR rebuild mismatch at n=" + std::to_string(n));
                break;
            }
    }

    // Hankel determinant ratios against the Gram-Schmidt gammas, n <= 8.
    {
        const Family& fam = built.families[3]; // q-Laguerre at q = 1/2
        const auto dets = hankel_dets(fam.seq.u(), 8);
        t.expect(dets[0] == fam.seq.u().moment(0), "det H_0 mismatch");
        t.expect(fam.seq.gamma(1) * dets[0] * dets[0] == dets[1],
                 "gamma_1 Hankel ratio mismatch");
        for (int n = 2; n <= 8; ++n)
            t.expect(fam.seq.gamma(n) * dets[(std::size_t)n - 1] * dets[(std::size_t)n - 1] ==
                         dets[(std::size_t)n] * dets[(std::size_t)n - 2],
                     "gamma Hankel ratio mismatch at n=" + std::to_string(n));
    }

    // Perturbation sensitivity: the reconstructions cannot pass vacuously.
    {
        auto perturbed_breaks = [&](const Poly& lhs, std::span<const Poly> basis,
                                    const std::vector<Rational>& coeffs, int mu) {
            Poly recon;
            for (int nu = 0; nu < (int)coeffs.size(); ++nu)
                recon += coeffs[(std::size_t)nu] * basis[(std::size_t)nu];
            recon += basis[(std::size_t)mu]; // the +1 perturbation
            return (lhs - recon) != Poly();
        };
        for (std::size_t k = 0; k < built.families.size(); ++k) {
            const Family& fam = built.families[k];
            const auto& seq = fam.seq;
            const std::span<const Poly> basis(seq.polys().data(), seq.polys().size());
            for (int n = 2; n <= 4; ++n) {
                const Poly lhs = fam.row.first.mult * hahn_apply(seq.poly(n), fam.row.lat);
                const auto coeffs = expand_in_basis(lhs, basis);
                for (int mu = std::max(0, n - 1); mu <= n + 1; ++mu)
                    t.expect(perturbed_breaks(lhs, basis, coeffs, mu),
                             instance_name(k) + " perturbation not detected");
            }
        }
        const QFreudData& fd = built.freud[0];
        const auto b1 = diff_sequence(fd.seq, fd.seq.u().lattice());
        const std::span<const Poly> dbasis(b1.data(), b1.size());
        for (int n = 2; n <= 4; ++n) {
            const Poly lhs = fd.seq.poly(n); // second-structure shape
            const auto coeffs = expand_in_basis(lhs, dbasis);
            for (int mu = n - 2; mu <= n; ++mu)
                t.expect(perturbed_breaks(lhs, dbasis, coeffs, mu),
                         "q-freud perturbation not detected");
        }
    }

    return {8, "Infrastructure oracles: product rule, Favard, Hankel ratios, perturbations", t.pass,
            t.str("50 random product-rule instances; series vs moment routes agree; unit "
                  "perturbations always break the reconstruction")};
}

} // namespace

std::vector<CriterionResult> run_acceptance_suite(unsigned threads) {
    const Built built = build_everything(threads);
    std::vector<CriterionResult> results;
    results.push_back(criterion1(built));
    results.push_back(criterion2(built));
    results.push_back(criterion3(built));
    results.push_back(criterion4(built));
    results.push_back(criterion5(built));
    results.push_back(criterion6(built));
    results.push_back(criterion7(built));
    results.push_back(criterion8(built));
    return results;
}

bool all_pass(const std::vector<CriterionResult>& results) {
    for (const auto& r : results)
        if (!r.pass)
            return false;
    return true;
}

std::string format_results(const std::vector<CriterionResult>& results) {
    std::ostringstream out;
    for (const auto& r : results) {
        out << (r.pass ? "[PASS]" : "[FAIL]") << " criterion " << r.number << ": " << r.title;
        if (!r.detail.empty())
            out << " -- " << r.detail;
        out << "\n";
    }
    return out.str();
}

} // namespace qhahn

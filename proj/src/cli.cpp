#include "qhahn/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "qhahn/suite.hpp"

namespace qhahn {

namespace {

const std::vector<std::string> kCommands{"family", "moments", "ttrr",   "verify",
                                         "freud",  "class1",  "reduce", "suite"};

Rational parse_flag_rational(const std::string& value, const std::string& flag) {
    try {
        return Rational::parse(value);
    } catch (const ParseError& e) {
        throw ParseError("flag " + flag + ": " + e.what());
    }
}

std::vector<std::string> split_csv(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty())
            out.push_back(item);
    return out;
}

unsigned threads_from_env() {
    const char* env = std::getenv("QHAHN_THREADS");
    if (!env)
        return 0;
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < 1)
        throw ParseError("QHAHN_THREADS must be a positive integer");
    return (unsigned)v;
}

Lattice lattice_from(const RunConfig& cfg) {
    if (cfg.uniform || cfg.q.is_one())
        return Lattice::uniform();
    return Lattice::q_lattice(cfg.q, cfg.omega);
}

std::map<std::string, Rational> family_params(const RunConfig& cfg, FamilyTag tag) {
    std::map<std::string, Rational> defaults;
    switch (tag) {
    case FamilyTag::BigQJacobi:
        defaults = {{"a", Rational(1, 3)}, {"b", Rational(1, 5)}, {"c", Rational(1, 7)}};
        break;
    case FamilyTag::QLaguerre:
    case FamilyTag::QCharlier:
        defaults = {{"a", Rational(1, 3)}};
        break;
    case FamilyTag::AlSalamCarlitzI:
        defaults = {{"a", Rational(2)}};
        break;
    }
    for (const auto& [k, v] : cfg.params)
        if (defaults.count(k))
            defaults[k] = v;
    return defaults;
}

struct Source {
    OrthoSequence seq;
    PearsonPair pp;
    std::optional<Family> fam;
    std::optional<QFreudData> freud;
    std::optional<Class1Data> class1;
};

/// Resolves the object a command operates on: a Table 1 family when --family
/// is given, the class-1 example when --psi is given, q-Freud otherwise.
Source build_source(const RunConfig& cfg) {
    if (!cfg.family.empty()) {
        const FamilyTag tag = family_from_name(cfg.family);
        Family fam = table1_family(tag, family_params(cfg, tag), cfg.q, cfg.N);
        const int pmax = std::max(fam.row.canonical_phi.degree(), 1) + 1;
        PearsonPair pp(fam.row.canonical_phi,
                       solve_pearson_psi(fam.row.canonical_phi, fam.seq.u(), pmax,
                                         cfg.N + pmax + 2));
        OrthoSequence seq = fam.seq;
        return Source{std::move(seq), std::move(pp), std::move(fam), std::nullopt, std::nullopt};
    }
    if (cfg.psi) {
        Class1Data cd = class1_example(*cfg.psi, cfg.m1, lattice_from(cfg), cfg.N);
        PearsonPair pp(Poly::one(), cd.psi);
        OrthoSequence seq = cd.seq;
        return Source{std::move(seq), std::move(pp), std::nullopt, std::nullopt, std::move(cd)};
    }
    QFreudData fd = qfreud_on(cfg.c1, cfg.c2, cfg.K, lattice_from(cfg), cfg.N, true);
    PearsonPair pp(Poly::one(), fd.psi);
    OrthoSequence seq = fd.seq;
    return Source{std::move(seq), std::move(pp), std::nullopt, std::move(fd), std::nullopt};
}

std::vector<std::string> default_relations(const Source& src) {
    if (src.fam)
        return {"classical_trio", "first_struct", "second_struct_classical", "diagonal",
                "lemma31_iii", "lemma31p", "prop34", "thm31", "thm34"};
    if (src.freud)
        return {"semiclassical_first", "lemma31_iii", "lemma31p", "prop34", "thm31", "thm34",
                "qfreud_second"};
    return {"class1_pair", "semiclassical_first", "lemma31_iii", "lemma31p", "prop34", "thm31",
            "thm34"};
}

RelationReport run_relation(const Source& src, const std::string& name) {
    const Lattice& lat = src.seq.u().lattice();
    switch (relation_id_from_name(name)) {
    case RelationId::ClassicalTrio:
        if (!src.fam)
            throw ParseError("classical_trio needs --family");
        return verify_classical_trio(src.fam->seq, src.fam->row, lat);
    case RelationId::FirstStruct:
        return verify_first_structure(src.seq, src.pp.phi, 0, lat);
    case RelationId::SemiclassicalFirst:
        return verify_first_structure(src.seq, src.pp.phi, src.pp.sigma(), lat);
    case RelationId::SecondStructClassical:
        return verify_second_structure_classical(src.seq, src.pp.t(), lat);
    case RelationId::Diagonal:
        return verify_diagonal(src.seq, Poly::one(), std::max(src.pp.t(), src.pp.sigma()), lat);
    case RelationId::Lemma31III:
        return verify_lemma31(src.seq, src.pp, lat);
    case RelationId::Lemma31P:
        return verify_lemma31p(src.seq, src.pp, lat);
    case RelationId::Prop34:
        return verify_prop34(src.seq, src.pp, lat);
    case RelationId::Thm31:
        return verify_thm31(src.seq, src.pp, lat);
    case RelationId::Thm34:
        return verify_thm34(src.seq, src.pp, lat);
    case RelationId::QFreudSecond:
        if (!src.freud)
            throw ParseError("qfreud_second needs the q-Freud source");
        return verify_qfreud_second(*src.freud);
    case RelationId::Class1Pair:
        if (!src.class1)
            throw ParseError("class1_pair needs the class-1 source (--psi)");
        return verify_class1_pair(*src.class1);
    }
    throw ParseError("unknown relation '" + name + "'");
}

void emit(const RunConfig& cfg, const std::string& text) {
    if (cfg.out.empty())
        std::cout << text;
    else
        write_text_file(cfg.out, text);
}

ordered_json ttrr_json(const OrthoSequence& seq) {
    ordered_json j;
    ordered_json beta = ordered_json::array(), gamma = ordered_json::array(),
                 norms = ordered_json::array();
    for (int n = 0; n + 1 <= seq.N(); ++n)
        beta.push_back(seq.beta(n).str());
    for (int n = 1; n + 1 <= seq.N(); ++n)
        gamma.push_back(seq.gamma(n).str());
    for (int n = 0; n <= seq.N(); ++n)
        norms.push_back(seq.norm(n).str());
    j["beta"] = beta;
    j["gamma"] = gamma;
    j["norms"] = norms;
    return j;
}

std::string ttrr_csv(const OrthoSequence& seq) {
    std::ostringstream out;
    out << "relation,n,nu,value\n";
    for (int n = 0; n + 1 <= seq.N(); ++n)
        out << "ttrr.beta," << n << ",0," << seq.beta(n).str() << "\n";
    for (int n = 1; n + 1 <= seq.N(); ++n)
        out << "ttrr.gamma," << n << ",0," << seq.gamma(n).str() << "\n";
    for (int n = 0; n <= seq.N(); ++n)
        out << "ttrr.norm," << n << ",0," << seq.norm(n).str() << "\n";
    return out.str();
}

ordered_json source_extras(const Source& src) {
    ordered_json j;
    if (src.fam) {
        ordered_json polys = ordered_json::array();
        for (const auto& p : src.fam->seq.polys())
            polys.push_back(poly_to_json(p));
        j["polys"] = polys;
    }
    if (src.freud) {
        ordered_json c = ordered_json::array(), a = ordered_json::array();
        for (const auto& v : src.freud->c)
            c.push_back(v.str());
        for (const auto& v : src.freud->a)
            a.push_back(v.str());
        j["c"] = c;
        j["a"] = a;
        j["psi"] = poly_to_json(src.freud->psi);
        j["momrel_holds"] = src.freud->momrel_holds;
        j["momrel_first_failure"] = src.freud->momrel_first_failure;
    }
    if (src.class1) {
        ordered_json rho = ordered_json::array(), v0 = ordered_json::array(),
                     lam = ordered_json::array();
        for (const auto& v : src.class1->rho)
            rho.push_back(v.str());
        for (const auto& v : src.class1->v0)
            v0.push_back(v.str());
        for (const auto& v : src.class1->lam)
            lam.push_back(v.str());
        j["C"] = src.class1->C.str();
        j["rho"] = rho;
        j["v0"] = v0;
        j["lambda"] = lam;
    }
    j["pearson_phi"] = poly_to_json(src.pp.phi);
    j["pearson_psi"] = poly_to_json(src.pp.psi);
    j["functional"] = functional_to_json(src.seq.u());
    return j;
}

int run_reports_command(const RunConfig& cfg) {
    const Source src = build_source(cfg);
    std::vector<std::string> names = cfg.relations;
    if (names.empty())
        names = default_relations(src);
    std::vector<RelationReport> reports;
    for (const auto& name : names)
        reports.push_back(run_relation(src, name));

    bool all = true;
    for (const auto& rep : reports)
        all = all && rep.pass;

    if (cfg.format == "csv") {
        emit(cfg, reports_to_csv(reports));
    } else {
        ordered_json j;
        j["config"] = cfg.to_json();
        if (cfg.command == "freud" || cfg.command == "class1") {
            j["data"] = source_extras(src);
            if (cfg.command == "class1" && src.class1) {
                if (cfg.N >= 3 + 5 + 4) {
                    const auto found =
                        diagonal_search(src.seq, 3, 5, src.seq.u().lattice());
                    ordered_json cands = ordered_json::array();
                    for (const auto& [phi, sigma] : found) {
                        ordered_json c;
                        c["phi"] = poly_to_json(phi);
                        c["sigma"] = sigma;
                        cands.push_back(c);
                    }
                    j["diagonal_candidates"] = cands;
                } else {
                    j["diagonal_candidates"] = nullptr;
                }
            }
            auto [mp, cls] = reduce_pair(src.pp, src.seq.u(), cfg.N + 4);
            ordered_json red;
            red["phi"] = poly_to_json(mp.phi);
            red["psi"] = poly_to_json(mp.psi);
            red["class"] = cls;
            j["reduced_pair"] = red;
        }
        j["reports"] = reports_to_json(reports);
        j["all_pass"] = all;
        emit(cfg, j.dump(2) + "\n");
    }
    return all ? 0 : 1;
}

int run_suite_command(const RunConfig& cfg) {
    const auto results = run_acceptance_suite(cfg.threads);
    const bool ok = all_pass(results);
    if (cfg.format == "csv") {
        std::ostringstream out;
        out << "relation,n,nu,value\n";
        for (const auto& r : results)
            out << "criterion," << r.number << ",0," << (r.pass ? "pass" : "fail") << "\n";
        emit(cfg, out.str());
    } else {
        ordered_json j;
        j["config"] = cfg.to_json();
        ordered_json arr = ordered_json::array();
        for (const auto& r : results) {
            ordered_json e;
            e["criterion"] = r.number;
            e["title"] = r.title;
            e["pass"] = r.pass;
            e["detail"] = r.detail;
            arr.push_back(e);
        }
        j["criteria"] = arr;
        j["all_pass"] = ok;
        emit(cfg, j.dump(2) + "\n");
    }
    std::cerr << format_results(results);
    return ok ? 0 : 1;
}

} // namespace

ordered_json RunConfig::to_json() const {
    ordered_json j;
    j["command"] = command;
    if (!family.empty())
        j["family"] = family;
    j["q"] = q.str();
    j["omega"] = omega.str();
    j["uniform"] = uniform;
    ordered_json p = ordered_json::object();
    for (const auto& [k, v] : params)
        p[k] = v.str();
    j["params"] = p;
    j["c1"] = c1.str();
    j["c2"] = c2.str();
    j["K"] = K.str();
    j["m1"] = m1.str();
    if (psi)
        j["psi"] = poly_to_json(*psi);
    j["N"] = N;
    ordered_json rels = ordered_json::array();
    for (const auto& r : relations)
        rels.push_back(r);
    j["relations"] = rels;
    j["out"] = out;
    j["format"] = format;
    j["threads"] = threads;
    return j;
}

RunConfig parse_cli(int argc, const char* const* argv) {
    CLI::App app{"exact verification of q-semiclassical structure relations"};
    app.get_formatter()->column_width(34);

    std::string command;
    app.add_option("command", command, "one of: family moments ttrr verify freud class1 reduce suite")
        ->required();

    std::string family, q_s, omega_s, a_s, b_s, c_s, c1_s, c2_s, K_s, m1_s, psi_s, rel_s, out_s,
        fmt_s, cfg_s;
    int N = -1;
    auto* o_family = app.add_option("--family", family, "table family name");
    auto* o_q = app.add_option("--q", q_s, "lattice parameter q as p/q (q = 1 selects the uniform lattice)");
    auto* o_omega = app.add_option("--omega", omega_s, "lattice offset omega as p/q");
    auto* o_a = app.add_option("--a", a_s, "family parameter a");
    auto* o_b = app.add_option("--b", b_s, "family parameter b");
    auto* o_c = app.add_option("--c", c_s, "family parameter c");
    auto* o_c1 = app.add_option("--c1", c1_s, "q-Freud c_1");
    auto* o_c2 = app.add_option("--c2", c2_s, "q-Freud c_2");
    auto* o_K = app.add_option("--K", K_s, "q-Freud K");
    auto* o_m1 = app.add_option("--m1", m1_s, "class-1 free moment (u)_1");
    auto* o_psi = app.add_option("--psi", psi_s, "Psi as a JSON array of rationals, index = power");
    auto* o_N = app.add_option("--N", N, "sequence length");
    auto* o_rel = app.add_option("--relations", rel_s, "comma list of relation ids");
    auto* o_out = app.add_option("--out", out_s, "output path (default stdout)");
    auto* o_fmt = app.add_option("--format", fmt_s, "json or csv");
    app.add_option("--config", cfg_s, "JSON config file; flags override its values");

    try {
        app.parse(argc, const_cast<char**>(argv));
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            std::cout << app.help();
            std::exit(0);
        }
        throw ParseError(e.what());
    }

    RunConfig cfg;
    cfg.threads = threads_from_env();

    if (!cfg_s.empty()) {
        std::ifstream in(cfg_s);
        if (!in)
            throw ParseError("cannot read config file '" + cfg_s + "'");
        ordered_json j;
        try {
            j = ordered_json::parse(in);
        } catch (const nlohmann::json::exception& e) {
            throw ParseError("config file: " + std::string(e.what()));
        }
        if (j.contains("command"))
            command = j["command"].get<std::string>();
        if (j.contains("family"))
            cfg.family = j["family"].get<std::string>();
        if (j.contains("q"))
            cfg.q = parse_flag_rational(j["q"].get<std::string>(), "config.q");
        if (j.contains("omega"))
            cfg.omega = parse_flag_rational(j["omega"].get<std::string>(), "config.omega");
        if (j.contains("params"))
            for (const auto& [k, v] : j["params"].items())
                cfg.params[k] = parse_flag_rational(v.get<std::string>(), "config.params." + k);
        if (j.contains("c1"))
            cfg.c1 = parse_flag_rational(j["c1"].get<std::string>(), "config.c1");
        if (j.contains("c2"))
            cfg.c2 = parse_flag_rational(j["c2"].get<std::string>(), "config.c2");
        if (j.contains("K"))
            cfg.K = parse_flag_rational(j["K"].get<std::string>(), "config.K");
        if (j.contains("m1"))
            cfg.m1 = parse_flag_rational(j["m1"].get<std::string>(), "config.m1");
        if (j.contains("psi"))
            cfg.psi = poly_from_json(j["psi"]);
        if (j.contains("N"))
            cfg.N = j["N"].get<int>();
        if (j.contains("relations"))
            for (const auto& r : j["relations"])
                cfg.relations.push_back(r.get<std::string>());
        if (j.contains("out"))
            cfg.out = j["out"].get<std::string>();
        if (j.contains("format"))
            cfg.format = j["format"].get<std::string>();
    }

    cfg.command = command;
    if (o_family->count())
        cfg.family = family;
    if (o_q->count())
        cfg.q = parse_flag_rational(q_s, "--q");
    if (o_omega->count())
        cfg.omega = parse_flag_rational(omega_s, "--omega");
    if (o_a->count())
        cfg.params["a"] = parse_flag_rational(a_s, "--a");
    if (o_b->count())
        cfg.params["b"] = parse_flag_rational(b_s, "--b");
    if (o_c->count())
        cfg.params["c"] = parse_flag_rational(c_s, "--c");
    if (o_c1->count())
        cfg.c1 = parse_flag_rational(c1_s, "--c1");
    if (o_c2->count())
        cfg.c2 = parse_flag_rational(c2_s, "--c2");
    if (o_K->count())
        cfg.K = parse_flag_rational(K_s, "--K");
    if (o_m1->count())
        cfg.m1 = parse_flag_rational(m1_s, "--m1");
    if (o_psi->count()) {
        try {
            cfg.psi = poly_from_json(ordered_json::parse(psi_s));
        } catch (const nlohmann::json::exception& e) {
            throw ParseError("--psi: " + std::string(e.what()));
        }
    }
    if (o_N->count())
        cfg.N = N;
    if (o_rel->count())
        cfg.relations = split_csv(rel_s);
    if (o_out->count())
        cfg.out = out_s;
    if (o_fmt->count())
        cfg.format = fmt_s;

    if (std::find(kCommands.begin(), kCommands.end(), cfg.command) == kCommands.end())
        throw ParseError("unknown command '" + cfg.command + "'");
    if (cfg.format != "json" && cfg.format != "csv")
        throw ParseError("--format must be json or csv");
    if (cfg.N < 1)
        throw ParseError("--N must be >= 1");
    if (cfg.q.is_one())
        cfg.uniform = true;
    for (const auto& r : cfg.relations)
        relation_id_from_name(r); // validates
    return cfg;
}

int run(const RunConfig& cfg) {
    if (cfg.command == "suite")
        return run_suite_command(cfg);
    if (cfg.command == "verify" || cfg.command == "freud" || cfg.command == "class1")
        return run_reports_command(cfg);

    const Source src = build_source(cfg);
    if (cfg.command == "family") {
        if (cfg.format == "csv")
            throw ParseError("family output has no CSV form; use --format json");
        ordered_json j;
        j["config"] = cfg.to_json();
        j["data"] = source_extras(src);
        j["ttrr"] = ttrr_json(src.seq);
        j["functional"] = functional_to_json(src.seq.u());
        emit(cfg, j.dump(2) + "\n");
        return 0;
    }
    if (cfg.command == "moments") {
        if (cfg.format == "csv")
            throw ParseError("moments output has no CSV form; use --format json");
        ordered_json j;
        j["config"] = cfg.to_json();
        j["functional"] = functional_to_json(src.seq.u());
        emit(cfg, j.dump(2) + "\n");
        return 0;
    }
    if (cfg.command == "ttrr") {
        if (cfg.format == "csv") {
            emit(cfg, ttrr_csv(src.seq));
        } else {
            ordered_json j;
            j["config"] = cfg.to_json();
            j["ttrr"] = ttrr_json(src.seq);
            emit(cfg, j.dump(2) + "\n");
        }
        return 0;
    }
    if (cfg.command == "reduce") {
        auto [mp, cls] = reduce_pair(src.pp, src.seq.u(), cfg.N + 4);
        ordered_json j;
        j["config"] = cfg.to_json();
        j["phi"] = poly_to_json(mp.phi);
        j["psi"] = poly_to_json(mp.psi);
        j["class"] = cls;
        emit(cfg, j.dump(2) + "\n");
        return 0;
    }
    throw ParseError("unknown command '" + cfg.command + "'");
}

int cli_main(int argc, const char* const* argv) {
    try {
        const RunConfig cfg = parse_cli(argc, argv);
        return run(cfg);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
}

} // namespace qhahn

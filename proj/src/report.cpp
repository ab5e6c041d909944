#include "qhahn/report.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace qhahn {

namespace {

std::vector<const CoeffTable*> sorted_tables(const RelationReport& rep) {
    std::vector<const CoeffTable*> tabs;
    for (const auto& t : rep.coefficients)
        tabs.push_back(&t);
    std::sort(tabs.begin(), tabs.end(),
              [](const CoeffTable* a, const CoeffTable* b) { return a->name < b->name; });
    return tabs;
}

} // namespace

ordered_json poly_to_json(const Poly& f) {
    ordered_json arr = ordered_json::array();
    for (int i = 0; i <= f.degree(); ++i)
        arr.push_back(f.coeff(i).str());
    return arr;
}

Poly poly_from_json(const ordered_json& j) {
    if (!j.is_array())
        throw ParseError("polynomial must be a JSON array of rational strings");
    std::vector<Rational> c;
    for (const auto& e : j)
        c.push_back(Rational::parse(e.get<std::string>()));
    return Poly(std::move(c));
}

ordered_json report_to_json(const RelationReport& rep) {
    ordered_json j;
    j["relation"] = relation_id_name(rep.id);
    j["range"] = ordered_json::array({rep.n_min, rep.n_max});
    j["pass"] = rep.pass;
    if (rep.witness) {
        ordered_json w;
        w["n"] = rep.witness->n;
        w["nu"] = rep.witness->nu;
        w["residual"] = poly_to_json(rep.witness->residual);
        j["witness"] = w;
    } else {
        j["witness"] = nullptr;
    }
    ordered_json coeffs;
    for (const CoeffTable* tab : sorted_tables(rep)) {
        ordered_json arr = ordered_json::array();
        for (const auto& [key, val] : tab->entries) {
            ordered_json e;
            e["n"] = key.first;
            e["nu"] = key.second;
            e["value"] = val.str();
            arr.push_back(e);
        }
        coeffs[tab->name] = arr;
    }
    j["coefficients"] = coeffs;
    return j;
}

ordered_json reports_to_json(const std::vector<RelationReport>& reps) {
    ordered_json arr = ordered_json::array();
    for (const auto& rep : reps)
        arr.push_back(report_to_json(rep));
    return arr;
}

std::string reports_to_csv(const std::vector<RelationReport>& reps) {
    std::ostringstream out;
    out << "relation,n,nu,value\n";
    for (const auto& rep : reps)
        for (const CoeffTable* tab : sorted_tables(rep))
            for (const auto& [key, val] : tab->entries)
                out << relation_id_name(rep.id) << "." << tab->name << "," << key.first << ","
                    << key.second << "," << val.str() << "\n";
    return out.str();
}

ordered_json lattice_to_json(const Lattice& lat) {
    ordered_json j;
    j["q"] = lat.q().str();
    j["omega"] = lat.omega().str();
    j["uniform"] = lat.is_uniform();
    return j;
}

ordered_json functional_to_json(const MomentFunctional& u) {
    ordered_json j;
    j["lattice"] = lattice_to_json(u.lattice());
    ordered_json arr = ordered_json::array();
    for (const auto& m : u.moments())
        arr.push_back(m.str());
    j["moments"] = arr;
    j["origin"] = u.origin();
    return j;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw IoError("cannot open '" + path + "' for writing");
    out << content;
    if (!out)
        throw IoError("write to '" + path + "' failed");
}

} // namespace qhahn

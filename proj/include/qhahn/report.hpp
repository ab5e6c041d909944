#pragma once

#include <json.hpp>

#include "qhahn/relations.hpp"

namespace qhahn {

using ordered_json = nlohmann::ordered_json;

/// {"relation", "range", "pass", "witness", "coefficients"} with rationals as
/// "p/q" strings; tables sorted by name, entries by (n, nu).
ordered_json report_to_json(const RelationReport& rep);
ordered_json reports_to_json(const std::vector<RelationReport>& reps);

/// Header "relation,n,nu,value", one row per coefficient entry; the relation
/// column is "<relation>.<table>". Byte-stable for identical inputs.
std::string reports_to_csv(const std::vector<RelationReport>& reps);

ordered_json lattice_to_json(const Lattice& lat);
ordered_json functional_to_json(const MomentFunctional& u);
ordered_json poly_to_json(const Poly& f);
Poly poly_from_json(const ordered_json& j);

void write_text_file(const std::string& path, const std::string& content);

} // namespace qhahn

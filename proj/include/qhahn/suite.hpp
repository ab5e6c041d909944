#pragma once

#include <string>
#include <vector>

#include "qhahn/relations.hpp"

namespace qhahn {

struct CriterionResult {
    int number;
    std::string title;
    bool pass;
    std::string detail;
};

/**
 * The full verification matrix. Parameter grid: q in {1/2, 2/3, 3/2} plus the
 * uniform lattice; Big q-Jacobi (a,b,c) = (1/3, 1/5, 1/7), q-Laguerre a = 1/3,
 * Al-Salam Carlitz I a = 2, q-Charlier a = 1/3; q-Freud triples
 * (1/2, 1/3, 4), (1/3, 1/5, 4), (2, 1/2, 3); class-1 instances
 * (-x^2 + 1, m1 = 0) at (q, omega) = (1/2, 0) and (-2x^2 + x/2 + 1, m1 = 1/3)
 * at (2/3, 1). Everything is checked to exact equality.
 *
 * `threads` caps the construction fan-out (0 means hardware concurrency).
 */
std::vector<CriterionResult> run_acceptance_suite(unsigned threads = 0);

bool all_pass(const std::vector<CriterionResult>& results);

/// One line per criterion: "[PASS] criterion 3: ...".
std::string format_results(const std::vector<CriterionResult>& results);

} // namespace qhahn

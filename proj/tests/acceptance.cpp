// Acceptance suite: runs the full verification matrix and prints one
// pass/fail line per criterion. Exit status 0 iff everything passed.
#include <cstdlib>
#include <iostream>

#include "qhahn/suite.hpp"

int main() {
    unsigned threads = 0;
    if (const char* env = std::getenv("QHAHN_THREADS"))
        threads = (unsigned)std::strtoul(env, nullptr, 10);
    try {
        const auto results = qhahn::run_acceptance_suite(threads);
        std::cout << qhahn::format_results(results);
        return qhahn::all_pass(results) ? 0 : 1;
    } catch (const std::exception& e) {
        std::cout << "[FAIL] acceptance suite aborted: " << e.what() << "\n";
        return 1;
    }
}

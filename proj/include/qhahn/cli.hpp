#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qhahn/report.hpp"

namespace qhahn {

/**
 * Resolved run configuration. Values come from built-in defaults, then the
 * --config JSON file, then command-line flags (flags win). The fully resolved
 * configuration is echoed at the top of every report for reproducibility.
 */
struct RunConfig {
    std::string command; // family | moments | ttrr | verify | freud | class1 | reduce | suite
    std::string family;
    Rational q = Rational(1, 2);
    Rational omega = Rational(0);
    bool uniform = false;
    std::map<std::string, Rational> params; // a, b, c
    Rational c1 = Rational(1, 2), c2 = Rational(1, 3), K = Rational(4);
    Rational m1 = Rational(0);
    std::optional<Poly> psi;
    int N = 10;
    std::vector<std::string> relations; // empty = all applicable
    std::string out;                    // empty = stdout
    std::string format = "json";        // json | csv
    unsigned threads = 0;

    ordered_json to_json() const;
};

/// Parses argv (and an optional --config file) into a RunConfig.
/// Throws ParseError on invalid input.
RunConfig parse_cli(int argc, const char* const* argv);

/// Executes the command. Returns 0 when every requested check passed,
/// 1 when a relation failed (reports are still written), 2 on input errors.
int run(const RunConfig& config);

/// parse + run with all errors mapped to the exit-status contract.
int cli_main(int argc, const char* const* argv);

} // namespace qhahn

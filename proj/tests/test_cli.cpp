#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "qhahn/cli.hpp"

using namespace qhahn;

namespace {

RunConfig parse(std::vector<const char*> args) {
    args.insert(args.begin(), "qhahn");
    return parse_cli((int)args.size(), args.data());
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

#ifdef QHAHN_CLI_PATH
int run_binary(const std::string& args) {
    const std::string cmd = std::string(QHAHN_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}
#endif

} // namespace

TEST_CASE("flag parsing and validation") {
    const RunConfig cfg = parse({"verify", "--family", "al_salam_carlitz_1", "--q", "1/2",
                                 "--a", "2", "--N", "10", "--relations", "classical_trio"});
    CHECK(cfg.command == "verify");
    CHECK(cfg.q == Rational(1, 2));
    CHECK(cfg.params.at("a") == Rational(2));
    CHECK(cfg.relations == std::vector<std::string>{"classical_trio"});

    CHECK_THROWS_AS(parse({"verify", "--q", "1/0"}), ParseError);
    CHECK_THROWS_AS(parse({"dance"}), ParseError);
    CHECK_THROWS_AS(parse({"verify", "--format", "xml"}), ParseError);
    CHECK_THROWS_AS(parse({"verify", "--relations", "nope"}), ParseError);
    CHECK_THROWS_AS(parse({"verify", "--N", "0"}), ParseError);
}

TEST_CASE("config file values with flag precedence") {
    const std::string path = "/tmp/qhahn_test_config.json";
    std::ofstream(path) << R"({"command":"ttrr","family":"q_laguerre","q":"1/3","N":6})";
    const RunConfig cfg = parse({"ttrr", "--config", path.c_str(), "--q", "1/2"});
    CHECK(cfg.family == "q_laguerre");
    CHECK(cfg.q == Rational(1, 2)); // flag beats config
    CHECK(cfg.N == 6);
    std::remove(path.c_str());
}

TEST_CASE("psi flag parses a coefficient array") {
    const RunConfig cfg = parse({"class1", "--psi", R"(["1","0","-1"])", "--m1", "0"});
    REQUIRE(cfg.psi.has_value());
    CHECK(cfg.psi->degree() == 2);
    CHECK(cfg.psi->coeff(0) == Rational(1));
    CHECK(cfg.psi->coeff(2) == Rational(-1));
    CHECK_THROWS_AS(parse({"class1", "--psi", "badjson"}), ParseError);
}

TEST_CASE("run produces deterministic byte-identical reports") {
    RunConfig cfg = parse({"verify", "--family", "al_salam_carlitz_1", "--q", "1/2", "--a", "2",
                           "--N", "8", "--relations", "classical_trio,second_struct_classical"});
    cfg.out = "/tmp/qhahn_det.json";
    CHECK(run(cfg) == 0);
    const std::string a = slurp(cfg.out);
    CHECK(run(cfg) == 0);
    const std::string b = slurp(cfg.out);
    CHECK(!a.empty());
    CHECK(a == b);
    std::remove(cfg.out.c_str());
}

TEST_CASE("report serialization corners") {
    CHECK(reports_to_json({}).dump() == "[]");
    CHECK(reports_to_csv({}) == "relation,n,nu,value\n");
    RelationReport rep{RelationId::FirstStruct};
    rep.n_min = 0;
    rep.n_max = 3;
    rep.table("lambda").add(1, 0, Rational(1, 2));
    const ordered_json j = report_to_json(rep);
    CHECK(j["pass"] == true);
    CHECK(j["witness"].is_null());
    CHECK(j["coefficients"]["lambda"][0]["value"] == "1/2");
}

TEST_CASE("csv reports carry the fixed header") {
    RunConfig cfg = parse({"verify", "--family", "q_charlier", "--q", "1/2", "--N", "8",
                           "--relations", "second_struct_classical", "--format", "csv"});
    cfg.out = "/tmp/qhahn_csv.csv";
    CHECK(run(cfg) == 0);
    const std::string text = slurp("/tmp/qhahn_csv.csv");
    CHECK(text.rfind("relation,n,nu,value\n", 0) == 0);
    CHECK(text.find("second_struct_classical.theta,") != std::string::npos);
    std::remove("/tmp/qhahn_csv.csv");
}

TEST_CASE("report files are written even when a relation fails") {
    // The class-1 example is not diagonal, so requesting `diagonal` fails.
    RunConfig cfg = parse({"class1", "--psi", R"(["1","0","-1"])", "--m1", "0", "--q", "1/2",
                           "--N", "10", "--relations", "diagonal"});
    cfg.out = "/tmp/qhahn_fail.json";
    CHECK(run(cfg) == 1);
    const std::string text = slurp("/tmp/qhahn_fail.json");
    CHECK(text.find("\"pass\": false") != std::string::npos);
    CHECK(text.find("\"witness\"") != std::string::npos);
    std::remove("/tmp/qhahn_fail.json");
}

TEST_CASE("every default relation runs for every family") {
    for (const char* fam : {"big_q_jacobi", "q_laguerre", "al_salam_carlitz_1", "q_charlier"}) {
        RunConfig cfg = parse({"verify", "--family", fam, "--q", "1/2", "--N", "12"});
        cfg.out = "/tmp/qhahn_all_rel.json";
        CHECK(run(cfg) == 0);
    }
    std::remove("/tmp/qhahn_all_rel.json");
}

#ifdef QHAHN_CLI_PATH
TEST_CASE("binary exit-status contract") {
    CHECK(run_binary("verify --family al_salam_carlitz_1 --q 1/2 --a 2 --N 8 "
                     "--relations classical_trio") == 0);
    CHECK(run_binary("verify --family al_salam_carlitz_1 --q 1/0") == 2);
    CHECK(run_binary("class1 --psi [\\\"1\\\",\\\"0\\\",\\\"-1\\\"] --m1 0 --q 1/2 --N 10 "
                     "--relations diagonal") == 1);
    CHECK(run_binary("nonsense") == 2);
}
#endif

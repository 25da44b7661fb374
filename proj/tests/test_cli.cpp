#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <sstream>

#include "msum/ast.hpp"
#include "msum/cli.hpp"

using namespace msum;
using nlohmann::json;

namespace {

std::string fixture(const std::string& name) {
    return std::string(MSUM_FIXTURE_DIR) + "/" + name;
}

struct CliResult {
    int code;
    std::string out, err;
};

CliResult run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code = cli_run(args, out, err);
    return {code, out.str(), err.str()};
}

bool contains(const std::string& hay, const std::string& needle) {
    return hay.find(needle) != std::string::npos;
}

/// Structural validation against docs/schema.json: required keys, enums and
/// primitive types of the fields the schema pins down.
void check_report_schema(const json& j) {
    REQUIRE(j.is_object());
    for (const char* k : {"command", "status", "exit_code"}) REQUIRE(j.contains(k));
    std::set<std::string> commands{"solve", "verify", "telescope", "eval", "simplify"};
    std::set<std::string> statuses{"solved",
                                   "pass",
                                   "fail",
                                   "ok",
                                   "no-solution-in-class",
                                   "underdetermined",
                                   "inconsistent-initial-conditions",
                                   "error"};
    CHECK(commands.count(j["command"].get<std::string>()) == 1);
    CHECK(statuses.count(j["status"].get<std::string>()) == 1);
    CHECK(j["exit_code"].is_number_integer());
    CHECK(j["exit_code"].get<int>() >= 0);
    CHECK(j["exit_code"].get<int>() <= 3);
    if (j.contains("residual")) {
        const json& r = j["residual"];
        for (const char* k : {"from", "to", "pass"}) REQUIRE(r.contains(k));
        CHECK(r["pass"].is_boolean());
    }
    if (j.contains("values"))
        for (const auto& v : j["values"]) {
            REQUIRE(v.contains("at"));
            REQUIRE(v.contains("value"));
        }
    if (j.contains("hints"))
        for (const auto& h : j["hints"]) CHECK(h.is_string());
}

} // namespace

TEST_CASE("solve: S_1 recurrence in a small envelope") {
    auto r = run({"solve", fixture("s1.rec"), "--weight", "2", "--poles", "0..0",
                  "--pole-degree", "1"});
    CHECK(r.code == 0);
    CHECK(contains(r.out, "status: solved"));
    CHECK(contains(r.out, "solution: S[1](N)"));
    CHECK(contains(r.out, "verified"));
}

TEST_CASE("solve: weight-0 envelope fails with an adjunction hint") {
    auto r = run({"solve", fixture("s1.rec"), "--weight", "0"});
    CHECK(r.code == 1);
    CHECK(contains(r.out, "no-solution-in-class"));
    CHECK(contains(r.out, "adjoin S[1]"));
}

TEST_CASE("solve: unresolved external sequence is a usage error") {
    auto r = run({"solve", fixture("rm2.rec")});
    CHECK(r.code == 2);
    CHECK(contains(r.err, "R1"));
    CHECK(contains(r.err, "--define"));
}

TEST_CASE("solve: rational strategy pins constants with ics") {
    // I(N) - I(N-1) = 1/(N(N-1)), I(1) = 0: solution 1 - 1/N... with ic it is -1/N + 1
    auto r = run({"solve", fixture("tele1.rec"), "--strategy", "rational"});
    CHECK(r.code == 0);
    CHECK(contains(r.out, "status: solved"));
}

TEST_CASE("solve: dalembert strategy factors the harmonic-number equation") {
    auto r = run({"solve", fixture("dalembert2.rec"), "--strategy", "dalembert"});
    CHECK(r.code == 0);
    CHECK(contains(r.out, "S[1](j)"));
}

TEST_CASE("solve: hypergeom strategy reports product certificates") {
    auto r = run({"solve", fixture("dalembert2.rec"), "--strategy", "hypergeom"});
    CHECK(r.code == 0);
    CHECK(contains(r.out, "y(j+1)/y(j) = 1"));
}

TEST_CASE("verify: bundled closed form passes on a range") {
    auto r = run({"verify", fixture("no22.rec"), fixture("no22_solution.expr"), "--range",
                  "4..40"});
    CHECK(r.code == 0);
    CHECK(contains(r.out, "status: pass"));
}

TEST_CASE("verify: perturbed closed form fails with the first bad point") {
    auto r = run({"verify", fixture("no22.rec"),
                  "(" + std::string("S[1](N)") + ")", "--range", "4..10"});
    CHECK(r.code == 1);
    CHECK(contains(r.out, "status: fail"));
    CHECK(contains(r.out, "N=4"));
}

TEST_CASE("verify: external rhs symbol requires a definition") {
    auto r = run({"verify", fixture("rm2.rec"), "S[1](N)"});
    CHECK(r.code == 2);
    CHECK(contains(r.err, "R1"));
}

TEST_CASE("telescope: rationally summable term") {
    auto r = run({"telescope", "1/(k*(k+1))"});
    CHECK(r.code == 0);
    CHECK(contains(r.out, "g = -1/(k)"));
}

TEST_CASE("telescope: 1/k fails in the rational class with a hint") {
    auto r = run({"telescope", "1/k"});
    CHECK(r.code == 1);
    CHECK(contains(r.out, "adjoin S[1]"));
}

TEST_CASE("telescope: harmonic class certificate for S_1(k)/(k+1)") {
    auto r = run({"telescope", "S[1](k)/(k+1)", "--class", "harmonic"});
    CHECK(r.code == 0);
    auto gpos = r.out.find("g = ");
    REQUIRE(gpos != std::string::npos);
    std::string g = r.out.substr(gpos + 4, r.out.find('\n', gpos) - gpos - 4);
    CHECK(parse_hexpr(g, "k") == parse_hexpr("S[1,1](k) - S[2](k)", "k"));
}

TEST_CASE("eval: exact values in Q[zeta]") {
    auto r = run({"eval", "S[1,1](N)", "--at", "N=3"});
    CHECK(r.code == 0);
    CHECK(contains(r.out, "N=3: 85/36"));
    r = run({"eval", "S[-2](N)", "--at", "N=3"});
    CHECK(r.code == 0);
    CHECK(contains(r.out, "N=3: -31/36"));
    r = run({"eval", fixture("no22_solution.expr"), "--at", "N=1"});
    CHECK(r.code == 0);
    CHECK(contains(r.out, "z(5)"));
}

TEST_CASE("eval: pole is a usage error") {
    auto r = run({"eval", "1/(N-3)", "--at", "N=3"});
    CHECK(r.code == 2);
    CHECK(contains(r.err, "pole"));
}

TEST_CASE("simplify: stuffle, cancellation and synchronization") {
    auto r = run({"simplify", "S[1](N)*S[1](N)"});
    CHECK(r.code == 0);
    CHECK(parse_hexpr(r.out) == parse_hexpr("2*S[1,1](N) - S[2](N)"));

    r = run({"simplify", "S[1](N) - S[1](N)"});
    CHECK(r.code == 0);
    CHECK(r.out == "0\n");

    r = run({"simplify", "S[2](N-1) + (-1)^(N-1) * 0"});
    CHECK(r.code == 0);
    CHECK(parse_hexpr(r.out) == parse_hexpr("S[2](N) - 1/N^2"));

    // idempotence: simplifying the canonical output reproduces it verbatim
    auto r2 = run({"simplify", r.out});
    CHECK(r2.out == r.out);
}

TEST_CASE("json reports follow the published schema") {
    auto r = run({"solve", fixture("s1.rec"), "--weight", "2", "--poles", "0..0",
                  "--pole-degree", "1", "--json"});
    CHECK(r.code == 0);
    json j = json::parse(r.out);
    check_report_schema(j);
    CHECK(j["status"] == "solved");
    CHECK(j["residual"]["pass"] == true);
    CHECK(j["solution"] == "S[1](N)");

    r = run({"eval", "S[1,1](N)", "--at", "N=3", "--json"});
    json je = json::parse(r.out);
    check_report_schema(je);
    CHECK(je["values"][0]["value"] == "85/36");

    r = run({"telescope", "1/k", "--json"});
    json jt = json::parse(r.out);
    check_report_schema(jt);
    CHECK(jt["exit_code"] == 1);
}

TEST_CASE("usage errors exit with code 2") {
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({"solve"}).code == 2);
    CHECK(run({"solve", fixture("s1.rec"), "--strategy", "secret"}).code == 2);
    CHECK(run({"eval", "S[1](N)"}).code == 2);
    CHECK(run({"solve", "/nonexistent/file.rec"}).code == 2);
}

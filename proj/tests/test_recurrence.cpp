#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <sstream>

#include "msum/ast.hpp"
#include "msum/recurrence.hpp"

using namespace msum;

static std::string fixture(const std::string& name) {
    return std::string(MSUM_FIXTURE_DIR) + "/" + name;
}

static std::string slurp(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

TEST_CASE("expression parsing and printing round-trip") {
    for (const char* src : {
             "S[-3](N-3)/(N-3)*56",
             "(-1)^N*z(3)*6",
             "1/2 + 1/(N+1)*S[1,-2](N) - 5*(-1)^N*z(5)",
             "-(2*k - 1)",
             "eps^2*S[1,1](N) + eps*S[2](N) + S[1](N)",
             "R1(N-2)*(2*N + 1 - 6*eps)",
             "(-1)^(N-1)*S[2](N)^2",
         }) {
        NodePtr a = parse_expr_text(src);
        NodePtr b = parse_expr_text(ast_str(a));
        CHECK(ast_equal(a, b));
    }
}

TEST_CASE("parse errors carry position, zero division rejected") {
    CHECK_THROWS_AS(parse_expr_text("S[1](N"), ParseError);
    CHECK_THROWS_AS(parse_expr_text("1 + + 2 @"), ParseError);
    CHECK_THROWS_AS(parse_expr_text("S[0](N)"), ParseError);
    try {
        parse_expr_text("1 +\n  2 *");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line == 2);
    }
    CHECK_THROWS_AS(parse_hexpr("1/0"), ParseError);
    CHECK_THROWS_AS(parse_hexpr("1/(S[1](N))"), LowerError);   // sums are not units
    CHECK_THROWS_AS(parse_hexpr("x + 1"), LowerError);          // foreign variable
    CHECK_THROWS_AS(parse_hexpr("R1(N-2)"), LowerError);        // unresolved external
}

TEST_CASE("lowering synchronizes arguments and alt signs") {
    // S[-3](N-3)/(N-3)*56: the sum is shifted to argument N
    HExpr e = parse_hexpr("S[-3](N-3)/(N-3)*56");
    for (long N = 4; N <= 12; ++N)
        CHECK(e.eval(N) == ZetaValue(harmonic_value({-3}, N - 3) * Rat(56) / Rat(N - 3)));
    // (-1)^(N-2) has even offset
    CHECK(parse_hexpr("(-1)^(N-2)*S[2](N)") == HExpr::alt_sign() * HExpr::harmonic({2}));
    CHECK(parse_hexpr("(-1)^(N-1)") == -HExpr::alt_sign());
    // canonical simplification examples
    CHECK(parse_hexpr("S[1](N)*S[1](N)") ==
          parse_hexpr("2*S[1,1](N) - S[2](N)"));
    CHECK(parse_hexpr("S[1](N) - S[1](N)").is_zero());
    CHECK(parse_hexpr("S[2](N-1) + (-1)^(N-1)*0") == parse_hexpr("S[2](N) - 1/N^2"));
}

TEST_CASE("s1 fixture: apply, verify, unroll") {
    RecurrenceFile f = read_recurrence_file(fixture("s1.rec"));
    CHECK(f.rec.order == 1);
    CHECK(f.ics.at(0) == ZetaValue(Rat(0)));

    // apply(rec, S1) = 1/N; apply(rec, 1) = 0
    HExpr s1 = HExpr::harmonic({1});
    CHECK(rec_apply(f.rec, s1) == parse_hexpr("1/N"));
    CHECK(rec_apply(f.rec, HExpr(1)).is_zero());

    ResidualReport rep = verify_solution(f.rec, EExpr(s1), f.ics, 1, 50);
    CHECK(rep.pass);

    // wrong candidate fails at N=1
    ResidualReport bad = verify_solution(f.rec, EExpr(parse_hexpr("S[1](N) + 1/N")),
                                         f.ics, 1, 50);
    CHECK(!bad.pass);
    CHECK(*bad.first_failure == 1);

    auto vals = unroll(f.rec, f.ics, 3);
    CHECK(vals.at(3) == ZetaValue(Rat(11, 6)));
}

TEST_CASE("unroll: geometric and missing-seed errors") {
    RecurrenceFile f = parse_recurrence_text(
        "var N\norder 1\nfield Q\ncoeff[0] = 1\ncoeff[1] = -2\nrhs = 0\nics {\n 0: 1\n}\n");
    CHECK(unroll(f.rec, f.ics, 5).at(5) == ZetaValue(Rat(32)));
    CHECK_THROWS(unroll(f.rec, {}, 5));
}

TEST_CASE("apply is linear") {
    RecurrenceFile f = read_recurrence_file(fixture("dalembert2.rec"));
    HExpr x = parse_hexpr("S[1,1](k)/(k+1) + (-1)^k*z(3)", "k");
    HExpr y = parse_hexpr("S[-2](k) + 3/k", "k");
    HExpr lhs = rec_apply(f.rec, x * Rat(5, 3) - y * Rat(7));
    HExpr rhs = rec_apply(f.rec, x) * Rat(5, 3) - rec_apply(f.rec, y) * Rat(7);
    CHECK(lhs == rhs);
    // known solution basis annihilates the operator
    CHECK(rec_apply(f.rec, HExpr(1)).is_zero());
    CHECK(rec_apply(f.rec, HExpr::harmonic({1})).is_zero());
}

TEST_CASE("singular points") {
    RecurrenceFile no22 = read_recurrence_file(fixture("no22.rec"));
    CHECK(singular_points(no22.rec).forward == std::set<long>{0, 1, 2});
    CHECK(singular_points(no22.rec).backward == std::set<long>{1, 2, 3});

    RecurrenceFile s1 = read_recurrence_file(fixture("s1.rec"));
    CHECK(singular_points(s1.rec).forward.empty());

    RecurrenceFile f = parse_recurrence_text(
        "var N\norder 1\nfield Q\ncoeff[0] = N\ncoeff[1] = -1\nrhs = 0\n");
    CHECK(singular_points(f.rec).forward == std::set<long>{0});
}

TEST_CASE("rm2 fixture: eps coefficients, unresolved rhs, round-trip") {
    RecurrenceFile f = read_recurrence_file(fixture("rm2.rec"));
    CHECK(f.rec.field == FieldKind::Eps);
    CHECK(f.rec.order == 2);
    CHECK(!f.rec.rhs_resolved);
    CHECK(f.rec.rhs_externals == std::set<std::string>{"R1"});

    // a0 = (N+1-2eps)(N+2-6eps): eps^0 part (N+1)(N+2), eps^2 part 12
    CHECK(f.rec.coeff_q(0, 0) == RatFuncQ(PolyQ({Rat(2), Rat(3), Rat(1)})));
    CHECK(f.rec.coeff_q(0, 2) == RatFuncQ(Rat(12)));
    CHECK(singular_points(f.rec).backward == std::set<long>{1});
    CHECK(singular_points(f.rec).forward.empty());

    // shift application works on the eps-graded coefficients
    EExpr shifted = eexpr_shift(f.rec.coeffs[0], -2);
    CHECK(*shifted.coeff(0).as_rational() == RatFuncQ(PolyQ({Rat(0), Rat(-1), Rat(1)})));

    // write -> reparse is structurally identical
    RecurrenceFile g = parse_recurrence_text(write_recurrence_file(f));
    CHECK(g.rec.order == f.rec.order);
    CHECK(g.rec.eps_order == f.rec.eps_order);
    for (std::size_t i = 0; i < f.coeff_asts.size(); ++i)
        CHECK(ast_equal(g.coeff_asts[i], f.coeff_asts[i]));
    CHECK(ast_equal(g.rec.rhs_ast, f.rec.rhs_ast));

    // with a definition for R1 the rhs lowers
    std::map<std::string, EExpr> defs{{"R1", EExpr(HExpr::harmonic({1}))}};
    RecurrenceFile h = parse_recurrence_text(write_recurrence_file(f), defs);
    CHECK(h.rec.rhs_resolved);
}

TEST_CASE("no22 fixture round-trips and ics evaluate") {
    RecurrenceFile f = read_recurrence_file(fixture("no22.rec"));
    RecurrenceFile g = parse_recurrence_text(write_recurrence_file(f));
    for (std::size_t i = 0; i < f.coeff_asts.size(); ++i)
        CHECK(ast_equal(g.coeff_asts[i], f.coeff_asts[i]));
    CHECK(ast_equal(g.rec.rhs_ast, f.rec.rhs_ast));
    CHECK(f.ics.at(1) == ZetaValue(zeta_mon({5}), Rat(5)));
    CHECK(f.ics.at(2) ==
          ZetaValue(zeta_mon({3}), Rat(16, 3)) + ZetaValue(zeta_mon({5}), Rat(-10, 3)));
}

TEST_CASE("no22 closed form satisfies the equation exactly for N=4..100") {
    RecurrenceFile f = read_recurrence_file(fixture("no22.rec"));
    HExpr sol = parse_hexpr(slurp(fixture("no22_solution.expr")));

    ResidualReport rep = verify_solution(f.rec, EExpr(sol), f.ics, 4, 100);
    CHECK(rep.pass);
    CHECK(rep.message == "all residuals zero");

    // closed form agrees with the forward-recursion oracle
    auto vals = unroll(f.rec, f.ics, 60);
    for (long N = 4; N <= 60; ++N) REQUIRE(vals.at(N) == sol.eval(N));

    // perturbing one coefficient by 1 breaks the identity at N=4
    HExpr bad = sol + parse_hexpr("S[-3,-2](N)/(N+1)");
    ResidualReport brep = verify_solution(f.rec, EExpr(bad), f.ics, 4, 20);
    CHECK(!brep.pass);
    CHECK(*brep.first_failure == 4);
}

TEST_CASE("scaling the equation does not change validity") {
    RecurrenceFile f = parse_recurrence_text(
        "var N\norder 1\nfield Q\ncoeff[0] = 3*N+1\ncoeff[1] = -(3*N+1)\nrhs = (3*N+1)/N\n");
    CHECK(verify_solution(f.rec, EExpr(HExpr::harmonic({1})), {}, 1, 30).pass);
}

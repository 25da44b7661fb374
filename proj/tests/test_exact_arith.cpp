#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "msum/laurent.hpp"
#include "msum/poly.hpp"
#include "msum/printing.hpp"
#include "msum/rational.hpp"
#include "msum/roots.hpp"

using namespace msum;

static PolyQ P(std::initializer_list<long> coeffs_low_to_high) {
    std::vector<Rat> c;
    for (long v : coeffs_low_to_high) c.push_back(Rat(v));
    return PolyQ(c);
}

TEST_CASE("rational arithmetic and normalization") {
    CHECK(Rat(2, 4) == Rat(1, 2));
    CHECK(Rat(-3, -6) == Rat(1, 2));
    CHECK(Rat(3, -6) == Rat(-1, 2));
    CHECK(Rat(1, 2) + Rat(1, 3) == Rat(5, 6));
    CHECK(Rat(1, 2) * Rat(2, 3) == Rat(1, 3));
    CHECK(Rat(7, 3) / Rat(7, 3) == Rat(1));
    CHECK(Rat(2, 3).inv() == Rat(3, 2));
    CHECK(Rat(-2, 3).pow(3) == Rat(-8, 27));
    CHECK(Rat(2).pow(-2) == Rat(1, 4));
    CHECK(Rat::from_string("85/36").str() == "85/36");
    CHECK_THROWS(Rat(1, 0));
    CHECK_THROWS(Rat(0).inv());
}

TEST_CASE("polynomial gcd and divmod") {
    // gcd(x^2-1, x^2-2x+1) = x-1
    CHECK(gcd(P({-1, 0, 1}), P({1, -2, 1})) == P({-1, 1}));
    // (x^2-1) divmod (x-1) = (x+1, 0)
    auto [q, r] = divmod(P({-1, 0, 1}), P({-1, 1}));
    CHECK(q == P({1, 1}));
    CHECK(r.is_zero());
    // gcd(x^3+x, x^2+1) = x^2+1
    CHECK(gcd(P({0, 1, 0, 1}), P({1, 0, 1})) == P({1, 0, 1}));
    CHECK_THROWS(divmod(P({1, 1}), PolyQ()));
}

TEST_CASE("divmod reconstruction on random inputs") {
    std::mt19937 rng(42);
    std::uniform_int_distribution<int> coeff(-5, 5), deg(0, 12);
    for (int trial = 0; trial < 60; ++trial) {
        std::vector<Rat> pc((std::size_t)deg(rng) + 1), dc((std::size_t)deg(rng) + 1);
        for (auto& c : pc) c = Rat(coeff(rng));
        for (auto& c : dc) c = Rat(coeff(rng));
        PolyQ p(pc), d(dc);
        if (d.is_zero()) continue;
        auto [q, r] = divmod(p, d);
        CHECK(q * d + r == p);
        CHECK((r.is_zero() || r.degree() < d.degree()));
    }
}

TEST_CASE("polynomial shift") {
    PolyQ x = PolyQ::x();
    CHECK((x * x).shifted(Rat(1)) == P({1, 2, 1}));
    CHECK(x.shifted(Rat(5)) == P({5, 1}));
    // (x-1)^2 - (x-1) = x^2 - 3x + 2
    CHECK((x * x - x).shifted(Rat(-1)) == P({2, -3, 1}));
}

TEST_CASE("rational functions reduce and stay monic") {
    RatFuncQ f(P({-1, 0, 1}), P({-1, 1})); // (x^2-1)/(x-1) = x+1
    CHECK(f.is_polynomial());
    CHECK(f.num() == P({1, 1}));
    RatFuncQ g(P({2}), P({0, 4})); // 2/(4x) = (1/2)/x
    CHECK(g.den() == P({0, 1}));
    CHECK(g.num() == PolyQ(Rat(1, 2)));
    CHECK(g.eval(Rat(3)) == Rat(1, 6));
    CHECK(g.has_pole_at(Rat(0)));
    CHECK_THROWS(g.eval(Rat(0)));
    CHECK(f + g - g == f);
    CHECK((f / f).is_one());
}

TEST_CASE("integer roots") {
    // (j-3)(j+1)j
    PolyQ p = P({0, -3, -2, 1});
    CHECK(integer_roots(p) == std::set<long>{-1, 0, 3});
    CHECK(integer_roots(P({1, 0, 1})).empty());
    // 2j^2 - j - 1: roots 1 and -1/2
    CHECK(integer_roots(P({-1, -1, 2})) == std::set<long>{1});
    // works after clearing rational denominators
    CHECK(integer_roots(PolyQ({Rat(-1, 3), Rat(1, 3)})) == std::set<long>{1});
    CHECK(root_multiplicity(P({1, -2, 1}), Rat(1)) == 2);
}

TEST_CASE("dispersion") {
    PolyQ x = PolyQ::x();
    CHECK(dispersion_set(x, x - PolyQ(Rat(3))) == std::set<long>{3});
    CHECK(dispersion_set(x, x) == std::set<long>{0});
    CHECK(dispersion_set(x * (x - PolyQ(Rat(1))), x - PolyQ(Rat(4))) == std::set<long>{3, 4});
    CHECK(!dispersion_max(x, x - PolyQ(Rat(2))).has_value() == false);
    CHECK(*dispersion_max(x * (x - PolyQ(Rat(1))), x - PolyQ(Rat(4))) == 4);
    CHECK(!dispersion_max(x, x + PolyQ(Rat(5))).has_value()); // only j = -5 works
}

TEST_CASE("dispersion agrees with brute-force gcd scan") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> root(-6, 6), deg(1, 4);
    for (int trial = 0; trial < 40; ++trial) {
        PolyQ p(Rat(1)), q(Rat(1));
        int dp = deg(rng), dq = deg(rng);
        for (int i = 0; i < dp; ++i) p = p * (PolyQ::x() - PolyQ(Rat(root(rng))));
        for (int i = 0; i < dq; ++i) q = q * (PolyQ::x() - PolyQ(Rat(root(rng))));
        std::set<long> expected;
        for (long j = 0; j <= 20; ++j)
            if (gcd(p, q.shifted(Rat(j))).degree() > 0) expected.insert(j);
        CHECK(dispersion_set(p, q) == expected);
    }
}

TEST_CASE("laurent series arithmetic") {
    using L = Laurent<Rat>;
    L eps = L::eps(1);
    L inv_eps = L::eps(-1);
    CHECK((inv_eps * eps).coeff(0) == Rat(1));
    CHECK((inv_eps * eps) == L(Rat(1)));

    // 1/(1+eps) truncated at eps^2 = 1 - eps + eps^2
    L one_plus = (L(Rat(1)) + eps).truncated(2);
    L g = L(Rat(1)) / one_plus;
    CHECK(g.coeff(0) == Rat(1));
    CHECK(g.coeff(1) == Rat(-1));
    CHECK(g.coeff(2) == Rat(1));

    // multiplying by the exact 1/eps shifts the knowledge window down:
    // the eps^2 coefficient of (1/eps)*g would need g's eps^3 term
    CHECK((inv_eps * g).trunc() == 1);

    // 1/(eps*(1+eps)) known through eps^2 = 1/eps - 1 + eps - eps^2
    L h = inv_eps / (L(Rat(1)) + eps).truncated(3);
    CHECK(h.coeff(-1) == Rat(1));
    CHECK(h.coeff(0) == Rat(-1));
    CHECK(h.coeff(1) == Rat(1));
    CHECK(h.coeff(2) == Rat(-1));
    CHECK(h.lead() == -1);
}

TEST_CASE("laurent division round-trips against multiplication") {
    using L = Laurent<Rat>;
    L a = (L::eps(-1) * L(Rat(3)) + L(Rat(2)) + L::eps(2) * L(Rat(5))).truncated(4);
    L b = (L(Rat(1)) + L::eps(1) * L(Rat(-7)) + L::eps(3) * L(Rat(2))).truncated(4);
    L q = a / b;
    L back = q * b;
    for (long e = a.lead(); e <= 3; ++e) CHECK(back.coeff(e) == a.coeff(e));
    CHECK_THROWS(a / L());
}

TEST_CASE("rational-coefficient printing") {
    CHECK(poly_str(P({1, -2, 3})) == "3*N^2 - 2*N + 1");
    CHECK(poly_str(PolyQ()) == "0");
    CHECK(ratfunc_str(RatFuncQ(P({0, 1}), P({1, 1}))) == "(N)/(N + 1)");
    CHECK(ratfunc_str(RatFuncQ(Rat(-1, 2))) == "-1/2");
}

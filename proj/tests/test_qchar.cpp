#include "doctest.h"

#include <random>

#include <omp.h>

#include "grothsym/errors.hpp"
#include "grothsym/qchar.hpp"
#include "random_poly.hpp"

using namespace grothsym;

namespace {

LaurentPoly P(std::string_view s) { return lp_parse(s); }
LaurentPoly Y(int i, int k, int e = 1) { return LaurentPoly::var(Yv(i, k), e); }

// Explicit ladder: sum_j prod_{s < m-j} Y[1,k+2s] prod_{m-j <= s < m} Y[1,k+2s+2]^-1.
LaurentPoly ladder(int m, int k) {
    LaurentPoly sum;
    for (int j = 0; j <= m; ++j) {
        Monomial mono;
        for (int s = 0; s < m; ++s)
            mono = mono * (s < m - j ? Monomial::var(Yv(1, k + 2 * s)) : Monomial::var(Yv(1, k + 2 * s + 2), -1));
        sum += LaurentPoly(mono);
    }
    return sum;
}

} // namespace

TEST_CASE("root monomials") {
    YContext sl2(cartan_by_name("A1"));
    YContext sl3(cartan_by_name("A2"));
    CHECK(LaurentPoly(a_monomial(sl2, 1, 5)) == Y(1, 4) * Y(1, 6));
    CHECK(LaurentPoly(a_monomial(sl3, 1, 0)) == Y(1, -1) * Y(1, 1) * Y(2, 0, -1));
    CHECK(LaurentPoly(a_monomial(sl3, 2, 3)) == Y(2, 2) * Y(2, 4) * Y(1, 3, -1));
    for (int i = 1; i <= 2; ++i)
        CHECK(restrict_classical(LaurentPoly(a_monomial(sl3, i, 7))) ==
              LaurentPoly(simple_root_monomial(sl3.cartan(), i)));

    YContext narrow(cartan_by_name("A1"), {-2, 2});
    CHECK_NOTHROW(a_monomial(narrow, 1, 1));
    CHECK_THROWS_AS(a_monomial(narrow, 1, 2), WindowOverflow);
    CHECK_THROWS_AS(YContext(cartan_by_name("B2")), InvalidArgument);
}

TEST_CASE("fundamental sl2 q-character") {
    YContext sl2(cartan_by_name("A1"));
    CHECK(fundamental_qchar_sl2(0) == P("Y[1,0] + Y[1,2]^-1"));
    CHECK(fundamental_qchar_sl2(-3) == P("Y[1,-3] + Y[1,-1]^-1"));
    for (int k = -6; k <= 6; ++k)
        CHECK(fundamental_qchar_sl2(k) ==
              Y(1, k) + Y(1, k) * LaurentPoly(a_monomial(sl2, 1, k + 1).inverse()));
}

TEST_CASE("Kirillov-Reshetikhin classes") {
    CHECK(kr_qchar_sl2(0, 4) == LaurentPoly(1));
    CHECK(kr_qchar_sl2(1, 3) == fundamental_qchar_sl2(3));
    auto w = kr_qchar_sl2(2, 0);
    CHECK(w == P("Y[1,0]*Y[1,2] + Y[1,0]*Y[1,4]^-1 + Y[1,2]^-1*Y[1,4]^-1"));
    CHECK(w.size() == 3);
    CHECK(fundamental_qchar_sl2(0) * fundamental_qchar_sl2(2) == 1 + w);
    auto a1 = cartan_by_name("A1");
    for (int m = 0; m <= 8; ++m)
        for (int k = -5; k <= 5; ++k) {
            REQUIRE(kr_qchar_sl2(m, k) == ladder(m, k));
            auto cls = restrict_classical(kr_qchar_sl2(m, k));
            REQUIRE(cls == classical_char_sl2(m));
            REQUIRE(is_invariant(a1, cls));
        }
    CHECK_THROWS_AS(kr_qchar_sl2(-1, 0), InvalidArgument);
}

TEST_CASE("classical restriction") {
    CHECK(restrict_classical(fundamental_qchar_sl2(0)) == P("y[1,0] + y[1,0]^-1"));
    CHECK(restrict_classical(kr_qchar_sl2(2, 0)) == P("y[1,0]^2 + 1 + y[1,0]^-2"));
    CHECK(restrict_classical(LaurentPoly(1)) == LaurentPoly(1));

    std::mt19937 rng(17);
    const VarId vars[] = {Yv(1, 0), Yv(1, 2), Yv(2, -1)};
    for (int iter = 0; iter < 300; ++iter) {
        auto a = testing::random_poly(rng, vars), b = testing::random_poly(rng, vars);
        REQUIRE(restrict_classical(a * b) == restrict_classical(a) * restrict_classical(b));
        REQUIRE(restrict_classical(a + b) == restrict_classical(a) + restrict_classical(b));
        REQUIRE(prefundamental_substitute(a * b) == prefundamental_substitute(a) * prefundamental_substitute(b));
        REQUIRE(prefundamental_substitute(a + b) == prefundamental_substitute(a) + prefundamental_substitute(b));
    }
}

TEST_CASE("prefundamental substitution and TQ") {
    CHECK(prefundamental_substitute(fundamental_qchar_sl2(0)) == P("L[1,-1]*L[1,1]^-1 + L[1,3]*L[1,1]^-1"));
    CHECK(prefundamental_substitute(Y(1, 0) * Y(1, 2)) == P("L[1,-1]*L[1,3]^-1"));
    CHECK(prefundamental_substitute(LaurentPoly(1)) == LaurentPoly(1));
    CHECK(check_tq_sl2(0));
    for (int k = -10; k <= 10; ++k)
        CHECK(check_tq_sl2(k));
    CHECK_FALSE(check_tq_sl2(0, Y(1, 0) + Y(1, 4, -1)));
    CHECK_FALSE(check_tq_sl2(1, fundamental_qchar_sl2(0)));

    auto r = check_tq_window({-10, 10});
    CHECK(r.points == 21);
    CHECK(r.ok());
    const int saved = omp_get_max_threads();
    omp_set_num_threads(3);
    auto par = check_tq_window({-40, 40});
    omp_set_num_threads(saved);
    auto ser = check_tq_window_serial({-40, 40});
    CHECK(par.points == ser.points);
    CHECK(par.failures == ser.failures);
}

TEST_CASE("window parsing") {
    auto w = parse_window("-10..10");
    CHECK(w.lo == -10);
    CHECK(w.hi == 10);
    CHECK(w.points() == 21);
    CHECK_THROWS_AS(parse_window("3..1"), InvalidArgument);
    CHECK_THROWS_AS(parse_window("3-1"), ParseError);
    CHECK_THROWS_AS(parse_window("a..1"), ParseError);
}

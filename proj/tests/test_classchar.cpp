#include "doctest.h"

#include <random>

#include "grothsym/classchar.hpp"
#include "grothsym/errors.hpp"
#include "random_poly.hpp"

using namespace grothsym;

namespace {

LaurentPoly P(std::string_view s) { return lp_parse(s); }

// Evaluates a polynomial in X[1,0] at an arbitrary Laurent polynomial.
LaurentPoly eval_at(const LaurentPoly &p, const LaurentPoly &x) {
    LaurentPoly r;
    for (auto &t : p.terms()) {
        int e = t.monomial.exponent(X(1));
        REQUIRE(e >= 0);
        r += x.pow(static_cast<unsigned>(e)) * LaurentPoly(t.coefficient);
    }
    return r;
}

CartanData b3() { return CartanData::from_rows({{2, -1, 0}, {-1, 2, -1}, {0, -2, 2}}); }
CartanData c3() { return CartanData::from_rows({{2, -1, 0}, {-1, 2, -2}, {0, -1, 2}}); }

} // namespace

TEST_CASE("Cartan data") {
    auto a3 = cartan_by_name("A3");
    CHECK(a3.rank() == 3);
    CHECK(a3.simply_laced());
    CHECK(a3.determinant() == 4);
    CHECK_FALSE(cartan_by_name("B2").simply_laced());
    CHECK(cartan_by_name("D4").determinant() == 4);
    auto adj = a3.adjugate();
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            long s = 0;
            for (int k = 0; k < 3; ++k)
                s += adj[static_cast<std::size_t>(i * 3 + k)] * a3(k + 1, j + 1);
            CHECK(s == (i == j ? 4 : 0));
        }
    CHECK_THROWS_AS(cartan_by_name("E9"), InvalidArgument);
    CHECK_THROWS_AS(cartan_by_name("A0"), InvalidArgument);
    CHECK_THROWS_AS(CartanData::from_rows({{2, -2}, {-2, 2}}), InvalidArgument); // affine
    CHECK_THROWS_AS(CartanData::from_rows({{2, 1}, {1, 2}}), InvalidArgument);
    CHECK_THROWS_AS(CartanData::from_rows({{2, -1}, {0, 2}}), InvalidArgument);
    CHECK(parse_cartan_matrix("# B2\n2 -1\n-2 2\n") == cartan_by_name("B2"));
    CHECK_THROWS_AS(parse_cartan_matrix("2 x\n1 2\n"), ParseError);
}

TEST_CASE("simple root monomials") {
    CHECK(simple_root_monomial(cartan_by_name("A1"), 1) == Monomial::var(yv(1), 2));
    CHECK(simple_root_monomial(cartan_by_name("A2"), 1) == Monomial::var(yv(1), 2) * Monomial::var(yv(2), -1));
    CHECK(weyl_reflect(cartan_by_name("A1"), 1, LaurentPoly::var(yv(1))) == LaurentPoly::var(yv(1), -1));
}

TEST_CASE("reflections and invariance") {
    auto a1 = cartan_by_name("A1"), a2 = cartan_by_name("A2");
    auto chi = P("y[1,0] + y[1,0]^-1");
    CHECK(weyl_reflect(a1, 1, chi) == chi);
    auto y1 = LaurentPoly::var(yv(1));
    CHECK(weyl_reflect(a1, 1, weyl_reflect(a1, 1, y1)) == y1);
    CHECK(weyl_reflect(a2, 1, LaurentPoly::var(yv(2))) == LaurentPoly::var(yv(2)));
    CHECK(is_invariant(a1, chi));
    CHECK_FALSE(is_invariant(a1, y1));
    CHECK(is_invariant(a2, P("y[1,0] + y[1,0]^-1*y[2,0] + y[2,0]^-1")));
    CHECK_FALSE(is_invariant(a2, P("y[1,0] + y[2,0]^-1")));
    CHECK_THROWS_AS(weyl_reflect(a1, 1, LaurentPoly::var(yv(2))), UnmappedVariable);
    CHECK_THROWS_AS(weyl_reflect(a1, 1, LaurentPoly::var(X(1))), UnmappedVariable);
}

TEST_CASE("reflections are involutions in every finite type of rank <= 3") {
    std::mt19937 rng(3);
    std::vector<CartanData> types{cartan_by_name("A1"), cartan_by_name("A2"), cartan_by_name("B2"),
                                  cartan_by_name("A3"), b3(), c3()};
    for (auto &cd : types) {
        std::vector<VarId> vars;
        for (int i = 1; i <= cd.rank(); ++i)
            vars.push_back(yv(i));
        for (int iter = 0; iter < 100; ++iter) {
            auto p = testing::random_poly(rng, vars);
            for (int i = 1; i <= cd.rank(); ++i)
                REQUIRE(weyl_reflect(cd, i, weyl_reflect(cd, i, p)) == p);
        }
    }
}

TEST_CASE("braid relation in type A2") {
    std::mt19937 rng(8);
    auto a2 = cartan_by_name("A2");
    const VarId vars[] = {yv(1), yv(2)};
    auto s = [&](int i, const LaurentPoly &p) { return weyl_reflect(a2, i, p); };
    for (int iter = 0; iter < 200; ++iter) {
        auto p = testing::random_poly(rng, vars);
        REQUIRE(s(1, s(2, s(1, p))) == s(2, s(1, s(2, p))));
    }
}

TEST_CASE("Q_n sequence") {
    auto q = qn_sequence(3);
    REQUIRE(q.size() == 4);
    CHECK(q[0] == LaurentPoly(1));
    CHECK(q[1] == P("X[1,0]"));
    CHECK(q[2] == P("X[1,0]^2 - 1"));
    CHECK(q[3] == P("X[1,0]^3 - 2*X[1,0]"));
    CHECK(qn_sequence(4)[4] == P("X[1,0]^4 - 3*X[1,0]^2 + 1"));
    CHECK(qn_sequence(0) == std::vector<LaurentPoly>{LaurentPoly(1)});
    CHECK_THROWS_AS(qn_sequence(-1), InvalidArgument);

    auto long_q = qn_sequence(13);
    auto a1 = cartan_by_name("A1");
    auto x = P("y[1,0] + y[1,0]^-1");
    for (std::size_t n = 1; n + 1 < long_q.size(); ++n)
        CHECK(long_q[n] * long_q[n] - long_q[n + 1] * long_q[n - 1] == LaurentPoly(1));
    for (int n = 0; n <= 12; ++n) {
        // Oracle: the weight sum written out term by term.
        LaurentPoly expected;
        for (int j = 0; j <= n; ++j)
            expected += LaurentPoly::var(yv(1), n - 2 * j);
        auto value = eval_at(long_q[static_cast<std::size_t>(n)], x);
        CHECK(value == expected);
        CHECK(classical_char_sl2(n) == expected);
        CHECK(is_invariant(a1, value));
    }
}

TEST_CASE("classical sl2 characters") {
    CHECK(classical_char_sl2(0) == LaurentPoly(1));
    CHECK(classical_char_sl2(1) == P("y[1,0] + y[1,0]^-1"));
    CHECK(classical_char_sl2(2) == P("y[1,0]^2 + 1 + y[1,0]^-2"));
    auto x = P("y[1,0] + y[1,0]^-1");
    CHECK(classical_char_sl2(2) == x * x - 1);
}

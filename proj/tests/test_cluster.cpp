#include "doctest.h"

#include <random>
#include <set>

#include <omp.h>

#include "grothsym/cluster.hpp"
#include "grothsym/errors.hpp"
#include "random_quiver.hpp"

using namespace grothsym;

namespace {

LaurentPoly P(std::string_view s) { return lp_parse(s); }

Seed a2() {
    Quiver q(2);
    q.add_arrows(0, 1);
    return initial_seed(q);
}

std::set<std::string> names(const std::vector<LaurentPoly> &vs) {
    std::set<std::string> out;
    for (auto &v : vs)
        out.insert(lp_canonical_string(v));
    return out;
}

} // namespace

TEST_CASE("quiver mutation") {
    auto q = a2().quiver;
    auto m = mutate_quiver(q, 0);
    CHECK(m.b(1, 0) == 1);
    CHECK(m.b(0, 1) == -1);

    Quiver path(3);
    path.add_arrows(0, 1);
    path.add_arrows(1, 2);
    auto p = mutate_quiver(path, 1);
    CHECK(p.b(1, 0) == 1);
    CHECK(p.b(2, 1) == 1);
    CHECK(p.b(0, 2) == 1);
    CHECK(mutate_quiver(p, 1) == path);

    path.set_frozen(0);
    CHECK_THROWS_AS(mutate_quiver(path, 0), FrozenVertex);
}

TEST_CASE("frozen-frozen arrows are dropped after mutation") {
    Quiver q(3);
    q.set_frozen(1);
    q.set_frozen(2);
    q.add_arrows(1, 0);
    q.add_arrows(0, 2);
    // Mutation at 0 would create 1 -> 2 between frozen vertices.
    auto m = mutate_quiver(q, 0);
    CHECK(m.b(1, 2) == 0);
    CHECK(m.b(0, 1) == 1);
}

TEST_CASE("A2 seed mutation reproduces the listed cluster variables") {
    auto s1 = mutate_seed(a2(), 0);
    CHECK(s1.vars[0] == P("X[1,0]^-1 + X[1,0]^-1*X[2,0]"));
    auto s2 = mutate_seed(s1, 1);
    CHECK(s2.vars[1] == P("X[1,0]^-1*X[2,0]^-1 + X[1,0]^-1 + X[2,0]^-1"));
    auto back = mutate_seed(s1, 0);
    CHECK(back.vars == a2().vars);
    CHECK(back.quiver == a2().quiver);
}

TEST_CASE("A2 exchange graph") {
    auto g = enumerate_exchange_graph(a2(), 100);
    CHECK(g.complete);
    CHECK(g.seeds.size() == 5);
    std::set<std::string> expected;
    for (auto *s : {"X[1,0]", "X[2,0]", "X[1,0]^-1 + X[1,0]^-1*X[2,0]", "X[2,0]^-1 + X[1,0]*X[2,0]^-1",
                    "X[1,0]^-1*X[2,0]^-1 + X[1,0]^-1 + X[2,0]^-1"})
        expected.insert(lp_canonical_string(P(s)));
    CHECK(names(g.variables) == expected);
    CHECK(all_coefficients_positive(g));

    // Closure: every mutation of every seed is in the set.
    std::set<std::string> keys;
    for (auto &s : g.seeds)
        keys.insert(seed_key(s));
    for (auto &s : g.seeds)
        for (int k : s.quiver.mutable_vertices())
            CHECK(keys.count(seed_key(mutate_seed(s, k))) == 1);

    auto cut = enumerate_exchange_graph(a2(), 3);
    CHECK_FALSE(cut.complete);
    CHECK(cut.seeds.size() == 3);
}

TEST_CASE("degenerate exchange graphs") {
    auto single = enumerate_exchange_graph(initial_seed(Quiver(1)), 10);
    CHECK(single.complete);
    CHECK(single.seeds.size() == 2);
    CHECK(names(single.variables) == names({P("X[1,0]"), P("2*X[1,0]^-1")}));

    Quiver fq(2);
    fq.set_frozen(1);
    fq.add_arrows(1, 0);
    auto g = enumerate_exchange_graph(initial_seed(fq), 10);
    CHECK(g.complete);
    CHECK(g.seeds.size() == 2);
    CHECK(names(g.variables) == names({P("X[1,0]"), P("X[2,0]"), P("X[1,0]^-1 + X[1,0]^-1*X[2,0]")}));
}

TEST_CASE("pentagon periodicity") {
    auto s = a2();
    Seed cur = s;
    for (int k : {0, 1, 0, 1, 0})
        cur = mutate_seed(cur, k);
    auto perm = seed_permutation(s, cur);
    REQUIRE(perm);
    CHECK(*perm == std::vector<int>{1, 0});
    CHECK(cur.vars != s.vars);
}

TEST_CASE("linear segments and exchange relations") {
    auto g = build_linear_segment(4);
    CHECK(g.quiver.b(0, 1) == 1);
    CHECK(g.quiver.b(1, 2) == 1);
    CHECK(g.quiver.b(2, 3) == 1);
    CHECK(g.labels[1] == "L+[1,2]");

    auto r = build_linear_segment(4, 2);
    CHECK(r.quiver.b(0, 1) == 1);
    CHECK(r.quiver.b(2, 1) == 1);
    CHECK(r.quiver.b(2, 3) == 1);
    CHECK(r.labels == std::vector<std::string>{"L+[1,2]", "L+[1,0]", "L-[1,-2]", "L-[1,-4]"});

    auto f = build_linear_segment(2, std::nullopt, true);
    CHECK(f.quiver.mutable_vertices().empty());
    auto fg = enumerate_exchange_graph(f, 10);
    CHECK(fg.seeds.size() == 1);
    CHECK(fg.complete);

    CHECK_THROWS_AS(build_linear_segment(4, 4), InvalidArgument);
    CHECK_THROWS_AS(build_linear_segment(4, 0), InvalidArgument);

    auto tq = exchange_relation_of(build_linear_segment(3), 1);
    CHECK(tq.in_product + tq.out_product == P("X[1,0] + X[3,0]"));
    CHECK(tq.variable * tq.mutated == P("X[1,0] + X[3,0]"));

    auto qq = exchange_relation_of(build_linear_segment(3, 2), 1);
    CHECK(qq.variable * qq.mutated == P("X[1,0]*X[3,0] + 1"));

    auto iso = exchange_relation_of(initial_seed(Quiver(1)), 0);
    CHECK(iso.variable * iso.mutated == LaurentPoly(2));

    CHECK_THROWS_AS(exchange_relation_of(f, 0), FrozenVertex);
}

TEST_CASE("quiver text format") {
    auto s = parse_seed("# A2 with labels\nv 1 label=V1(q^2)\nv 7 frozen label=W\n\na 7 1\n");
    CHECK(s.ids == std::vector<int>{1, 7});
    CHECK(s.quiver.is_frozen(1));
    CHECK(s.quiver.b(1, 0) == 1);
    CHECK(s.vars[1] == P("X[7,0]"));
    CHECK(s.labels[0] == "V1(q^2)");
    CHECK(format_quiver(s) == "v 1 label=V1(q^2)\nv 7 frozen label=W\na 7 1\n");
    CHECK(parse_seed(format_quiver(s)).quiver == s.quiver);

    auto m = parse_seed("v 1\nv 2\na 1 2 3\n");
    CHECK(m.quiver.b(0, 1) == 3);

    CHECK_THROWS_AS(parse_seed(""), ParseError);
    CHECK_THROWS_AS(parse_seed("v 1\na 1 2\n"), ParseError);
    CHECK_THROWS_AS(parse_seed("v 1\nv 1\n"), ParseError);
    CHECK_THROWS_AS(parse_seed("v 1\nv 2\na 1 1\n"), ParseError);
    CHECK_THROWS_AS(parse_seed("q 1\n"), ParseError);
    CHECK_THROWS_AS(parse_seed("v 1 bogus\n"), ParseError);
    CHECK_THROWS_AS(parse_seed("v 1\nv 2\na 1 2 0\n"), ParseError);
}

TEST_CASE("mutation is an involution on random seeds") {
    std::mt19937 rng(11);
    for (int iter = 0; iter < 100; ++iter) {
        auto s = testing::random_acyclic_seed(rng);
        for (int step : testing::random_walk(rng, s, 4))
            s = mutate_seed(s, step);
        for (int k : s.quiver.mutable_vertices()) {
            auto back = mutate_seed(mutate_seed(s, k), k);
            REQUIRE(back.quiver == s.quiver);
            REQUIRE(back.vars == s.vars);
        }
    }
}

TEST_CASE("Laurent phenomenon along random mutation walks") {
    std::mt19937 rng(2024);
    int positive = 0;
    for (int iter = 0; iter < 60; ++iter) {
        auto s = testing::random_acyclic_seed(rng);
        auto walk = testing::random_walk(rng, s);
        bool ok = true;
        for (int step : walk) {
            try {
                s = mutate_seed(s, step);
            } catch (const NotDivisible &) {
                ok = false;
                break;
            }
        }
        REQUIRE(ok);
        bool pos = true;
        for (auto &v : s.vars)
            for (auto &t : v.terms())
                pos = pos && t.coefficient > 0;
        positive += pos;
    }
    MESSAGE("walks ending with positive coefficients: " << positive << "/60");
}

TEST_CASE("parallel and serial enumeration agree") {
    Quiver a3(3);
    a3.add_arrows(0, 1);
    a3.add_arrows(2, 1);
    auto seed = initial_seed(a3);
    const int saved = omp_get_max_threads();
    omp_set_num_threads(4);
    auto par = enumerate_exchange_graph(seed, 1000);
    omp_set_num_threads(saved);
    auto ser = enumerate_exchange_graph_serial(seed, 1000);
    CHECK(par.complete);
    CHECK(par.seeds.size() == 14); // A3 has 14 clusters
    CHECK(par.variables.size() == 9);
    REQUIRE(par.seeds.size() == ser.seeds.size());
    for (std::size_t i = 0; i < par.seeds.size(); ++i)
        CHECK(seed_key(par.seeds[i]) == seed_key(ser.seeds[i]));
    CHECK(names(par.variables) == names(ser.variables));
}

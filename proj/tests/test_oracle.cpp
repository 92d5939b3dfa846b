#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fixtures.hpp"
#include "sparsecut/sparsecut.hpp"

using namespace sparsecut;

TEST_CASE("hand-checked optima") {
    SUBCASE("path") {
        OracleResult r = brute_force(fixtures::p3());
        CHECK(r.phi == Rat(1));
        CHECK(r.enumerated == 3);
    }
    SUBCASE("triangle with all-pairs demands") {
        OracleResult r = brute_force(fixtures::k3_all_pairs());
        CHECK(r.phi == Rat(1)); // every cut has cap = dem
    }
    SUBCASE("4-cycle") {
        OracleResult r = brute_force(fixtures::cycle4());
        CHECK(r.phi == Rat(1)); // single-vertex: 2/1 = 2; balanced: 2/2 = 1
        CHECK(sparsity(fixtures::cycle4(), r.best) == Rat(1));
    }
    SUBCASE("star favors a leaf cut") {
        CutInstance star;
        star.n = 5;
        for (int v = 1; v < 5; ++v) star.cap_edges.push_back({0, v, Rat(1)});
        star.dem_edges = {{1, 2, Rat(1)}, {3, 4, Rat(1)}, {1, 4, Rat(1)}};
        OracleResult r = brute_force(star);
        // Cut off leaf 1 alone: cap 1, demands {1,2} and {1,4} separated.
        CHECK(r.phi == Rat(1, 2));
    }
}

TEST_CASE("returned assignment realizes phi and is minimal over a recount") {
    for (uint64_t seed = 0; seed < 15; ++seed) {
        auto [inst, T] = fixtures::corpus_instance(9, 3, 4, seed, 0.7);
        OracleResult r = brute_force(inst);
        CHECK(sparsity(inst, r.best) == r.phi);
        CHECK(r.enumerated == (uint64_t(1) << (inst.n - 1)) - 1);
        // Independent recount: plain subset loop, no Gray code.
        Rat best = -1;
        for (uint32_t mask = 1; mask < (1u << (inst.n - 1)); ++mask) {
            Assignment f;
            f.values[0] = 0;
            for (int v = 1; v < inst.n; ++v) f.values[v] = (mask >> (v - 1)) & 1;
            try {
                Rat sp = sparsity(inst, f);
                if (best < 0 || sp < best) best = sp;
            } catch (const NoDemandSeparated&) {
            }
        }
        CHECK(best == r.phi);
    }
}

TEST_CASE("oracle guards") {
    CutInstance tiny;
    tiny.n = 1;
    tiny.dem_edges = {{0, 0, Rat(1)}};
    CHECK_THROWS(brute_force(tiny));
    CutInstance big;
    big.n = 25;
    big.cap_edges = {{0, 1, Rat(1)}};
    big.dem_edges = {{0, 1, Rat(1)}};
    CHECK_THROWS_AS(brute_force(big), TooLarge);
}

TEST_CASE("exact treewidth") {
    SUBCASE("trees have treewidth 1") {
        CutInstance t;
        t.n = 7;
        t.cap_edges = {{0, 1, Rat(1)}, {0, 2, Rat(1)}, {1, 3, Rat(1)},
                       {1, 4, Rat(1)}, {2, 5, Rat(1)}, {2, 6, Rat(1)}};
        t.dem_edges = {{3, 6, Rat(1)}};
        CHECK(treewidth_exact(t) == 1);
    }
    SUBCASE("cycles have treewidth 2") { CHECK(treewidth_exact(fixtures::cycle4()) == 2); }
    SUBCASE("complete graphs") {
        CutInstance k5;
        k5.n = 5;
        for (int u = 0; u < 5; ++u)
            for (int v = u + 1; v < 5; ++v) k5.cap_edges.push_back({u, v, Rat(1)});
        k5.dem_edges = {{0, 1, Rat(1)}};
        CHECK(treewidth_exact(k5) == 4);
    }
    SUBCASE("full k-trees hit exactly k") {
        for (int k = 1; k <= 3; ++k) {
            auto [inst, T] = generate_partial_ktree(8, k, 1.0, 11);
            inst.dem_edges = {{0, 1, Rat(1)}};
            CHECK(treewidth_exact(inst) == k);
        }
    }
    SUBCASE("size cap") {
        CutInstance big;
        big.n = 11;
        big.cap_edges = {{0, 1, Rat(1)}};
        big.dem_edges = {{0, 1, Rat(1)}};
        CHECK_THROWS_AS(treewidth_exact(big), TooLarge);
    }
}

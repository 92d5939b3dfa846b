#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fixtures.hpp"
#include "sparsecut/sparsecut.hpp"

using namespace sparsecut;

TEST_CASE("local distribution primitives") {
    LocalDistribution d;
    d.domain = vset::make({0, 1});
    d.probs = {Rat(1, 4), Rat(1, 4), Rat(1, 4), Rat(1, 4)};
    CHECK(d.total() == Rat(1));
    CHECK(d.separation_probability(0, 1) == Rat(1, 2));
    CHECK(d.separation_probability(0, 0) == Rat(0));
    CHECK(d.is_mirror_symmetric());
    LocalDistribution m = d.marginal(vset::make({1}));
    CHECK(m.probs == std::vector<Rat>({Rat(1, 2), Rat(1, 2)}));
    CHECK_THROWS_AS(d.position(5), IndexOutOfRange);

    d.probs = {Rat(1, 2), Rat(1, 2), Rat(0), Rat(0)};
    CHECK(!d.is_mirror_symmetric());
}

TEST_CASE("lifted LP block layout") {
    SUBCASE("single bag containing the demand pair: 2 folded variables") {
        CutInstance inst;
        inst.n = 2;
        inst.cap_edges = {{0, 1, Rat(1)}};
        inst.dem_edges = {{0, 1, Rat(1)}};
        LiftedLp lifted = build_lifted_lp(inst, fixtures::single_bag(2));
        CHECK(lifted.lp.num_vars == 2);
        CHECK(lifted.domains.at(0)[0] == vset::make({0, 1}));
    }
    SUBCASE("p3: both blocks lift to {0,1,2}, 8 folded variables") {
        LiftedLp lifted = build_lifted_lp(fixtures::p3(), fixtures::p3_treedec());
        CHECK(lifted.lp.num_vars == 8);
        CHECK(lifted.domains.at(0)[0] == vset::make({0, 1, 2}));
        CHECK(lifted.domains.at(1)[0] == vset::make({0, 1, 2}));
        CHECK(lifted.var(1, 0, 3) == 6);
        // Mirrored assignments share one variable.
        for (size_t mask = 0; mask < 8; ++mask)
            CHECK(lifted.var(0, 0, mask) == lifted.var(0, 0, 7 ^ mask));
    }
}

TEST_CASE("hand-built solution passes the consistency audit") {
    LiftedSolution sol = fixtures::p3_cut_solution();
    check_consistency(sol, fixtures::p3_treedec());
    CHECK(lpcut(sol, 0, 2) == Rat(1));
    CHECK(lpcut(sol, 0, 1) == Rat(1, 2));
    CHECK(lpcut(sol, 1, 2) == Rat(1, 2));
    CHECK(lpcut(sol, 1, 1) == Rat(0));
    CHECK_THROWS_AS(lpcut(sol, 0, 7), PairNotCovered);
    LocalDistribution m0 = bag_marginal(sol, 0);
    for (const Rat& p : m0.probs) CHECK(p == Rat(1, 4));
}

TEST_CASE("consistency audit catches corrupted solutions") {
    TreeDecomposition T = fixtures::p3_treedec();
    SUBCASE("broken normalization") {
        LiftedSolution sol = fixtures::p3_cut_solution();
        sol.dists[0][0].probs[0b110] = Rat(1, 2);
        CHECK_THROWS_AS(check_consistency(sol, T), InconsistencyDetected);
    }
    SUBCASE("broken mirror symmetry") {
        LiftedSolution sol = fixtures::p3_cut_solution();
        sol.dists[0][0].probs[0b110] = Rat(1, 2);
        sol.dists[0][0].probs[0b001] = Rat(0);
        CHECK_THROWS_AS(check_consistency(sol, T), InconsistencyDetected);
    }
    SUBCASE("broken tree-edge marginal") {
        LiftedSolution sol = fixtures::p3_cut_solution();
        auto& p = sol.dists[1][0].probs;
        p.assign(8, Rat(0));
        p[0b000] = p[0b111] = Rat(1, 4); // uncut half
        p[0b100] = p[0b011] = Rat(1, 4); // cut at {1,2} half
        CHECK_THROWS_AS(check_consistency(sol, T), InconsistencyDetected);
    }
}

TEST_CASE("solve_ratio on exactly solvable fixtures") {
    SUBCASE("p3: blocks span the whole graph, so alpha = phi = 1") {
        LiftedSolution sol = solve_ratio(fixtures::p3(), fixtures::p3_treedec());
        CHECK(sol.alpha == Rat(1));
        CHECK(lpcut(sol, 0, 2) > 0);
    }
    SUBCASE("single-bag K3: distributions are global, alpha = phi") {
        CutInstance inst = fixtures::k3_all_pairs();
        LiftedSolution sol = solve_ratio(inst, fixtures::single_bag(3));
        CHECK(sol.alpha == brute_force(inst).phi);
    }
    SUBCASE("single-bag C4") {
        CutInstance inst = fixtures::cycle4();
        LiftedSolution sol = solve_ratio(inst, fixtures::single_bag(4));
        CHECK(sol.alpha == Rat(1));
    }
}

TEST_CASE("alpha scales linearly with capacities and is demand-scale-free") {
    CutInstance inst = fixtures::p3();
    Rat base = solve_ratio(inst, fixtures::p3_treedec()).alpha;
    CutInstance scaled = inst;
    for (auto& e : scaled.cap_edges) e.w *= Rat(7, 2);
    CHECK(solve_ratio(scaled, fixtures::p3_treedec()).alpha == base * Rat(7, 2));
    for (auto& e : scaled.dem_edges) e.w *= Rat(7, 2);
    CHECK(solve_ratio(scaled, fixtures::p3_treedec()).alpha == base);
}

TEST_CASE("alpha is a lower bound on phi across a random corpus") {
    int checked = 0;
    for (uint64_t seed = 0; seed < 10; ++seed) {
        auto [inst, T] = fixtures::corpus_instance(6, 2, 2, seed);
        LiftedSolution sol = solve_ratio(inst, T);
        Rat phi = brute_force(inst).phi;
        CHECK(sol.alpha <= phi);
        CHECK(sol.alpha >= 0);
        check_consistency(sol, T);
        for (const auto& [s, t] : sol.demands) {
            Rat c = lpcut(sol, s, t);
            CHECK(c >= 0);
            CHECK(c <= 1);
        }
        ++checked;
    }
    CHECK(checked == 10);
}

TEST_CASE("uncovered capacity edge is rejected") {
    CutInstance inst = fixtures::p3();
    TreeDecomposition T = fixtures::p3_treedec();
    inst.cap_edges.push_back({0, 2, Rat(1)}); // no bag holds {0,2}
    CHECK_THROWS_AS(solve_ratio(inst, T), InvalidParams);
}

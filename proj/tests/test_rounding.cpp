#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "sparsecut/sparsecut.hpp"

using namespace sparsecut;

namespace {

// Total variation distance between the empirical distribution of f|_B over
// `samples` rounding runs and the exact bag marginal.
double bag_tv(const TreeDecomposition& T, const LiftedSolution& sol, int node,
              int samples, uint64_t seed) {
    Rounder rounder(T, sol);
    const LocalDistribution& mu = rounder.marginal(node);
    std::vector<long> counts(mu.probs.size(), 0);
    for (int trial = 0; trial < samples; ++trial) {
        RoundingRun run = rounder.round(T.root, split_seed(seed, trial));
        size_t mask = 0;
        for (size_t p = 0; p < mu.domain.size(); ++p)
            if (run.assignment.at(mu.domain[p])) mask |= size_t(1) << p;
        ++counts[mask];
    }
    double tv = 0;
    for (size_t mask = 0; mask < mu.probs.size(); ++mask)
        tv += std::abs((double)counts[mask] / samples - to_double(mu.probs[mask]));
    return tv / 2;
}

} // namespace

TEST_CASE("rounding is deterministic per seed and covers every vertex") {
    TreeDecomposition T = fixtures::p3_treedec();
    LiftedSolution sol = fixtures::p3_cut_solution();
    RoundingRun a = sc_round(T, sol, 0, 42);
    RoundingRun b = sc_round(T, sol, 0, 42);
    CHECK(a.assignment.values == b.assignment.values);
    CHECK(a.choices == b.choices);
    CHECK(a.order == std::vector<int>({0, 1}));
    CHECK(a.assignment.values.size() == 3);
    RoundingRun c = sc_round(T, sol, 0, 43);
    CHECK(a.seed != c.seed);
}

TEST_CASE("hand example: rounded cuts land on one of the four support points") {
    TreeDecomposition T = fixtures::p3_treedec();
    LiftedSolution sol = fixtures::p3_cut_solution();
    Rounder rounder(T, sol);
    for (uint64_t seed = 0; seed < 200; ++seed) {
        RoundingRun run = rounder.round(0, seed);
        int f0 = run.assignment.at(0), f1 = run.assignment.at(1),
            f2 = run.assignment.at(2);
        // Support of the bag marginals: uniform on each bag, but {0,2} need
        // not be separated since the sampler only sees the marginals.
        CHECK((f0 == 0 || f0 == 1));
        CHECK((f1 == 0 || f1 == 1));
        CHECK((f2 == 0 || f2 == 1));
    }
}

TEST_CASE("bag marginals are realized (TV distance)") {
    SUBCASE("hand-built solution") {
        TreeDecomposition T = fixtures::p3_treedec();
        LiftedSolution sol = fixtures::p3_cut_solution();
        CHECK(bag_tv(T, sol, 0, 20000, 7) < 0.02);
        CHECK(bag_tv(T, sol, 1, 20000, 8) < 0.02);
    }
    SUBCASE("LP solution on a random instance") {
        auto [inst, T] = fixtures::corpus_instance(6, 2, 2, 3);
        LiftedSolution sol = solve_ratio(inst, T);
        for (int node : T.nodes) CHECK(bag_tv(T, sol, node, 20000, 11) < 0.025);
    }
}

TEST_CASE("traversal start does not change the sampled law") {
    // Exactness of the conditional decomposition: the assignment law is the
    // same whichever node seeds the BFS. Checked empirically per vertex pair.
    auto [inst, T] = fixtures::corpus_instance(6, 2, 2, 5);
    LiftedSolution sol = solve_ratio(inst, T);
    Rounder rounder(T, sol);
    int other = T.nodes.back();
    const int samples = 20000;
    for (const auto& [s, t] : sol.demands) {
        int cut_a = 0, cut_b = 0;
        for (int trial = 0; trial < samples; ++trial) {
            RoundingRun ra = rounder.round(T.root, split_seed(1, trial));
            RoundingRun rb = rounder.round(other, split_seed(2, trial));
            if (ra.assignment.at(s) != ra.assignment.at(t)) ++cut_a;
            if (rb.assignment.at(s) != rb.assignment.at(t)) ++cut_b;
        }
        CHECK(std::abs((double)(cut_a - cut_b)) / samples < 0.03);
    }
}

TEST_CASE("algcut_exact matches the hand computation and the estimator") {
    TreeDecomposition T = fixtures::p3_treedec();
    LiftedSolution sol = fixtures::p3_cut_solution();
    Rat exact = algcut_exact(T, sol, 0, 2);
    CHECK(exact == Rat(1, 2)); // independent uniform resampling across bags
    CHECK(algcut_exact(T, sol, 0, 0) == Rat(0));

    CutEstimate est = algcut_estimate(T, sol, 0, 2, 20000, 5);
    CHECK(std::abs(est.value - to_double(exact)) <= est.half_width + 0.01);
}

TEST_CASE("algcut_exact is invariant under path simplification") {
    for (uint64_t seed = 0; seed < 8; ++seed) {
        auto [inst, T] = fixtures::corpus_instance(7, 2, 2, seed);
        LiftedSolution sol = solve_ratio(inst, T);
        for (const auto& [s, t] : sol.demands) {
            DecPath raw = endpoint_path(T, s, t);
            DecPath simplified = simplify_greedy(raw).final;
            Rat a = algcut_exact_on_path(raw, sol, s, t);
            Rat b = algcut_exact_on_path(simplified, sol, s, t);
            CHECK(a == b);
            // Finite form of the walk guarantee.
            int ell = std::max(1, (int)raw.nodes.size());
            CHECK(a >= lpcut(sol, s, t) / (32 * ell * ell));
            // And the estimator agrees within its interval.
            CutEstimate est = algcut_estimate(T, sol, s, t, 4000, seed);
            CHECK(std::abs(est.value - to_double(a)) <= est.half_width + 0.02);
        }
    }
}

TEST_CASE("repeated_round recovers the optimum when demands share bags") {
    SUBCASE("single-bag K3") {
        CutInstance inst = fixtures::k3_all_pairs();
        TreeDecomposition T = fixtures::single_bag(3);
        LiftedSolution sol = solve_ratio(inst, T);
        RepeatedRoundResult r = repeated_round(inst, T, sol, 200, 99);
        CHECK(r.best_sparsity == brute_force(inst).phi);
        CHECK(r.successes >= 1);
        CHECK(r.trials == 200);
    }
    SUBCASE("p3 with whole-graph blocks") {
        CutInstance inst = fixtures::p3();
        TreeDecomposition T = fixtures::p3_treedec();
        LiftedSolution sol = solve_ratio(inst, T);
        RepeatedRoundResult r = repeated_round(inst, T, sol, 200, 4);
        CHECK(r.best_sparsity <= Rat(1)); // phi = 1; rounding can't beat cap/dem >= phi
        CHECK(r.best_sparsity >= brute_force(inst).phi);
    }
    SUBCASE("bad trial count") {
        CutInstance inst = fixtures::p3();
        LiftedSolution sol = fixtures::p3_cut_solution();
        CHECK_THROWS_AS(
            repeated_round(inst, fixtures::p3_treedec(), sol, 0, 1),
            InvalidParams);
    }
}

#ifndef SPARSECUT_TEST_FIXTURES_HPP
#define SPARSECUT_TEST_FIXTURES_HPP

#include "sparsecut/sparsecut.hpp"

namespace fixtures {

using namespace sparsecut;

// Path v0 - v1 - v2, unit capacities, one unit demand {v0, v2}.
inline CutInstance p3() {
    CutInstance inst;
    inst.n = 3;
    inst.cap_edges = {{0, 1, Rat(1)}, {1, 2, Rat(1)}};
    inst.dem_edges = {{0, 2, Rat(1)}};
    return inst;
}

inline TreeDecomposition p3_treedec() {
    TreeDecomposition T;
    T.nodes = {0, 1};
    T.bags[0] = vset::make({0, 1});
    T.bags[1] = vset::make({1, 2});
    T.tree_edges = {{0, 1}};
    T.root_at(0);
    return T;
}

inline CutInstance k3_all_pairs() {
    CutInstance inst;
    inst.n = 3;
    inst.cap_edges = {{0, 1, Rat(1)}, {0, 2, Rat(1)}, {1, 2, Rat(1)}};
    inst.dem_edges = {{0, 1, Rat(1)}, {0, 2, Rat(1)}, {1, 2, Rat(1)}};
    return inst;
}

inline TreeDecomposition single_bag(int n) {
    TreeDecomposition T;
    T.nodes = {0};
    VertexSet all;
    for (int v = 0; v < n; ++v) all.push_back(v);
    T.bags[0] = all;
    T.root_at(0);
    return T;
}

inline CutInstance cycle4() {
    CutInstance inst;
    inst.n = 4;
    inst.cap_edges = {{0, 1, Rat(1)}, {1, 2, Rat(1)}, {2, 3, Rat(1)}, {0, 3, Rat(1)}};
    inst.dem_edges = {{0, 2, Rat(1)}, {1, 3, Rat(1)}};
    return inst;
}

// The seven-bag witness path showing combinatorial lengths are not a
// metric: {ab},{abc},{acd},{ade},{aef},{afg},{a} with a..g as 0..6.
inline DecPath collapse_path(bool include_tail) {
    auto bag = [](std::initializer_list<int> xs) { return vset::make(xs); };
    std::vector<VertexSet> bags = {bag({0, 1}),    bag({0, 1, 2}), bag({0, 2, 3}),
                                   bag({0, 3, 4}), bag({0, 4, 5}), bag({0, 5, 6})};
    if (include_tail) bags.push_back(bag({0}));
    DecPath p;
    for (int i = 0; i < (int)bags.size(); ++i) {
        p.nodes.push_back(i);
        p.bags.push_back(bags[i]);
    }
    return p;
}

inline TreeDecomposition collapse_treedec() {
    DecPath p = collapse_path(true);
    TreeDecomposition T;
    for (int i = 0; i < (int)p.nodes.size(); ++i) {
        T.nodes.push_back(i);
        T.bags[i] = p.bags[i];
        if (i > 0) T.tree_edges.push_back({i - 1, i});
    }
    T.root_at(0);
    return T;
}

// Hand-built lifted solution for p3/p3_treedec: the cut falls on edge
// {0,1} or {1,2} with probability 1/2 each, orientation mirrored. Both bag
// marginals are uniform; lpcut(0,2) = 1 and alpha = 1.
inline LiftedSolution p3_cut_solution() {
    LiftedSolution sol;
    sol.nodes = {0, 1};
    sol.demands = {{0, 2}};
    sol.bags[0] = vset::make({0, 1});
    sol.bags[1] = vset::make({1, 2});
    LocalDistribution d;
    d.domain = vset::make({0, 1, 2});
    d.probs.assign(8, Rat(0));
    // masks encode (f0, f1, f2) as bits 0,1,2
    d.probs[0b110] = Rat(1, 4); // 0|11 cut at {0,1}
    d.probs[0b001] = Rat(1, 4); // 1|00 mirror
    d.probs[0b100] = Rat(1, 4); // 00|1 cut at {1,2}
    d.probs[0b011] = Rat(1, 4); // 11|0 mirror
    sol.dists[0] = {d};
    sol.dists[1] = {d};
    sol.alpha = 1;
    return sol;
}

// Seeded partial-k-tree corpus entry with random unit demands.
inline std::pair<CutInstance, TreeDecomposition>
corpus_instance(int n, int k, int m_d, uint64_t seed, double keep_prob = 1.0) {
    auto [inst, T] = generate_partial_ktree(n, k, keep_prob, seed);
    return {attach_random_demands(inst, m_d, split_seed(seed, 999)), T};
}

} // namespace fixtures

#endif

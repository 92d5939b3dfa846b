#ifndef SPARSECUT_ORACLE_HPP
#define SPARSECUT_ORACLE_HPP

#include <vector>

#include "sparsecut/errors.hpp"
#include "sparsecut/instance.hpp"

namespace sparsecut {

struct OracleResult {
    Assignment best;
    Rat phi;
    uint64_t enumerated = 0;
};

// Exhaustive sparsest-cut oracle. Enumerates the subsets containing vertex
// 0 in Gray-code order so each step flips one vertex and updates the cut
// values incrementally.
inline OracleResult brute_force(const CutInstance& inst) {
    inst.check();
    int n = inst.n;
    if (n < 2) throw InvalidParams("need at least two vertices");
    if (n > 24) throw TooLarge("oracle capped at n = 24");

    // Incidence lists over vertices 1..n-1 (vertex 0 stays on side 0).
    std::vector<std::vector<std::pair<int, const WeightedEdge*>>> cap_inc(n), dem_inc(n);
    for (const auto& e : inst.cap_edges) {
        cap_inc[e.u].push_back({e.v, &e});
        cap_inc[e.v].push_back({e.u, &e});
    }
    for (const auto& e : inst.dem_edges) {
        dem_inc[e.u].push_back({e.v, &e});
        dem_inc[e.v].push_back({e.u, &e});
    }

    std::vector<int> side(n, 0);
    Rat cap = 0, dem = 0;
    auto flip = [&](int v) {
        side[v] ^= 1;
        for (auto [w, e] : cap_inc[v])
            cap += (side[v] != side[w]) ? e->w : -e->w;
        for (auto [w, e] : dem_inc[v])
            dem += (side[v] != side[w]) ? e->w : -e->w;
    };

    OracleResult result;
    bool have = false;
    uint64_t count = uint64_t(1) << (n - 1);
    for (uint64_t g = 1; g < count; ++g) {
        // Gray code: flip the vertex at the lowest set bit of g.
        int bit = 0;
        while (!((g >> bit) & 1)) ++bit;
        flip(bit + 1);
        ++result.enumerated;
        if (dem == 0) continue;
        Rat sp = cap / dem;
        if (!have || sp < result.phi) {
            result.phi = sp;
            have = true;
            result.best.values.clear();
            for (int v = 0; v < n; ++v) result.best.values[v] = side[v];
        }
    }
    if (!have) throw NoDemandSeparated("no bipartition separates any demand");
    return result;
}

// Exact treewidth by elimination-order DP over vertex subsets.
inline int treewidth_exact(const CutInstance& G) {
    int n = G.n;
    if (n > 10) throw TooLarge("exact treewidth capped at n = 10");
    if (n == 0) throw InvalidParams("empty graph");
    std::vector<uint32_t> adj(n, 0);
    for (const auto& e : G.cap_edges) {
        adj[e.u] |= 1u << e.v;
        adj[e.v] |= 1u << e.u;
    }

    // Degree of v after eliminating the set X: neighbors of v outside X,
    // plus vertices reachable from v through X.
    auto elim_degree = [&](uint32_t X, int v) {
        uint32_t seen = 1u << v;
        uint32_t frontier = adj[v];
        uint32_t reached = 0;
        while (frontier) {
            int w = __builtin_ctz(frontier);
            frontier &= frontier - 1;
            if (seen & (1u << w)) continue;
            seen |= 1u << w;
            if (X & (1u << w))
                frontier |= adj[w];
            else
                reached |= 1u << w;
        }
        return __builtin_popcount(reached);
    };

    uint32_t full = (1u << n) - 1;
    std::vector<int> dp(full + 1, n); // dp[S]: best width eliminating S first
    dp[0] = -1;
    for (uint32_t S = 1; S <= full; ++S) {
        for (int v = 0; v < n; ++v) {
            if (!(S & (1u << v))) continue;
            uint32_t prev = S & ~(1u << v);
            int cost = std::max(dp[prev], elim_degree(prev, v));
            dp[S] = std::min(dp[S], cost);
        }
    }
    return dp[full];
}

} // namespace sparsecut

#endif

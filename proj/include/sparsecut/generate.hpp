#ifndef SPARSECUT_GENERATE_HPP
#define SPARSECUT_GENERATE_HPP

#include <utility>

#include "sparsecut/instance.hpp"
#include "sparsecut/treedec.hpp"

namespace sparsecut {

// Random partial k-tree with a witnessing decomposition of width <= k.
// Grows a k-tree (each new vertex attached to a k-clique inside an existing
// bag), then keeps each edge with probability keep_prob. Unit capacities;
// demands are attached separately.
inline std::pair<CutInstance, TreeDecomposition>
generate_partial_ktree(int n, int k, double keep_prob, uint64_t seed) {
    if (k < 1 || n < k + 1)
        throw InvalidParams("need n >= k+1 and k >= 1");
    if (!(keep_prob > 0.0) || keep_prob > 1.0)
        throw InvalidParams("keep_prob must be in (0, 1]");

    Rng rng(seed);
    TreeDecomposition T;
    std::vector<std::pair<VertexId, VertexId>> ktree_edges;

    VertexSet base;
    for (VertexId v = 0; v <= k; ++v) base.push_back(v);
    T.nodes.push_back(0);
    T.bags[0] = base;
    for (VertexId u = 0; u <= k; ++u)
        for (VertexId v = u + 1; v <= k; ++v) ktree_edges.push_back({u, v});

    for (VertexId v = k + 1; v < n; ++v) {
        int host = (int)rng.below(T.nodes.size());
        const VertexSet& host_bag = T.bags[host];
        // Random k-subset of the host bag (host bags have k+1 vertices,
        // except when n == k+1).
        VertexSet clique = host_bag;
        while ((int)clique.size() > k) clique.erase(clique.begin() + rng.below(clique.size()));
        for (VertexId u : clique) ktree_edges.push_back({u, v});
        int id = (int)T.nodes.size();
        T.nodes.push_back(id);
        T.bags[id] = vset::unite(clique, vset::make({v}));
        T.tree_edges.push_back({host, id});
    }
    T.root_at(0);

    CutInstance inst;
    inst.n = n;
    for (auto [u, v] : ktree_edges)
        if (rng.chance(keep_prob)) inst.cap_edges.push_back({u, v, Rat(1)});
    return {inst, T};
}

} // namespace sparsecut

#endif

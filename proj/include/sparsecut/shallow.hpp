#ifndef SPARSECUT_SHALLOW_HPP
#define SPARSECUT_SHALLOW_HPP

#include <cmath>
#include <map>
#include <set>
#include <vector>

#include "sparsecut/combdiam.hpp"
#include "sparsecut/errors.hpp"
#include "sparsecut/treedec.hpp"

namespace sparsecut {

// Synchronization structure for a rooted decomposition: nodes whose level is
// a multiple of lambda, and for each node its nearest strict sync ancestor.
struct SyncAnnotation {
    int lambda = 1;
    std::map<int, int> levels;
    std::set<int> sync_nodes;
    std::map<int, int> sigma; // absent for the root

    static SyncAnnotation build(const TreeDecomposition& T, int lambda) {
        if (T.root < 0) throw InvalidParams("decomposition is not rooted");
        int d = T.depth();
        if (lambda < 1) throw InvalidParams("lambda must be >= 1");
        if (d > 0 && lambda > d) lambda = d; // clamp, per contract
        if (d == 0) lambda = 1;

        SyncAnnotation a;
        a.lambda = lambda;
        for (int v : T.nodes) {
            int lv = T.level(v);
            a.levels[v] = lv;
            if (lv % lambda == 0) a.sync_nodes.insert(v);
        }
        for (int v : T.nodes) {
            if (v == T.root) continue;
            int w = T.parent.at(v);
            while (!a.sync_nodes.count(w)) w = T.parent.at(w);
            a.sigma[v] = w;
        }
        return a;
    }
};

// Per-layer spacings for super-highways. Spacings form a divisibility chain
// s_0 | s_1 | ... so layer membership is monotone along residues.
struct LayerAnnotation {
    int q = 1;
    std::vector<long long> spacing;
    std::map<int, int> pi; // layer of each node, -1 when on no layer

    static LayerAnnotation build(const TreeDecomposition& T, int q) {
        if (T.root < 0) throw InvalidParams("decomposition is not rooted");
        if (q < 1) throw InvalidParams("q must be >= 1");
        int d = T.depth();
        int k = T.width() + 1;

        LayerAnnotation a;
        a.q = q;
        for (int j = 0; j < q; ++j) {
            double raw = std::pow((double)k, (double)j / q) * (double)std::max(d, 1) / k;
            long long s = std::max(1LL, (long long)std::llround(raw));
            if (j > 0) {
                long long prev = a.spacing.back();
                s = prev * std::max(1LL, (long long)std::llround((double)s / prev));
            }
            a.spacing.push_back(s);
        }
        for (int v : T.nodes) {
            int lv = T.level(v);
            int layer = -1;
            for (int j = 0; j < q; ++j)
                if (lv % a.spacing[j] == 0) layer = j;
            a.pi[v] = layer;
        }
        return a;
    }
};

namespace detail {

inline std::vector<int> root_path(const TreeDecomposition& T, int v) {
    std::vector<int> path{v};
    while (v != T.root) {
        v = T.parent.at(v);
        path.push_back(v);
    }
    return path;
}

} // namespace detail

// Bags absorb the path up to (excluding) the synchronization ancestor, so
// each new bag unions at most lambda originals: width grows by a factor of
// at most lambda, and the combinatorial diameter drops to O(depth/lambda).
// Every interior non-sync node's bag is contained in its path-child's bag,
// which is what the diameter certificate bypasses on.
inline TreeDecomposition bridges(const TreeDecomposition& T, int lambda) {
    SyncAnnotation sync = SyncAnnotation::build(T, lambda);
    TreeDecomposition out = T;
    for (int v : T.nodes) {
        if (v == T.root) continue; // root bag never changes
        std::vector<int> absorbed;
        for (int w = v;; w = T.parent.at(w)) {
            if (w != v && sync.sync_nodes.count(w)) break;
            absorbed.push_back(w);
            if (w == T.root) break;
        }
        out.bags[v] = bag_union(T, absorbed);
    }
    return out;
}

// Bridges plus the bags of every synchronization node on the root path.
inline TreeDecomposition highways(const TreeDecomposition& T, int lambda) {
    SyncAnnotation sync = SyncAnnotation::build(T, lambda);
    TreeDecomposition out = T;
    for (int v : T.nodes) {
        if (v == T.root) continue;
        std::vector<int> absorbed;
        bool past_sigma = false;
        for (int w : detail::root_path(T, v)) {
            bool on_bridge = !past_sigma;
            if (w != v && sync.sync_nodes.count(w)) past_sigma = true;
            if (on_bridge || sync.sync_nodes.count(w)) absorbed.push_back(w);
        }
        out.bags[v] = bag_union(T, absorbed);
    }
    return out;
}

// Monotone-layer upward walk from the parent: keep a node iff its layer
// equals the maximum layer seen so far on the walk.
inline TreeDecomposition super_highways(const TreeDecomposition& T, int q) {
    LayerAnnotation layers = LayerAnnotation::build(T, q);
    TreeDecomposition out = T;
    for (int v : T.nodes) {
        if (v == T.root) continue;
        std::vector<int> absorbed{v};
        int running_max = -2;
        for (int w : detail::root_path(T, T.parent.at(v))) {
            int lw = layers.pi.at(w);
            if (lw >= running_max) {
                absorbed.push_back(w);
                running_max = lw;
            }
        }
        out.bags[v] = bag_union(T, absorbed);
    }
    return out;
}

enum class ShallowMode { Bridges, Highways, SuperHighways };

struct CertifiedBound {
    int bound = 0;
    std::vector<SimplificationTrace> traces;
};

namespace detail {

// Greedy bypass that prefers low-layer nodes first, replaying the order the
// diameter lemmas use (plain nodes, then sync nodes layer by layer, then
// what is left around the LCA).
inline SimplificationTrace prioritized_simplify(const DecPath& path,
                                                const std::map<int, int>& layer_of) {
    SimplificationTrace trace;
    trace.initial = path;
    DecPath cur = path;
    bool changed = true;
    while (changed) {
        changed = false;
        int pick = -1, pick_layer = 0;
        for (int i = 1; i < (int)cur.nodes.size() - 1; ++i) {
            if (!is_redundant(cur, i)) continue;
            int l = layer_of.at(cur.nodes[i]);
            if (pick < 0 || l < pick_layer) {
                pick = i;
                pick_layer = l;
            }
        }
        if (pick >= 0) {
            trace.bypassed.push_back(cur.nodes[pick]);
            cur = bypass(cur, pick);
            changed = true;
        }
    }
    trace.final = cur;
    return trace;
}

} // namespace detail

// Concrete diameter bound certified by each construction's lemma, with a
// witnessing simplification trace for a sample of node pairs. The trace must
// reach the bound; failing to do so signals an implementation bug.
inline CertifiedBound certified_diameter_bound(const TreeDecomposition& Tprime,
                                               ShallowMode mode, int lambda, int q,
                                               size_t max_sample_pairs = 64) {
    CertifiedBound result;
    int d = Tprime.depth();
    std::map<int, int> layer_of;
    switch (mode) {
    case ShallowMode::Bridges: {
        SyncAnnotation sync = SyncAnnotation::build(Tprime, lambda);
        result.bound = 2 * (d / sync.lambda) + 2;
        for (int v : Tprime.nodes)
            layer_of[v] = sync.sync_nodes.count(v) ? 0 : -1;
        break;
    }
    case ShallowMode::Highways: {
        SyncAnnotation sync = SyncAnnotation::build(Tprime, lambda);
        result.bound = 3;
        for (int v : Tprime.nodes)
            layer_of[v] = sync.sync_nodes.count(v) ? 0 : -1;
        break;
    }
    case ShallowMode::SuperHighways: {
        LayerAnnotation layers = LayerAnnotation::build(Tprime, q);
        result.bound = 2 * q + 1;
        layer_of = layers.pi;
        break;
    }
    }

    size_t taken = 0;
    for (size_t a = 0; a < Tprime.nodes.size() && taken < max_sample_pairs; ++a)
        for (size_t b = a + 1; b < Tprime.nodes.size() && taken < max_sample_pairs; ++b) {
            DecPath p = DecPath::from_tree(Tprime, Tprime.nodes[a], Tprime.nodes[b]);
            SimplificationTrace t = detail::prioritized_simplify(p, layer_of);
            if (t.final.length() > result.bound)
                throw TraceFailed("pair (" + std::to_string(Tprime.nodes[a]) + "," +
                                  std::to_string(Tprime.nodes[b]) +
                                  ") simplifies to length " +
                                  std::to_string(t.final.length()) + " > bound " +
                                  std::to_string(result.bound));
            result.traces.push_back(std::move(t));
            ++taken;
        }
    return result;
}

} // namespace sparsecut

#endif

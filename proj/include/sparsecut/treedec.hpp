#ifndef SPARSECUT_TREEDEC_HPP
#define SPARSECUT_TREEDEC_HPP

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "sparsecut/errors.hpp"
#include "sparsecut/instance.hpp"

namespace sparsecut {

using VertexSet = std::vector<VertexId>; // always kept sorted and unique

namespace vset {

inline VertexSet make(std::initializer_list<VertexId> xs) {
    VertexSet s(xs);
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    return s;
}

inline VertexSet unite(const VertexSet& a, const VertexSet& b) {
    VertexSet out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

inline VertexSet intersect(const VertexSet& a, const VertexSet& b) {
    VertexSet out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                          std::back_inserter(out));
    return out;
}

inline VertexSet subtract(const VertexSet& a, const VertexSet& b) {
    VertexSet out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(),
                        std::back_inserter(out));
    return out;
}

inline bool is_subset(const VertexSet& a, const VertexSet& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

inline bool contains(const VertexSet& a, VertexId v) {
    return std::binary_search(a.begin(), a.end(), v);
}

} // namespace vset

// Rooted tree decomposition. Node ids are arbitrary non-negative integers;
// parent[root] is absent. Immutable by convention; transformations copy.
struct TreeDecomposition {
    std::vector<int> nodes;
    std::map<int, VertexSet> bags;
    std::vector<std::pair<int, int>> tree_edges;
    int root = -1;
    std::map<int, int> parent;

    const VertexSet& bag(int node) const {
        auto it = bags.find(node);
        if (it == bags.end())
            throw IndexOutOfRange("no bag for node " + std::to_string(node));
        return it->second;
    }

    std::map<int, std::vector<int>> adjacency() const {
        std::map<int, std::vector<int>> adj;
        for (int v : nodes) adj[v];
        for (auto [a, b] : tree_edges) {
            adj[a].push_back(b);
            adj[b].push_back(a);
        }
        return adj;
    }

    int width() const {
        int w = -1;
        for (const auto& [id, b] : bags) w = std::max(w, (int)b.size() - 1);
        return w;
    }

    // Recomputes the parent map for the given root.
    void root_at(int r) {
        root = r;
        parent.clear();
        auto adj = adjacency();
        std::deque<int> queue{r};
        std::set<int> seen{r};
        while (!queue.empty()) {
            int v = queue.front();
            queue.pop_front();
            for (int w : adj[v])
                if (seen.insert(w).second) {
                    parent[w] = v;
                    queue.push_back(w);
                }
        }
    }

    // Edge count from the root to node v.
    int level(int v) const {
        if (root < 0) throw InvalidParams("decomposition is not rooted");
        int d = 0;
        while (v != root) {
            auto it = parent.find(v);
            if (it == parent.end())
                throw IndexOutOfRange("node " + std::to_string(v) +
                                      " not reachable from root");
            v = it->second;
            ++d;
        }
        return d;
    }

    int depth() const {
        int d = 0;
        for (int v : nodes) d = std::max(d, level(v));
        return d;
    }
};

// B(X): union of the bags of a node set.
inline VertexSet bag_union(const TreeDecomposition& T, const std::vector<int>& X) {
    VertexSet out;
    for (int i : X) out = vset::unite(out, T.bag(i));
    return out;
}

// Nodes on the unique i-j path, endpoints included; tree_path(i, i) = [i].
inline std::vector<int> tree_path(const TreeDecomposition& T, int i, int j) {
    auto adj = T.adjacency();
    std::map<int, int> pred;
    std::deque<int> queue{i};
    pred[i] = i;
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        if (v == j) break;
        for (int w : adj[v])
            if (!pred.count(w)) {
                pred[w] = v;
                queue.push_back(w);
            }
    }
    if (!pred.count(j))
        throw PairNotConnected("nodes " + std::to_string(i) + " and " +
                               std::to_string(j) + " are not connected");
    std::vector<int> path;
    for (int v = j; v != i; v = pred[v]) path.push_back(v);
    path.push_back(i);
    std::reverse(path.begin(), path.end());
    return path;
}

struct ValidationReport {
    bool valid = true;
    std::vector<std::string> violations;

    void fail(const std::string& msg) {
        valid = false;
        violations.push_back(msg);
    }
};

// Checks all tree-decomposition properties and reports every violation
// with a witness.
inline ValidationReport validate(const CutInstance& G, const TreeDecomposition& T) {
    ValidationReport report;
    if (T.nodes.empty()) {
        report.fail("decomposition has no nodes");
        return report;
    }
    std::set<int> node_set(T.nodes.begin(), T.nodes.end());
    if (node_set.size() != T.nodes.size()) report.fail("duplicate node ids");
    for (auto [a, b] : T.tree_edges)
        if (!node_set.count(a) || !node_set.count(b))
            report.fail("tree edge {" + std::to_string(a) + "," + std::to_string(b) +
                        "} references unknown node");
    for (int v : T.nodes)
        if (!T.bags.count(v)) report.fail("node " + std::to_string(v) + " has no bag");
    if (!report.valid) return report;

    // Tree check: connected and |E| = |V| - 1.
    if (T.tree_edges.size() + 1 != T.nodes.size()) {
        report.fail("not a tree: " + std::to_string(T.nodes.size()) + " nodes but " +
                    std::to_string(T.tree_edges.size()) + " edges");
    } else {
        auto adj = T.adjacency();
        std::set<int> seen{T.nodes[0]};
        std::deque<int> queue{T.nodes[0]};
        while (!queue.empty()) {
            int v = queue.front();
            queue.pop_front();
            for (int w : adj[v])
                if (seen.insert(w).second) queue.push_back(w);
        }
        if (seen.size() != T.nodes.size())
            report.fail("not a tree: disconnected (only " +
                        std::to_string(seen.size()) + " of " +
                        std::to_string(T.nodes.size()) + " nodes reachable)");
    }
    if (!report.valid) return report;

    // Vertex coverage.
    VertexSet covered = bag_union(T, T.nodes);
    for (VertexId v = 0; v < G.n; ++v)
        if (!vset::contains(covered, v))
            report.fail("vertex " + std::to_string(v) + " is in no bag");

    // Edge coverage.
    for (const auto& e : G.cap_edges) {
        bool ok = false;
        for (const auto& [id, b] : T.bags)
            if (vset::contains(b, e.u) && vset::contains(b, e.v)) {
                ok = true;
                break;
            }
        if (!ok)
            report.fail("edge {" + std::to_string(e.u) + "," + std::to_string(e.v) +
                        "} is covered by no bag");
    }

    // Connected vertex subtrees.
    auto adj = T.adjacency();
    for (VertexId v = 0; v < G.n; ++v) {
        std::vector<int> holding;
        for (const auto& [id, b] : T.bags)
            if (vset::contains(b, v)) holding.push_back(id);
        if (holding.size() <= 1) continue;
        std::set<int> in_set(holding.begin(), holding.end());
        std::set<int> seen{holding[0]};
        std::deque<int> queue{holding[0]};
        while (!queue.empty()) {
            int x = queue.front();
            queue.pop_front();
            for (int w : adj[x])
                if (in_set.count(w) && seen.insert(w).second) queue.push_back(w);
        }
        if (seen.size() != in_set.size())
            report.fail("bags containing vertex " + std::to_string(v) +
                        " do not form a connected subtree");
    }
    return report;
}

// Min-fill elimination-order heuristic. Requires connected input; width is
// heuristic, not guaranteed to match the treewidth.
inline TreeDecomposition min_fill_decomposition(const CutInstance& G) {
    int n = G.n;
    if (n == 0) throw InvalidParams("empty graph");
    std::vector<std::set<VertexId>> adj(n);
    for (const auto& e : G.cap_edges) {
        adj[e.u].insert(e.v);
        adj[e.v].insert(e.u);
    }

    std::vector<bool> gone(n, false);
    std::vector<int> order;
    std::vector<VertexSet> elim_bag(n);
    for (int step = 0; step < n; ++step) {
        int best = -1;
        long long best_fill = -1;
        for (int v = 0; v < n; ++v) {
            if (gone[v]) continue;
            long long fill = 0;
            std::vector<VertexId> nb(adj[v].begin(), adj[v].end());
            for (size_t i = 0; i < nb.size(); ++i)
                for (size_t j = i + 1; j < nb.size(); ++j)
                    if (!adj[nb[i]].count(nb[j])) ++fill;
            if (best < 0 || fill < best_fill) {
                best = v;
                best_fill = fill;
            }
        }
        std::vector<VertexId> nb(adj[best].begin(), adj[best].end());
        VertexSet b = vset::make({best});
        for (VertexId w : nb) b = vset::unite(b, vset::make({w}));
        elim_bag[best] = b;
        order.push_back(best);
        for (size_t i = 0; i < nb.size(); ++i)
            for (size_t j = i + 1; j < nb.size(); ++j) {
                adj[nb[i]].insert(nb[j]);
                adj[nb[j]].insert(nb[i]);
            }
        for (VertexId w : nb) adj[w].erase(best);
        adj[best].clear();
        gone[best] = true;
    }

    std::vector<int> position(n);
    for (int i = 0; i < n; ++i) position[order[i]] = i;

    TreeDecomposition T;
    for (int i = 0; i < n; ++i) {
        T.nodes.push_back(i);
        T.bags[i] = elim_bag[order[i]];
    }
    for (int i = 0; i < n; ++i) {
        int v = order[i];
        // Parent: the earliest-eliminated vertex of the bag after v itself.
        int best_pos = n;
        for (VertexId w : elim_bag[v])
            if (w != v && position[w] > i) best_pos = std::min(best_pos, position[w]);
        if (best_pos < n) T.tree_edges.push_back({i, best_pos});
    }
    // Disconnected inputs would leave a forest here; reject them.
    if (T.tree_edges.size() + 1 != T.nodes.size())
        throw InvalidParams("min_fill_decomposition requires a connected graph");
    T.root_at(n - 1);
    return T;
}

namespace detail {

// Recursive splitter behind balance(). Components carry at most two
// attachment nodes (already-placed split nodes adjacent to the component);
// the new bag of a split node absorbs the original attachment bags, which
// bounds the output width by 3w + 2.
struct BalanceBuilder {
    const TreeDecomposition& in;
    std::map<int, std::vector<int>> adj;
    TreeDecomposition out;
    int next_id = 0;

    explicit BalanceBuilder(const TreeDecomposition& T) : in(T), adj(T.adjacency()) {}

    int subtree_size(int v, const std::set<int>& comp, int from,
                     std::map<int, int>& memo_unused) {
        int total = 1;
        for (int w : adj.at(v))
            if (w != from && comp.count(w)) total += subtree_size(w, comp, v, memo_unused);
        return total;
    }

    // Node of comp minimizing the largest component left by its removal.
    int centroid(const std::set<int>& comp) {
        int best = -1, best_max = 1 << 30;
        for (int c : comp) {
            int worst = 0;
            std::map<int, int> memo;
            for (int w : adj.at(c))
                if (comp.count(w))
                    worst = std::max(worst, subtree_size(w, comp, c, memo));
            if (worst < best_max) {
                best = c;
                best_max = worst;
            }
        }
        return best;
    }

    // Split node on the port1-port2 path chosen so both path sides keep at
    // most half of the component.
    int path_split(const std::set<int>& comp, int port1, int port2) {
        // Path inside comp between the two ports.
        std::map<int, int> pred;
        std::deque<int> queue{port1};
        pred[port1] = port1;
        while (!queue.empty()) {
            int v = queue.front();
            queue.pop_front();
            if (v == port2) break;
            for (int w : adj.at(v))
                if (comp.count(w) && !pred.count(w)) {
                    pred[w] = v;
                    queue.push_back(w);
                }
        }
        std::vector<int> path;
        for (int v = port2; v != port1; v = pred[v]) path.push_back(v);
        path.push_back(port1);
        std::reverse(path.begin(), path.end());

        std::set<int> on_path(path.begin(), path.end());
        std::vector<long long> weight(path.size(), 0);
        for (size_t i = 0; i < path.size(); ++i) {
            weight[i] = 1;
            std::map<int, int> memo;
            for (int w : adj.at(path[i]))
                if (comp.count(w) && !on_path.count(w))
                    weight[i] += subtree_size(w, comp, path[i], memo);
        }
        long long total = 0;
        for (long long w : weight) total += w;
        long long prefix = 0;
        for (size_t i = 0; i < path.size(); ++i) {
            prefix += weight[i];
            if (2 * prefix > total) return path[i];
        }
        return path.back();
    }

    int build(std::set<int> comp, std::vector<int> attachments) {
        int c;
        if (attachments.size() < 2) {
            c = centroid(comp);
        } else {
            auto port_of = [&](int attach) {
                for (int w : adj.at(attach))
                    if (comp.count(w)) return w;
                throw InvalidParams("attachment not adjacent to component");
            };
            c = path_split(comp, port_of(attachments[0]), port_of(attachments[1]));
        }

        VertexSet new_bag = in.bag(c);
        for (int a : attachments) new_bag = vset::unite(new_bag, in.bag(a));
        int id = next_id++;
        out.nodes.push_back(id);
        out.bags[id] = new_bag;

        comp.erase(c);
        std::set<int> remaining = comp;
        while (!remaining.empty()) {
            // Peel off one connected component of comp \ {c}.
            std::set<int> sub;
            std::deque<int> queue{*remaining.begin()};
            sub.insert(*remaining.begin());
            while (!queue.empty()) {
                int v = queue.front();
                queue.pop_front();
                for (int w : adj.at(v))
                    if (remaining.count(w) && sub.insert(w).second) queue.push_back(w);
            }
            for (int v : sub) remaining.erase(v);

            std::vector<int> sub_attach;
            for (int a : attachments)
                for (int w : adj.at(a))
                    if (sub.count(w)) {
                        sub_attach.push_back(a);
                        break;
                    }
            for (int w : adj.at(c))
                if (sub.count(w)) {
                    sub_attach.push_back(c);
                    break;
                }
            int child = build(std::move(sub), std::move(sub_attach));
            out.tree_edges.push_back({id, child});
        }
        return id;
    }
};

} // namespace detail

// Rebalances a valid decomposition to depth <= 2*ceil(log2(N)) + 1 at the
// cost of width <= 3w + 2, via alternating centroid and path splits.
inline TreeDecomposition balance(const TreeDecomposition& T) {
    if (T.nodes.empty()) throw InvalidParams("empty decomposition");
    detail::BalanceBuilder builder(T);
    std::set<int> all(T.nodes.begin(), T.nodes.end());
    int root = builder.build(std::move(all), {});
    builder.out.root_at(root);
    return builder.out;
}

} // namespace sparsecut

#endif

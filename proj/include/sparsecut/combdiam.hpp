#ifndef SPARSECUT_COMBDIAM_HPP
#define SPARSECUT_COMBDIAM_HPP

#include <cstdint>
#include <deque>
#include <set>
#include <vector>

#include "sparsecut/errors.hpp"
#include "sparsecut/treedec.hpp"

namespace sparsecut {

// A bag path between two decomposition nodes, possibly already partially
// simplified. length() is the edge count.
struct DecPath {
    std::vector<int> nodes;
    std::vector<VertexSet> bags;

    int length() const { return (int)nodes.size() - 1; }

    static DecPath from_tree(const TreeDecomposition& T, int s_node, int t_node) {
        DecPath p;
        p.nodes = tree_path(T, s_node, t_node);
        for (int v : p.nodes) p.bags.push_back(T.bag(v));
        return p;
    }
};

// v = path[idx] is redundant iff its intersection with one path neighbor is
// contained in the other neighbor's bag; both orientations count.
inline bool is_redundant(const DecPath& path, int idx) {
    if (idx <= 0 || idx >= (int)path.nodes.size() - 1)
        throw IndexOutOfRange("index " + std::to_string(idx) +
                              " is not interior to the path");
    const VertexSet& a = path.bags[idx - 1];
    const VertexSet& v = path.bags[idx];
    const VertexSet& b = path.bags[idx + 1];
    return vset::is_subset(vset::intersect(v, b), a) ||
           vset::is_subset(vset::intersect(v, a), b);
}

struct SimplificationTrace {
    DecPath initial;
    std::vector<int> bypassed; // node ids, in bypass order
    DecPath final;
};

inline DecPath bypass(const DecPath& path, int idx) {
    DecPath out = path;
    out.nodes.erase(out.nodes.begin() + idx);
    out.bags.erase(out.bags.begin() + idx);
    return out;
}

// Repeatedly bypasses the lowest-index redundant interior node. The result
// is an upper bound on the combinatorial length of the path.
inline SimplificationTrace simplify_greedy(const DecPath& path) {
    SimplificationTrace trace;
    trace.initial = path;
    DecPath cur = path;
    bool changed = true;
    while (changed) {
        changed = false;
        for (int i = 1; i < (int)cur.nodes.size() - 1; ++i)
            if (is_redundant(cur, i)) {
                trace.bypassed.push_back(cur.nodes[i]);
                cur = bypass(cur, i);
                changed = true;
                break;
            }
    }
    trace.final = cur;
    return trace;
}

// Minimum final length over all bypass sequences, by search over surviving
// node subsets. States are order-independent, so memoization is on the
// subset alone. Throws Exceeded past node_budget explored states.
inline int combinatorial_length_exact(const DecPath& path,
                                      size_t node_budget = 1000000) {
    int m = (int)path.nodes.size();
    if (m > 64) throw TooLarge("path longer than 64 nodes");
    if (m <= 2) return m - 1;

    uint64_t full = (m == 64) ? ~0ULL : ((1ULL << m) - 1);
    std::set<uint64_t> seen{full};
    std::deque<uint64_t> queue{full};
    int best = m - 1;
    while (!queue.empty()) {
        uint64_t mask = queue.front();
        queue.pop_front();
        // Materialize the surviving path.
        DecPath cur;
        for (int i = 0; i < m; ++i)
            if (mask & (1ULL << i)) {
                cur.nodes.push_back(i);
                cur.bags.push_back(path.bags[i]);
            }
        best = std::min(best, cur.length());
        for (int i = 1; i < (int)cur.nodes.size() - 1; ++i) {
            if (!is_redundant(cur, i)) continue;
            uint64_t next = mask & ~(1ULL << cur.nodes[i]);
            if (seen.insert(next).second) {
                if (seen.size() > node_budget)
                    throw Exceeded("exact search exceeded state budget");
                queue.push_back(next);
            }
        }
    }
    return best;
}

namespace detail {

// Greedy simplification length with bags packed into 64-bit masks; exact
// same bypass rule (lowest redundant index first) as simplify_greedy.
inline int greedy_length_masked(std::vector<uint64_t> bags) {
    auto redundant = [&](size_t i) {
        uint64_t a = bags[i - 1], v = bags[i], b = bags[i + 1];
        return ((v & b) & ~a) == 0 || ((v & a) & ~b) == 0;
    };
    bool changed = true;
    while (changed && bags.size() > 2) {
        changed = false;
        for (size_t i = 1; i + 1 < bags.size(); ++i)
            if (redundant(i)) {
                bags.erase(bags.begin() + i);
                changed = true;
                break;
            }
    }
    return (int)bags.size() - 1;
}

} // namespace detail

enum class DiameterMethod { Greedy, Exact };

struct DiameterResult {
    int diameter = 0;
    std::pair<int, int> witness{-1, -1};
};

// Max combinatorial length over all decomposition node pairs. The greedy
// method yields an upper bound; the exact method searches all bypass orders.
inline DiameterResult combinatorial_diameter(const TreeDecomposition& T,
                                             DiameterMethod method,
                                             size_t budget = 1000000) {
    // Fast greedy path: pack bags into 64-bit masks when vertex ids allow.
    bool packable = method == DiameterMethod::Greedy;
    std::map<int, uint64_t> packed;
    for (int v : T.nodes) {
        uint64_t m = 0;
        for (VertexId x : T.bag(v)) {
            if (x < 0 || x >= 64) {
                packable = false;
                break;
            }
            m |= uint64_t(1) << x;
        }
        if (!packable) break;
        packed[v] = m;
    }

    DiameterResult result;
    for (size_t a = 0; a < T.nodes.size(); ++a)
        for (size_t b = a + 1; b < T.nodes.size(); ++b) {
            int len;
            if (packable) {
                std::vector<uint64_t> bags;
                for (int v : tree_path(T, T.nodes[a], T.nodes[b]))
                    bags.push_back(packed.at(v));
                len = detail::greedy_length_masked(std::move(bags));
            } else {
                DecPath p = DecPath::from_tree(T, T.nodes[a], T.nodes[b]);
                len = (method == DiameterMethod::Greedy)
                          ? simplify_greedy(p).final.length()
                          : combinatorial_length_exact(p, budget);
            }
            if (len > result.diameter) {
                result.diameter = len;
                result.witness = {T.nodes[a], T.nodes[b]};
            }
        }
    return result;
}

} // namespace sparsecut

#endif

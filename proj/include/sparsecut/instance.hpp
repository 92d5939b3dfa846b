#ifndef SPARSECUT_INSTANCE_HPP
#define SPARSECUT_INSTANCE_HPP

#include <algorithm>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include "sparsecut/errors.hpp"
#include "sparsecut/rational.hpp"
#include "sparsecut/rng.hpp"

namespace sparsecut {

using VertexId = int;

struct WeightedEdge {
    VertexId u = 0;
    VertexId v = 0;
    Rat w = 1;
};

// A sparsest-cut instance: a capacity graph and a demand graph on the same
// vertex set {0, ..., n-1}. Immutable by convention after construction.
struct CutInstance {
    int n = 0;
    std::vector<WeightedEdge> cap_edges;
    std::vector<WeightedEdge> dem_edges;

    void check() const {
        auto check_list = [&](const std::vector<WeightedEdge>& edges,
                              const char* what) {
            std::set<std::pair<VertexId, VertexId>> seen;
            for (const auto& e : edges) {
                if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n)
                    throw InvalidParams(std::string(what) + " endpoint out of range");
                if (e.u == e.v)
                    throw InvalidParams(std::string(what) + " self-loop at vertex " +
                                        std::to_string(e.u));
                if (e.w <= 0)
                    throw InvalidParams(std::string(what) + " weight must be positive");
                auto key = std::minmax(e.u, e.v);
                if (!seen.insert(key).second)
                    throw InvalidParams(std::string(what) + " duplicate pair {" +
                                        std::to_string(key.first) + "," +
                                        std::to_string(key.second) + "}");
            }
        };
        check_list(cap_edges, "capacity edge");
        check_list(dem_edges, "demand edge");
        if (dem_edges.empty()) throw InvalidParams("demand edge list is empty");
    }
};

// A {0,1}-assignment on an explicit vertex domain. When the domain is all of
// V it doubles as a cut indicator.
struct Assignment {
    std::map<VertexId, int> values;

    int at(VertexId v) const {
        auto it = values.find(v);
        if (it == values.end())
            throw IndexOutOfRange("vertex " + std::to_string(v) +
                                  " not in assignment domain");
        return it->second;
    }
};

inline Assignment mirror(const Assignment& f) {
    Assignment out;
    for (const auto& [v, x] : f.values) out.values[v] = 1 - x;
    return out;
}

// Sparsity of the cut indicated by f: cut capacity over cut demand.
inline Rat sparsity(const CutInstance& inst, const Assignment& f) {
    Rat cap = 0, dem = 0;
    for (const auto& e : inst.cap_edges)
        if (f.at(e.u) != f.at(e.v)) cap += e.w;
    for (const auto& e : inst.dem_edges)
        if (f.at(e.u) != f.at(e.v)) dem += e.w;
    if (dem == 0) throw NoDemandSeparated("cut separates no demand pair");
    return cap / dem;
}

// Adds m_d distinct unit-demand pairs, deterministically for a given seed.
inline CutInstance attach_random_demands(const CutInstance& inst, int m_d,
                                         uint64_t seed) {
    long long max_pairs = (long long)inst.n * (inst.n - 1) / 2;
    if (m_d < 1) throw InvalidParams("m_d must be >= 1");
    if (m_d > max_pairs)
        throw TooManyDemands("requested " + std::to_string(m_d) + " demands, only " +
                             std::to_string(max_pairs) + " pairs exist");
    Rng rng(seed);
    std::set<std::pair<VertexId, VertexId>> chosen;
    CutInstance out = inst;
    out.dem_edges.clear();
    while ((int)chosen.size() < m_d) {
        VertexId u = (VertexId)rng.below(inst.n);
        VertexId v = (VertexId)rng.below(inst.n);
        if (u == v) continue;
        auto key = std::minmax(u, v);
        if (chosen.insert(key).second)
            out.dem_edges.push_back({key.first, key.second, Rat(1)});
    }
    return out;
}

} // namespace sparsecut

#endif

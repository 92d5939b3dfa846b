#ifndef SPARSECUT_MARKOV_HPP
#define SPARSECUT_MARKOV_HPP

#include <deque>
#include <set>
#include <vector>

#include "sparsecut/combdiam.hpp"
#include "sparsecut/errors.hpp"
#include "sparsecut/lifting.hpp"

namespace sparsecut {

// Layered Markov flow graph for the rounding walk along a bag path. Layer i
// is the set of assignments of the conditioning set I_i; edge weights are
// the joint probabilities of consecutive conditioning-set assignments.
struct MarkovFlowGraph {
    VertexId s = -1, t = -1;
    std::vector<VertexSet> cond_sets;                 // I_0 .. I_ell
    std::vector<std::vector<Rat>> layer_prob;         // Pr[f|_{I_i} = mask]
    std::vector<std::vector<std::vector<Rat>>> weight; // [i][a][b], layer i -> i+1

    int ell() const { return (int)cond_sets.size() - 1; }
    size_t layer_size(int i) const { return layer_prob[i].size(); }

    // L_0 = {s_0, s_1} and L_ell = {t_0, t_1}; mask is the label itself.
    static constexpr size_t kZero = 0, kOne = 1;
};

// Builds H for a (possibly simplified) bag path with s in the first bag and
// t in the last. Weights are exact; zero-probability nodes simply carry
// zero-weight edges.
inline MarkovFlowGraph build_H(const DecPath& path, const LiftedSolution& sol,
                               VertexId s, VertexId t) {
    if (path.nodes.empty()) throw InvalidParams("empty path");
    if (!vset::contains(path.bags.front(), s))
        throw EndpointNotInBag("s=" + std::to_string(s) + " not in the first bag");
    if (!vset::contains(path.bags.back(), t))
        throw EndpointNotInBag("t=" + std::to_string(t) + " not in the last bag");

    int m = (int)path.nodes.size();
    MarkovFlowGraph H;
    H.s = s;
    H.t = t;
    H.cond_sets.push_back(vset::make({s}));
    for (int i = 0; i + 1 < m; ++i) {
        VertexSet I = vset::intersect(path.bags[i], path.bags[i + 1]);
        if (I.size() > 16)
            throw TooLarge("conditioning set larger than 16 vertices");
        H.cond_sets.push_back(std::move(I));
    }
    H.cond_sets.push_back(vset::make({t}));

    std::vector<LocalDistribution> marginals;
    for (int i = 0; i < m; ++i) marginals.push_back(bag_marginal(sol, path.nodes[i]));

    int ell = H.ell(); // = m transitions
    H.layer_prob.resize(ell + 1);
    H.weight.resize(ell);
    for (int i = 0; i < ell; ++i) {
        // Transition i is realized inside bag i of the path (bag v_{i+1} in
        // 1-based terms): both I_i and I_{i+1} are subsets of it.
        const LocalDistribution& host = marginals[i];
        VertexSet joint_dom = vset::unite(H.cond_sets[i], H.cond_sets[i + 1]);
        LocalDistribution joint = host.marginal(joint_dom);

        size_t na = size_t(1) << H.cond_sets[i].size();
        size_t nb = size_t(1) << H.cond_sets[i + 1].size();
        H.weight[i].assign(na, std::vector<Rat>(nb, Rat(0)));
        std::vector<int> pos_a, pos_b;
        for (VertexId v : H.cond_sets[i]) pos_a.push_back(joint.position(v));
        for (VertexId v : H.cond_sets[i + 1]) pos_b.push_back(joint.position(v));
        for (size_t mask = 0; mask < joint.probs.size(); ++mask) {
            if (joint.probs[mask] == 0) continue;
            size_t a = 0, b = 0;
            for (size_t j = 0; j < pos_a.size(); ++j)
                if (mask & (size_t(1) << pos_a[j])) a |= size_t(1) << j;
            for (size_t j = 0; j < pos_b.size(); ++j)
                if (mask & (size_t(1) << pos_b[j])) b |= size_t(1) << j;
            H.weight[i][a][b] += joint.probs[mask];
        }
    }
    for (int i = 0; i <= ell; ++i) {
        const LocalDistribution& host = marginals[std::min(i, m - 1)];
        LocalDistribution marg = host.marginal(H.cond_sets[i]);
        H.layer_prob[i] = marg.probs;
    }
    return H;
}

// The walk distribution of the layer states, started from the full layer-0
// marginal, and the joint with the event X_0 = s_0.
struct WalkPasses {
    std::vector<std::vector<Rat>> prob;     // Pr[X_i = v]
    std::vector<std::vector<Rat>> joint_s0; // Pr[X_0 = s_0, X_i = v]
};

inline WalkPasses walk_passes(const MarkovFlowGraph& H) {
    WalkPasses w;
    int ell = H.ell();
    w.prob.resize(ell + 1);
    w.joint_s0.resize(ell + 1);
    w.prob[0] = H.layer_prob[0];
    w.joint_s0[0].assign(H.layer_size(0), Rat(0));
    w.joint_s0[0][MarkovFlowGraph::kZero] = H.layer_prob[0][MarkovFlowGraph::kZero];
    for (int i = 0; i < ell; ++i) {
        size_t nb = H.layer_size(i + 1);
        w.prob[i + 1].assign(nb, Rat(0));
        w.joint_s0[i + 1].assign(nb, Rat(0));
        for (size_t a = 0; a < H.layer_size(i); ++a) {
            if (H.layer_prob[i][a] == 0) continue;
            for (size_t b = 0; b < nb; ++b) {
                const Rat& wt = H.weight[i][a][b];
                if (wt == 0) continue;
                w.prob[i + 1][b] += w.prob[i][a] * wt / H.layer_prob[i][a];
                w.joint_s0[i + 1][b] += w.joint_s0[i][a] * wt / H.layer_prob[i][a];
            }
        }
    }
    return w;
}

// The explicit feasible flow carried by the LP distributions, sending the
// probability mass of the event {f(s)=0, f(t)=1}.
struct LpFlow {
    std::vector<std::vector<std::vector<Rat>>> g; // same shape as H.weight
    Rat value;
    bool conservation_ok = true;
    bool capacity_ok = true;
};

inline LpFlow lp_flow(const MarkovFlowGraph& H, const LiftedSolution& sol,
                      const DecPath& path) {
    int dem = sol.demand_index(H.s, H.t);
    if (dem < 0)
        throw PairNotCovered("lp_flow needs {s,t} to be a demand edge");
    int ell = H.ell();
    int m = (int)path.nodes.size();

    LpFlow flow;
    flow.g.resize(ell);
    for (int i = 0; i < ell; ++i) {
        const LocalDistribution& host = sol.dist(path.nodes[std::min(i, m - 1)], dem);
        VertexSet dom = vset::unite(
            vset::unite(H.cond_sets[i], H.cond_sets[i + 1]), vset::make({H.s, H.t}));
        LocalDistribution joint = host.marginal(dom);
        int ps = joint.position(H.s), pt = joint.position(H.t);
        std::vector<int> pos_a, pos_b;
        for (VertexId v : H.cond_sets[i]) pos_a.push_back(joint.position(v));
        for (VertexId v : H.cond_sets[i + 1]) pos_b.push_back(joint.position(v));

        size_t na = H.layer_size(i), nb = H.layer_size(i + 1);
        flow.g[i].assign(na, std::vector<Rat>(nb, Rat(0)));
        for (size_t mask = 0; mask < joint.probs.size(); ++mask) {
            if (joint.probs[mask] == 0) continue;
            if (((mask >> ps) & 1) != 0 || ((mask >> pt) & 1) != 1) continue;
            size_t a = 0, b = 0;
            for (size_t j = 0; j < pos_a.size(); ++j)
                if (mask & (size_t(1) << pos_a[j])) a |= size_t(1) << j;
            for (size_t j = 0; j < pos_b.size(); ++j)
                if (mask & (size_t(1) << pos_b[j])) b |= size_t(1) << j;
            flow.g[i][a][b] += joint.probs[mask];
        }
    }

    flow.value = 0;
    for (const Rat& v : flow.g[0][MarkovFlowGraph::kZero]) flow.value += v;

    // Conservation at interior nodes, capacity against w_H.
    for (int i = 0; i < ell; ++i)
        for (size_t a = 0; a < H.layer_size(i); ++a)
            for (size_t b = 0; b < H.layer_size(i + 1); ++b)
                if (flow.g[i][a][b] > H.weight[i][a][b]) flow.capacity_ok = false;
    for (int i = 1; i < ell; ++i)
        for (size_t a = 0; a < H.layer_size(i); ++a) {
            Rat in = 0, out = 0;
            for (size_t p = 0; p < H.layer_size(i - 1); ++p) in += flow.g[i - 1][p][a];
            for (size_t b = 0; b < H.layer_size(i + 1); ++b) out += flow.g[i][a][b];
            if (in != out) flow.conservation_ok = false;
        }
    return flow;
}

// Exact max flow from a layer-0 node to a layer-ell node by augmenting
// paths on the layered residual graph.
inline Rat max_flow(const MarkovFlowGraph& H, size_t source_mask, size_t sink_mask) {
    int ell = H.ell();
    // Node ids: prefix offsets per layer; plus implicit source/sink masks.
    std::vector<int> offset(ell + 2, 0);
    for (int i = 0; i <= ell; ++i) offset[i + 1] = offset[i] + (int)H.layer_size(i);
    int n = offset[ell + 1];
    auto id = [&](int layer, size_t mask) { return offset[layer] + (int)mask; };

    struct Edge {
        int to;
        Rat cap;
        int rev;
    };
    std::vector<std::vector<Edge>> graph(n);
    auto add_edge = [&](int u, int v, Rat cap) {
        graph[u].push_back({v, cap, (int)graph[v].size()});
        graph[v].push_back({u, Rat(0), (int)graph[u].size() - 1});
    };
    for (int i = 0; i < ell; ++i)
        for (size_t a = 0; a < H.layer_size(i); ++a)
            for (size_t b = 0; b < H.layer_size(i + 1); ++b)
                if (H.weight[i][a][b] > 0)
                    add_edge(id(i, a), id(i + 1, b), H.weight[i][a][b]);

    int s = id(0, source_mask), t = id(ell, sink_mask);
    Rat total = 0;
    while (true) {
        std::vector<std::pair<int, int>> pred(n, {-1, -1}); // node, edge idx
        std::deque<int> queue{s};
        pred[s] = {s, -1};
        while (!queue.empty() && pred[t].first < 0) {
            int v = queue.front();
            queue.pop_front();
            for (size_t e = 0; e < graph[v].size(); ++e)
                if (graph[v][e].cap > 0 && pred[graph[v][e].to].first < 0) {
                    pred[graph[v][e].to] = {v, (int)e};
                    queue.push_back(graph[v][e].to);
                }
        }
        if (pred[t].first < 0) break;
        Rat bottleneck = -1;
        for (int v = t; v != s;) {
            auto [u, e] = pred[v];
            if (bottleneck < 0 || graph[u][e].cap < bottleneck) bottleneck = graph[u][e].cap;
            v = u;
        }
        for (int v = t; v != s;) {
            auto [u, e] = pred[v];
            graph[u][e].cap -= bottleneck;
            graph[graph[u][e].to][graph[u][e].rev].cap += bottleneck;
            v = u;
        }
        total += bottleneck;
    }
    return total;
}

// Bias A(v) = Pr[X_0 = s_0 | X_i = v] - 1/2 and the layer potential
// phi(i) = Var[A(X_i)]. Zero-probability nodes get A = 0.
struct PotentialProfile {
    std::vector<std::vector<Rat>> bias; // A per layer node
    std::vector<Rat> phi;
};

inline PotentialProfile potential_profile(const MarkovFlowGraph& H) {
    WalkPasses w = walk_passes(H);
    PotentialProfile prof;
    int ell = H.ell();
    prof.bias.resize(ell + 1);
    prof.phi.resize(ell + 1);
    for (int i = 0; i <= ell; ++i) {
        prof.bias[i].assign(H.layer_size(i), Rat(0));
        Rat mean = 0, second = 0;
        for (size_t v = 0; v < H.layer_size(i); ++v) {
            if (w.prob[i][v] == 0) continue;
            Rat A = w.joint_s0[i][v] / w.prob[i][v] - Rat(1, 2);
            prof.bias[i][v] = A;
            mean += w.prob[i][v] * A;
            second += w.prob[i][v] * A * A;
        }
        prof.phi[i] = second - mean * mean;
    }
    return prof;
}

// Exact verification of the potential-drop and threshold-cut lemmas.
struct LemmaReport {
    Rat phi_drop;            // phi(0) - phi(ell)
    Rat joint_s0_t1;         // Pr[X_0 = s_0, X_ell = t_1]
    bool lemma_drop_ok;      // phi_drop <= 2 * joint_s0_t1
    Rat rho;                 // 1 / (2*ell)
    Rat threshold_cut_weight;
    bool threshold_bound_ok; // cut weight <= phi_drop / rho^2
    Rat bias_t1;
    bool t1_negative;        // A(t_1) < 0
    bool cut_separates;      // only meaningful when t1_negative
    Rat mincut_s0_t1;
    bool mincut_bound_ok;    // mincut <= phi_drop * 4*ell^2 when t1_negative
};

inline LemmaReport check_lemmas(const MarkovFlowGraph& H) {
    WalkPasses w = walk_passes(H);
    PotentialProfile prof = potential_profile(H);
    int ell = H.ell();

    LemmaReport rep;
    rep.phi_drop = prof.phi[0] - prof.phi[ell];
    rep.joint_s0_t1 = w.joint_s0[ell][MarkovFlowGraph::kOne];
    rep.lemma_drop_ok = rep.phi_drop <= 2 * rep.joint_s0_t1;

    rep.rho = Rat(1, 2 * ell);
    rep.threshold_cut_weight = 0;
    std::vector<std::vector<std::vector<bool>>> in_cut(ell);
    for (int i = 0; i < ell; ++i) {
        in_cut[i].assign(H.layer_size(i),
                         std::vector<bool>(H.layer_size(i + 1), false));
        for (size_t a = 0; a < H.layer_size(i); ++a)
            for (size_t b = 0; b < H.layer_size(i + 1); ++b) {
                Rat gap = prof.bias[i][a] - prof.bias[i + 1][b];
                if (gap < 0) gap = -gap;
                if (gap >= rep.rho) {
                    in_cut[i][a][b] = true;
                    rep.threshold_cut_weight += H.weight[i][a][b];
                }
            }
    }
    rep.threshold_bound_ok =
        rep.threshold_cut_weight * rep.rho * rep.rho <= rep.phi_drop;

    rep.bias_t1 = prof.bias[ell][MarkovFlowGraph::kOne];
    rep.t1_negative = rep.bias_t1 < 0;

    // Does cutting the threshold edges separate s_0 from t_1 in the
    // positive-weight graph?
    std::vector<std::vector<bool>> reach(ell + 1);
    for (int i = 0; i <= ell; ++i) reach[i].assign(H.layer_size(i), false);
    reach[0][MarkovFlowGraph::kZero] = true;
    for (int i = 0; i < ell; ++i)
        for (size_t a = 0; a < H.layer_size(i); ++a) {
            if (!reach[i][a]) continue;
            for (size_t b = 0; b < H.layer_size(i + 1); ++b)
                if (H.weight[i][a][b] > 0 && !in_cut[i][a][b]) reach[i + 1][b] = true;
        }
    rep.cut_separates = !reach[ell][MarkovFlowGraph::kOne];

    rep.mincut_s0_t1 = max_flow(H, MarkovFlowGraph::kZero, MarkovFlowGraph::kOne);
    rep.mincut_bound_ok =
        !rep.t1_negative || rep.mincut_s0_t1 <= rep.phi_drop * 4 * ell * ell;
    return rep;
}

} // namespace sparsecut

#endif

#ifndef SPARSECUT_ROUNDING_HPP
#define SPARSECUT_ROUNDING_HPP

#include <cmath>
#include <deque>
#include <map>
#include <tuple>
#include <vector>

#include "sparsecut/errors.hpp"
#include "sparsecut/instance.hpp"
#include "sparsecut/lifting.hpp"
#include "sparsecut/markov.hpp"
#include "sparsecut/rng.hpp"

namespace sparsecut {

struct RoundingRun {
    uint64_t seed = 0;
    std::vector<int> order;                         // processed node order
    Assignment assignment;                          // total on V
    std::vector<std::pair<int, size_t>> choices;    // (node, sampled new-vertex mask)
};

// Conditional sampler for the bag-by-bag rounding. Bag marginals and the
// per-(bag, overlap assignment) conditional tables are computed once and
// shared across trials; each trial has a private RNG stream.
class Rounder {
public:
    Rounder(const TreeDecomposition& T, const LiftedSolution& sol) : T_(T) {
        for (int i : T.nodes) marginals_[i] = bag_marginal(sol, i);
        adj_ = T.adjacency();
        for (auto& [v, nb] : adj_) std::sort(nb.begin(), nb.end());
    }

    RoundingRun round(int start_node, uint64_t seed) const {
        Rng rng(seed);
        RoundingRun run;
        run.seed = seed;

        std::map<int, int> bfs_parent;
        std::deque<int> queue{start_node};
        std::set<int> seen{start_node};
        std::vector<int> order;
        while (!queue.empty()) {
            int v = queue.front();
            queue.pop_front();
            order.push_back(v);
            for (int w : adj_.at(v))
                if (seen.insert(w).second) {
                    bfs_parent[w] = v;
                    queue.push_back(w);
                }
        }
        run.order = order;

        for (int v : order) {
            const LocalDistribution& mu = marginals_.at(v);
            // Fixed part: vertices already assigned (exactly the overlap
            // with the processed parent bag, by the subtree property).
            size_t fixed_mask = 0, fixed_sel = 0;
            for (size_t p = 0; p < mu.domain.size(); ++p) {
                auto it = run.assignment.values.find(mu.domain[p]);
                if (it != run.assignment.values.end()) {
                    fixed_mask |= size_t(1) << p;
                    if (it->second) fixed_sel |= size_t(1) << p;
                }
            }
            const CondTable& table = conditional(v, fixed_mask, fixed_sel);
            size_t pick = table.sample(rng.unit());
            run.choices.push_back({v, pick});
            for (size_t p = 0; p < mu.domain.size(); ++p)
                if (!(fixed_mask & (size_t(1) << p)))
                    run.assignment.values[mu.domain[p]] = (pick >> p) & 1;
        }
        return run;
    }

    const LocalDistribution& marginal(int node) const { return marginals_.at(node); }

private:
    struct CondTable {
        std::vector<size_t> masks;    // full-bag masks compatible with the condition
        std::vector<double> cumulative;

        size_t sample(double u) const {
            auto it = std::upper_bound(cumulative.begin(), cumulative.end(),
                                       u * cumulative.back());
            size_t idx = std::min<size_t>(it - cumulative.begin(), masks.size() - 1);
            return masks[idx];
        }
    };

    const CondTable& conditional(int node, size_t fixed_mask, size_t fixed_sel) const {
        auto key = std::make_tuple(node, fixed_mask, fixed_sel);
        auto it = tables_.find(key);
        if (it != tables_.end()) return it->second;

        const LocalDistribution& mu = marginals_.at(node);
        CondTable table;
        Rat total = 0;
        double cum = 0;
        for (size_t mask = 0; mask < mu.probs.size(); ++mask) {
            if ((mask & fixed_mask) != fixed_sel) continue;
            if (mu.probs[mask] == 0) continue;
            total += mu.probs[mask];
            cum += to_double(mu.probs[mask]);
            table.masks.push_back(mask);
            table.cumulative.push_back(cum);
        }
        if (total == 0)
            throw ZeroProbabilityCondition(
                "conditioning event has probability zero at node " +
                std::to_string(node));
        return tables_.emplace(key, std::move(table)).first->second;
    }

    const TreeDecomposition& T_;
    std::map<int, LocalDistribution> marginals_;
    std::map<int, std::vector<int>> adj_;
    mutable std::map<std::tuple<int, size_t, size_t>, CondTable> tables_;
};

inline RoundingRun sc_round(const TreeDecomposition& T, const LiftedSolution& sol,
                            int start_node, uint64_t seed) {
    return Rounder(T, sol).round(start_node, seed);
}

struct RepeatedRoundResult {
    Assignment best;
    Rat best_sparsity;
    int trials = 0;
    int degenerate = 0;  // runs separating no demand
    int successes = 0;   // runs with cap - (alpha/c)*dem <= 0
};

// Repeated rounding: best-of-trials cut extraction per the expectation
// guarantee. c is the caller's assumed rounding factor (1 on diameter-1
// decompositions).
inline RepeatedRoundResult repeated_round(const CutInstance& inst,
                                          const TreeDecomposition& T,
                                          const LiftedSolution& sol, int trials,
                                          uint64_t seed, const Rat& c = Rat(1)) {
    if (trials < 1) throw InvalidParams("trials must be >= 1");
    Rounder rounder(T, sol);
    RepeatedRoundResult result;
    result.trials = trials;
    bool have_best = false;
    Rat threshold_ratio = sol.alpha / c;
    for (int trial = 0; trial < trials; ++trial) {
        RoundingRun run = rounder.round(T.root, split_seed(seed, trial));
        Rat cap = 0, dem = 0;
        for (const auto& e : inst.cap_edges)
            if (run.assignment.at(e.u) != run.assignment.at(e.v)) cap += e.w;
        for (const auto& e : inst.dem_edges)
            if (run.assignment.at(e.u) != run.assignment.at(e.v)) dem += e.w;
        if (dem == 0) {
            ++result.degenerate;
            continue;
        }
        if (cap - threshold_ratio * dem <= 0) ++result.successes;
        Rat sp = cap / dem;
        if (!have_best || sp < result.best_sparsity) {
            result.best = run.assignment;
            result.best_sparsity = sp;
            have_best = true;
        }
    }
    if (!have_best) throw AllRunsDegenerate("every rounding run separated no demand");
    return result;
}

struct CutEstimate {
    double value = 0;
    double half_width = 0; // 95% normal-approximation interval
};

inline CutEstimate algcut_estimate(const TreeDecomposition& T,
                                   const LiftedSolution& sol, VertexId s, VertexId t,
                                   int trials, uint64_t seed) {
    if (s == t) return {0.0, 0.0};
    Rounder rounder(T, sol);
    int cut = 0;
    for (int trial = 0; trial < trials; ++trial) {
        RoundingRun run = rounder.round(T.root, split_seed(seed, trial));
        if (run.assignment.at(s) != run.assignment.at(t)) ++cut;
    }
    CutEstimate est;
    est.value = (double)cut / trials;
    est.half_width = 1.96 * std::sqrt(est.value * (1.0 - est.value) / trials);
    return est;
}

// Shortest bag path between a bag containing s and a bag containing t.
inline DecPath endpoint_path(const TreeDecomposition& T, VertexId s, VertexId t) {
    int best_i = -1, best_j = -1, best_len = -1;
    for (int i : T.nodes) {
        if (!vset::contains(T.bag(i), s)) continue;
        for (int j : T.nodes) {
            if (!vset::contains(T.bag(j), t)) continue;
            int len = (int)tree_path(T, i, j).size();
            if (best_len < 0 || len < best_len) {
                best_len = len;
                best_i = i;
                best_j = j;
            }
        }
    }
    if (best_i < 0)
        throw PairNotConnected("no bag contains " + std::to_string(s) + " or " +
                               std::to_string(t));
    return DecPath::from_tree(T, best_i, best_j);
}

// Exact separation probability of the rounding walk along a given bag path,
// by dynamic programming over the conditioning-set layers.
inline Rat algcut_exact_on_path(const DecPath& path, const LiftedSolution& sol,
                                VertexId s, VertexId t) {
    if (s == t) return Rat(0);
    MarkovFlowGraph H = build_H(path, sol, s, t);
    WalkPasses w = walk_passes(H);
    int ell = H.ell();
    // Pr[s_0, t_1] + Pr[s_1, t_0]; the latter is Pr[t_0] - Pr[s_0, t_0].
    return w.joint_s0[ell][MarkovFlowGraph::kOne] +
           (w.prob[ell][MarkovFlowGraph::kZero] -
            w.joint_s0[ell][MarkovFlowGraph::kZero]);
}

inline Rat algcut_exact(const TreeDecomposition& T, const LiftedSolution& sol,
                        VertexId s, VertexId t) {
    if (s == t) return Rat(0);
    return algcut_exact_on_path(endpoint_path(T, s, t), sol, s, t);
}

} // namespace sparsecut

#endif

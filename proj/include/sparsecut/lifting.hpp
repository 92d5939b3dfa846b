#ifndef SPARSECUT_LIFTING_HPP
#define SPARSECUT_LIFTING_HPP

#include <map>
#include <utility>
#include <vector>

#include "sparsecut/errors.hpp"
#include "sparsecut/instance.hpp"
#include "sparsecut/simplex.hpp"
#include "sparsecut/treedec.hpp"

namespace sparsecut {

// Probability distribution over the {0,1}-assignments of a small vertex set.
// probs[mask] is the probability of the assignment where domain[i] gets bit
// i of mask.
struct LocalDistribution {
    VertexSet domain;
    std::vector<Rat> probs;

    size_t size() const { return probs.size(); }

    int position(VertexId v) const {
        auto it = std::lower_bound(domain.begin(), domain.end(), v);
        if (it == domain.end() || *it != v)
            throw IndexOutOfRange("vertex " + std::to_string(v) +
                                  " not in distribution domain");
        return (int)(it - domain.begin());
    }

    // Marginal onto a subset of the domain.
    LocalDistribution marginal(const VertexSet& sub) const {
        LocalDistribution out;
        out.domain = sub;
        out.probs.assign(size_t(1) << sub.size(), Rat(0));
        std::vector<int> pos;
        for (VertexId v : sub) pos.push_back(position(v));
        for (size_t mask = 0; mask < probs.size(); ++mask) {
            if (probs[mask] == 0) continue;
            size_t sub_mask = 0;
            for (size_t i = 0; i < pos.size(); ++i)
                if (mask & (size_t(1) << pos[i])) sub_mask |= size_t(1) << i;
            out.probs[sub_mask] += probs[mask];
        }
        return out;
    }

    Rat separation_probability(VertexId u, VertexId v) const {
        if (u == v) return Rat(0);
        int pu = position(u), pv = position(v);
        Rat p = 0;
        for (size_t mask = 0; mask < probs.size(); ++mask)
            if (((mask >> pu) & 1) != ((mask >> pv) & 1)) p += probs[mask];
        return p;
    }

    bool is_mirror_symmetric() const {
        size_t full = probs.size() - 1;
        for (size_t mask = 0; mask < probs.size(); ++mask)
            if (probs[mask] != probs[full ^ mask]) return false;
        return true;
    }

    Rat total() const {
        Rat t = 0;
        for (const Rat& p : probs) t += p;
        return t;
    }
};

// Variable layout of the lifted LP: one block per (tree node, demand edge)
// over L = B_i union {s,t}. Mirror symmetry is folded into the layout: the
// assignments mask and ~mask share one variable (their common probability),
// so a block has 2^(|L|-1) variables and needs no symmetry rows.
struct LiftedLp {
    LinearProgram lp;
    std::vector<int> nodes;                            // block order
    std::vector<std::pair<VertexId, VertexId>> demands;
    std::map<int, std::vector<VertexSet>> domains;     // node -> per-demand L
    std::map<int, std::vector<int>> offsets;           // node -> per-demand var base

    int var(int node, int dem, size_t mask) const {
        size_t full = (size_t(1) << domains.at(node)[dem].size()) - 1;
        if (mask & 1) mask ^= full; // canonical rep assigns 0 to the first vertex
        return offsets.at(node)[dem] + (int)(mask >> 1);
    }
};

namespace detail {

// All masks of `dom` whose restriction to `sub` equals sub_mask.
inline void for_each_extension(const VertexSet& dom, const VertexSet& sub,
                               size_t sub_mask, auto&& fn) {
    std::vector<int> pos;
    for (VertexId v : sub) {
        auto it = std::lower_bound(dom.begin(), dom.end(), v);
        pos.push_back((int)(it - dom.begin()));
    }
    size_t total = size_t(1) << dom.size();
    for (size_t mask = 0; mask < total; ++mask) {
        bool ok = true;
        for (size_t i = 0; i < pos.size(); ++i)
            if (((mask >> pos[i]) & 1) != ((sub_mask >> i) & 1)) {
                ok = false;
                break;
            }
        if (ok) fn(mask);
    }
}

} // namespace detail

// Builds the consistency LP over local distributions: normalization,
// tree-edge marginal agreement per demand edge, and same-node cross-demand
// agreement on the bag. Mirror symmetry is structural (folded variables).
inline LiftedLp build_lifted_lp(const CutInstance& inst, const TreeDecomposition& T) {
    inst.check();
    LiftedLp out;
    out.nodes = T.nodes;
    for (const auto& e : inst.dem_edges) out.demands.push_back({e.u, e.v});

    for (int i : out.nodes) {
        std::vector<VertexSet> doms;
        std::vector<int> offs;
        for (const auto& [s, t] : out.demands) {
            VertexSet L = vset::unite(T.bag(i), vset::make({s, t}));
            int base = out.lp.num_vars;
            for (size_t mask = 0; mask < (size_t(1) << (L.size() - 1)); ++mask)
                out.lp.add_var();
            doms.push_back(std::move(L));
            offs.push_back(base);
        }
        out.domains[i] = std::move(doms);
        out.offsets[i] = std::move(offs);
    }

    int num_dem = (int)out.demands.size();

    // (a) Normalization.
    for (int i : out.nodes)
        for (int e = 0; e < num_dem; ++e) {
            LinearProgram::Row row;
            size_t count = size_t(1) << out.domains[i][e].size();
            for (size_t mask = 0; mask < count; ++mask)
                row.terms.push_back({out.var(i, e, mask), Rat(1)});
            row.rhs = 1;
            out.lp.rows.push_back(std::move(row));
        }

    // (b) Tree-edge marginal consistency, per demand edge, on
    // (B_i cap B_j) union {s,t}.
    for (auto [i, j] : T.tree_edges)
        for (int e = 0; e < num_dem; ++e) {
            auto [s, t] = out.demands[e];
            VertexSet M = vset::unite(vset::intersect(T.bag(i), T.bag(j)),
                                      vset::make({s, t}));
            // Mirrored assignments of M induce identical rows; keep one.
            for (size_t g = 0; g < (size_t(1) << M.size()); g += 2) {
                LinearProgram::Row row;
                detail::for_each_extension(out.domains[i][e], M, g, [&](size_t mask) {
                    row.terms.push_back({out.var(i, e, mask), Rat(1)});
                });
                detail::for_each_extension(out.domains[j][e], M, g, [&](size_t mask) {
                    row.terms.push_back({out.var(j, e, mask), Rat(-1)});
                });
                row.rhs = 0;
                out.lp.rows.push_back(std::move(row));
            }
        }

    // (c) Cross-demand agreement on B_i at each node.
    for (int i : out.nodes) {
        const VertexSet& bag = T.bag(i);
        for (int e = 1; e < num_dem; ++e)
            for (size_t g = 0; g < (size_t(1) << bag.size()); g += 2) {
                LinearProgram::Row row;
                detail::for_each_extension(out.domains[i][0], bag, g, [&](size_t mask) {
                    row.terms.push_back({out.var(i, 0, mask), Rat(1)});
                });
                detail::for_each_extension(out.domains[i][e], bag, g, [&](size_t mask) {
                    row.terms.push_back({out.var(i, e, mask), Rat(-1)});
                });
                row.rhs = 0;
                out.lp.rows.push_back(std::move(row));
            }
    }

    return out;
}

// Solution of the lifted relaxation: one distribution per (node, demand).
struct LiftedSolution {
    std::vector<int> nodes;
    std::vector<std::pair<VertexId, VertexId>> demands;
    std::map<int, VertexSet> bags;
    std::map<int, std::vector<LocalDistribution>> dists;
    Rat alpha;

    int demand_index(VertexId u, VertexId v) const {
        for (size_t e = 0; e < demands.size(); ++e) {
            auto [s, t] = demands[e];
            if ((s == u && t == v) || (s == v && t == u)) return (int)e;
        }
        return -1;
    }

    const LocalDistribution& dist(int node, int dem) const {
        return dists.at(node)[dem];
    }
};

// Marginal onto B_i; every demand edge's distribution at i must agree.
inline LocalDistribution bag_marginal(const LiftedSolution& sol, int node) {
    const VertexSet& bag = sol.bags.at(node);
    LocalDistribution ref = sol.dist(node, 0).marginal(bag);
    for (size_t e = 1; e < sol.demands.size(); ++e) {
        LocalDistribution other = sol.dist(node, (int)e).marginal(bag);
        if (other.probs != ref.probs)
            throw InconsistencyDetected("cross-demand bag marginals differ at node " +
                                        std::to_string(node));
    }
    return ref;
}

// Separation probability of a pair under the lifted solution. Defined for
// demand edges and for pairs sharing a bag; consistent by construction.
inline Rat lpcut(const LiftedSolution& sol, VertexId u, VertexId v) {
    if (u == v) return Rat(0);
    int e = sol.demand_index(u, v);
    if (e >= 0) return sol.dist(sol.nodes.front(), e).separation_probability(u, v);
    for (int i : sol.nodes) {
        const VertexSet& bag = sol.bags.at(i);
        if (vset::contains(bag, u) && vset::contains(bag, v))
            return bag_marginal(sol, i).separation_probability(u, v);
    }
    throw PairNotCovered("pair {" + std::to_string(u) + "," + std::to_string(v) +
                         "} is neither a demand edge nor inside a common bag");
}

// Exact consistency audit used by tests and by solve_ratio's postcondition.
inline void check_consistency(const LiftedSolution& sol, const TreeDecomposition& T) {
    for (int i : sol.nodes)
        for (size_t e = 0; e < sol.demands.size(); ++e) {
            const LocalDistribution& d = sol.dist(i, (int)e);
            if (d.total() != 1)
                throw InconsistencyDetected("distribution does not normalize");
            if (!d.is_mirror_symmetric())
                throw InconsistencyDetected("distribution is not mirror-symmetric");
        }
    for (auto [i, j] : T.tree_edges)
        for (size_t e = 0; e < sol.demands.size(); ++e) {
            auto [s, t] = sol.demands[e];
            VertexSet M = vset::unite(vset::intersect(sol.bags.at(i), sol.bags.at(j)),
                                      vset::make({s, t}));
            if (sol.dist(i, (int)e).marginal(M).probs !=
                sol.dist(j, (int)e).marginal(M).probs)
                throw InconsistencyDetected("tree-edge marginals differ");
        }
    for (int i : sol.nodes) bag_marginal(sol, i); // throws on disagreement
}

namespace detail {

// Objective coefficient vectors: N(x) = sum of cap * lpcut, D(x) = sum of
// dem * lpcut, both linear in the block variables.
struct RatioObjective {
    std::vector<Rat> num_coef, den_coef;
};

inline RatioObjective ratio_objective(const CutInstance& inst,
                                      const TreeDecomposition& T,
                                      const LiftedLp& lifted) {
    RatioObjective obj;
    obj.num_coef.assign(lifted.lp.num_vars, Rat(0));
    obj.den_coef.assign(lifted.lp.num_vars, Rat(0));

    auto add_separation = [&](std::vector<Rat>& coef, int node, int dem,
                              VertexId u, VertexId v, const Rat& w) {
        const VertexSet& L = lifted.domains.at(node)[dem];
        auto pos = [&](VertexId x) {
            return (int)(std::lower_bound(L.begin(), L.end(), x) - L.begin());
        };
        int pu = pos(u), pv = pos(v);
        for (size_t mask = 0; mask < (size_t(1) << L.size()); ++mask)
            if (((mask >> pu) & 1) != ((mask >> pv) & 1))
                coef[lifted.var(node, dem, mask)] += w;
    };

    for (const auto& e : inst.cap_edges) {
        // Capacity edges lie inside some bag; use the first covering node's
        // first demand block as the representative.
        int host = -1;
        for (int i : lifted.nodes)
            if (vset::contains(T.bag(i), e.u) && vset::contains(T.bag(i), e.v)) {
                host = i;
                break;
            }
        if (host < 0)
            throw InvalidParams("capacity edge {" + std::to_string(e.u) + "," +
                                std::to_string(e.v) + "} is covered by no bag");
        add_separation(obj.num_coef, host, 0, e.u, e.v, e.w);
    }
    for (size_t e = 0; e < inst.dem_edges.size(); ++e)
        add_separation(obj.den_coef, lifted.nodes.front(), (int)e,
                       inst.dem_edges[e].u, inst.dem_edges[e].v, inst.dem_edges[e].w);
    return obj;
}

inline LiftedSolution extract_solution(const LiftedLp& lifted,
                                       const TreeDecomposition& T,
                                       const std::vector<Rat>& x, const Rat& alpha) {
    LiftedSolution sol;
    sol.nodes = lifted.nodes;
    sol.demands = lifted.demands;
    sol.alpha = alpha;
    for (int i : lifted.nodes) {
        sol.bags[i] = T.bag(i);
        std::vector<LocalDistribution> ds;
        for (size_t e = 0; e < lifted.demands.size(); ++e) {
            LocalDistribution d;
            d.domain = lifted.domains.at(i)[e];
            d.probs.resize(size_t(1) << d.domain.size());
            for (size_t mask = 0; mask < d.probs.size(); ++mask)
                d.probs[mask] = x[lifted.var(i, (int)e, mask)];
            ds.push_back(std::move(d));
        }
        sol.dists[i] = std::move(ds);
    }
    return sol;
}

} // namespace detail

// Minimizes the lpcut capacity/demand ratio by Dinkelbach iteration:
// repeatedly minimize N - alpha*D over the consistency polytope until the
// linearized optimum hits zero exactly.
inline LiftedSolution solve_ratio(const CutInstance& inst, const TreeDecomposition& T) {
    LiftedLp lifted = build_lifted_lp(inst, T);
    detail::RatioObjective obj = detail::ratio_objective(inst, T, lifted);

    auto eval = [&](const std::vector<Rat>& coef, const std::vector<Rat>& x) {
        Rat v = 0;
        for (size_t j = 0; j < coef.size(); ++j)
            if (coef[j] != 0) v += coef[j] * x[j];
        return v;
    };

    // Uniform local distributions are feasible and give every pair lpcut
    // 1/2, so the starting denominator is positive.
    std::vector<Rat> x(lifted.lp.num_vars);
    for (int i : lifted.nodes)
        for (size_t e = 0; e < lifted.demands.size(); ++e) {
            size_t count = size_t(1) << lifted.domains.at(i)[e].size();
            for (size_t mask = 0; mask < count; ++mask)
                x[lifted.var(i, (int)e, mask)] = Rat(1, (long)count);
        }
    Rat den = eval(obj.den_coef, x);
    if (den == 0)
        throw DegenerateDenominator("demand lpcut vanishes at the starting point");
    Rat alpha = eval(obj.num_coef, x) / den;

    SimplexSolver solver(lifted.lp);
    std::vector<int> basis;
    for (int iter = 0;; ++iter) {
        if (iter > 10000) throw Exceeded("Dinkelbach failed to terminate");
        std::vector<Rat> cost(lifted.lp.num_vars);
        for (int j = 0; j < lifted.lp.num_vars; ++j)
            cost[j] = obj.num_coef[j] - alpha * obj.den_coef[j];
        LpSolution lp_sol = solver.solve(cost, basis.empty() ? nullptr : &basis);
        basis = lp_sol.basis;
        if (lp_sol.objective == 0) break; // alpha is the exact optimum
        // objective < 0: strictly better ratio, and D > 0 is forced since
        // N >= 0 everywhere.
        Rat n_val = eval(obj.num_coef, lp_sol.x);
        Rat d_val = eval(obj.den_coef, lp_sol.x);
        if (d_val <= 0)
            throw DegenerateDenominator("denominator vanished mid-iteration");
        alpha = n_val / d_val;
        x = std::move(lp_sol.x);
    }

    LiftedSolution sol = detail::extract_solution(lifted, T, x, alpha);
    check_consistency(sol, T);
    return sol;
}

} // namespace sparsecut

#endif

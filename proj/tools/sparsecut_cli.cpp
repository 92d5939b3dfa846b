// Command-line front end: wires the decomposition transformations, the
// lifted-LP solver, the rounding pipeline, the diagnostics, and the bench
// harness behind one binary with JSON/CSV reports.
//
// Exit codes: 0 success, 1 domain error (structured JSON on stderr),
// 2 usage error.

#include <chrono>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "sparsecut/sparsecut.hpp"

using namespace sparsecut;

namespace {

constexpr int kOracleCap = 24;

Json stats_block(const TreeDecomposition& T) {
    Json j;
    j["width"] = T.width();
    j["depth"] = T.depth();
    return j;
}

struct TransformParams {
    std::string mode = "highways";
    int lambda = 2;
    int q = 1;
};

ShallowMode parse_mode(const std::string& mode) {
    if (mode == "bridges") return ShallowMode::Bridges;
    if (mode == "highways") return ShallowMode::Highways;
    if (mode == "superhighways") return ShallowMode::SuperHighways;
    throw CLI::ValidationError("--mode", "unknown mode '" + mode + "'");
}

TreeDecomposition apply_transform(const TreeDecomposition& T,
                                  const TransformParams& p) {
    switch (parse_mode(p.mode)) {
    case ShallowMode::Bridges: return bridges(T, p.lambda);
    case ShallowMode::Highways: return highways(T, p.lambda);
    case ShallowMode::SuperHighways: return super_highways(T, p.q);
    }
    throw InvalidParams("unreachable");
}

int certified_bound_of(const TreeDecomposition& Tp, const TransformParams& p) {
    return certified_diameter_bound(Tp, parse_mode(p.mode), p.lambda, p.q).bound;
}

void emit(const Json& j, const std::string& out_path) {
    if (out_path.empty())
        std::cout << j.dump(2) << "\n";
    else
        save_json(out_path, j);
}

// Sparse triplet dump of the ratio LP, for cross-checking with external
// solvers; format documented in the README.
Json dump_ratio_lp(const CutInstance& inst, const TreeDecomposition& T) {
    LiftedLp lifted = build_lifted_lp(inst, T);
    detail::RatioObjective obj = detail::ratio_objective(inst, T, lifted);
    Json j;
    j["num_vars"] = lifted.lp.num_vars;
    Json rows = Json::array();
    for (const auto& row : lifted.lp.rows) {
        Json jr;
        Json terms = Json::array();
        for (const auto& [var, coef] : row.terms)
            terms.push_back(Json::array({var, to_fraction_string(coef)}));
        jr["terms"] = std::move(terms);
        jr["rhs"] = to_fraction_string(row.rhs);
        rows.push_back(std::move(jr));
    }
    j["rows"] = std::move(rows);
    auto vec = [](const std::vector<Rat>& v) {
        Json arr = Json::array();
        for (size_t i = 0; i < v.size(); ++i)
            if (v[i] != 0) arr.push_back(Json::array({(int)i, to_fraction_string(v[i])}));
        return arr;
    };
    j["capacity_objective"] = vec(obj.num_coef);
    j["demand_objective"] = vec(obj.den_coef);
    return j;
}

Json diagnose_pair(const CutInstance& inst, const TreeDecomposition& T,
                   const LiftedSolution& sol, VertexId s, VertexId t) {
    DecPath path = endpoint_path(T, s, t);
    MarkovFlowGraph H = build_H(path, sol, s, t);
    LemmaReport rep = check_lemmas(H);
    PotentialProfile prof = potential_profile(H);
    LpFlow flow = lp_flow(H, sol, path);
    int ell = H.ell();

    Json j;
    j["s"] = s;
    j["t"] = t;
    j["path_length"] = path.length();
    j["ell"] = ell;
    Json sizes = Json::array();
    for (int i = 0; i <= ell; ++i) sizes.push_back((int)H.layer_size(i));
    j["layer_sizes"] = std::move(sizes);
    j["lp_flow_value"] = to_fraction_string(flow.value);
    j["lp_flow_feasible"] = flow.conservation_ok && flow.capacity_ok;
    j["max_flow_s0_t1"] = to_fraction_string(
        max_flow(H, MarkovFlowGraph::kZero, MarkovFlowGraph::kOne));
    Json phi = Json::array();
    for (const Rat& p : prof.phi) phi.push_back(to_fraction_string(p));
    j["phi_profile"] = std::move(phi);
    j["phi_drop"] = to_fraction_string(rep.phi_drop);
    j["lemma_drop_slack"] = to_fraction_string(2 * rep.joint_s0_t1 - rep.phi_drop);
    j["lemma_drop_ok"] = rep.lemma_drop_ok;
    j["threshold_cut_weight"] = to_fraction_string(rep.threshold_cut_weight);
    j["threshold_bound_slack"] = to_fraction_string(
        rep.phi_drop - rep.threshold_cut_weight * rep.rho * rep.rho);
    j["threshold_bound_ok"] = rep.threshold_bound_ok;

    Rat lp = lpcut(sol, s, t);
    Rat alg = algcut_exact_on_path(path, sol, s, t);
    j["lpcut"] = to_fraction_string(lp);
    j["algcut_exact"] = to_fraction_string(alg);
    // Smallest C with algcut >= lpcut / (C * ell^2); 0 when lpcut = 0.
    Rat fitted = (alg == 0 || lp == 0) ? Rat(0) : lp / (alg * ell * ell);
    j["fitted_constant"] = to_fraction_string(fitted);
    return j;
}

Json bench_instance(int n, int k, int m_d, uint64_t seed,
                    const TransformParams& params, int trials, bool timings) {
    auto t0 = std::chrono::steady_clock::now();
    auto [skeleton, T0] = generate_partial_ktree(n, k, 1.0, seed);
    CutInstance inst = attach_random_demands(skeleton, m_d, split_seed(seed, 999));
    TreeDecomposition B = balance(T0);
    TreeDecomposition Tp = apply_transform(B, params);

    Json row;
    row["n"] = n;
    row["k"] = k;
    row["m_d"] = m_d;
    row["seed"] = seed;
    row["mode"] = params.mode;
    row["width_before"] = T0.width();
    row["width_after"] = Tp.width();
    row["depth"] = Tp.depth();
    row["certified_diameter"] = certified_bound_of(Tp, params);
    int measured = combinatorial_diameter(Tp, DiameterMethod::Greedy).diameter;
    row["measured_diameter"] = measured;

    LiftedSolution sol = solve_ratio(inst, Tp);
    row["alpha"] = to_fraction_string(sol.alpha);
    RepeatedRoundResult rounded = repeated_round(inst, Tp, sol, trials, seed);
    row["rounded_sparsity"] = to_fraction_string(rounded.best_sparsity);
    if (n <= kOracleCap)
        row["phi"] = to_fraction_string(brute_force(inst).phi);
    else
        row["phi"] = nullptr;

    // Max fitted walk constant over the demand pairs; 0 when every lpcut
    // vanishes.
    Rat fitted = 0;
    for (const auto& e : inst.dem_edges) {
        DecPath path = endpoint_path(Tp, e.u, e.v);
        Rat lp = lpcut(sol, e.u, e.v);
        Rat alg = algcut_exact_on_path(path, sol, e.u, e.v);
        int ell = (int)path.nodes.size();
        if (alg > 0 && lp > 0) fitted = std::max(fitted, Rat(lp / (alg * ell * ell)));
    }
    row["fitted_constant"] = to_fraction_string(fitted);
    if (timings) {
        auto t1 = std::chrono::steady_clock::now();
        row["wall_ms"] =
            std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
    }
    return row;
}

const char* kBenchColumns[] = {"n",
                               "k",
                               "m_d",
                               "seed",
                               "mode",
                               "width_before",
                               "width_after",
                               "depth",
                               "certified_diameter",
                               "measured_diameter",
                               "alpha",
                               "rounded_sparsity",
                               "phi",
                               "fitted_constant"};

std::string bench_csv(const Json& rows, bool timings) {
    std::ostringstream out;
    bool first = true;
    for (const char* c : kBenchColumns) {
        if (!first) out << ",";
        out << c;
        first = false;
    }
    if (timings) out << ",wall_ms";
    out << "\n";
    for (const auto& row : rows) {
        first = true;
        for (const char* c : kBenchColumns) {
            if (!first) out << ",";
            const Json& v = row.at(c);
            if (v.is_null())
                out << "";
            else if (v.is_string())
                out << v.get<std::string>();
            else
                out << v.dump();
            first = false;
        }
        if (timings) out << "," << row.at("wall_ms").dump();
        out << "\n";
    }
    return out.str();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"sparsest-cut toolkit for low-treewidth graphs"};
    app.require_subcommand(1);

    // --- gen ---
    auto* gen = app.add_subcommand("gen", "generate a partial k-tree instance");
    int gen_n = 10, gen_k = 2, gen_md = 2;
    double gen_keep = 1.0;
    uint64_t gen_seed = 1;
    std::string gen_out, gen_dec_out;
    gen->add_option("--n", gen_n)->check(CLI::PositiveNumber);
    gen->add_option("--k", gen_k)->check(CLI::PositiveNumber);
    gen->add_option("--demands", gen_md)->check(CLI::PositiveNumber);
    gen->add_option("--keep-prob", gen_keep)->check(CLI::Range(0.0, 1.0));
    gen->add_option("--seed", gen_seed);
    gen->add_option("--out", gen_out, "instance output path (default stdout)");
    gen->add_option("--dec-out", gen_dec_out, "decomposition output path");

    // --- decompose ---
    auto* dec = app.add_subcommand("decompose", "min-fill tree decomposition");
    std::string dec_inst, dec_out;
    dec->add_option("--instance", dec_inst)->required();
    dec->add_option("--out", dec_out);

    // --- balance ---
    auto* bal = app.add_subcommand("balance", "rebalance to logarithmic depth");
    std::string bal_dec, bal_out;
    bal->add_option("--dec", bal_dec)->required();
    bal->add_option("--out", bal_out);

    // --- transform ---
    auto* trans = app.add_subcommand("transform", "shallow-diameter transformation");
    std::string trans_dec, trans_out;
    TransformParams trans_params;
    trans->add_option("--dec", trans_dec)->required();
    trans->add_option("--mode", trans_params.mode)
        ->check(CLI::IsMember({"bridges", "highways", "superhighways"}));
    trans->add_option("--lambda", trans_params.lambda)->check(CLI::PositiveNumber);
    trans->add_option("--q", trans_params.q)->check(CLI::PositiveNumber);
    trans->add_option("--out", trans_out);

    // --- diameter ---
    auto* diam = app.add_subcommand("diameter", "combinatorial diameter");
    std::string diam_dec, diam_method = "greedy";
    size_t diam_budget = 1000000;
    diam->add_option("--dec", diam_dec)->required();
    diam->add_option("--method", diam_method)->check(CLI::IsMember({"greedy", "exact"}));
    diam->add_option("--budget", diam_budget)->check(CLI::PositiveNumber);

    // --- solve ---
    auto* solve = app.add_subcommand("solve", "full pipeline: LP + rounding");
    std::string solve_inst, solve_dec, solve_lp_dump, solve_out;
    TransformParams solve_params;
    solve_params.mode = "none";
    int solve_trials = 100;
    uint64_t solve_seed = 1;
    bool solve_no_balance = false;
    solve->add_option("--instance", solve_inst)->required();
    solve->add_option("--dec", solve_dec,
                      "decomposition path (default: min-fill from the instance)");
    solve->add_option("--mode", solve_params.mode)
        ->check(CLI::IsMember({"none", "bridges", "highways", "superhighways"}));
    solve->add_option("--lambda", solve_params.lambda)->check(CLI::PositiveNumber);
    solve->add_option("--q", solve_params.q)->check(CLI::PositiveNumber);
    solve->add_option("--trials", solve_trials)->check(CLI::PositiveNumber);
    solve->add_option("--seed", solve_seed);
    solve->add_flag("--no-balance", solve_no_balance,
                    "skip the depth rebalancing step");
    solve->add_option("--lp-dump", solve_lp_dump, "write the ratio LP as triplet JSON");
    solve->add_option("--out", solve_out);

    // --- oracle ---
    auto* orc = app.add_subcommand("oracle", "exhaustive sparsest-cut oracle");
    std::string orc_inst;
    orc->add_option("--instance", orc_inst)->required();

    // --- diagnose ---
    auto* diag = app.add_subcommand("diagnose", "Markov flow-graph diagnostics");
    std::string diag_inst, diag_dec, diag_out;
    TransformParams diag_params;
    diag_params.mode = "none";
    diag->add_option("--instance", diag_inst)->required();
    diag->add_option("--dec", diag_dec);
    diag->add_option("--mode", diag_params.mode)
        ->check(CLI::IsMember({"none", "bridges", "highways", "superhighways"}));
    diag->add_option("--lambda", diag_params.lambda)->check(CLI::PositiveNumber);
    diag->add_option("--q", diag_params.q)->check(CLI::PositiveNumber);
    diag->add_option("--out", diag_out);

    // --- bench ---
    auto* bench = app.add_subcommand("bench", "corpus benchmark table");
    std::string bench_corpus, bench_format = "csv", bench_out;
    int bench_trials = 100;
    bool bench_timings = false;
    bench->add_option("--corpus", bench_corpus, "corpus spec JSON")->required();
    bench->add_option("--format", bench_format)->check(CLI::IsMember({"csv", "json"}));
    bench->add_option("--trials", bench_trials)->check(CLI::PositiveNumber);
    bench->add_flag("--timings", bench_timings,
                    "append a wall_ms column (breaks byte-for-byte determinism)");
    bench->add_option("--out", bench_out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (gen->parsed()) {
            auto [skeleton, T] = generate_partial_ktree(gen_n, gen_k, gen_keep, gen_seed);
            CutInstance inst =
                attach_random_demands(skeleton, gen_md, split_seed(gen_seed, 999));
            if (!gen_dec_out.empty()) save_json(gen_dec_out, treedec_to_json(T));
            if (gen_out.empty() && gen_dec_out.empty()) {
                Json j;
                j["instance"] = instance_to_json(inst);
                j["decomposition"] = treedec_to_json(T);
                std::cout << j.dump(2) << "\n";
            } else if (gen_out.empty()) {
                std::cout << instance_to_json(inst).dump(2) << "\n";
            } else {
                save_json(gen_out, instance_to_json(inst));
            }
        } else if (dec->parsed()) {
            CutInstance inst = instance_from_json(load_json(dec_inst));
            TreeDecomposition T = min_fill_decomposition(inst);
            Json j;
            j["decomposition"] = treedec_to_json(T);
            j["stats"] = stats_block(T);
            emit(j, dec_out);
        } else if (bal->parsed()) {
            TreeDecomposition T = treedec_from_json(load_json(bal_dec));
            TreeDecomposition B = balance(T);
            Json j;
            j["decomposition"] = treedec_to_json(B);
            j["stats"] = stats_block(B);
            emit(j, bal_out);
        } else if (trans->parsed()) {
            TreeDecomposition T = treedec_from_json(load_json(trans_dec));
            TreeDecomposition Tp = apply_transform(T, trans_params);
            Json j;
            j["decomposition"] = treedec_to_json(Tp);
            j["stats"] = stats_block(Tp);
            j["stats"]["certified_diameter"] = certified_bound_of(Tp, trans_params);
            emit(j, trans_out);
        } else if (diam->parsed()) {
            TreeDecomposition T = treedec_from_json(load_json(diam_dec));
            DiameterResult r = combinatorial_diameter(
                T, diam_method == "exact" ? DiameterMethod::Exact : DiameterMethod::Greedy,
                diam_budget);
            Json j;
            j["diameter"] = r.diameter;
            j["method"] = diam_method;
            j["witness"] = Json::array({r.witness.first, r.witness.second});
            std::cout << j.dump(2) << "\n";
        } else if (solve->parsed()) {
            CutInstance inst = instance_from_json(load_json(solve_inst));
            TreeDecomposition T = solve_dec.empty()
                                      ? min_fill_decomposition(inst)
                                      : treedec_from_json(load_json(solve_dec));
            if (!solve_no_balance) T = balance(T);
            if (solve_params.mode != "none") T = apply_transform(T, solve_params);
            if (!solve_lp_dump.empty()) save_json(solve_lp_dump, dump_ratio_lp(inst, T));
            LiftedSolution sol = solve_ratio(inst, T);
            RepeatedRoundResult rounded =
                repeated_round(inst, T, sol, solve_trials, solve_seed);
            Json j;
            j["alpha"] = to_fraction_string(sol.alpha);
            Json cut = Json::array();
            for (VertexId v = 0; v < inst.n; ++v) cut.push_back(rounded.best.at(v));
            j["cut"] = std::move(cut);
            j["sparsity"] = to_fraction_string(rounded.best_sparsity);
            if (inst.n <= kOracleCap)
                j["oracle_sparsity"] = to_fraction_string(brute_force(inst).phi);
            else
                j["oracle_sparsity"] = nullptr;
            j["diameter_used"] =
                combinatorial_diameter(T, DiameterMethod::Greedy).diameter;
            emit(j, solve_out);
        } else if (orc->parsed()) {
            CutInstance inst = instance_from_json(load_json(orc_inst));
            OracleResult r = brute_force(inst);
            Json j;
            j["phi"] = to_fraction_string(r.phi);
            Json cut = Json::array();
            for (VertexId v = 0; v < inst.n; ++v) cut.push_back(r.best.at(v));
            j["cut"] = std::move(cut);
            j["enumerated"] = r.enumerated;
            std::cout << j.dump(2) << "\n";
        } else if (diag->parsed()) {
            CutInstance inst = instance_from_json(load_json(diag_inst));
            TreeDecomposition T = diag_dec.empty()
                                      ? min_fill_decomposition(inst)
                                      : treedec_from_json(load_json(diag_dec));
            if (diag_params.mode != "none") T = apply_transform(T, diag_params);
            LiftedSolution sol = solve_ratio(inst, T);
            Json j;
            j["alpha"] = to_fraction_string(sol.alpha);
            Json pairs = Json::array();
            Rat max_fitted = 0;
            for (const auto& e : inst.dem_edges) {
                Json p = diagnose_pair(inst, T, sol, e.u, e.v);
                max_fitted = std::max(
                    max_fitted, parse_rational(p["fitted_constant"].get<std::string>()));
                pairs.push_back(std::move(p));
            }
            j["pairs"] = std::move(pairs);
            j["max_fitted_constant"] = to_fraction_string(max_fitted);
            emit(j, diag_out);
        } else if (bench->parsed()) {
            Json spec = load_json(bench_corpus);
            Json rows = Json::array();
            for (const auto& entry : spec) {
                TransformParams params;
                params.mode = entry.value("mode", "highways");
                params.lambda = entry.value("lambda", 2);
                params.q = entry.value("q", 1);
                int n = entry.at("n").get<int>();
                int k = entry.at("k").get<int>();
                int m_d = entry.value("m_d", 2);
                for (const auto& s : entry.at("seeds"))
                    rows.push_back(bench_instance(n, k, m_d, s.get<uint64_t>(), params,
                                                  bench_trials, bench_timings));
            }
            if (bench_format == "json") {
                Json j;
                j["rows"] = std::move(rows);
                emit(j, bench_out);
            } else {
                std::string csv = bench_csv(rows, bench_timings);
                if (bench_out.empty()) {
                    std::cout << csv;
                } else {
                    std::ofstream out(bench_out);
                    if (!out) throw ParseError("cannot write " + bench_out);
                    out << csv;
                }
            }
        }
    } catch (const DomainError& e) {
        Json err;
        err["error"] = e.code();
        err["message"] = e.what();
        std::cerr << err.dump() << "\n";
        return 1;
    } catch (const std::exception& e) {
        Json err;
        err["error"] = "internal";
        err["message"] = e.what();
        std::cerr << err.dump() << "\n";
        return 1;
    }
    return 0;
}

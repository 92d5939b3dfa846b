#ifndef SPARSECUT_JSON_IO_HPP
#define SPARSECUT_JSON_IO_HPP

#include <fstream>
#include <string>

#include <json.hpp>

#include "sparsecut/errors.hpp"
#include "sparsecut/instance.hpp"
#include "sparsecut/treedec.hpp"

namespace sparsecut {

using Json = nlohmann::ordered_json;

inline Json instance_to_json(const CutInstance& inst) {
    Json j;
    j["n"] = inst.n;
    auto edges = [&](const std::vector<WeightedEdge>& list) {
        Json arr = Json::array();
        for (const auto& e : list) {
            Json je;
            je["u"] = e.u;
            je["v"] = e.v;
            je["w"] = to_decimal_string(e.w);
            arr.push_back(std::move(je));
        }
        return arr;
    };
    j["cap_edges"] = edges(inst.cap_edges);
    j["dem_edges"] = edges(inst.dem_edges);
    return j;
}

inline CutInstance instance_from_json(const Json& j) {
    CutInstance inst;
    try {
        inst.n = j.at("n").get<int>();
        auto edges = [&](const Json& arr) {
            std::vector<WeightedEdge> list;
            for (const auto& je : arr)
                list.push_back({je.at("u").get<int>(), je.at("v").get<int>(),
                                parse_rational(je.at("w").get<std::string>())});
            return list;
        };
        inst.cap_edges = edges(j.at("cap_edges"));
        inst.dem_edges = edges(j.at("dem_edges"));
    } catch (const Json::exception& e) {
        throw ParseError(std::string("bad instance JSON: ") + e.what());
    }
    inst.check();
    return inst;
}

inline Json treedec_to_json(const TreeDecomposition& T) {
    // Canonical output splices out empty bags (children reattach to the
    // parent); the root is always kept.
    TreeDecomposition out = T;
    if (out.root < 0) out.root_at(out.nodes.front());
    bool changed = true;
    while (changed) {
        changed = false;
        for (int v : out.nodes) {
            if (v == out.root || !out.bag(v).empty()) continue;
            int p = out.parent.at(v);
            std::vector<std::pair<int, int>> edges;
            for (auto [a, b] : out.tree_edges) {
                if ((a == v && b == p) || (a == p && b == v)) continue;
                if (a == v) a = p;
                if (b == v) b = p;
                edges.push_back({a, b});
            }
            out.tree_edges = std::move(edges);
            out.nodes.erase(std::find(out.nodes.begin(), out.nodes.end(), v));
            out.bags.erase(v);
            out.root_at(out.root);
            changed = true;
            break;
        }
    }

    Json j;
    j["root"] = out.root;
    Json nodes = Json::array();
    std::vector<int> order = out.nodes;
    std::sort(order.begin(), order.end());
    for (int v : order) {
        Json jn;
        jn["id"] = v;
        jn["bag"] = out.bag(v);
        if (v == out.root)
            jn["parent"] = nullptr;
        else
            jn["parent"] = out.parent.at(v);
        nodes.push_back(std::move(jn));
    }
    j["nodes"] = std::move(nodes);
    return j;
}

inline TreeDecomposition treedec_from_json(const Json& j) {
    TreeDecomposition T;
    try {
        T.root = j.at("root").get<int>();
        for (const auto& jn : j.at("nodes")) {
            int id = jn.at("id").get<int>();
            T.nodes.push_back(id);
            VertexSet bag;
            for (const auto& v : jn.at("bag")) bag.push_back(v.get<int>());
            std::sort(bag.begin(), bag.end());
            bag.erase(std::unique(bag.begin(), bag.end()), bag.end());
            T.bags[id] = std::move(bag);
            if (!jn.at("parent").is_null())
                T.tree_edges.push_back({jn.at("parent").get<int>(), id});
        }
    } catch (const Json::exception& e) {
        throw ParseError(std::string("bad decomposition JSON: ") + e.what());
    }
    T.root_at(T.root);
    return T;
}

inline Json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    try {
        return Json::parse(in);
    } catch (const Json::exception& e) {
        throw ParseError("cannot parse " + path + ": " + e.what());
    }
}

inline void save_json(const std::string& path, const Json& j) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write " + path);
    out << j.dump(2) << "\n";
}

} // namespace sparsecut

#endif

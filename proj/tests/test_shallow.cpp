#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fixtures.hpp"
#include "sparsecut/sparsecut.hpp"

using namespace sparsecut;

namespace {

// Deep path decomposition for vertices 0..n on a path graph.
std::pair<CutInstance, TreeDecomposition> long_path(int edges) {
    TreeDecomposition T;
    for (int i = 0; i < edges; ++i) {
        T.nodes.push_back(i);
        T.bags[i] = vset::make({i, i + 1});
        if (i > 0) T.tree_edges.push_back({i - 1, i});
    }
    T.root_at(0);
    CutInstance inst;
    inst.n = edges + 1;
    for (int i = 0; i < edges; ++i) inst.cap_edges.push_back({i, i + 1, Rat(1)});
    inst.dem_edges = {{0, edges, Rat(1)}};
    return {inst, T};
}

} // namespace

TEST_CASE("sync annotation") {
    TreeDecomposition T = fixtures::collapse_treedec(); // path, depth 6
    SyncAnnotation a = SyncAnnotation::build(T, 2);
    CHECK(a.sync_nodes == std::set<int>({0, 2, 4, 6}));
    CHECK(a.sigma.at(1) == 0);
    CHECK(a.sigma.at(2) == 0);
    CHECK(a.sigma.at(3) == 2);
    CHECK(a.sigma.at(6) == 4);
    CHECK(!a.sigma.count(0)); // root has no sync ancestor
    SUBCASE("lambda clamps to depth") {
        CHECK(SyncAnnotation::build(T, 100).lambda == 6);
        CHECK_THROWS_AS(SyncAnnotation::build(T, 0), InvalidParams);
    }
    SUBCASE("lambda 1 marks every node") {
        CHECK(SyncAnnotation::build(T, 1).sync_nodes.size() == T.nodes.size());
    }
}

TEST_CASE("layer annotation spacings form a divisibility chain") {
    auto [inst, T] = long_path(27);
    for (int q = 1; q <= 4; ++q) {
        LayerAnnotation a = LayerAnnotation::build(T, q);
        REQUIRE((int)a.spacing.size() == q);
        CHECK(a.spacing[0] >= 1);
        for (int j = 1; j < q; ++j) {
            CHECK(a.spacing[j] >= a.spacing[j - 1]);
            CHECK(a.spacing[j] % a.spacing[j - 1] == 0);
        }
        // pi is the highest layer whose spacing divides the level.
        for (int v : T.nodes) {
            int lv = T.level(v);
            int expect = -1;
            for (int j = 0; j < q; ++j)
                if (lv % a.spacing[j] == 0) expect = j;
            CHECK(a.pi.at(v) == expect);
        }
    }
}

TEST_CASE("bridges on a deep path") {
    auto [inst, T] = long_path(12);
    int w0 = T.width(), d = T.depth();
    for (int lambda : {1, 2, 3, d}) {
        TreeDecomposition B = bridges(T, lambda);
        CHECK(validate(inst, B).valid);
        CHECK(B.bag(T.root) == T.bag(T.root));
        for (int v : T.nodes) CHECK(vset::is_subset(T.bag(v), B.bag(v)));
        CHECK(B.width() + 1 <= lambda * (w0 + 1));
        int bound = 2 * (d / lambda) + 2;
        CHECK(combinatorial_diameter(B, DiameterMethod::Greedy).diameter <= bound);
        CertifiedBound cert =
            certified_diameter_bound(B, ShallowMode::Bridges, lambda, 1);
        CHECK(cert.bound == bound);
    }
    SUBCASE("lambda 1 leaves the bags unchanged") {
        CHECK(bridges(T, 1).bags == T.bags);
    }
}

TEST_CASE("highways have diameter at most 3") {
    auto [inst, T] = long_path(15);
    for (int lambda : {2, 3, 5}) {
        TreeDecomposition H = highways(T, lambda);
        CHECK(validate(inst, H).valid);
        CHECK(H.bag(T.root) == T.bag(T.root));
        for (int v : T.nodes) CHECK(vset::is_subset(bridges(T, lambda).bag(v), H.bag(v)));
        CHECK(combinatorial_diameter(H, DiameterMethod::Greedy).diameter <= 3);
        CHECK(combinatorial_diameter(H, DiameterMethod::Exact).diameter <= 3);
        CHECK(certified_diameter_bound(H, ShallowMode::Highways, lambda, 1).bound == 3);
    }
}

TEST_CASE("super-highways have diameter at most 2q+1") {
    auto [inst, T] = long_path(27);
    for (int q : {1, 2, 3}) {
        TreeDecomposition S = super_highways(T, q);
        CHECK(validate(inst, S).valid);
        CHECK(S.bag(T.root) == T.bag(T.root));
        CHECK(combinatorial_diameter(S, DiameterMethod::Greedy).diameter <= 2 * q + 1);
        CHECK(certified_diameter_bound(S, ShallowMode::SuperHighways, 1, q).bound ==
              2 * q + 1);
    }
}

TEST_CASE("shallow constructions stay valid on random decompositions") {
    for (uint64_t seed = 0; seed < 12; ++seed) {
        auto [inst, T] = fixtures::corpus_instance(18, 3, 3, seed, 0.7);
        REQUIRE(validate(inst, T).valid);
        int w0 = T.width(), d = T.depth();
        for (int lambda : {1, 2, 3}) {
            TreeDecomposition B = bridges(T, lambda);
            CHECK(validate(inst, B).valid);
            CHECK(B.width() + 1 <= lambda * (w0 + 1));
            CHECK(combinatorial_diameter(B, DiameterMethod::Greedy).diameter <=
                  2 * (d / std::min(lambda, std::max(d, 1))) + 2);

            TreeDecomposition H = highways(T, lambda);
            CHECK(validate(inst, H).valid);
            CHECK(combinatorial_diameter(H, DiameterMethod::Greedy).diameter <= 3);
        }
        for (int q : {1, 2, 3}) {
            TreeDecomposition S = super_highways(T, q);
            CHECK(validate(inst, S).valid);
            CHECK(combinatorial_diameter(S, DiameterMethod::Greedy).diameter <=
                  2 * q + 1);
        }
    }
}

TEST_CASE("certified bounds come with witnessing traces") {
    auto [inst, T] = long_path(10);
    TreeDecomposition H = highways(T, 3);
    CertifiedBound cert = certified_diameter_bound(H, ShallowMode::Highways, 3, 1);
    CHECK(!cert.traces.empty());
    for (const auto& t : cert.traces) {
        CHECK(t.final.length() <= cert.bound);
        CHECK((int)t.bypassed.size() ==
              t.initial.length() - t.final.length());
    }
}

TEST_CASE("balanced then shallow pipeline keeps everything valid") {
    for (uint64_t seed = 0; seed < 8; ++seed) {
        auto [inst, T] = fixtures::corpus_instance(24, 2, 3, seed, 0.8);
        TreeDecomposition B = balance(T);
        REQUIRE(validate(inst, B).valid);
        TreeDecomposition H = highways(B, 2);
        CHECK(validate(inst, H).valid);
        CHECK(combinatorial_diameter(H, DiameterMethod::Greedy).diameter <= 3);
    }
}

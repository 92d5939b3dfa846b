#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sparsecut/sparsecut.hpp"

using namespace sparsecut;

TEST_CASE("headers compile and a path instance round-trips") {
    CutInstance inst;
    inst.n = 3;
    inst.cap_edges = {{0, 1, Rat(1)}, {1, 2, Rat(1)}};
    inst.dem_edges = {{0, 2, Rat(1)}};
    inst.check();

    Assignment f;
    f.values = {{0, 0}, {1, 1}, {2, 1}};
    CHECK(sparsity(inst, f) == Rat(1));
}

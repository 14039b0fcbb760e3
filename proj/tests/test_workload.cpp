#include <doctest.h>

#include <set>
#include <sstream>

#include "toposimp/bench.hpp"
#include "toposimp/oracle.hpp"
#include "toposimp/workload.hpp"

using namespace toposimp;

namespace {

std::vector<TopoView> replay_view(const Workload& wl) {
    SimplificationEngine e(StrategyKind::Renumbering);
    replay(e, wl, false);
    return e.topological_view();
}

} // namespace

TEST_CASE("random workloads are deterministic per seed") {
    auto a = gen_random(4, 3, 7);
    auto b = gen_random(4, 3, 7);
    REQUIRE(a.ops.size() == b.ops.size());
    for (std::size_t i = 0; i < a.ops.size(); ++i) {
        CHECK(a.ops[i].u == b.ops[i].u);
        CHECK(a.ops[i].v == b.ops[i].v);
        CHECK(a.ops[i].w == b.ops[i].w);
    }
    CHECK(a.edge_ops == 3);
    CHECK(a.vertices == 4);
    auto c = gen_random(4, 3, 8);
    bool same = a.ops.size() == c.ops.size();
    if (same)
        for (std::size_t i = 0; i < a.ops.size(); ++i)
            if (a.ops[i].u != c.ops[i].u || a.ops[i].v != c.ops[i].v)
                same = false;
    CHECK_FALSE(same);
}

TEST_CASE("random workloads match the shape of a table cell") {
    auto wl = gen_random(1000, 5000, 42);
    CHECK(wl.vertices == 1000);
    CHECK(wl.edge_ops == 5000);
    // All edges distinct.
    std::set<std::pair<VertexId, VertexId>> seen;
    for (const auto& op : wl.ops)
        if (op.kind == Workload::Op::Kind::AddEdge) {
            CHECK(op.w >= 1);
            CHECK(op.w <= 100);
            CHECK(seen.emplace(op.u, op.v).second);
        }
}

TEST_CASE("a complete graph leaves no regular vertices") {
    const std::size_t n = 12;
    auto wl = gen_random(n, n * (n - 1) / 2, 5);
    SimplificationEngine e(StrategyKind::TopologyTree);
    auto st = replay(e, wl, false);
    CHECK(st.skipped == 0);
    for (VertexId v = 0; v < e.graph().vertex_count(); ++v)
        CHECK(e.graph().classify(v) == VertexClass::Singular);
    CHECK(e.check_invariants().empty());
}

TEST_CASE("merge workload: two paths, one merge, oracle-checked result") {
    auto wl = gen_merge(2);
    CHECK(wl.vertices == 5);  // a 3-vertex path plus a 2-vertex path
    CHECK(wl.edge_ops == 4);  // 3 path edges + 1 merge
    SimplificationEngine e(StrategyKind::Renumbering);
    replay(e, wl, false);
    auto view = e.topological_view();
    REQUIRE(view.size() == 1);
    CHECK(view[0].regulars == 3);
    CHECK(view[0].weight == 4.0);
    auto want = oracle_recompute(e.graph());
    CHECK(oracle_diff(view, want.edges, 0.0).empty());
}

TEST_CASE("merge workload: tournament count and table shape") {
    auto w4 = gen_merge(4);
    // 3 two-edge paths + 1 single edge + 3 merges.
    CHECK(w4.vertices == 11);
    CHECK(w4.edge_ops == 10);

    std::size_t merges = 0;
    {
        SimplificationEngine e(StrategyKind::Renumbering);
        replay(e, w4, false);
        merges = e.case_count(InsertionCase::Case3);
    }
    CHECK(merges == 3);

    // The published measurement shape: k=6700 gives 20099 vertices and
    // 20098 edges, all of them merging into one long topological edge.
    auto big = gen_merge(6700);
    CHECK(big.vertices == 20099);
    CHECK(big.edge_ops == 20098);
}

TEST_CASE("split workload shape and determinism") {
    auto a = gen_split(8, 3);
    auto b = gen_split(8, 3);
    CHECK(a.ops.size() == b.ops.size());
    for (std::size_t i = 0; i < a.ops.size(); ++i)
        CHECK(a.ops[i].u == b.ops[i].u);
    CHECK(a.vertices == 8 * 3 + 4); // 4 fresh split origins
    CHECK(a.edge_ops == 8 * 2 + 4);

    SUBCASE("single-path split matches the recomputation") {
        auto wl = gen_split(1, 9);
        SimplificationEngine e(StrategyKind::TopologyTree);
        replay(e, wl, false);
        CHECK(e.case_count(InsertionCase::Case5) == 1);
        auto want = oracle_recompute(e.graph());
        CHECK(oracle_diff(e.topological_view(), want.edges, 0.0).empty());
    }

    SUBCASE("table shape: p = 80000 gives 280000 vertices and 200000 edges") {
        auto big = gen_split(80000, 1);
        CHECK(big.vertices == 280000);
        CHECK(big.edge_ops == 200000);
    }
}

TEST_CASE("edge lists parse with comments, blanks and default weights") {
    std::istringstream in("# chain\n"
                          "a b 1\n"
                          "\n"
                          "b c 1   # weighted\n"
                          "c d\n");
    auto wl = parse_edge_list(in, "test", 1);
    CHECK(wl.vertices == 4);
    CHECK(wl.edge_ops == 3);
    auto view = replay_view(wl);
    REQUIRE(view.size() == 1);
    CHECK(view[0].weight == 3.0);
    CHECK(view[0].regulars == 2);
}

TEST_CASE("edge list errors carry line numbers") {
    {
        std::istringstream in("a b 1\nc\n");
        CHECK_THROWS_WITH_AS(parse_edge_list(in, "t", 1), doctest::Contains("line 2"), GraphError);
    }
    {
        std::istringstream in("a b -3\n");
        CHECK_THROWS_WITH_AS(parse_edge_list(in, "t", 1), doctest::Contains("NonPositiveWeight"),
                             GraphError);
    }
    {
        std::istringstream in("a b twelve\n");
        CHECK_THROWS_WITH_AS(parse_edge_list(in, "t", 1), doctest::Contains("bad weight"),
                             GraphError);
    }
    {
        std::istringstream in("a b 1 extra\n");
        CHECK_THROWS_WITH_AS(parse_edge_list(in, "t", 1), doctest::Contains("trailing"),
                             GraphError);
    }
}

TEST_CASE("edge lists drop duplicates and self-loops with counts") {
    std::istringstream in("a b 1\nb a 2\nc c 5\nb c 1\n");
    auto wl = parse_edge_list(in, "t", 1);
    CHECK(wl.skipped_duplicates == 1);
    CHECK(wl.skipped_self_loops == 1);
    CHECK(wl.edge_ops == 2);
}

TEST_CASE("generated workloads replay cleanly under invariant checking") {
    auto wl = gen_random(30, 60, 11);
    SimplificationEngine e(StrategyKind::TopologyTree);
    std::vector<std::string> violations;
    auto st = replay(e, wl, true, &violations);
    for (const auto& v : violations)
        FAIL_CHECK(v);
    CHECK(st.violations == 0);
}

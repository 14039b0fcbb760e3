#include <doctest.h>

#include <algorithm>

#include "toposimp/engine.hpp"
#include "toposimp/oracle.hpp"

using namespace toposimp;

namespace {

void check_against_oracle(const SimplificationEngine& e) {
    auto want = oracle_recompute(e.graph());
    auto diff = oracle_diff(e.topological_view(), want.edges, 0.0);
    for (const auto& d : diff)
        FAIL_CHECK(d);
    CHECK(diff.empty());
}

} // namespace

namespace {
template <StrategyKind K>
struct Tag {
    static constexpr StrategyKind kind = K;
};
} // namespace

TEST_CASE_TEMPLATE("inserted vertices join the node set", T, Tag<StrategyKind::Renumbering>,
                   Tag<StrategyKind::TopologyTree>) {
    SimplificationEngine e(T::kind);
    VertexId v0 = e.insert_vertex();
    CHECK(e.topological_view().empty());
    CHECK(e.singular_count() == 1);
    e.insert_vertex();
    e.insert_vertex();
    CHECK(e.singular_count() == 3);
    CHECK(e.topological_view().empty());

    // An edge takes the vertex out of isolation but it stays a node.
    VertexId v1 = 1;
    e.insert_edge(v0, v1, 2);
    CHECK(e.singular_count() == 3);
    check_against_oracle(e);
}

TEST_CASE_TEMPLATE("case 1 copies the edge", T, Tag<StrategyKind::Renumbering>,
                   Tag<StrategyKind::TopologyTree>) {
    SimplificationEngine e(T::kind);
    VertexId a = e.insert_vertex(), b = e.insert_vertex();
    CHECK(e.classify_insertion(a, b) == InsertionCase::Case1);
    auto out = e.insert_edge(a, b, 5);
    CHECK(out.kase == InsertionCase::Case1);
    auto view = e.topological_view();
    REQUIRE(view.size() == 1);
    CHECK(view[0] == TopoView{a, b, 5.0, 0});
    check_against_oracle(e);
}

TEST_CASE_TEMPLATE("case 2 extends the edge through the degree-one endpoint", T,
                   Tag<StrategyKind::Renumbering>, Tag<StrategyKind::TopologyTree>) {
    SimplificationEngine e(T::kind);
    VertexId a = e.insert_vertex(), b = e.insert_vertex(), c = e.insert_vertex();
    e.insert_edge(a, b, 2);
    CHECK(e.classify_insertion(b, c) == InsertionCase::Case2);
    auto out = e.insert_edge(b, c, 3);
    CHECK(out.kase == InsertionCase::Case2);
    auto view = e.topological_view();
    REQUIRE(view.size() == 1);
    CHECK(view[0] == TopoView{a, c, 5.0, 1});
    CHECK(e.graph().classify(b) == VertexClass::Regular);
    check_against_oracle(e);
}

TEST_CASE_TEMPLATE("case 3 merges two paths", T, Tag<StrategyKind::Renumbering>,
                   Tag<StrategyKind::TopologyTree>) {
    SimplificationEngine e(T::kind);
    VertexId a = e.insert_vertex(), b = e.insert_vertex();
    VertexId c = e.insert_vertex(), d = e.insert_vertex();
    e.insert_edge(a, b, 1);
    e.insert_edge(c, d, 1);
    CHECK(e.classify_insertion(b, c) == InsertionCase::Case3);
    auto out = e.insert_edge(b, c, 1);
    CHECK(out.kase == InsertionCase::Case3);
    auto view = e.topological_view();
    REQUIRE(view.size() == 1);
    CHECK(view[0] == TopoView{a, d, 3.0, 2});
    check_against_oracle(e);
}

TEST_CASE_TEMPLATE("case 4 splits and extends into a self-loop when the path curls back", T,
                   Tag<StrategyKind::Renumbering>, Tag<StrategyKind::TopologyTree>) {
    // a-b(1), b-c(1), a-d(1); inserting {c,a} splits at regular a... the
    // regular endpoint of the insertion is a? No: a has degree 2 (b, d), so
    // a is regular; c has degree 1. The split of {d,c} at a leaves {d,a}
    // and {a,c}; extending through c curls {a,c} into a self-loop at a.
    SimplificationEngine e(T::kind);
    VertexId a = e.insert_vertex(), b = e.insert_vertex(), c = e.insert_vertex(),
             d = e.insert_vertex();
    e.insert_edge(a, b, 1);
    e.insert_edge(b, c, 1);
    e.insert_edge(a, d, 1);
    CHECK(e.classify_insertion(c, a) == InsertionCase::Case4);
    auto out = e.insert_edge(c, a, 1);
    CHECK(out.kase == InsertionCase::Case4);
    auto view = e.topological_view();
    REQUIRE(view.size() == 2);
    CHECK(view[0] == TopoView{a, a, 3.0, 2}); // self-loop through b, c
    CHECK(view[1] == TopoView{a, d, 1.0, 0});
    CHECK(e.self_loop_edges_created() >= 1);
    check_against_oracle(e);
}

TEST_CASE_TEMPLATE("case 5 splits and adds the new edge", T, Tag<StrategyKind::Renumbering>,
                   Tag<StrategyKind::TopologyTree>) {
    // Chain v1-v2-v3-v4 with unit weights simplifies to {v1,v4} of weight 3;
    // inserting {v2,u} (u isolated) splits at v2.
    SimplificationEngine e(T::kind);
    VertexId v1 = e.insert_vertex(), v2 = e.insert_vertex(), v3 = e.insert_vertex(),
             v4 = e.insert_vertex(), u = e.insert_vertex();
    e.insert_edge(v1, v2, 1);
    e.insert_edge(v2, v3, 1);
    e.insert_edge(v3, v4, 1);
    {
        auto view = e.topological_view();
        REQUIRE(view.size() == 1);
        CHECK(view[0] == TopoView{v1, v4, 3.0, 2});
    }
    CHECK(e.classify_insertion(v2, u) == InsertionCase::Case5);
    auto out = e.insert_edge(v2, u, 2);
    CHECK(out.kase == InsertionCase::Case5);
    auto view = e.topological_view();
    REQUIRE(view.size() == 3);
    CHECK(view[0] == TopoView{v1, v2, 1.0, 0});
    CHECK(view[1] == TopoView{v2, v4, 2.0, 1});
    CHECK(view[2] == TopoView{v2, u, 2.0, 0});
    check_against_oracle(e);
}

TEST_CASE_TEMPLATE("case 6 performs two splits", T, Tag<StrategyKind::Renumbering>,
                   Tag<StrategyKind::TopologyTree>) {
    // Two chains; insert between their middle (regular) vertices.
    SimplificationEngine e(T::kind);
    VertexId a = e.insert_vertex(), x = e.insert_vertex(), b = e.insert_vertex();
    VertexId c = e.insert_vertex(), y = e.insert_vertex(), d = e.insert_vertex();
    e.insert_edge(a, x, 1);
    e.insert_edge(x, b, 2);
    e.insert_edge(c, y, 3);
    e.insert_edge(y, d, 4);
    CHECK(e.classify_insertion(x, y) == InsertionCase::Case6);
    auto out = e.insert_edge(x, y, 10);
    CHECK(out.kase == InsertionCase::Case6);
    auto view = e.topological_view();
    REQUIRE(view.size() == 5);
    check_against_oracle(e);
}

TEST_CASE_TEMPLATE("case 6 on one path yields parallel edges", T, Tag<StrategyKind::Renumbering>,
                   Tag<StrategyKind::TopologyTree>) {
    // z1-x-a-y-z2: both x and y regular on the same path, non-adjacent.
    SimplificationEngine e(T::kind);
    VertexId z1 = e.insert_vertex(), x = e.insert_vertex(), a = e.insert_vertex(),
             y = e.insert_vertex(), z2 = e.insert_vertex();
    e.insert_edge(z1, x, 1);
    e.insert_edge(x, a, 2);
    e.insert_edge(a, y, 3);
    e.insert_edge(y, z2, 4);
    auto out = e.insert_edge(x, y, 10);
    CHECK(out.kase == InsertionCase::Case6);
    auto view = e.topological_view();
    REQUIRE(view.size() == 4);
    CHECK(view[0] == TopoView{z1, x, 1.0, 0});
    CHECK(view[1] == TopoView{x, y, 5.0, 1});  // the old path piece through a
    CHECK(view[2] == TopoView{x, y, 10.0, 0}); // the inserted edge itself
    CHECK(view[3] == TopoView{y, z2, 4.0, 0});
    check_against_oracle(e);
}

TEST_CASE_TEMPLATE("splitting a self-loop gives two parallel pieces", T,
                   Tag<StrategyKind::Renumbering>, Tag<StrategyKind::TopologyTree>) {
    // Build a self-loop at z through a-b, then split it at a.
    SimplificationEngine e(T::kind);
    VertexId z = e.insert_vertex(), a = e.insert_vertex(), b = e.insert_vertex(),
             p = e.insert_vertex(), q = e.insert_vertex(), u = e.insert_vertex();
    e.insert_edge(z, p, 1); // raise z's degree so it stays singular
    e.insert_edge(z, q, 1);
    e.insert_edge(z, a, 1);
    e.insert_edge(a, b, 2);
    e.insert_edge(b, z, 3); // closes the self-loop (z singular, degree 4)
    {
        auto view = e.topological_view();
        CHECK(std::count(view.begin(), view.end(), TopoView{z, z, 6.0, 2}) == 1);
    }
    auto out = e.insert_edge(a, u, 1); // split the loop at regular a
    CHECK(out.kase == InsertionCase::Case5);
    CHECK(e.parallel_split_subcases() == 1);
    auto view = e.topological_view();
    CHECK(std::count(view.begin(), view.end(), TopoView{z, a, 1.0, 0}) == 1);
    CHECK(std::count(view.begin(), view.end(), TopoView{a, z, 5.0, 1}) == 1);
    check_against_oracle(e);
}

TEST_CASE_TEMPLATE("closing a regular cycle is rejected", T, Tag<StrategyKind::Renumbering>,
                   Tag<StrategyKind::TopologyTree>) {
    SimplificationEngine e(T::kind);
    VertexId a = e.insert_vertex(), b = e.insert_vertex(), c = e.insert_vertex();
    e.insert_edge(a, b, 1);
    e.insert_edge(b, c, 1);
    CHECK_THROWS_WITH_AS(e.classify_insertion(a, c), doctest::Contains("RegularCycle"),
                         GraphError);
    CHECK_THROWS_AS(e.insert_edge(a, c, 1), GraphError);
    CHECK(e.regular_cycle_rejections() >= 1);
    // The failed insertion left no trace.
    CHECK(e.graph().edge_count() == 2);
    check_against_oracle(e);

    // With a longer tail c-d the same closure is legal (d keeps c singular).
    VertexId d = e.insert_vertex();
    e.insert_edge(c, d, 1);
    auto out = e.insert_edge(a, c, 1);
    CHECK(out.kase == InsertionCase::Case2);
    check_against_oracle(e);
}

TEST_CASE_TEMPLATE("classification errors", T, Tag<StrategyKind::Renumbering>,
                   Tag<StrategyKind::TopologyTree>) {
    SimplificationEngine e(T::kind);
    VertexId a = e.insert_vertex(), b = e.insert_vertex();
    CHECK_THROWS_WITH_AS(e.classify_insertion(a, a), doctest::Contains("SelfLoop"), GraphError);
    CHECK_THROWS_WITH_AS(e.classify_insertion(a, 77), doctest::Contains("UnknownVertex"),
                         GraphError);
    e.insert_edge(a, b, 1);
    CHECK_THROWS_WITH_AS(e.classify_insertion(a, b), doctest::Contains("DuplicateEdge"),
                         GraphError);
    CHECK_THROWS_WITH_AS(e.insert_edge(a, b, -1), doctest::Contains("NonPositiveWeight"),
                         GraphError);
}

TEST_CASE_TEMPLATE("case 2 with degree-one vs higher-degree endpoints", T,
                   Tag<StrategyKind::Renumbering>, Tag<StrategyKind::TopologyTree>) {
    SimplificationEngine e(T::kind);
    VertexId hub = e.insert_vertex();
    VertexId s1 = e.insert_vertex(), s2 = e.insert_vertex(), s3 = e.insert_vertex(),
             s4 = e.insert_vertex();
    e.insert_edge(hub, s1, 1);
    e.insert_edge(hub, s2, 1);
    e.insert_edge(hub, s3, 1);
    e.insert_edge(hub, s4, 1); // hub degree 4
    VertexId leaf = e.insert_vertex();
    VertexId tip = e.insert_vertex();
    e.insert_edge(leaf, tip, 2);
    CHECK(e.classify_insertion(tip, hub) == InsertionCase::Case2);
    e.insert_edge(tip, hub, 3);
    check_against_oracle(e);
}

TEST_CASE_TEMPLATE("update outcomes track created, removed and modified ids", T,
                   Tag<StrategyKind::Renumbering>, Tag<StrategyKind::TopologyTree>) {
    SimplificationEngine e(T::kind);
    VertexId a = e.insert_vertex(), b = e.insert_vertex(), c = e.insert_vertex(),
             d = e.insert_vertex();
    auto o1 = e.insert_edge(a, b, 1);
    CHECK(o1.created.size() == 1);
    auto o2 = e.insert_edge(c, d, 1);
    auto o3 = e.insert_edge(b, c, 1); // merge
    CHECK(o3.removed.size() == 2);
    CHECK(o3.created.size() == 1);
    // Ids are never reused.
    CHECK(o3.created[0] != o1.created[0]);
    CHECK(o3.created[0] != o2.created[0]);
}

TEST_CASE_TEMPLATE("invariant report is empty when healthy and names corrupted edges", T,
                   Tag<StrategyKind::Renumbering>, Tag<StrategyKind::TopologyTree>) {
    SimplificationEngine e(T::kind);
    VertexId a = e.insert_vertex(), b = e.insert_vertex(), c = e.insert_vertex();
    e.insert_edge(a, b, 2);
    e.insert_edge(b, c, 3);
    CHECK(e.check_invariants().empty());

    auto edges = e.edges();
    REQUIRE(edges.size() == 1);
    e.debug_set_edge_weight(edges[0].id, 99);
    auto bad = e.check_invariants();
    CHECK(!bad.empty());
}

#include <doctest.h>

#include "toposimp/graph.hpp"

using namespace toposimp;

TEST_CASE("vertices start singular with degree zero") {
    WeightedGraph g;
    VertexId v0 = g.add_vertex();
    CHECK(v0 == 0);
    CHECK(g.degree(v0) == 0);
    CHECK(g.classify(v0) == VertexClass::Singular);

    g.add_vertex();
    g.add_vertex();
    VertexId v3 = g.add_vertex();
    CHECK(v3 == 3);
    CHECK(g.vertex_count() == 4);
}

TEST_CASE("many vertices stay singular without edges") {
    WeightedGraph g;
    for (int i = 0; i < 100000; ++i)
        g.add_vertex();
    CHECK(g.vertex_count() == 100000);
    CHECK(g.classify(0) == VertexClass::Singular);
    CHECK(g.classify(99999) == VertexClass::Singular);
    CHECK(g.edge_count() == 0);
}

TEST_CASE("edges update degrees and classification") {
    WeightedGraph g;
    VertexId a = g.add_vertex(), b = g.add_vertex(), c = g.add_vertex();
    g.add_edge(a, b, 5);
    CHECK(g.degree(a) == 1);
    CHECK(g.degree(b) == 1);
    CHECK(g.classify(a) == VertexClass::Singular);

    g.add_edge(b, c, 3);
    CHECK(g.degree(b) == 2);
    CHECK(g.classify(b) == VertexClass::Regular);
    CHECK(g.classify(c) == VertexClass::Singular);

    CHECK(g.edge_weight(a, b) == 5);
    CHECK(g.edge_weight(b, a) == 5);
}

TEST_CASE("degree-three vertices are singular") {
    WeightedGraph g;
    VertexId h = g.add_vertex();
    for (int i = 0; i < 3; ++i)
        g.add_edge(h, g.add_vertex(), 1);
    CHECK(g.degree(h) == 3);
    CHECK(g.classify(h) == VertexClass::Singular);
}

TEST_CASE("edge validation") {
    WeightedGraph g;
    VertexId a = g.add_vertex(), b = g.add_vertex();
    CHECK_THROWS_WITH_AS(g.add_edge(a, a, 1), doctest::Contains("SelfLoop"), GraphError);
    CHECK_THROWS_WITH_AS(g.add_edge(a, b, 0), doctest::Contains("NonPositiveWeight"), GraphError);
    CHECK_THROWS_WITH_AS(g.add_edge(a, b, -2), doctest::Contains("NonPositiveWeight"), GraphError);
    g.add_edge(a, b, 1);
    CHECK_THROWS_WITH_AS(g.add_edge(a, b, 7), doctest::Contains("DuplicateEdge"), GraphError);
    CHECK_THROWS_WITH_AS(g.add_edge(b, a, 7), doctest::Contains("DuplicateEdge"), GraphError);
    CHECK_THROWS_AS(g.degree(99), GraphError);
    CHECK_THROWS_AS(g.neighbors(99), GraphError);
}

TEST_CASE("neighbor lists stay symmetric and degree-sum equals 2|E|") {
    WeightedGraph g;
    for (int i = 0; i < 6; ++i)
        g.add_vertex();
    g.add_edge(0, 1, 2);
    g.add_edge(1, 2, 3);
    g.add_edge(2, 3, 4);
    g.add_edge(0, 4, 1);

    CHECK(g.neighbors(5).empty());
    CHECK(g.neighbors(0).size() == 2);
    CHECK(g.neighbors(1).size() == 2);

    std::size_t deg_sum = 0;
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        deg_sum += g.neighbors(v).size();
        for (const auto& n : g.neighbors(v)) {
            bool back = false;
            for (const auto& m : g.neighbors(n.to))
                if (m.to == v && m.w == n.w)
                    back = true;
            CHECK(back);
        }
    }
    CHECK(deg_sum == 2 * g.edge_count());
}

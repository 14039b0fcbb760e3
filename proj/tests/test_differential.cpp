#include <doctest.h>

#include "toposimp/bench.hpp"

using namespace toposimp;

TEST_CASE("small fuzz corpus: both strategies track the recomputation exactly") {
    FuzzOptions opt;
    opt.seeds = 4;
    opt.n = 60;
    opt.m = 180;
    FuzzStats fs = run_fuzz(opt);
    for (const auto& e : fs.sample_errors)
        FAIL_CHECK(e);
    CHECK(fs.clean());
    CHECK(fs.insertions > 0);
    CHECK(fs.list_high_water <= 12);
}

TEST_CASE("dense fuzz triggers splits and keeps both strategies aligned") {
    FuzzOptions opt;
    opt.seeds = 3;
    opt.n = 25;
    opt.m = 200; // densifies to average degree 16
    FuzzStats fs = run_fuzz(opt);
    for (const auto& e : fs.sample_errors)
        FAIL_CHECK(e);
    CHECK(fs.clean());
    CHECK(fs.case_counts[3] + fs.case_counts[4] + fs.case_counts[5] > 0); // splits happened
}

TEST_CASE("lookup agreement on identical input streams") {
    SimplificationEngine a(StrategyKind::Renumbering);
    SimplificationEngine b(StrategyKind::TopologyTree);
    std::vector<VertexId> vs;
    for (int i = 0; i < 18; ++i) {
        vs.push_back(a.insert_vertex());
        b.insert_vertex();
    }
    for (int i = 0; i + 1 < 18; ++i) {
        a.insert_edge(vs[i], vs[i + 1], 1 + i % 4);
        b.insert_edge(vs[i], vs[i + 1], 1 + i % 4);
    }
    // Identical structures: every regular vertex maps to the same edge
    // endpoints and weight under both strategies.
    for (int i = 1; i + 1 < 18; ++i) {
        auto ea = a.edge(a.strategy().find_topological_edge(vs[i]));
        auto eb = b.edge(b.strategy().find_topological_edge(vs[i]));
        CHECK(ea.weight == eb.weight);
        CHECK(ea.regulars == eb.regulars);
        CHECK(std::min(ea.a, ea.b) == std::min(eb.a, eb.b));
        CHECK(std::max(ea.a, ea.b) == std::max(eb.a, eb.b));
    }
}

TEST_CASE("tiny renumbering capacity still matches under rebuild pressure") {
    FuzzOptions opt;
    opt.seeds = 2;
    opt.n = 40;
    opt.m = 100;
    opt.capacity = 2; // constant rebuilds
    FuzzStats fs = run_fuzz(opt);
    for (const auto& e : fs.sample_errors)
        FAIL_CHECK(e);
    CHECK(fs.clean());
}

#include "toposimp/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ostream>

#include "toposimp/oracle.hpp"
#include "toposimp/renumbering.hpp"
#include "toposimp/topology_tree.hpp"

namespace toposimp {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

std::uint64_t counter(const SimplifyStrategy& s, const std::string& name) {
    for (const auto& [k, v] : s.counters())
        if (k == name)
            return v;
    return 0;
}

StrategyRunStats stats_of(const SimplificationEngine& engine) {
    StrategyRunStats st;
    st.steps = engine.strategy().steps();
    if (engine.strategy_kind() == StrategyKind::Renumbering) {
        st.primary = counter(engine.strategy(), "renumber_steps");
        st.size_metric = counter(engine.strategy(), "dictionary_size");
    } else {
        st.primary = counter(engine.strategy(), "clusters_touched");
        st.size_metric = counter(engine.strategy(), "live_clusters");
    }
    st.skipped = engine.regular_cycle_rejections();
    return st;
}

} // namespace

std::pair<double, double> confidence_interval_95(const std::vector<double>& samples) {
    if (samples.empty())
        throw GraphError(Errc::Inconsistent, "confidence interval needs at least one sample");
    double mean = 0;
    for (double s : samples)
        mean += s;
    mean /= static_cast<double>(samples.size());
    if (samples.size() == 1)
        return {mean, mean};
    double var = 0;
    for (double s : samples)
        var += (s - mean) * (s - mean);
    var /= static_cast<double>(samples.size() - 1);
    double half = 1.96 * std::sqrt(var) / std::sqrt(static_cast<double>(samples.size()));
    return {mean - half, mean + half};
}

Workload make_workload(const BenchConfig& cfg, std::uint64_t seed) {
    switch (cfg.kind) {
    case BenchConfig::Kind::Random: return gen_random(cfg.n, cfg.m, seed, cfg.unit_weights);
    case BenchConfig::Kind::Merge: return gen_merge(cfg.paths);
    case BenchConfig::Kind::Split: return gen_split(cfg.paths, seed);
    case BenchConfig::Kind::File: return load_edge_list(cfg.path, seed);
    }
    throw GraphError(Errc::Inconsistent, "unknown workload kind");
}

StrategyRunStats replay(SimplificationEngine& engine, const Workload& wl, bool check_invariants,
                        std::vector<std::string>* violations) {
    StrategyRunStats st;
    double timed_ms = 0;
    auto whole = Clock::now();
    for (const auto& op : wl.ops) {
        if (op.kind == Workload::Op::Kind::AddVertex) {
            engine.insert_vertex();
            continue;
        }
        if (check_invariants) {
            auto t0 = Clock::now();
            try {
                engine.insert_edge(op.u, op.v, op.w);
            } catch (const GraphError& err) {
                if (err.code() != Errc::RegularCycle)
                    throw;
                ++st.skipped;
                continue;
            }
            timed_ms += ms_since(t0);
            auto bad = engine.check_invariants();
            st.violations += bad.size();
            if (violations)
                violations->insert(violations->end(), bad.begin(), bad.end());
        } else {
            try {
                engine.insert_edge(op.u, op.v, op.w);
            } catch (const GraphError& err) {
                if (err.code() != Errc::RegularCycle)
                    throw;
                ++st.skipped;
            }
        }
    }
    st.wall_ms = check_invariants ? timed_ms : ms_since(whole);
    StrategyRunStats counters = stats_of(engine);
    counters.wall_ms = st.wall_ms;
    counters.skipped = st.skipped;
    counters.violations = st.violations;
    return counters;
}

RunReport run_bench(const BenchConfig& cfg) {
    RunReport report;
    std::vector<double> ratios;
    for (int i = 0; i < cfg.runs; ++i) {
        std::uint64_t seed = cfg.seed + static_cast<std::uint64_t>(i);
        Workload wl = make_workload(cfg, seed);
        if (report.label.empty())
            report.label = wl.label;
        RunResult rr;
        rr.seed = seed;

        std::optional<std::vector<TopoView>> renumber_view;
        if (cfg.run_renumber) {
            SimplificationEngine eng(StrategyKind::Renumbering, cfg.capacity);
            rr.renumber = replay(eng, wl, cfg.check_invariants);
            renumber_view = eng.topological_view();
            rr.final_view = *renumber_view;
            rr.final_edges = renumber_view->size();
            rr.graph_vertices = eng.graph().vertex_count();
            rr.graph_edges = eng.graph().edge_count();
            rr.regular_vertices = eng.graph().vertex_count() - eng.singular_count();
        }
        if (cfg.run_toptree) {
            SimplificationEngine eng(StrategyKind::TopologyTree, cfg.capacity);
            rr.toptree = replay(eng, wl, cfg.check_invariants);
            auto view = eng.topological_view();
            if (renumber_view && *renumber_view != view)
                throw GraphError(Errc::Inconsistent,
                                 "strategies disagree on the final simplification");
            if (!renumber_view) {
                rr.final_view = view;
                rr.final_edges = view.size();
                rr.graph_vertices = eng.graph().vertex_count();
                rr.graph_edges = eng.graph().edge_count();
                rr.regular_vertices = eng.graph().vertex_count() - eng.singular_count();
            }
        }
        if (rr.renumber && rr.toptree && rr.renumber->wall_ms > 0) {
            rr.ratio = rr.toptree->wall_ms / rr.renumber->wall_ms;
            ratios.push_back(*rr.ratio);
        }
        report.runs.push_back(std::move(rr));
    }
    if (!ratios.empty()) {
        double mean = 0;
        for (double r : ratios)
            mean += r;
        report.mean_ratio = mean / static_cast<double>(ratios.size());
        auto [lo, hi] = confidence_interval_95(ratios);
        report.ci_lo = lo;
        report.ci_hi = hi;
    }
    return report;
}

void write_csv(std::ostream& os, const RunReport& report) {
    os << "workload,seed,strategy,wall_ms,renumber_steps_or_clusters_touched,"
          "dict_or_forest_size,ratio,ci_lo,ci_hi\n";
    auto field = [&os](const std::optional<double>& v) {
        if (v)
            os << *v;
    };
    for (const auto& rr : report.runs) {
        auto row = [&](const char* name, const StrategyRunStats& st) {
            os << report.label << ',' << rr.seed << ',' << name << ',' << st.wall_ms << ','
               << st.primary << ',' << st.size_metric << ',';
            field(rr.ratio);
            os << ',';
            field(report.ci_lo);
            os << ',';
            field(report.ci_hi);
            os << '\n';
        };
        if (rr.renumber)
            row("renumber", *rr.renumber);
        if (rr.toptree)
            row("toptree", *rr.toptree);
    }
}

void write_view_csv(std::ostream& os, const std::vector<TopoView>& view) {
    os << "u,v,weight,regulars\n";
    for (const auto& t : view)
        os << t.a << ',' << t.b << ',' << t.weight << ',' << t.regulars << '\n';
}

FuzzStats run_fuzz(const FuzzOptions& opt) {
    FuzzStats fs;
    auto t0 = Clock::now();
    auto note = [&fs](const std::string& msg) {
        if (fs.sample_errors.size() < 8)
            fs.sample_errors.push_back(msg);
    };
    for (int s = 0; s < opt.seeds; ++s) {
        std::uint64_t seed = opt.seed0 + static_cast<std::uint64_t>(s);
        Workload wl = gen_random(opt.n, opt.m, seed, opt.unit_weights);
        SimplificationEngine ren(StrategyKind::Renumbering, opt.capacity);
        SimplificationEngine top(StrategyKind::TopologyTree, opt.capacity);
        for (const auto& op : wl.ops) {
            if (op.kind == Workload::Op::Kind::AddVertex) {
                ren.insert_vertex();
                top.insert_vertex();
                continue;
            }
            bool rejected_a = false, rejected_b = false;
            UpdateOutcome oa, ob;
            try {
                oa = ren.insert_edge(op.u, op.v, op.w);
            } catch (const GraphError& e) {
                if (e.code() != Errc::RegularCycle)
                    throw;
                rejected_a = true;
            }
            try {
                ob = top.insert_edge(op.u, op.v, op.w);
            } catch (const GraphError& e) {
                if (e.code() != Errc::RegularCycle)
                    throw;
                rejected_b = true;
            }
            if (rejected_a != rejected_b) {
                ++fs.differential_mismatches;
                note("strategies disagree on a regular-cycle rejection");
                continue;
            }
            if (rejected_a)
                continue;
            ++fs.insertions;

            if (oa.kase != ob.kase) {
                ++fs.differential_mismatches;
                note("case disagreement at insertion " + std::to_string(fs.insertions));
            }
            // Split weights and every other structural change must agree:
            // compare the touched edges of both outcomes as weight multisets.
            auto touched = [](const SimplificationEngine& e, const UpdateOutcome& o) {
                std::vector<std::pair<Weight, int>> t;
                for (TopoEdgeId id : o.created)
                    t.push_back({e.edge(id).weight, e.edge(id).regulars});
                for (TopoEdgeId id : o.modified)
                    t.push_back({e.edge(id).weight, e.edge(id).regulars});
                std::sort(t.begin(), t.end());
                return t;
            };
            if (touched(ren, oa) != touched(top, ob)) {
                ++fs.differential_mismatches;
                note("created/modified edge disagreement at insertion " +
                     std::to_string(fs.insertions));
            }

            auto va = ren.topological_view();
            auto vb = top.topological_view();
            if (va != vb) {
                ++fs.differential_mismatches;
                note("snapshot disagreement at insertion " + std::to_string(fs.insertions));
            }
            auto want = oracle_recompute(ren.graph());
            auto diff = oracle_diff(va, want.edges, 0.0);
            if (!diff.empty()) {
                fs.oracle_mismatches += diff.size();
                note("oracle: " + diff.front());
            }
            if (opt.check_strategy_invariants) {
                auto bad_r = ren.strategy().check_invariants(ren.graph(), ren.edges(),
                                                             ren.insertions());
                fs.renumber_violations += bad_r.size();
                if (!bad_r.empty())
                    note(bad_r.front());
                auto bad_t = top.strategy().check_invariants(top.graph(), top.edges(),
                                                             top.insertions());
                fs.toptree_violations += bad_t.size();
                if (!bad_t.empty())
                    note(bad_t.front());
            }
        }
        for (int c = 0; c < 6; ++c)
            fs.case_counts[c] += ren.case_count(static_cast<InsertionCase>(c));
        fs.parallel_split_subcases += ren.parallel_split_subcases();
        fs.self_loop_edges += ren.self_loop_edges_created();
        fs.cycle_rejections += ren.regular_cycle_rejections();
        fs.list_high_water =
            std::max(fs.list_high_water,
                     static_cast<std::size_t>(counter(top.strategy(), "list_high_water")));
    }
    fs.seconds = ms_since(t0) / 1000.0;
    return fs;
}

} // namespace toposimp

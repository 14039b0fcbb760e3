#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "toposimp/bench.hpp"

namespace {

using namespace toposimp;

void add_common(CLI::App* cmd, BenchConfig& cfg, std::string& strategy, std::string& out,
                std::string& out_gs) {
    cmd->add_option("--seed", cfg.seed, "base RNG seed (run i uses seed+i)");
    cmd->add_option("--runs", cfg.runs, "number of runs")->check(CLI::PositiveNumber);
    cmd->add_option("--capacity", cfg.capacity, "renumbering capacity (doubled on rebuild)")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--strategy", strategy, "renumber|toptree|both")
        ->check(CLI::IsMember({"renumber", "toptree", "both"}));
    cmd->add_flag("--check-invariants", cfg.check_invariants,
                  "validate the full structure after every insertion (untimed)");
    cmd->add_flag("--unit-weights", cfg.unit_weights, "weight 1 instead of random ints in [1,100]");
    cmd->add_option("--out", out, "write the report CSV here (default stdout)");
    cmd->add_option("--out-gs", out_gs, "write the final simplification as CSV");
}

int run_and_report(BenchConfig cfg, const std::string& strategy, const std::string& out,
                   const std::string& out_gs) {
    cfg.run_renumber = strategy != "toptree";
    cfg.run_toptree = strategy != "renumber";
    RunReport report = run_bench(cfg);

    std::uint64_t violations = 0;
    for (const auto& rr : report.runs) {
        if (rr.renumber)
            violations += rr.renumber->violations;
        if (rr.toptree)
            violations += rr.toptree->violations;
    }

    if (out.empty()) {
        write_csv(std::cout, report);
    } else {
        std::ofstream os(out);
        if (!os) {
            std::cerr << "cannot write " << out << "\n";
            return 1;
        }
        write_csv(os, report);
    }
    if (!out_gs.empty()) {
        std::ofstream os(out_gs);
        if (!os) {
            std::cerr << "cannot write " << out_gs << "\n";
            return 1;
        }
        write_view_csv(os, report.runs.back().final_view);
    }

    const auto& last = report.runs.back();
    std::cerr << report.label << ": " << last.graph_vertices << " vertices, " << last.graph_edges
              << " edges, " << last.regular_vertices << " regular ("
              << (last.graph_vertices
                      ? 100.0 * static_cast<double>(last.regular_vertices) /
                            static_cast<double>(last.graph_vertices)
                      : 0.0)
              << "%), " << last.final_edges << " simplified edges\n";
    if (report.mean_ratio)
        std::cerr << "toptree/renumber time ratio: mean " << *report.mean_ratio << ", 95% CI ["
                  << *report.ci_lo << ", " << *report.ci_hi << "] over " << report.runs.size()
                  << " runs\n";
    if (cfg.check_invariants) {
        std::cerr << "invariant violations: " << violations << "\n";
        if (violations)
            return 1;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"incremental topological simplification benchmark harness"};
    app.require_subcommand(1);

    BenchConfig cfg;
    std::string strategy = "both";
    std::string out, out_gs;

    auto* rnd = app.add_subcommand("random", "uniform random insertions");
    rnd->add_option("--n", cfg.n, "vertices")->check(CLI::PositiveNumber);
    rnd->add_option("--m", cfg.m, "edges")->check(CLI::PositiveNumber);
    add_common(rnd, cfg, strategy, out, out_gs);

    auto* mrg = app.add_subcommand("merge", "pairwise path merges until one long edge remains");
    mrg->add_option("--paths", cfg.paths, "initial path count")->check(CLI::PositiveNumber);
    add_common(mrg, cfg, strategy, out, out_gs);

    auto* spl = app.add_subcommand("split", "random splits of single-regular-vertex paths");
    spl->add_option("--paths", cfg.paths, "initial path count")->check(CLI::PositiveNumber);
    add_common(spl, cfg, strategy, out, out_gs);

    auto* fil = app.add_subcommand("file", "replay a whitespace edge-list file");
    fil->add_option("path", cfg.path, "edge-list file")->required()->check(CLI::ExistingFile);
    add_common(fil, cfg, strategy, out, out_gs);

    auto* fz = app.add_subcommand("fuzz", "differential + recomputation check per insertion");
    FuzzOptions fopt;
    fz->add_option("--seeds", fopt.seeds, "number of seeds")->check(CLI::PositiveNumber);
    fz->add_option("--n", fopt.n, "vertices per workload");
    fz->add_option("--m", fopt.m, "edges per workload");
    fz->add_option("--seed", fopt.seed0, "first seed");
    fz->add_option("--capacity", fopt.capacity, "renumbering capacity");

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand(fz)) {
            FuzzStats fs = run_fuzz(fopt);
            std::cout << "insertions: " << fs.insertions << "\n"
                      << "oracle mismatches: " << fs.oracle_mismatches << "\n"
                      << "differential mismatches: " << fs.differential_mismatches << "\n"
                      << "renumbering violations: " << fs.renumber_violations << "\n"
                      << "topology-tree violations: " << fs.toptree_violations << "\n"
                      << "case counts:";
            for (int c = 0; c < 6; ++c)
                std::cout << " " << case_name(static_cast<InsertionCase>(c)) << "="
                          << fs.case_counts[static_cast<std::size_t>(c)];
            std::cout << "\nparallel split subcases: " << fs.parallel_split_subcases
                      << "\nself-loop edges created: " << fs.self_loop_edges
                      << "\nregular-cycle rejections: " << fs.cycle_rejections
                      << "\nlist high water: " << fs.list_high_water << "\nelapsed: " << fs.seconds
                      << " s\n";
            for (const auto& e : fs.sample_errors)
                std::cout << "error: " << e << "\n";
            return fs.clean() ? 0 : 1;
        }
        if (app.got_subcommand(rnd))
            cfg.kind = BenchConfig::Kind::Random;
        else if (app.got_subcommand(mrg))
            cfg.kind = BenchConfig::Kind::Merge;
        else if (app.got_subcommand(spl))
            cfg.kind = BenchConfig::Kind::Split;
        else
            cfg.kind = BenchConfig::Kind::File;
        return run_and_report(cfg, strategy, out, out_gs);
    } catch (const GraphError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "toposimp/engine.hpp"
#include "toposimp/workload.hpp"

namespace toposimp {

std::pair<double, double> confidence_interval_95(const std::vector<double>& samples);

struct BenchConfig {
    enum class Kind : std::uint8_t { Random, Merge, Split, File };
    Kind kind = Kind::Random;
    std::size_t n = 1000;
    std::size_t m = 5000;
    std::size_t paths = 6700;
    std::string path; // Kind::File
    std::uint64_t seed = 1;
    int runs = 1;
    bool run_renumber = true;
    bool run_toptree = true;
    std::int64_t capacity = 1 << 20;
    bool check_invariants = false;
    bool unit_weights = false;
};

struct StrategyRunStats {
    double wall_ms = 0;
    std::uint64_t steps = 0;
    std::uint64_t primary = 0;     // renumber steps / clusters touched
    std::uint64_t size_metric = 0; // dictionary size / live clusters
    std::uint64_t skipped = 0;     // regular-cycle rejections during replay
    std::uint64_t violations = 0;  // invariant-check mode only
};

struct RunResult {
    std::uint64_t seed = 0;
    std::optional<StrategyRunStats> renumber;
    std::optional<StrategyRunStats> toptree;
    std::optional<double> ratio; // toptree wall / renumber wall
    std::size_t final_edges = 0;
    std::size_t graph_vertices = 0;
    std::size_t graph_edges = 0;
    std::size_t regular_vertices = 0;
    std::vector<TopoView> final_view;
};

struct RunReport {
    std::string label;
    std::vector<RunResult> runs;
    std::optional<double> mean_ratio;
    std::optional<double> ci_lo;
    std::optional<double> ci_hi;
};

Workload make_workload(const BenchConfig& cfg, std::uint64_t seed);

/// Replays a workload on a fresh engine. Regular-cycle rejections are
/// skipped and counted. In check mode every insertion is followed by a full
/// invariant check (excluded from the reported wall time).
StrategyRunStats replay(SimplificationEngine& engine, const Workload& wl, bool check_invariants,
                        std::vector<std::string>* violations = nullptr);

RunReport run_bench(const BenchConfig& cfg);

/// CSV rows: workload,seed,strategy,wall_ms,renumber_steps_or_clusters_touched,
/// dict_or_forest_size,ratio,ci_lo,ci_hi
void write_csv(std::ostream& os, const RunReport& report);

/// Final simplification rows: u,v,weight,regulars
void write_view_csv(std::ostream& os, const std::vector<TopoView>& view);

struct FuzzOptions {
    int seeds = 100;
    std::size_t n = 500;
    std::size_t m = 1500;
    std::uint64_t seed0 = 1;
    std::int64_t capacity = 1 << 20;
    bool check_strategy_invariants = true;
    bool unit_weights = false;
};

/// Drives both strategies through random workloads, comparing their
/// snapshots against each other and against the from-scratch recomputation
/// after every single insertion.
struct FuzzStats {
    std::uint64_t insertions = 0;
    std::uint64_t oracle_mismatches = 0;
    std::uint64_t differential_mismatches = 0;
    std::uint64_t renumber_violations = 0;
    std::uint64_t toptree_violations = 0;
    std::array<std::uint64_t, 6> case_counts{};
    std::uint64_t parallel_split_subcases = 0;
    std::uint64_t self_loop_edges = 0;
    std::uint64_t cycle_rejections = 0;
    std::size_t list_high_water = 0;
    double seconds = 0;
    std::vector<std::string> sample_errors;

    bool clean() const {
        return oracle_mismatches == 0 && differential_mismatches == 0 &&
               renumber_violations == 0 && toptree_violations == 0;
    }
};

FuzzStats run_fuzz(const FuzzOptions& opt);

} // namespace toposimp

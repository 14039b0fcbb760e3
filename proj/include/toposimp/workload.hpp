#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "toposimp/types.hpp"

namespace toposimp {

/// Replayable insertion sequence: identical seed and parameters always yield
/// the identical operation list.
struct Workload {
    struct Op {
        enum class Kind : std::uint8_t { AddVertex, AddEdge };
        Kind kind;
        VertexId u = kNoVertex;
        VertexId v = kNoVertex;
        Weight w = 1.0;
    };

    std::string label;
    std::uint64_t seed = 0;
    std::vector<Op> ops;
    std::size_t vertices = 0;
    std::size_t edge_ops = 0;
    std::size_t cycle_resamples = 0;     // generation-time candidates redrawn
    std::size_t skipped_duplicates = 0;  // file ingestion
    std::size_t skipped_self_loops = 0;  // file ingestion
};

/// n isolated vertices, then m distinct edges sampled uniformly without
/// replacement in uniformly random order. Candidates that would close an
/// all-regular cycle at their position are resampled and counted.
/// Weights are uniform random integers in [1,100], or 1 with unit_weights.
Workload gen_random(std::size_t n, std::size_t m, std::uint64_t seed, bool unit_weights = false);

/// k - 1 disjoint two-edge paths (one regular vertex each) plus one single
/// edge, then pairwise tournament merges until one long edge remains.
/// Sizes: 3k - 1 vertices, 3k - 2 edges.
Workload gen_merge(std::size_t k);

/// p disjoint single-regular-vertex paths, then ceil(p/2) insertions from
/// fresh vertices to distinct random regular vertices, in random order.
Workload gen_split(std::size_t p, std::uint64_t seed);

/// Parses "u v w" lines (w optional, default 1), '#' comments and blank
/// lines ignored; arbitrary vertex labels are mapped to dense ids in first
/// appearance order. Emits every vertex, then the edges in seed-shuffled
/// order; duplicate edges and self-loops are dropped and counted.
Workload load_edge_list(const std::string& path, std::uint64_t seed);
Workload parse_edge_list(std::istream& in, const std::string& name, std::uint64_t seed);

} // namespace toposimp

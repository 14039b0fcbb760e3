#pragma once

#include <string>
#include <vector>

#include "toposimp/graph.hpp"
#include "toposimp/types.hpp"

namespace toposimp {

/// One row of a simplification snapshot: endpoints canonicalized a <= b.
struct TopoView {
    VertexId a;
    VertexId b;
    Weight weight;
    int regulars;

    friend bool operator==(const TopoView&, const TopoView&) = default;
    friend auto operator<=>(const TopoView&, const TopoView&) = default;
};

/// A regular path discovered by walking the graph: singular endpoints `from`
/// and `to`, interior regular vertices in path order.
struct RegularPath {
    VertexId from;
    VertexId to;
    std::vector<VertexId> interior;
    Weight weight;
};

struct OracleResult {
    std::vector<TopoView> edges; // sorted
    std::size_t regular_cycle_edges = 0;

    bool has_regular_cycle() const { return regular_cycle_edges > 0; }
};

/// Enumerates every regular path of `g` exactly once by walking regular
/// chains outward from singular vertices. Edges of all-regular cycles are
/// never reached and are reported through `cycle_edges` when given.
std::vector<RegularPath> walk_regular_paths(const WeightedGraph& g,
                                            std::size_t* cycle_edges = nullptr);

/// Reference simplification recomputed from scratch.
/// Throws GraphError(RegularCycle) if an all-regular cycle exists.
OracleResult oracle_recompute(const WeightedGraph& g);

std::vector<TopoView> sorted_view(std::vector<TopoView> v);

/// Symmetric multiset difference; weights compared with `rel_tol` relative
/// tolerance (exact comparisons fall out for integer-valued weights).
std::vector<std::string> oracle_diff(const std::vector<TopoView>& got,
                                     const std::vector<TopoView>& want,
                                     double rel_tol = 1e-9);

} // namespace toposimp

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "toposimp/graph.hpp"
#include "toposimp/types.hpp"

namespace toposimp {

struct TopoEdge {
    TopoEdgeId id;
    VertexId a;
    VertexId b;
    Weight weight;
    int regulars;
};

/// One side of a split at x: `nbr` is x's path neighbor on that side (the
/// inserted endpoint is excluded by the engine) and `w` the connecting
/// G-edge weight.
struct PathEnd {
    VertexId nbr;
    Weight w;
};

struct SplitPlan {
    VertexId x;
    std::array<PathEnd, 2> ends;
    TopoEdgeId old_edge;
    std::pair<VertexId, VertexId> old_endpoints;
    Weight old_weight;
    int old_regulars;
    std::array<TopoEdgeId, 2> new_ids; // aligned with ends
};

struct SplitSide {
    VertexId far; // old endpoint landing on this side
    Weight weight;
    int regulars;
};

struct MergePlan {
    TopoEdgeId merged;
    TopoEdgeId keep_edge; // side with more regular vertices (ties keep the first)
    int keep_regulars;
    VertexId keep_junction;
    TopoEdgeId renum_edge;
    int renum_regulars;
    VertexId renum_junction;
    Weight joining;
};

/// Bookkeeping contract kept in sync by the engine. Queries run against the
/// pre-edit state; notifications fire once the graph and the simplification
/// store already reflect the change they describe.
class SimplifyStrategy {
public:
    virtual ~SimplifyStrategy() = default;

    virtual TopoEdgeId find_topological_edge(VertexId x) const = 0;

    /// Retires the strategy's bookkeeping for the path of `plan.old_edge`
    /// and reports both pieces, aligned with plan.ends.
    virtual std::array<SplitSide, 2> on_split(const SplitPlan& plan) = 0;

    virtual void on_path_birth(TopoEdgeId e, VertexId r1, std::optional<VertexId> r2,
                               Weight joining) = 0;
    virtual void on_extend(TopoEdgeId e, VertexId grown, VertexId inserted_from) = 0;
    virtual void on_merge(const MergePlan& plan) = 0;
    virtual void on_vertex_singularized(VertexId v) = 0;

    /// Elementary-step counter (dictionary accesses, label writes, clusters
    /// touched, ...) for the scaling analysis.
    virtual std::uint64_t steps() const = 0;
    virtual std::vector<std::pair<std::string, std::uint64_t>> counters() const = 0;

    virtual std::vector<std::string> check_invariants(const WeightedGraph& g,
                                                      const std::vector<TopoEdge>& edges,
                                                      std::uint64_t insertions) const = 0;
};

} // namespace toposimp

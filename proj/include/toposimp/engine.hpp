#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "toposimp/graph.hpp"
#include "toposimp/oracle.hpp"
#include "toposimp/strategy.hpp"
#include "toposimp/types.hpp"

namespace toposimp {

enum class InsertionCase : std::uint8_t { Case1, Case2, Case3, Case4, Case5, Case6 };

const char* case_name(InsertionCase c);

struct UpdateOutcome {
    InsertionCase kase;
    std::vector<TopoEdgeId> created;
    std::vector<TopoEdgeId> removed;
    std::vector<TopoEdgeId> modified;
    std::uint64_t steps = 0;
};

enum class StrategyKind : std::uint8_t { Renumbering, TopologyTree };

/// Maintains the simplification of a growing weighted graph: singular
/// vertices as nodes, one multigraph edge per regular path, weights equal to
/// path sums. Insertions dispatch on the six endpoint-classification cases;
/// regular-vertex bookkeeping is delegated to the chosen strategy.
class SimplificationEngine {
public:
    explicit SimplificationEngine(StrategyKind kind, std::int64_t capacity = 1 << 20);
    ~SimplificationEngine();

    // The strategy holds references into the engine; instances stay put.
    SimplificationEngine(const SimplificationEngine&) = delete;
    SimplificationEngine& operator=(const SimplificationEngine&) = delete;

    VertexId insert_vertex();
    InsertionCase classify_insertion(VertexId x, VertexId y) const;
    UpdateOutcome insert_edge(VertexId x, VertexId y, Weight w);

    std::vector<TopoView> topological_view() const;
    std::vector<TopoEdge> edges() const;
    const TopoEdge& edge(TopoEdgeId id) const;
    std::size_t simplified_edge_count() const { return edges_.size(); }
    std::size_t singular_count() const;

    const WeightedGraph& graph() const { return graph_; }
    const SimplifyStrategy& strategy() const { return *strategy_; }
    StrategyKind strategy_kind() const { return kind_; }

    std::vector<std::string> check_invariants() const;

    std::uint64_t insertions() const { return insertions_; }
    std::uint64_t case_count(InsertionCase c) const;
    std::uint64_t self_loop_edges_created() const { return self_loops_created_; }
    std::uint64_t parallel_split_subcases() const { return parallel_split_subcases_; }
    std::uint64_t regular_cycle_rejections() const { return cycle_rejections_; }

    /// Test hook: corrupts a stored weight so diagnostics can be exercised.
    void debug_set_edge_weight(TopoEdgeId id, Weight w);

private:
    struct CaseInfo {
        InsertionCase kase;
        VertexId x; // for cases 2,4,5: the distinguished vertex per case definition
        VertexId y;
    };

    CaseInfo classify_impl(VertexId x, VertexId y) const;
    TopoEdgeId new_edge(VertexId a, VertexId b, Weight w, int regulars, UpdateOutcome& out);
    void remove_edge(TopoEdgeId id, UpdateOutcome& out);
    void replace_endpoint(TopoEdgeId id, VertexId from, VertexId to);
    TopoEdgeId sole_incident_edge(VertexId v) const;
    void incidence_add(VertexId v, TopoEdgeId id);
    void incidence_remove(VertexId v, TopoEdgeId id);
    void split_at(VertexId x, VertexId exclude, UpdateOutcome& out,
                  std::array<TopoEdgeId, 2>* pieces = nullptr);
    void extend_through(VertexId grown, VertexId inserted_from, Weight w, UpdateOutcome& out);

    WeightedGraph graph_;
    std::unique_ptr<SimplifyStrategy> strategy_;
    StrategyKind kind_;
    std::unordered_map<TopoEdgeId, TopoEdge> edges_;
    std::vector<std::vector<TopoEdgeId>> incidence_; // per vertex; self-loops listed once
    TopoEdgeId next_id_ = 1;
    std::uint64_t insertions_ = 0;
    std::array<std::uint64_t, 6> case_counts_{};
    std::uint64_t self_loops_created_ = 0;
    std::uint64_t parallel_split_subcases_ = 0;
    mutable std::uint64_t cycle_rejections_ = 0;
};

} // namespace toposimp

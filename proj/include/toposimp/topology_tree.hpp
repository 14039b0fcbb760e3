#pragma once

#include <cstdint>
#include <deque>
#include <vector>

#include "toposimp/strategy.hpp"

namespace toposimp {

/// Multilevel partition of the regular vertices into clusters of size at
/// most two, one binary tree per regular path. Level 0 is adjusted locally
/// per insertion; changes ripple upward through per-level changed / inserted
/// / deleted lists, a constant amount of work per level. Weights live on
/// clusters and adjacency records, so a path weight is read off its root.
class TopologyTreeStrategy final : public SimplifyStrategy {
public:
    struct Cluster;

    struct AdjRec {
        Cluster* cl = nullptr;     // null: adjacency to a singular vertex
        VertexId sing = kNoVertex; // set when cl is null
        Weight w = 0;
    };

    struct Cluster {
        int level = 0;
        std::vector<VertexId> vertices; // level 0 only, size <= 2
        std::vector<Cluster*> children; // level > 0 only, size <= 2
        Cluster* parent = nullptr;
        Weight weight = 0;
        int vertex_count = 0;
        std::vector<AdjRec> adj; // <= 2 records; self-loop paths keep two to one vertex
        TopoEdgeId edge = kNoEdge; // set on roots only
        std::uint8_t listed = 0;   // transient list membership flag
        bool freed = false;

        int size() const {
            return level == 0 ? static_cast<int>(vertices.size())
                              : static_cast<int>(children.size());
        }
        int cluster_degree() const;
        bool has_sibling() const { return parent && parent->children.size() == 2; }
    };

    enum class Transition : std::uint8_t { DestroyOne, DestroyTwo, CreateOne, CreateTwo, NoChange };

    explicit TopologyTreeStrategy(const WeightedGraph& g);

    // SimplifyStrategy
    TopoEdgeId find_topological_edge(VertexId x) const override;
    std::array<SplitSide, 2> on_split(const SplitPlan& plan) override;
    void on_path_birth(TopoEdgeId e, VertexId r1, std::optional<VertexId> r2,
                       Weight joining) override;
    void on_extend(TopoEdgeId e, VertexId grown, VertexId inserted_from) override;
    void on_merge(const MergePlan& plan) override;
    void on_vertex_singularized(VertexId v) override;
    std::uint64_t steps() const override { return steps_; }
    std::vector<std::pair<std::string, std::uint64_t>> counters() const override;
    std::vector<std::string> check_invariants(const WeightedGraph& g,
                                              const std::vector<TopoEdge>& edges,
                                              std::uint64_t insertions) const override;

    /// Adjusts the level-0 partition for one insertion's vertex transitions
    /// and seeds the update lists. Callers follow up with propagate().
    void level0_update(Transition t, VertexId u = kNoVertex, VertexId v = kNoVertex);

    /// Ripples the seeded lists upward until no level reports changes.
    void propagate();

    TopoEdgeId lookup_edge(VertexId x) const { return find_topological_edge(x); }
    const Cluster* leaf_of(VertexId v) const;
    const Cluster* root_of(VertexId v) const;
    Weight edge_weight_from_root(const Cluster& root) const;

    std::uint64_t clusters_touched() const { return clusters_touched_; }
    std::size_t live_clusters() const { return live_clusters_; }
    std::size_t list_high_water() const { return list_high_water_; }
    int max_height_seen() const { return max_height_seen_; }

private:
    struct Lists {
        std::vector<Cluster*> del, chg, ins;
        bool empty() const { return del.empty() && chg.empty() && ins.empty(); }
        std::size_t size() const { return del.size() + chg.size() + ins.size(); }
        void clear() { del.clear(); chg.clear(); ins.clear(); }
    };
    enum ListFlag : std::uint8_t { kNone = 0, kDel = 1, kChg = 2, kIns = 3 };

    Cluster* alloc(int level);
    void release(Cluster* c);
    void set_parent(Cluster* child, Cluster* parent);
    void detach_from_parent(Cluster* c);
    void drop_records(Cluster* c);
    void drop_mutual(Cluster* a, Cluster* b);
    void set_mutual(Cluster* a, Cluster* b, Weight w);
    void rebuild_level0_records(Cluster* c);
    void rebuild_from_children(Cluster* p);
    Cluster* sibling(Cluster* c) const;
    bool is_adjacent(const Cluster* a, const Cluster* b) const;
    void push(Lists& l, Cluster* c, ListFlag f);
    void unlist(Cluster* c);
    void note_changed(Cluster* c);
    void destroy_vertex(VertexId u);
    void create_vertex(VertexId u, VertexId co_created);
    Cluster* climb(Cluster* c) const;
    void bind_root(VertexId member, TopoEdgeId e);

    const WeightedGraph& graph_;
    std::vector<Cluster*> leaf_;
    std::deque<Cluster> pool_;
    std::vector<Cluster*> free_;
    std::vector<Cluster*> deferred_free_; // recycled only once propagation settles
    Lists cur_;
    mutable std::uint64_t steps_ = 0;
    std::uint64_t clusters_touched_ = 0;
    std::size_t live_clusters_ = 0;
    std::size_t list_high_water_ = 0;
    int max_height_seen_ = 0;
};

} // namespace toposimp

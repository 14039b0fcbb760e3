#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <unordered_map>
#include <vector>

#include "toposimp/strategy.hpp"

namespace toposimp {

using RegNumber = std::int64_t;

/// Number-and-weight labelling of regular vertices. Each regular path owns a
/// contiguous block of integers ("interval") registered in an ordered
/// dictionary keyed by the interval minimum; per-vertex signed weight labels
/// make split weights one subtraction. Merges renumber the shorter side;
/// number space is provisioned per path birth and rebuilt from scratch with
/// doubled capacity if a block would overflow its allowance.
class RenumberingStrategy final : public SimplifyStrategy {
public:
    struct Label {
        RegNumber number;
        double lambda_star;
    };

    struct IntervalItem {
        TopoEdgeId edge;
        int count;
        VertexId min_vertex;
        RegNumber anchor; // birth base 2*k*capacity; allowance is anchor +- (capacity-1)
    };

    using EdgeWeightFn = std::function<Weight(TopoEdgeId)>;

    RenumberingStrategy(const WeightedGraph& g, std::int64_t capacity, EdgeWeightFn edge_weight);

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

    /// Dictionary lookup: the interval item covering x's number.
    std::pair<TopoEdgeId, IntervalItem> lookup_edge(VertexId x) const;

    /// Weights of the two pieces a split at x would create, min-vertex side
    /// first. Pure query; the pieces sum to the edge weight.
    std::pair<Weight, Weight> find_split_weights(VertexId x) const;

    /// Relabels every path from scratch under a doubled capacity.
    void rebuild();

    std::int64_t capacity() const { return capacity_; }
    std::uint64_t renumber_steps() const { return renumber_steps_; }
    std::uint64_t paths_born() const { return static_cast<std::uint64_t>(births_); }
    std::uint64_t rebuilds() const { return rebuilds_; }
    std::size_t dictionary_size() const { return items_.size(); }
    std::int64_t max_interval_width() const { return max_interval_width_; }
    std::optional<Label> label_of(VertexId v) const;

private:
    using Dict = std::map<RegNumber, IntervalItem>;

    Dict::iterator item_containing(RegNumber n);
    Dict::const_iterator item_containing(RegNumber n) const;
    Dict::iterator item_of_edge(TopoEdgeId e);
    void set_label(VertexId v, RegNumber n, double lambda);
    void clear_label(VertexId v);
    double extend_lambda(VertexId u, VertexId v_prev, Weight w) const;
    VertexId other_labeled_neighbor(VertexId u, VertexId exclude) const;
    VertexId sole_unlabeled_neighbor(VertexId u) const;
    bool fits(const IntervalItem& item, RegNumber key, bool low_end, int growth) const;
    Dict::iterator grow(Dict::iterator it, bool low_end, VertexId v, VertexId u, VertexId v_prev,
                        Weight w);
    void birth(TopoEdgeId e, VertexId r1, std::optional<VertexId> r2, Weight joining);
    bool try_merge(const MergePlan& plan);
    void note_width(const IntervalItem& item);

    const WeightedGraph& graph_;
    EdgeWeightFn edge_total_;
    std::int64_t capacity_;
    std::int64_t births_ = 0; // paths born since the last rebuild
    Dict items_;
    std::unordered_map<TopoEdgeId, RegNumber> key_of_edge_;
    std::vector<std::optional<Label>> labels_;
    std::uint64_t renumber_steps_ = 0;
    mutable std::uint64_t steps_ = 0;
    std::uint64_t rebuilds_ = 0;
    std::int64_t max_interval_width_ = 0;
    bool rebuilding_ = false;
};

} // namespace toposimp

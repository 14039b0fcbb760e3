#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "toposimp/errors.hpp"
#include "toposimp/types.hpp"

namespace toposimp {

/// Incrementally grown simple undirected graph with strictly positive edge
/// weights. Vertices are dense integer ids; a vertex is Regular exactly when
/// its degree is two. Edges and vertices are never removed.
class WeightedGraph {
public:
    struct Neighbor {
        VertexId to;
        Weight w;
    };

    VertexId add_vertex();
    void add_edge(VertexId u, VertexId v, Weight w);

    std::size_t vertex_count() const { return adj_.size(); }
    std::size_t edge_count() const { return edges_; }
    Weight total_weight() const { return total_weight_; }

    int degree(VertexId v) const;
    VertexClass classify(VertexId v) const;
    bool is_regular(VertexId v) const { return classify(v) == VertexClass::Regular; }

    std::span<const Neighbor> neighbors(VertexId v) const;
    bool has_vertex(VertexId v) const { return v < adj_.size(); }
    bool has_edge(VertexId u, VertexId v) const;
    Weight edge_weight(VertexId u, VertexId v) const;

private:
    void check_vertex(VertexId v) const;

    std::vector<std::vector<Neighbor>> adj_;
    std::size_t edges_ = 0;
    Weight total_weight_ = 0;
};

} // namespace toposimp

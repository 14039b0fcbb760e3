#include "toposimp/graph.hpp"

#include <algorithm>
#include <string>

namespace toposimp {

const char* errc_name(Errc c) {
    switch (c) {
    case Errc::SelfLoop: return "SelfLoop";
    case Errc::DuplicateEdge: return "DuplicateEdge";
    case Errc::NonPositiveWeight: return "NonPositiveWeight";
    case Errc::UnknownVertex: return "UnknownVertex";
    case Errc::RegularCycle: return "RegularCycle";
    case Errc::NotRegular: return "NotRegular";
    case Errc::CapacityExhausted: return "CapacityExhausted";
    case Errc::Inconsistent: return "Inconsistent";
    case Errc::MissingAdjacency: return "MissingAdjacency";
    case Errc::ParseError: return "ParseError";
    }
    return "Unknown";
}

void WeightedGraph::check_vertex(VertexId v) const {
    if (!has_vertex(v))
        throw GraphError(Errc::UnknownVertex, "vertex " + std::to_string(v));
}

VertexId WeightedGraph::add_vertex() {
    adj_.emplace_back();
    return static_cast<VertexId>(adj_.size() - 1);
}

void WeightedGraph::add_edge(VertexId u, VertexId v, Weight w) {
    check_vertex(u);
    check_vertex(v);
    if (u == v)
        throw GraphError(Errc::SelfLoop, "edge {" + std::to_string(u) + "," + std::to_string(v) + "}");
    if (w <= 0)
        throw GraphError(Errc::NonPositiveWeight, "weight " + std::to_string(w));
    if (has_edge(u, v))
        throw GraphError(Errc::DuplicateEdge,
                         "edge {" + std::to_string(u) + "," + std::to_string(v) + "}");
    adj_[u].push_back({v, w});
    adj_[v].push_back({u, w});
    ++edges_;
    total_weight_ += w;
}

int WeightedGraph::degree(VertexId v) const {
    check_vertex(v);
    return static_cast<int>(adj_[v].size());
}

VertexClass WeightedGraph::classify(VertexId v) const {
    return degree(v) == 2 ? VertexClass::Regular : VertexClass::Singular;
}

std::span<const WeightedGraph::Neighbor> WeightedGraph::neighbors(VertexId v) const {
    check_vertex(v);
    return adj_[v];
}

bool WeightedGraph::has_edge(VertexId u, VertexId v) const {
    check_vertex(u);
    check_vertex(v);
    const auto& shorter = adj_[u].size() <= adj_[v].size() ? adj_[u] : adj_[v];
    VertexId other = adj_[u].size() <= adj_[v].size() ? v : u;
    return std::any_of(shorter.begin(), shorter.end(),
                       [other](const Neighbor& n) { return n.to == other; });
}

Weight WeightedGraph::edge_weight(VertexId u, VertexId v) const {
    check_vertex(u);
    check_vertex(v);
    for (const Neighbor& n : adj_[u])
        if (n.to == v)
            return n.w;
    throw GraphError(Errc::Inconsistent,
                     "no edge {" + std::to_string(u) + "," + std::to_string(v) + "}");
}

} // namespace toposimp

#include "toposimp/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <sstream>
#include <unordered_set>

namespace toposimp {

namespace {

std::uint64_t edge_key(VertexId u, VertexId v) {
    if (u > v)
        std::swap(u, v);
    return (static_cast<std::uint64_t>(u) << 32) | v;
}

std::string view_str(const TopoView& t) {
    std::ostringstream os;
    os << "{" << t.a << "," << t.b << "} w=" << t.weight << " regulars=" << t.regulars;
    return os.str();
}

} // namespace

std::vector<RegularPath> walk_regular_paths(const WeightedGraph& g, std::size_t* cycle_edges) {
    std::vector<RegularPath> paths;
    std::unordered_set<std::uint64_t> visited;
    visited.reserve(g.edge_count() * 2);

    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        if (g.classify(v) != VertexClass::Singular)
            continue;
        for (const auto& n : g.neighbors(v)) {
            if (!visited.insert(edge_key(v, n.to)).second)
                continue;
            RegularPath p{v, n.to, {}, n.w};
            VertexId prev = v;
            VertexId cur = n.to;
            while (g.classify(cur) == VertexClass::Regular) {
                p.interior.push_back(cur);
                auto nbrs = g.neighbors(cur);
                const auto& next = nbrs[0].to == prev ? nbrs[1] : nbrs[0];
                visited.insert(edge_key(cur, next.to));
                p.weight += next.w;
                prev = cur;
                cur = next.to;
            }
            p.to = cur;
            paths.push_back(std::move(p));
        }
    }
    if (cycle_edges)
        *cycle_edges = g.edge_count() - visited.size();
    return paths;
}

OracleResult oracle_recompute(const WeightedGraph& g) {
    OracleResult r;
    auto paths = walk_regular_paths(g, &r.regular_cycle_edges);
    if (r.has_regular_cycle())
        throw GraphError(Errc::RegularCycle,
                         std::to_string(r.regular_cycle_edges) + " edges on all-regular cycles");
    r.edges.reserve(paths.size());
    for (const auto& p : paths) {
        TopoView t{p.from, p.to, p.weight, static_cast<int>(p.interior.size())};
        if (t.a > t.b)
            std::swap(t.a, t.b);
        r.edges.push_back(t);
    }
    std::sort(r.edges.begin(), r.edges.end());
    return r;
}

std::vector<TopoView> sorted_view(std::vector<TopoView> v) {
    for (auto& t : v)
        if (t.a > t.b)
            std::swap(t.a, t.b);
    std::sort(v.begin(), v.end());
    return v;
}

std::vector<std::string> oracle_diff(const std::vector<TopoView>& got,
                                     const std::vector<TopoView>& want, double rel_tol) {
    auto a = sorted_view(got);
    auto b = sorted_view(want);
    std::vector<std::string> out;
    if (a.size() != b.size())
        out.push_back("edge count " + std::to_string(a.size()) + " vs " + std::to_string(b.size()));
    auto close = [rel_tol](Weight x, Weight y) {
        return std::abs(x - y) <= rel_tol * std::max({1.0, std::abs(x), std::abs(y)});
    };
    for (std::size_t i = 0, j = 0; i < a.size() || j < b.size();) {
        if (i < a.size() && j < b.size()) {
            const auto& x = a[i];
            const auto& y = b[j];
            if (x.a == y.a && x.b == y.b && x.regulars == y.regulars && close(x.weight, y.weight)) {
                ++i, ++j;
                continue;
            }
            if (x < y) {
                out.push_back("unexpected " + view_str(x));
                ++i;
            } else {
                out.push_back("missing " + view_str(y));
                ++j;
            }
        } else if (i < a.size()) {
            out.push_back("unexpected " + view_str(a[i++]));
        } else {
            out.push_back("missing " + view_str(b[j++]));
        }
    }
    return out;
}

} // namespace toposimp

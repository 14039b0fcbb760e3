#include "toposimp/workload.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <random>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "toposimp/graph.hpp"

namespace toposimp {

namespace {

bool would_close_regular_cycle(const WeightedGraph& g, VertexId u, VertexId v) {
    if (g.degree(u) != 1 || g.degree(v) != 1)
        return false;
    VertexId prev = u;
    VertexId cur = g.neighbors(u).front().to;
    while (g.degree(cur) == 2) {
        const auto nbrs = g.neighbors(cur);
        VertexId next = nbrs[0].to == prev ? nbrs[1].to : nbrs[0].to;
        prev = cur;
        cur = next;
    }
    return cur == v;
}

void add_vertices(Workload& wl, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i)
        wl.ops.push_back({Workload::Op::Kind::AddVertex, kNoVertex, kNoVertex, 0});
    wl.vertices += n;
}

void add_edge(Workload& wl, VertexId u, VertexId v, Weight w) {
    wl.ops.push_back({Workload::Op::Kind::AddEdge, u, v, w});
    ++wl.edge_ops;
}

} // namespace

Workload gen_random(std::size_t n, std::size_t m, std::uint64_t seed, bool unit_weights) {
    if (m > n * (n - 1) / 2)
        throw GraphError(Errc::ParseError, "more edges requested than a simple graph admits");
    Workload wl;
    wl.label = "random(n=" + std::to_string(n) + ",m=" + std::to_string(m) + ")";
    wl.seed = seed;
    std::mt19937_64 rng(seed);
    add_vertices(wl, n);

    WeightedGraph sim;
    for (std::size_t i = 0; i < n; ++i)
        sim.add_vertex();
    std::uniform_int_distribution<VertexId> pick(0, static_cast<VertexId>(n - 1));
    std::uniform_int_distribution<int> wdist(1, 100);
    std::unordered_set<std::uint64_t> used;
    used.reserve(m * 2);

    std::size_t stall = 0;
    const std::size_t stall_limit = 1000 * (m + 1);
    while (wl.edge_ops < m) {
        VertexId u = pick(rng);
        VertexId v = pick(rng);
        if (u == v)
            continue;
        if (u > v)
            std::swap(u, v);
        std::uint64_t key = (static_cast<std::uint64_t>(u) << 32) | v;
        if (used.count(key))
            continue;
        if (would_close_regular_cycle(sim, u, v)) {
            ++wl.cycle_resamples;
            if (++stall > stall_limit)
                throw GraphError(Errc::Inconsistent, "random workload cannot avoid regular cycles");
            continue;
        }
        stall = 0;
        used.insert(key);
        Weight w = unit_weights ? 1.0 : static_cast<Weight>(wdist(rng));
        sim.add_edge(u, v, w);
        add_edge(wl, u, v, w);
    }
    return wl;
}

Workload gen_merge(std::size_t k) {
    if (k < 2)
        throw GraphError(Errc::ParseError, "merge workload needs at least two paths");
    Workload wl;
    wl.label = "merge(k=" + std::to_string(k) + ")";
    std::deque<std::pair<VertexId, VertexId>> ends;
    VertexId next = 0;
    for (std::size_t i = 0; i + 1 < k; ++i) {
        VertexId a = next++, b = next++, c = next++;
        add_vertices(wl, 3);
        add_edge(wl, a, b, 1.0);
        add_edge(wl, b, c, 1.0);
        ends.emplace_back(a, c);
    }
    VertexId a = next++, b = next++;
    add_vertices(wl, 2);
    add_edge(wl, a, b, 1.0);
    ends.emplace_back(a, b);

    while (ends.size() >= 2) {
        auto p = ends.front();
        ends.pop_front();
        auto q = ends.front();
        ends.pop_front();
        add_edge(wl, p.second, q.first, 1.0);
        ends.emplace_back(p.first, q.second);
    }
    return wl;
}

Workload gen_split(std::size_t p, std::uint64_t seed) {
    if (p < 1)
        throw GraphError(Errc::ParseError, "split workload needs at least one path");
    Workload wl;
    wl.label = "split(p=" + std::to_string(p) + ")";
    wl.seed = seed;
    std::mt19937_64 rng(seed);
    std::vector<VertexId> regulars;
    regulars.reserve(p);
    VertexId next = 0;
    for (std::size_t i = 0; i < p; ++i) {
        VertexId a = next++, b = next++, c = next++;
        add_vertices(wl, 3);
        add_edge(wl, a, b, 1.0);
        add_edge(wl, b, c, 1.0);
        regulars.push_back(b);
    }
    std::shuffle(regulars.begin(), regulars.end(), rng);
    std::size_t splits = (p + 1) / 2;
    for (std::size_t i = 0; i < splits; ++i) {
        VertexId fresh = next++;
        add_vertices(wl, 1);
        add_edge(wl, fresh, regulars[i], 1.0);
    }
    return wl;
}

Workload parse_edge_list(std::istream& in, const std::string& name, std::uint64_t seed) {
    Workload wl;
    wl.label = "file(" + name + ")";
    wl.seed = seed;

    std::unordered_map<std::string, VertexId> ids;
    std::unordered_set<std::uint64_t> used;
    struct Edge {
        VertexId u, v;
        Weight w;
    };
    std::vector<Edge> edges;

    std::string line;
    std::size_t lineno = 0;
    auto intern = [&](const std::string& tok) {
        auto [it, fresh] = ids.emplace(tok, static_cast<VertexId>(ids.size()));
        if (fresh)
            add_vertices(wl, 1);
        return it->second;
    };
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        std::istringstream ls(line);
        std::string a, b;
        if (!(ls >> a))
            continue; // blank
        if (!(ls >> b))
            throw GraphError(Errc::ParseError, "line " + std::to_string(lineno) +
                                                   ": expected two vertex labels");
        Weight w = 1.0;
        std::string wt;
        if (ls >> wt) {
            try {
                std::size_t pos = 0;
                w = std::stod(wt, &pos);
                if (pos != wt.size())
                    throw std::invalid_argument(wt);
            } catch (const std::exception&) {
                throw GraphError(Errc::ParseError,
                                 "line " + std::to_string(lineno) + ": bad weight '" + wt + "'");
            }
            if (w <= 0)
                throw GraphError(Errc::NonPositiveWeight,
                                 "line " + std::to_string(lineno) + ": weight must be positive");
        }
        std::string extra;
        if (ls >> extra)
            throw GraphError(Errc::ParseError,
                             "line " + std::to_string(lineno) + ": trailing token '" + extra + "'");
        VertexId u = intern(a);
        VertexId v = intern(b);
        if (u == v) {
            ++wl.skipped_self_loops;
            continue;
        }
        std::uint64_t key = (static_cast<std::uint64_t>(std::min(u, v)) << 32) | std::max(u, v);
        if (!used.insert(key).second) {
            ++wl.skipped_duplicates;
            continue;
        }
        edges.push_back({u, v, w});
    }
    std::mt19937_64 rng(seed);
    std::shuffle(edges.begin(), edges.end(), rng);
    for (const auto& e : edges)
        add_edge(wl, e.u, e.v, e.w);
    return wl;
}

Workload load_edge_list(const std::string& path, std::uint64_t seed) {
    std::ifstream in(path);
    if (!in)
        throw GraphError(Errc::ParseError, "cannot open " + path);
    return parse_edge_list(in, path, seed);
}

} // namespace toposimp

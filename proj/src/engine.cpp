#include "toposimp/engine.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

#include "toposimp/renumbering.hpp"
#include "toposimp/topology_tree.hpp"

namespace toposimp {

const char* case_name(InsertionCase c) {
    switch (c) {
    case InsertionCase::Case1: return "Case1";
    case InsertionCase::Case2: return "Case2";
    case InsertionCase::Case3: return "Case3";
    case InsertionCase::Case4: return "Case4";
    case InsertionCase::Case5: return "Case5";
    case InsertionCase::Case6: return "Case6";
    }
    return "?";
}

SimplificationEngine::SimplificationEngine(StrategyKind kind, std::int64_t capacity)
    : kind_(kind) {
    if (kind == StrategyKind::Renumbering)
        strategy_ = std::make_unique<RenumberingStrategy>(
            graph_, capacity, [this](TopoEdgeId id) { return edges_.at(id).weight; });
    else
        strategy_ = std::make_unique<TopologyTreeStrategy>(graph_);
}

SimplificationEngine::~SimplificationEngine() = default;

VertexId SimplificationEngine::insert_vertex() {
    VertexId v = graph_.add_vertex();
    incidence_.emplace_back();
    return v;
}

std::uint64_t SimplificationEngine::case_count(InsertionCase c) const {
    return case_counts_[static_cast<std::size_t>(c)];
}

SimplificationEngine::CaseInfo SimplificationEngine::classify_impl(VertexId x, VertexId y) const {
    if (!graph_.has_vertex(x) || !graph_.has_vertex(y))
        throw GraphError(Errc::UnknownVertex, "classify_insertion");
    if (x == y)
        throw GraphError(Errc::SelfLoop, "classify_insertion");
    if (graph_.has_edge(x, y))
        throw GraphError(Errc::DuplicateEdge, "classify_insertion");

    bool rx = graph_.is_regular(x);
    bool ry = graph_.is_regular(y);
    if (!rx && !ry) {
        bool x1 = graph_.degree(x) == 1;
        bool y1 = graph_.degree(y) == 1;
        if (x1 && y1) {
            // Closing the two loose ends of one regular path would leave a
            // cycle of regular vertices only, which the structure excludes.
            const TopoEdge& ex = edges_.at(sole_incident_edge(x));
            VertexId z1 = ex.a == x ? ex.b : ex.a;
            if (z1 == y) {
                ++cycle_rejections_;
                throw GraphError(Errc::RegularCycle, "insertion would close an all-regular cycle");
            }
            return {InsertionCase::Case3, x, y};
        }
        if (x1 || y1)
            return {InsertionCase::Case2, x1 ? x : y, x1 ? y : x};
        return {InsertionCase::Case1, x, y};
    }
    if (rx && ry)
        return {InsertionCase::Case6, x, y};
    VertexId reg = rx ? x : y;
    VertexId sing = rx ? y : x;
    if (graph_.degree(sing) == 1)
        return {InsertionCase::Case4, reg, sing};
    return {InsertionCase::Case5, reg, sing};
}

InsertionCase SimplificationEngine::classify_insertion(VertexId x, VertexId y) const {
    return classify_impl(x, y).kase;
}

TopoEdgeId SimplificationEngine::new_edge(VertexId a, VertexId b, Weight w, int regulars,
                                          UpdateOutcome& out) {
    TopoEdgeId id = next_id_++;
    edges_.emplace(id, TopoEdge{id, a, b, w, regulars});
    incidence_add(a, id);
    if (a != b)
        incidence_add(b, id);
    else
        ++self_loops_created_;
    out.created.push_back(id);
    return id;
}

void SimplificationEngine::remove_edge(TopoEdgeId id, UpdateOutcome& out) {
    auto it = edges_.find(id);
    assert(it != edges_.end());
    incidence_remove(it->second.a, id);
    if (it->second.a != it->second.b)
        incidence_remove(it->second.b, id);
    edges_.erase(it);
    out.removed.push_back(id);
}

void SimplificationEngine::replace_endpoint(TopoEdgeId id, VertexId from, VertexId to) {
    TopoEdge& e = edges_.at(id);
    assert(e.a == from || e.b == from);
    incidence_remove(from, id);
    (e.a == from ? e.a : e.b) = to;
    if (e.a == e.b)
        ++self_loops_created_; // path curled back onto `to`, which already lists the edge
    else
        incidence_add(to, id);
}

TopoEdgeId SimplificationEngine::sole_incident_edge(VertexId v) const {
    assert(incidence_[v].size() == 1);
    return incidence_[v].front();
}

void SimplificationEngine::incidence_add(VertexId v, TopoEdgeId id) {
    incidence_[v].push_back(id);
}

void SimplificationEngine::incidence_remove(VertexId v, TopoEdgeId id) {
    auto& lst = incidence_[v];
    auto it = std::find(lst.begin(), lst.end(), id);
    assert(it != lst.end());
    *it = lst.back();
    lst.pop_back();
}

void SimplificationEngine::split_at(VertexId x, VertexId exclude, UpdateOutcome& out,
                                    std::array<TopoEdgeId, 2>* pieces) {
    SplitPlan plan;
    plan.x = x;
    int filled = 0;
    for (const auto& n : graph_.neighbors(x)) {
        if (n.to == exclude)
            continue;
        assert(filled < 2);
        plan.ends[filled++] = {n.to, n.w};
    }
    assert(filled == 2);
    plan.old_edge = strategy_->find_topological_edge(x);
    const TopoEdge& old_rec = edges_.at(plan.old_edge);
    plan.old_endpoints = {old_rec.a, old_rec.b};
    plan.old_weight = old_rec.weight;
    plan.old_regulars = old_rec.regulars;
    plan.new_ids = {next_id_, next_id_ + 1};
    next_id_ += 2;

    if (old_rec.a == old_rec.b)
        ++parallel_split_subcases_; // self-loop split yields two parallel pieces

    auto sides = strategy_->on_split(plan);
    strategy_->on_vertex_singularized(x);

    remove_edge(plan.old_edge, out);
    for (int i = 0; i < 2; ++i) {
        TopoEdgeId id = plan.new_ids[i];
        edges_.emplace(id, TopoEdge{id, x, sides[i].far, sides[i].weight, sides[i].regulars});
        incidence_add(x, id);
        if (sides[i].far != x)
            incidence_add(sides[i].far, id);
        out.created.push_back(id);
    }
    if (pieces)
        *pieces = plan.new_ids;
}

void SimplificationEngine::extend_through(VertexId grown, VertexId inserted_from, Weight w,
                                          UpdateOutcome& out) {
    TopoEdgeId e = sole_incident_edge(grown);
    int before = edges_.at(e).regulars;
    replace_endpoint(e, grown, inserted_from);
    TopoEdge& rec = edges_.at(e);
    rec.weight += w;
    rec.regulars += 1;
    if (before == 0)
        strategy_->on_path_birth(e, grown, std::nullopt, 0);
    else
        strategy_->on_extend(e, grown, inserted_from);
    out.modified.push_back(e);
}

UpdateOutcome SimplificationEngine::insert_edge(VertexId x, VertexId y, Weight w) {
    if (w <= 0)
        throw GraphError(Errc::NonPositiveWeight, "insert_edge weight " + std::to_string(w));
    CaseInfo info = classify_impl(x, y);
    x = info.x;
    y = info.y;

    UpdateOutcome out;
    out.kase = info.kase;
    std::uint64_t steps0 = strategy_->steps();

    graph_.add_edge(x, y, w);
    ++insertions_;
    ++case_counts_[static_cast<std::size_t>(info.kase)];

    switch (info.kase) {
    case InsertionCase::Case1:
        new_edge(x, y, w, 0, out);
        break;
    case InsertionCase::Case2: // deg(x) == 1: x joins its path, which now ends at y
        extend_through(x, y, w, out);
        break;
    case InsertionCase::Case3: {
        TopoEdgeId e1 = sole_incident_edge(x);
        TopoEdgeId e2 = sole_incident_edge(y);
        assert(e1 != e2);
        const TopoEdge r1 = edges_.at(e1);
        const TopoEdge r2 = edges_.at(e2);
        VertexId z1 = r1.a == x ? r1.b : r1.a;
        VertexId z2 = r2.a == y ? r2.b : r2.a;

        MergePlan plan;
        plan.joining = w;
        if (r2.regulars <= r1.regulars) {
            plan.keep_edge = e1;
            plan.keep_regulars = r1.regulars;
            plan.keep_junction = x;
            plan.renum_edge = e2;
            plan.renum_regulars = r2.regulars;
            plan.renum_junction = y;
        } else {
            plan.keep_edge = e2;
            plan.keep_regulars = r2.regulars;
            plan.keep_junction = y;
            plan.renum_edge = e1;
            plan.renum_regulars = r1.regulars;
            plan.renum_junction = x;
        }
        remove_edge(e1, out);
        remove_edge(e2, out);
        plan.merged = new_edge(z1, z2, r1.weight + r2.weight + w, r1.regulars + r2.regulars + 2, out);
        strategy_->on_merge(plan);
        break;
    }
    case InsertionCase::Case4:
        split_at(x, y, out);
        extend_through(y, x, w, out);
        break;
    case InsertionCase::Case5:
        split_at(x, y, out);
        new_edge(x, y, w, 0, out);
        break;
    case InsertionCase::Case6:
        split_at(x, y, out);
        split_at(y, x, out);
        new_edge(x, y, w, 0, out);
        break;
    }

    out.steps = strategy_->steps() - steps0;
    return out;
}

std::vector<TopoView> SimplificationEngine::topological_view() const {
    std::vector<TopoView> v;
    v.reserve(edges_.size());
    for (const auto& [id, e] : edges_)
        v.push_back({std::min(e.a, e.b), std::max(e.a, e.b), e.weight, e.regulars});
    std::sort(v.begin(), v.end());
    return v;
}

std::vector<TopoEdge> SimplificationEngine::edges() const {
    std::vector<TopoEdge> v;
    v.reserve(edges_.size());
    for (const auto& [id, e] : edges_)
        v.push_back(e);
    std::sort(v.begin(), v.end(), [](const TopoEdge& a, const TopoEdge& b) { return a.id < b.id; });
    return v;
}

const TopoEdge& SimplificationEngine::edge(TopoEdgeId id) const { return edges_.at(id); }

std::size_t SimplificationEngine::singular_count() const {
    std::size_t n = 0;
    for (VertexId v = 0; v < graph_.vertex_count(); ++v)
        if (graph_.classify(v) == VertexClass::Singular)
            ++n;
    return n;
}

std::vector<std::string> SimplificationEngine::check_invariants() const {
    std::vector<std::string> out;

    // Structural checks on the store itself.
    Weight sum = 0;
    for (const auto& [id, e] : edges_) {
        sum += e.weight;
        if (graph_.classify(e.a) != VertexClass::Singular ||
            graph_.classify(e.b) != VertexClass::Singular)
            out.push_back("edge " + std::to_string(id) + " has a regular endpoint");
        if (e.weight <= 0)
            out.push_back("edge " + std::to_string(id) + " has non-positive weight");
        if (e.regulars < 0)
            out.push_back("edge " + std::to_string(id) + " has negative regular count");
    }
    if (std::abs(sum - graph_.total_weight()) >
        1e-9 * std::max(1.0, std::abs(graph_.total_weight())))
        out.push_back("sum of simplified weights != sum of graph weights");

    // Ground truth: recompute from scratch and compare as a multiset.
    auto want = oracle_recompute(graph_);
    for (auto& d : oracle_diff(topological_view(), want.edges))
        out.push_back("oracle mismatch: " + d);

    auto strat = strategy_->check_invariants(graph_, edges(), insertions_);
    out.insert(out.end(), strat.begin(), strat.end());
    return out;
}

void SimplificationEngine::debug_set_edge_weight(TopoEdgeId id, Weight w) {
    edges_.at(id).weight = w;
}

} // namespace toposimp

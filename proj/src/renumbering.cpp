#include "toposimp/renumbering.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <unordered_map>

#include "toposimp/oracle.hpp"

namespace toposimp {

RenumberingStrategy::RenumberingStrategy(const WeightedGraph& g, std::int64_t capacity,
                                         EdgeWeightFn edge_weight)
    : graph_(g), edge_total_(std::move(edge_weight)), capacity_(capacity) {
    if (capacity < 1)
        throw GraphError(Errc::CapacityExhausted, "capacity must be >= 1");
}

void RenumberingStrategy::set_label(VertexId v, RegNumber n, double lambda) {
    if (labels_.size() <= v)
        labels_.resize(graph_.vertex_count());
    labels_[v] = Label{n, lambda};
    ++steps_;
}

void RenumberingStrategy::clear_label(VertexId v) {
    if (v < labels_.size())
        labels_[v].reset();
    ++steps_;
}

std::optional<RenumberingStrategy::Label> RenumberingStrategy::label_of(VertexId v) const {
    return v < labels_.size() ? labels_[v] : std::nullopt;
}

RenumberingStrategy::Dict::const_iterator
RenumberingStrategy::item_containing(RegNumber n) const {
    auto it = items_.upper_bound(n); // predecessor-or-equal of n
    if (it == items_.begin())
        return items_.end();
    --it;
    if (n > it->first + it->second.count - 1)
        return items_.end();
    return it;
}

RenumberingStrategy::Dict::iterator RenumberingStrategy::item_containing(RegNumber n) {
    auto cit = std::as_const(*this).item_containing(n);
    return cit == items_.cend() ? items_.end() : items_.erase(cit, cit);
}

RenumberingStrategy::Dict::iterator RenumberingStrategy::item_of_edge(TopoEdgeId e) {
    auto k = key_of_edge_.find(e);
    assert(k != key_of_edge_.end());
    auto it = items_.find(k->second);
    assert(it != items_.end());
    return it;
}

std::pair<TopoEdgeId, RenumberingStrategy::IntervalItem>
RenumberingStrategy::lookup_edge(VertexId x) const {
    ++steps_;
    auto lbl = label_of(x);
    if (!lbl)
        throw GraphError(Errc::NotRegular, "vertex " + std::to_string(x) + " carries no number");
    auto it = item_containing(lbl->number);
    if (it == items_.end())
        throw GraphError(Errc::Inconsistent,
                         "no interval contains number " + std::to_string(lbl->number));
    return {it->second.edge, it->second};
}

TopoEdgeId RenumberingStrategy::find_topological_edge(VertexId x) const {
    return lookup_edge(x).first;
}

VertexId RenumberingStrategy::other_labeled_neighbor(VertexId u, VertexId exclude) const {
    for (const auto& n : graph_.neighbors(u))
        if (n.to != exclude && label_of(n.to))
            return n.to;
    return kNoVertex;
}

VertexId RenumberingStrategy::sole_unlabeled_neighbor(VertexId u) const {
    VertexId found = kNoVertex;
    for (const auto& n : graph_.neighbors(u)) {
        if (!label_of(n.to)) {
            assert(found == kNoVertex);
            found = n.to;
        }
    }
    assert(found != kNoVertex);
    return found;
}

// Weight label for a vertex appended after `u`, whose previous path neighbor
// is `v_prev` (kNoVertex when u has none). Continues the monotone direction
// of the sequence so label differences telescope into path sums.
double RenumberingStrategy::extend_lambda(VertexId u, VertexId v_prev, Weight w) const {
    double lu = label_of(u)->lambda_star;
    if (lu < 0)
        return lu - w;
    if (v_prev == kNoVertex || label_of(v_prev)->lambda_star <= 0)
        return lu + w;
    return label_of(v_prev)->lambda_star > lu ? lu - w : lu + w;
}

void RenumberingStrategy::note_width(const IntervalItem& item) {
    max_interval_width_ = std::max(max_interval_width_, static_cast<std::int64_t>(item.count));
}

bool RenumberingStrategy::fits(const IntervalItem& item, RegNumber key, bool low_end,
                               int growth) const {
    RegNumber extreme = low_end ? key - growth : key + item.count - 1 + growth;
    return extreme >= item.anchor - (capacity_ - 1) && extreme <= item.anchor + (capacity_ - 1);
}

RenumberingStrategy::Dict::iterator RenumberingStrategy::grow(Dict::iterator it, bool low_end,
                                                              VertexId v, VertexId u,
                                                              VertexId v_prev, Weight w) {
    RegNumber key = it->first;
    IntervalItem item = it->second;
    assert(fits(item, key, low_end, 1));
    RegNumber num = low_end ? key - 1 : key + item.count;
    double lambda = extend_lambda(u, v_prev, w);
    set_label(v, num, lambda);
    item.count += 1;
    ++steps_;
    if (low_end) {
        item.min_vertex = v;
        items_.erase(it);
        auto [nit, ok] = items_.emplace(num, item);
        assert(ok);
        key_of_edge_[item.edge] = num;
        note_width(nit->second);
        return nit;
    }
    it->second = item;
    note_width(item);
    return it;
}

void RenumberingStrategy::birth(TopoEdgeId e, VertexId r1, std::optional<VertexId> r2,
                                Weight joining) {
    if (births_ + 1 > capacity_) {
        assert(!rebuilding_);
        rebuild();
    }
    births_ += 1;
    RegNumber base = 2 * births_ * capacity_;
    set_label(r1, base, 0.0);
    IntervalItem item{e, 1, r1, base};
    if (r2) {
        set_label(*r2, base + 1, joining);
        item.count = 2;
    }
    items_.emplace(base, item);
    key_of_edge_[e] = base;
    ++steps_;
    note_width(item);
}

void RenumberingStrategy::on_path_birth(TopoEdgeId e, VertexId r1, std::optional<VertexId> r2,
                                        Weight joining) {
    birth(e, r1, r2, joining);
}

void RenumberingStrategy::on_extend(TopoEdgeId e, VertexId grown, VertexId inserted_from) {
    VertexId u = kNoVertex;
    for (const auto& n : graph_.neighbors(grown))
        if (n.to != inserted_from)
            u = n.to;
    assert(u != kNoVertex && label_of(u));
    Weight w = graph_.edge_weight(u, grown);
    for (;;) {
        auto it = item_of_edge(e);
        bool low = it->second.count > 1 && label_of(u)->number == it->first;
        if (fits(it->second, it->first, low, 1)) {
            grow(it, low, grown, u, other_labeled_neighbor(u, grown), w);
            return;
        }
        rebuild();
    }
}

bool RenumberingStrategy::try_merge(const MergePlan& plan) {
    auto it = item_of_edge(plan.keep_edge);
    VertexId jk = plan.keep_junction;
    VertexId jr = plan.renum_junction;
    VertexId u0 = kNoVertex;
    for (const auto& n : graph_.neighbors(jk))
        if (n.to != jr)
            u0 = n.to;
    assert(u0 != kNoVertex && label_of(u0));

    bool low = it->second.count > 1 && label_of(u0)->number == it->first;
    if (!fits(it->second, it->first, low, plan.renum_regulars + 2))
        return false; // nothing touched; caller rebuilds and retries

    // Junction of the kept side extends the kept interval like an ordinary
    // path extension; the other junction and the shorter side follow in path
    // order, numbers and weights assigned in one sweep.
    it = grow(it, low, jk, u0, other_labeled_neighbor(u0, jk), graph_.edge_weight(u0, jk));
    it = grow(it, low, jr, jk, u0, plan.joining);
    VertexId prev2 = jk;
    VertexId prev = jr;
    for (int i = 0; i < plan.renum_regulars; ++i) {
        VertexId next = kNoVertex;
        for (const auto& n : graph_.neighbors(prev))
            if (n.to != prev2)
                next = n.to;
        assert(next != kNoVertex);
        it = grow(it, low, next, prev, prev2, graph_.edge_weight(prev, next));
        prev2 = prev;
        prev = next;
    }

    renumber_steps_ += 2 * static_cast<std::uint64_t>(plan.renum_regulars + 1);
    if (plan.renum_regulars > 0) {
        auto renum_it = item_of_edge(plan.renum_edge);
        key_of_edge_.erase(plan.renum_edge);
        items_.erase(renum_it);
        ++steps_;
    }
    key_of_edge_.erase(plan.keep_edge);
    key_of_edge_[plan.merged] = it->first;
    it->second.edge = plan.merged;
    return true;
}

void RenumberingStrategy::on_merge(const MergePlan& plan) {
    if (plan.keep_regulars == 0 && plan.renum_regulars == 0) {
        birth(plan.merged, plan.keep_junction, plan.renum_junction, plan.joining);
        return;
    }
    while (!try_merge(plan))
        rebuild();
}

std::pair<Weight, Weight> RenumberingStrategy::find_split_weights(VertexId x) const {
    auto [edge, item] = lookup_edge(x);
    RegNumber key = key_of_edge_.at(edge);
    RegNumber nx = label_of(x)->number;
    Weight total = edge_total_(edge);
    Weight w_low;
    if (nx == key) {
        // x is the minimum vertex; the low piece is the single graph edge
        // from x to its singular-side neighbor.
        VertexId z1 = sole_unlabeled_neighbor(x);
        w_low = graph_.edge_weight(z1, x);
    } else {
        VertexId u = item.min_vertex;
        VertexId z1 = sole_unlabeled_neighbor(u);
        w_low = graph_.edge_weight(z1, u) +
                std::abs(label_of(u)->lambda_star - label_of(x)->lambda_star);
    }
    return {w_low, total - w_low};
}

std::array<SplitSide, 2> RenumberingStrategy::on_split(const SplitPlan& plan) {
    assert(label_of(plan.x));
    auto it = item_containing(label_of(plan.x)->number);
    assert(it != items_.end() && it->second.edge == plan.old_edge);
    RegNumber key = it->first;
    IntervalItem item = it->second;
    RegNumber nx = label_of(plan.x)->number;
    int c_low = static_cast<int>(nx - key);
    int c_high = item.count - 1 - c_low;

    // Match the interval's low/high sides to the graph-side anchors through
    // the neighbors' numbers (path neighbors of x are numbered nx +- 1).
    int low_idx = -1;
    for (int i = 0; i < 2; ++i) {
        auto lbl = label_of(plan.ends[i].nbr);
        if (lbl && lbl->number == nx - 1)
            low_idx = i;
    }
    if (low_idx < 0) {
        low_idx = 0;
        if (c_high > 0) {
            auto l0 = label_of(plan.ends[0].nbr);
            low_idx = (l0 && l0->number == nx + 1) ? 1 : 0;
        }
    }
    int high_idx = 1 - low_idx;

    Weight w_low;
    VertexId far_low;
    if (c_low == 0) {
        w_low = plan.ends[low_idx].w;
        far_low = plan.ends[low_idx].nbr;
    } else {
        VertexId u = item.min_vertex;
        VertexId z1 = sole_unlabeled_neighbor(u);
        w_low = graph_.edge_weight(z1, u) +
                std::abs(label_of(u)->lambda_star - label_of(plan.x)->lambda_star);
        far_low = z1;
    }
    Weight w_high = plan.old_weight - w_low;
    VertexId far_high;
    if (c_high == 0)
        far_high = plan.ends[high_idx].nbr;
    else
        far_high = plan.old_endpoints.first == far_low ? plan.old_endpoints.second
                                                       : plan.old_endpoints.first;

    // Dictionary surgery: retire the old item, register surviving pieces.
    // The low piece keeps the old key and minimum vertex; the high piece is
    // keyed just above x with x's higher-numbered neighbor as its minimum.
    items_.erase(it);
    key_of_edge_.erase(plan.old_edge);
    steps_ += 2;
    if (c_low >= 1) {
        IntervalItem low_item{plan.new_ids[low_idx], c_low, item.min_vertex, item.anchor};
        items_.emplace(key, low_item);
        key_of_edge_[low_item.edge] = key;
        if (c_low == 1)
            labels_[low_item.min_vertex]->lambda_star = 0; // lone survivor resets
        ++steps_;
    }
    if (c_high >= 1) {
        VertexId hi_min = plan.ends[high_idx].nbr;
        assert(label_of(hi_min) && label_of(hi_min)->number == nx + 1);
        IntervalItem high_item{plan.new_ids[high_idx], c_high, hi_min, item.anchor};
        items_.emplace(nx + 1, high_item);
        key_of_edge_[high_item.edge] = nx + 1;
        if (c_high == 1)
            labels_[hi_min]->lambda_star = 0;
        ++steps_;
    }
    clear_label(plan.x);

    std::array<SplitSide, 2> sides;
    sides[low_idx] = {far_low, w_low, c_low};
    sides[high_idx] = {far_high, w_high, c_high};
    return sides;
}

void RenumberingStrategy::on_vertex_singularized(VertexId v) { clear_label(v); }

void RenumberingStrategy::rebuild() {
    assert(!rebuilding_);
    rebuilding_ = true;
    ++rebuilds_;

    // Chase each interval's vertices by ascending number while the labels
    // are still valid; relabel afterwards under a doubled capacity.
    struct PathVertices {
        TopoEdgeId edge;
        std::vector<VertexId> order;
    };
    std::vector<PathVertices> paths;
    paths.reserve(items_.size());
    for (const auto& [key, item] : items_) {
        PathVertices p{item.edge, {item.min_vertex}};
        for (int i = 1; i < item.count; ++i) {
            VertexId cur = p.order.back();
            RegNumber want = label_of(cur)->number + 1;
            VertexId next = kNoVertex;
            for (const auto& n : graph_.neighbors(cur)) {
                auto lbl = label_of(n.to);
                if (lbl && lbl->number == want)
                    next = n.to;
            }
            assert(next != kNoVertex);
            p.order.push_back(next);
        }
        paths.push_back(std::move(p));
    }

    for (bool done = false; !done;) {
        capacity_ *= 2;
        births_ = 0;
        items_.clear();
        key_of_edge_.clear();
        std::fill(labels_.begin(), labels_.end(), std::nullopt);
        done = true;
        for (const auto& p : paths) {
            steps_ += p.order.size();
            if (static_cast<std::int64_t>(p.order.size()) > capacity_) {
                done = false; // a path longer than the allowance; double again
                break;
            }
            if (p.order.size() == 1) {
                birth(p.edge, p.order[0], std::nullopt, 0);
                continue;
            }
            birth(p.edge, p.order[0], p.order[1], graph_.edge_weight(p.order[0], p.order[1]));
            auto it = item_of_edge(p.edge);
            for (std::size_t i = 2; i < p.order.size(); ++i)
                it = grow(it, false, p.order[i], p.order[i - 1], p.order[i - 2],
                          graph_.edge_weight(p.order[i - 1], p.order[i]));
        }
    }
    rebuilding_ = false;
}

std::vector<std::pair<std::string, std::uint64_t>> RenumberingStrategy::counters() const {
    return {{"renumber_steps", renumber_steps_},
            {"paths_born", static_cast<std::uint64_t>(births_)},
            {"dictionary_size", items_.size()},
            {"max_interval_width", static_cast<std::uint64_t>(max_interval_width_)},
            {"rebuilds", rebuilds_},
            {"steps", steps_}};
}

std::vector<std::string>
RenumberingStrategy::check_invariants(const WeightedGraph& g, const std::vector<TopoEdge>& edges,
                                      std::uint64_t insertions) const {
    std::vector<std::string> out;
    auto fail = [&out](const std::string& s) { out.push_back("renumbering: " + s); };

    std::unordered_map<TopoEdgeId, const TopoEdge*> by_id;
    for (const auto& e : edges)
        by_id[e.id] = &e;

    std::size_t labeled = 0;
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        if (label_of(v)) {
            ++labeled;
            if (g.classify(v) != VertexClass::Regular)
                fail("label on singular vertex " + std::to_string(v));
        }
    }

    // Walk every real path: numbers consecutive, weights telescoping,
    // strictly monotone, and exactly one dictionary item covering it.
    std::size_t paths_with_regulars = 0;
    for (const auto& p : walk_regular_paths(g)) {
        if (p.interior.empty())
            continue;
        ++paths_with_regulars;
        bool all_labeled = true;
        for (VertexId v : p.interior)
            if (!label_of(v)) {
                fail("unlabeled regular vertex " + std::to_string(v));
                all_labeled = false;
            }
        if (!all_labeled)
            continue;
        RegNumber lo = label_of(p.interior.front())->number;
        RegNumber hi = lo;
        int num_dir = 0;
        int lam_dir = 0;
        for (std::size_t i = 0; i + 1 < p.interior.size(); ++i) {
            auto a = *label_of(p.interior[i]);
            auto b = *label_of(p.interior[i + 1]);
            if (std::abs(a.number - b.number) != 1)
                fail("numbers not consecutive at vertex " + std::to_string(p.interior[i]));
            int d = b.number > a.number ? 1 : -1;
            if (num_dir == 0)
                num_dir = d;
            else if (d != num_dir)
                fail("numbering changes direction along a path");
            Weight lw = g.edge_weight(p.interior[i], p.interior[i + 1]);
            if (std::abs(std::abs(a.lambda_star - b.lambda_star) - lw) > 1e-9 * std::max(1.0, lw))
                fail("label difference != edge weight at vertex " + std::to_string(p.interior[i]));
            int wd = b.lambda_star > a.lambda_star ? 1 : -1;
            if (lam_dir == 0)
                lam_dir = wd;
            else if (wd != lam_dir)
                fail("weight labels not strictly monotone along a path");
            lo = std::min(lo, b.number);
            hi = std::max(hi, b.number);
        }
        auto it = item_containing(lo);
        if (it == items_.end() || it->first != lo) {
            fail("no dictionary key at path minimum " + std::to_string(lo));
            continue;
        }
        const IntervalItem& item = it->second;
        if (item.count != static_cast<int>(p.interior.size()))
            fail("item count mismatch on key " + std::to_string(lo));
        if (hi != lo + item.count - 1)
            fail("interval not contiguous on key " + std::to_string(lo));
        if (!label_of(item.min_vertex) || label_of(item.min_vertex)->number != lo)
            fail("min_vertex does not carry the key number");
        if (item.min_vertex != p.interior.front() && item.min_vertex != p.interior.back())
            fail("min_vertex not at a path end");
        auto rec = by_id.find(item.edge);
        if (rec == by_id.end()) {
            fail("item references unknown edge " + std::to_string(item.edge));
        } else {
            const TopoEdge& e = *rec->second;
            if (e.regulars != item.count)
                fail("edge regular count disagrees with item count");
            if (std::abs(e.weight - p.weight) > 1e-9 * std::max(1.0, p.weight))
                fail("edge weight disagrees with path sum");
            if (std::min(e.a, e.b) != std::min(p.from, p.to) ||
                std::max(e.a, e.b) != std::max(p.from, p.to))
                fail("edge endpoints disagree with walked path");
        }
    }

    if (paths_with_regulars != items_.size())
        fail("dictionary size " + std::to_string(items_.size()) + " != paths with regulars " +
             std::to_string(paths_with_regulars));

    std::size_t total_count = 0;
    bool first = true;
    RegNumber prev_end = 0;
    for (const auto& [key, item] : items_) {
        total_count += static_cast<std::size_t>(item.count);
        if (!first && key <= prev_end)
            fail("intervals overlap at key " + std::to_string(key));
        first = false;
        prev_end = key + item.count - 1;
        if (key < 1 || prev_end > 2 * capacity_ * capacity_)
            fail("interval outside [1, 2*capacity^2] at key " + std::to_string(key));
        if (key < item.anchor - (capacity_ - 1) || prev_end > item.anchor + (capacity_ - 1))
            fail("interval outside its birth allowance at key " + std::to_string(key));
    }
    if (total_count != labeled)
        fail("label count != sum of interval counts");

    if (insertions >= 2) {
        double budget =
            static_cast<double>(insertions) * std::log2(static_cast<double>(insertions));
        if (static_cast<double>(renumber_steps_) > budget)
            fail("renumber steps exceed the insertion budget");
    }
    return out;
}

} // namespace toposimp

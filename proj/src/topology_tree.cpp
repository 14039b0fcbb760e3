#include "toposimp/topology_tree.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <unordered_map>
#include <unordered_set>

#include "toposimp/oracle.hpp"

namespace toposimp {

TopologyTreeStrategy::TopologyTreeStrategy(const WeightedGraph& g) : graph_(g) {}

int TopologyTreeStrategy::Cluster::cluster_degree() const {
    int d = 0;
    for (const auto& r : adj)
        if (r.cl)
            ++d;
    return d;
}

TopologyTreeStrategy::Cluster* TopologyTreeStrategy::alloc(int level) {
    Cluster* c;
    if (!free_.empty()) {
        c = free_.back();
        free_.pop_back();
    } else {
        pool_.emplace_back();
        c = &pool_.back();
    }
    *c = Cluster{};
    c->level = level;
    ++live_clusters_;
    ++clusters_touched_;
    ++steps_;
    return c;
}

void TopologyTreeStrategy::release(Cluster* c) {
    assert(c->adj.empty() && !c->parent);
    c->freed = true;
    c->children.clear();
    c->vertices.clear();
    deferred_free_.push_back(c);
    --live_clusters_;
    ++clusters_touched_;
    ++steps_;
}

void TopologyTreeStrategy::set_parent(Cluster* child, Cluster* parent) {
    assert(!child->parent && parent->children.size() < 2);
    assert(parent->level == child->level + 1);
    parent->children.push_back(child);
    child->parent = parent;
    child->edge = kNoEdge;
    ++steps_;
}

void TopologyTreeStrategy::detach_from_parent(Cluster* c) {
    Cluster* p = c->parent;
    if (!p)
        return;
    auto it = std::find(p->children.begin(), p->children.end(), c);
    assert(it != p->children.end());
    p->children.erase(it);
    c->parent = nullptr;
    ++steps_;
}

void TopologyTreeStrategy::drop_mutual(Cluster* a, Cluster* b) {
    auto erase_rec = [this](Cluster* from, Cluster* target) {
        auto it = std::find_if(from->adj.begin(), from->adj.end(),
                               [target](const AdjRec& r) { return r.cl == target; });
        if (it != from->adj.end())
            from->adj.erase(it);
        ++steps_;
    };
    erase_rec(a, b);
    erase_rec(b, a);
}

void TopologyTreeStrategy::drop_records(Cluster* c) {
    for (auto& r : c->adj)
        if (r.cl) {
            auto& peer = r.cl->adj;
            auto it = std::find_if(peer.begin(), peer.end(),
                                   [c](const AdjRec& q) { return q.cl == c; });
            if (it != peer.end())
                peer.erase(it);
            ++steps_;
        }
    c->adj.clear();
}

void TopologyTreeStrategy::set_mutual(Cluster* a, Cluster* b, Weight w) {
    assert(a != b);
    auto upsert = [this](Cluster* from, Cluster* to, Weight wt) {
        for (auto& r : from->adj)
            if (r.cl == to) {
                r.w = wt;
                return;
            }
        from->adj.push_back({to, kNoVertex, wt});
        assert(from->adj.size() <= 2);
        ++steps_;
    };
    upsert(a, b, w);
    upsert(b, a, w);
}

void TopologyTreeStrategy::rebuild_level0_records(Cluster* c) {
    assert(c->level == 0);
    ++steps_;
    // Recompute c's records from the graph; peers whose link set toward c
    // (or whose endpoint records) actually changed re-enter the changed list.
    std::vector<Cluster*> old_peers;
    for (const auto& r : c->adj)
        if (r.cl) {
            old_peers.push_back(r.cl);
            auto& peer = r.cl->adj;
            auto it = std::find_if(peer.begin(), peer.end(),
                                   [c](const AdjRec& q) { return q.cl == c; });
            if (it != peer.end())
                peer.erase(it);
        }
    c->adj.clear();
    std::vector<Cluster*> new_peers;
    for (VertexId v : c->vertices) {
        for (const auto& n : graph_.neighbors(v)) {
            Cluster* t = n.to < leaf_.size() ? leaf_[n.to] : nullptr;
            if (t == c)
                continue; // internal edge
            if (t) {
                // A leftover endpoint record from v's pre-regular life would
                // overflow the peer's two slots.
                auto stale = std::remove_if(t->adj.begin(), t->adj.end(),
                                            [v](const AdjRec& q) { return !q.cl && q.sing == v; });
                if (stale != t->adj.end()) {
                    t->adj.erase(stale, t->adj.end());
                    note_changed(t);
                }
                set_mutual(c, t, n.w);
                new_peers.push_back(t);
            } else {
                c->adj.push_back({nullptr, n.to, n.w});
            }
        }
    }
    for (Cluster* p : old_peers)
        if (std::find(new_peers.begin(), new_peers.end(), p) == new_peers.end())
            note_changed(p);
    for (Cluster* p : new_peers)
        if (std::find(old_peers.begin(), old_peers.end(), p) == old_peers.end())
            note_changed(p);
    assert(c->adj.size() <= 2);
}

void TopologyTreeStrategy::rebuild_from_children(Cluster* p) {
    assert(p->level > 0 && !p->children.empty() && p->children.size() <= 2);
    ++steps_;
    drop_records(p);
    Cluster* c1 = p->children[0];
    Cluster* c2 = p->children.size() == 2 ? p->children[1] : nullptr;
    p->vertex_count = c1->vertex_count + (c2 ? c2->vertex_count : 0);
    if (!c2) {
        p->weight = c1->weight;
    } else {
        Weight internal = 0;
        bool found = false;
        for (const auto& r : c1->adj)
            if (r.cl == c2) {
                internal = r.w;
                found = true;
            }
        assert(found);
        (void)found;
        p->weight = c1->weight + c2->weight + internal;
    }
    for (Cluster* ch : p->children) {
        for (const auto& r : ch->adj) {
            if (r.cl) {
                if (r.cl->parent == p)
                    continue; // the internal adjacency
                assert(r.cl->parent != nullptr);
                set_mutual(p, r.cl->parent, r.w);
            } else {
                p->adj.push_back({nullptr, r.sing, r.w});
            }
        }
    }
    assert(p->adj.size() <= 2);
}

TopologyTreeStrategy::Cluster* TopologyTreeStrategy::sibling(Cluster* c) const {
    if (!c->parent || c->parent->children.size() != 2)
        return nullptr;
    return c->parent->children[0] == c ? c->parent->children[1] : c->parent->children[0];
}

bool TopologyTreeStrategy::is_adjacent(const Cluster* a, const Cluster* b) const {
    for (const auto& r : a->adj)
        if (r.cl == b)
            return true;
    return false;
}

void TopologyTreeStrategy::push(Lists& l, Cluster* c, ListFlag f) {
    if (c->listed == f)
        return;
    if (c->listed == kDel)
        return; // deletion wins
    if (f == kDel) {
        c->listed = kDel;
        l.del.push_back(c);
        return;
    }
    if (c->listed != kNone)
        return;
    c->listed = f;
    (f == kChg ? l.chg : l.ins).push_back(c);
}

void TopologyTreeStrategy::unlist(Cluster* c) { c->listed = kNone; }

void TopologyTreeStrategy::note_changed(Cluster* c) {
    if (c->listed == kNone)
        push(cur_, c, kChg);
}

void TopologyTreeStrategy::destroy_vertex(VertexId u) {
    Cluster* cu = u < leaf_.size() ? leaf_[u] : nullptr;
    assert(cu && cu->level == 0);
    std::vector<Cluster*> dirty;
    auto collect = [&dirty](Cluster* c) {
        for (const auto& r : c->adj)
            if (r.cl)
                dirty.push_back(r.cl);
    };

    leaf_[u] = nullptr;
    collect(cu);
    drop_records(cu);
    push(cur_, cu, kDel);
    ++clusters_touched_;

    if (cu->vertices.size() == 2) {
        VertexId p = cu->vertices[0] == u ? cu->vertices[1] : cu->vertices[0];
        leaf_[p] = nullptr;
        Cluster* d = nullptr;
        VertexId q = kNoVertex;
        for (const auto& n : graph_.neighbors(p))
            if (n.to < leaf_.size() && leaf_[n.to]) {
                q = n.to;
                d = leaf_[n.to];
            }
        Cluster* merged = alloc(0);
        if (d && d->vertices.size() == 1) {
            // strip-and-union: the leftover partner joins the size-one
            // neighbor so the partition condition keeps holding
            collect(d);
            drop_records(d);
            push(cur_, d, kDel);
            leaf_[q] = nullptr;
            merged->vertices = {p, q};
            merged->weight = graph_.edge_weight(p, q);
        } else {
            merged->vertices = {p};
            merged->weight = 0;
        }
        merged->vertex_count = static_cast<int>(merged->vertices.size());
        for (VertexId v : merged->vertices)
            leaf_[v] = merged;
        rebuild_level0_records(merged);
        push(cur_, merged, kIns);
    }

    for (Cluster* c : dirty)
        if (c->listed == kNone) {
            rebuild_level0_records(c);
            note_changed(c);
        }
}

void TopologyTreeStrategy::create_vertex(VertexId u, VertexId co_created) {
    if (leaf_.size() < graph_.vertex_count())
        leaf_.resize(graph_.vertex_count(), nullptr);
    assert(!leaf_[u]);
    std::vector<Cluster*> dirty;

    // A size-one neighbor cluster absorbs the new vertex; prefer one that is
    // not the co-created junction's singleton.
    Cluster* best = nullptr;
    bool best_is_co = false;
    for (const auto& n : graph_.neighbors(u)) {
        Cluster* c = n.to < leaf_.size() ? leaf_[n.to] : nullptr;
        if (c && c->vertices.size() == 1) {
            bool is_co = n.to == co_created;
            if (!best || (best_is_co && !is_co)) {
                best = c;
                best_is_co = is_co;
            }
        }
    }

    Cluster* nu = alloc(0);
    if (best) {
        VertexId q = best->vertices[0];
        for (const auto& r : best->adj)
            if (r.cl)
                dirty.push_back(r.cl);
        drop_records(best);
        push(cur_, best, kDel);
        leaf_[q] = nullptr;
        nu->vertices = {q, u};
        nu->weight = graph_.edge_weight(q, u);
    } else {
        nu->vertices = {u};
        nu->weight = 0;
    }
    nu->vertex_count = static_cast<int>(nu->vertices.size());
    for (VertexId v : nu->vertices)
        leaf_[v] = nu;
    rebuild_level0_records(nu);
    push(cur_, nu, kIns);

    for (Cluster* c : dirty)
        if (c->listed == kNone) {
            rebuild_level0_records(c);
            note_changed(c);
        }
}

void TopologyTreeStrategy::level0_update(Transition t, VertexId u, VertexId v) {
    assert(cur_.empty());
    switch (t) {
    case Transition::DestroyOne: destroy_vertex(u); break;
    case Transition::DestroyTwo: destroy_vertex(u); destroy_vertex(v); break;
    case Transition::CreateOne: create_vertex(u, kNoVertex); break;
    case Transition::CreateTwo: create_vertex(u, v); create_vertex(v, u); break;
    case Transition::NoChange: break;
    }
}

void TopologyTreeStrategy::propagate() {
    int level = 0;
    while (!cur_.empty()) {
        list_high_water_ = std::max(list_high_water_, cur_.size());
        Lists next;

        // Deleted clusters leave their parents; a lone remaining child is
        // re-examined as changed.
        for (Cluster* c : cur_.del) {
            if (c->listed != kDel)
                continue;
            unlist(c);
            Cluster* p = c->parent;
            detach_from_parent(c);
            if (p) {
                if (p->children.empty()) {
                    push(next, p, kDel);
                } else {
                    Cluster* rem = p->children[0];
                    if (rem->listed == kNone)
                        push(cur_, rem, kChg);
                }
            }
            release(c);
            ++steps_;
        }
        cur_.del.clear();

        // Changed clusters with a sibling: adjacent siblings keep their
        // parent (re-examined above); non-adjacent ones are orphaned and
        // reinserted, their parent dies.
        for (std::size_t i = 0; i < cur_.chg.size(); ++i) {
            Cluster* c = cur_.chg[i];
            if (c->listed != kChg)
                continue;
            Cluster* s = sibling(c);
            if (!s)
                continue;
            Cluster* p = c->parent;
            if (is_adjacent(c, s)) {
                unlist(c);
                if (s->listed == kChg)
                    unlist(s);
                push(next, p, kChg);
            } else {
                unlist(c);
                if (s->listed == kChg)
                    unlist(s);
                detach_from_parent(c);
                detach_from_parent(s);
                push(cur_, c, kIns);
                push(cur_, s, kIns);
                push(next, p, kDel);
            }
            ++steps_;
        }

        // Remaining changed and inserted clusters find their place: either
        // every neighbor is paired up and the cluster promotes (or founds)
        // its own parent, or it teams up with a lone neighbor.
        std::size_t ci = 0, ii = 0;
        for (;;) {
            Cluster* c = nullptr;
            while (ci < cur_.chg.size()) {
                if (cur_.chg[ci]->listed == kChg) {
                    c = cur_.chg[ci];
                    break;
                }
                ++ci;
            }
            if (!c)
                while (ii < cur_.ins.size()) {
                    if (cur_.ins[ii]->listed == kIns) {
                        c = cur_.ins[ii];
                        break;
                    }
                    ++ii;
                }
            if (!c)
                break;
            unlist(c);
            ++steps_;

            int deg = c->cluster_degree();
            if (deg == 0) {
                Cluster* p = c->parent;
                if (p) {
                    detach_from_parent(c);
                    push(next, p, kDel);
                }
                continue; // c covers its whole path: a root
            }
            Cluster* lone = nullptr;
            for (const auto& r : c->adj)
                if (r.cl && !r.cl->has_sibling()) {
                    lone = r.cl;
                    break;
                }
            if (!lone) {
                if (c->parent) {
                    push(next, c->parent, kChg);
                } else {
                    Cluster* p = alloc(level + 1);
                    set_parent(c, p);
                    push(next, p, kIns);
                }
            } else {
                Cluster* d = lone;
                if (d->listed == kChg || d->listed == kIns)
                    unlist(d);
                Cluster* pc = c->parent;
                Cluster* pd = d->parent;
                if (pc && pd) {
                    detach_from_parent(c);
                    set_parent(c, pd);
                    push(next, pc, kDel);
                    push(next, pd, kChg);
                } else if (!pc && !pd) {
                    Cluster* p = alloc(level + 1);
                    set_parent(c, p);
                    set_parent(d, p);
                    push(next, p, kIns);
                } else if (pc && !pd) {
                    set_parent(d, pc);
                    push(next, pc, kChg);
                } else {
                    set_parent(c, pd);
                    push(next, pd, kChg);
                }
            }
        }
        cur_.chg.clear();
        cur_.ins.clear();

        // Settle the next level's bookkeeping: dying parents drop their
        // links first, surviving ones recompute weights and adjacency from
        // their children.
        for (Cluster* p : next.del)
            if (p->listed == kDel)
                drop_records(p);
        for (Cluster* p : next.chg)
            if (p->listed == kChg)
                rebuild_from_children(p);
        for (Cluster* p : next.ins)
            if (p->listed == kIns)
                rebuild_from_children(p);

        cur_ = std::move(next);
        ++level;
    }
    for (Cluster* c : deferred_free_)
        free_.push_back(c);
    deferred_free_.clear();
}

TopologyTreeStrategy::Cluster* TopologyTreeStrategy::climb(Cluster* c) const {
    while (c->parent) {
        c = c->parent;
        ++steps_;
    }
    return c;
}

void TopologyTreeStrategy::bind_root(VertexId member, TopoEdgeId e) {
    assert(member < leaf_.size() && leaf_[member]);
    Cluster* r = climb(leaf_[member]);
    r->edge = e;
    max_height_seen_ = std::max(max_height_seen_, r->level);
}

const TopologyTreeStrategy::Cluster* TopologyTreeStrategy::leaf_of(VertexId v) const {
    return v < leaf_.size() ? leaf_[v] : nullptr;
}

const TopologyTreeStrategy::Cluster* TopologyTreeStrategy::root_of(VertexId v) const {
    const Cluster* l = leaf_of(v);
    return l ? climb(const_cast<Cluster*>(l)) : nullptr;
}

TopoEdgeId TopologyTreeStrategy::find_topological_edge(VertexId x) const {
    const Cluster* l = leaf_of(x);
    if (!l)
        throw GraphError(Errc::NotRegular, "vertex " + std::to_string(x) + " is in no cluster");
    const Cluster* r = climb(const_cast<Cluster*>(l));
    assert(r->edge != kNoEdge);
    return r->edge;
}

Weight TopologyTreeStrategy::edge_weight_from_root(const Cluster& root) const {
    if (root.adj.size() != 2 || root.adj[0].cl || root.adj[1].cl)
        throw GraphError(Errc::MissingAdjacency,
                         "root lacks its two singular endpoint records");
    return root.weight + root.adj[0].w + root.adj[1].w;
}

void TopologyTreeStrategy::on_path_birth(TopoEdgeId e, VertexId r1, std::optional<VertexId> r2,
                                         Weight) {
    if (r2)
        level0_update(Transition::CreateTwo, r1, *r2);
    else
        level0_update(Transition::CreateOne, r1);
    propagate();
    bind_root(r1, e);
}

void TopologyTreeStrategy::on_extend(TopoEdgeId e, VertexId grown, VertexId) {
    level0_update(Transition::CreateOne, grown);
    propagate();
    bind_root(grown, e);
}

void TopologyTreeStrategy::on_merge(const MergePlan& plan) {
    level0_update(Transition::CreateTwo, plan.keep_junction, plan.renum_junction);
    propagate();
    bind_root(plan.keep_junction, plan.merged);
}

std::array<SplitSide, 2> TopologyTreeStrategy::on_split(const SplitPlan& plan) {
    level0_update(Transition::DestroyOne, plan.x);
    propagate();

    std::array<SplitSide, 2> sides;
    for (int i = 0; i < 2; ++i) {
        VertexId nbr = plan.ends[i].nbr;
        Cluster* l = nbr < leaf_.size() ? leaf_[nbr] : nullptr;
        if (!l) {
            sides[i] = {nbr, plan.ends[i].w, 0};
            continue;
        }
        Cluster* root = climb(l);
        if (root->adj.size() != 2 || root->adj[0].cl || root->adj[1].cl)
            throw GraphError(Errc::MissingAdjacency, "piece root lacks endpoint records");
        VertexId far = kNoVertex;
        int to_x = 0;
        for (const auto& r : root->adj) {
            if (r.sing == plan.x)
                ++to_x;
            else
                far = r.sing;
        }
        assert(to_x >= 1 && far != kNoVertex);
        sides[i] = {far, edge_weight_from_root(*root), root->vertex_count};
        root->edge = plan.new_ids[i];
        max_height_seen_ = std::max(max_height_seen_, root->level);
    }
    return sides;
}

void TopologyTreeStrategy::on_vertex_singularized(VertexId v) {
    assert(v >= leaf_.size() || !leaf_[v]);
    (void)v;
}

std::vector<std::pair<std::string, std::uint64_t>> TopologyTreeStrategy::counters() const {
    return {{"clusters_touched", clusters_touched_},
            {"live_clusters", live_clusters_},
            {"list_high_water", list_high_water_},
            {"max_height", static_cast<std::uint64_t>(max_height_seen_)},
            {"steps", steps_}};
}

std::vector<std::string>
TopologyTreeStrategy::check_invariants(const WeightedGraph& g, const std::vector<TopoEdge>& edges,
                                       std::uint64_t) const {
    std::vector<std::string> out;
    auto fail = [&out](const std::string& s) { out.push_back("topology-tree: " + s); };

    std::unordered_map<TopoEdgeId, const TopoEdge*> by_id;
    for (const auto& e : edges)
        by_id[e.id] = &e;

    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        bool reg = g.classify(v) == VertexClass::Regular;
        bool has = leaf_of(v) != nullptr;
        if (reg != has)
            fail("leaf link mismatch at vertex " + std::to_string(v));
    }

    std::size_t trees = 0;
    std::size_t paths_with_regulars = 0;
    for (const auto& p : walk_regular_paths(g)) {
        if (p.interior.empty())
            continue;
        ++paths_with_regulars;
        const Cluster* root = root_of(p.interior.front());
        if (!root) {
            fail("no tree for a path with regular vertices");
            continue;
        }
        ++trees;
        for (VertexId v : p.interior)
            if (root_of(v) != root)
                fail("path vertices split across trees at " + std::to_string(v));
        if (root->vertex_count != static_cast<int>(p.interior.size()))
            fail("root vertex count != path regulars");

        int k = static_cast<int>(p.interior.size());
        int bound = static_cast<int>(std::ceil(std::log2(std::max(k, 1)))) + 2;
        if (root->level > bound)
            fail("tree height " + std::to_string(root->level) + " exceeds bound " +
                 std::to_string(bound) + " for k=" + std::to_string(k));

        if (root->edge == kNoEdge) {
            fail("root carries no edge link");
        } else {
            auto rec = by_id.find(root->edge);
            if (rec == by_id.end()) {
                fail("root references unknown edge " + std::to_string(root->edge));
            } else {
                const TopoEdge& e = *rec->second;
                if (e.regulars != static_cast<int>(p.interior.size()))
                    fail("edge regular count disagrees with tree");
                Weight w;
                try {
                    w = edge_weight_from_root(*root);
                } catch (const GraphError&) {
                    fail("root lacks endpoint adjacency records");
                    continue;
                }
                if (std::abs(w - p.weight) > 1e-9 * std::max(1.0, p.weight))
                    fail("root-derived weight disagrees with path sum");
                if (std::abs(e.weight - p.weight) > 1e-9 * std::max(1.0, p.weight))
                    fail("edge weight disagrees with path sum");
                if (std::min(e.a, e.b) != std::min(p.from, p.to) ||
                    std::max(e.a, e.b) != std::max(p.from, p.to))
                    fail("edge endpoints disagree with walked path");
            }
        }

        // Structural sweep over the whole tree, level by level.
        std::vector<const Cluster*> layer;
        for (VertexId v : p.interior) {
            const Cluster* c = leaf_of(v);
            if (std::find(layer.begin(), layer.end(), c) == layer.end())
                layer.push_back(c);
        }
        // Level-0 partition: adjacent regular vertices share a cluster or
        // one of their clusters has size two.
        for (std::size_t i = 0; i + 1 < p.interior.size(); ++i) {
            const Cluster* a = leaf_of(p.interior[i]);
            const Cluster* b = leaf_of(p.interior[i + 1]);
            if (a != b && a->vertices.size() != 2 && b->vertices.size() != 2)
                fail("adjacent size-one clusters at vertex " + std::to_string(p.interior[i]));
        }
        int level = 0;
        while (!layer.empty()) {
            std::vector<const Cluster*> parents;
            int covered = 0;
            for (const Cluster* c : layer) {
                covered += c->vertex_count;
                if (c->freed)
                    fail("freed cluster still reachable");
                if (c->level != level)
                    fail("cluster level mismatch");
                if (c->size() < 1 || c->size() > 2)
                    fail("cluster size out of range");
                if (c->adj.size() > 2)
                    fail("cluster with more than two adjacency records");
                for (const auto& r : c->adj) {
                    if (r.cl) {
                        if (!is_adjacent(r.cl, c))
                            fail("asymmetric adjacency record");
                        bool same_w = false;
                        for (const auto& q : r.cl->adj)
                            if (q.cl == c && q.w == r.w)
                                same_w = true;
                        if (!same_w)
                            fail("adjacency weights disagree");
                    } else if (g.classify(r.sing) != VertexClass::Singular) {
                        fail("singular record to a regular vertex");
                    }
                }
                if (level > 0) {
                    Weight want;
                    if (c->children.size() == 1) {
                        want = c->children[0]->weight;
                    } else {
                        Weight internal = 0;
                        bool found = false;
                        for (const auto& r : c->children[0]->adj)
                            if (r.cl == c->children[1]) {
                                internal = r.w;
                                found = true;
                            }
                        if (!found)
                            fail("size-two cluster with non-adjacent children");
                        want = c->children[0]->weight + c->children[1]->weight + internal;
                    }
                    if (std::abs(c->weight - want) > 1e-9 * std::max(1.0, std::abs(want)))
                        fail("weight recurrence violated");
                    for (const Cluster* ch : c->children)
                        if (ch->parent != c)
                            fail("parent/child link asymmetry");
                }
                if (c->parent) {
                    if (std::find(parents.begin(), parents.end(), c->parent) == parents.end())
                        parents.push_back(c->parent);
                } else if (c != root) {
                    fail("interior cluster without parent");
                }
            }
            if (covered != static_cast<int>(p.interior.size()))
                fail("level " + std::to_string(level) + " does not cover the path");
            // Multilevel condition: adjacent clusters either share a parent
            // or at least one parent has two children.
            for (const Cluster* c : layer)
                for (const auto& r : c->adj)
                    if (r.cl && c->parent && r.cl->parent && c->parent != r.cl->parent &&
                        c->parent->children.size() != 2 && r.cl->parent->children.size() != 2)
                        fail("partition condition violated at level " + std::to_string(level));
            layer = std::move(parents);
            ++level;
        }
    }
    if (trees != paths_with_regulars)
        fail("tree count != paths with regulars");
    return out;
}

} // namespace toposimp

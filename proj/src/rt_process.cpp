#include "logmoduli/rt_process.hpp"

#include "logmoduli/errors.hpp"
#include "logmoduli/numeric.hpp"

#include <algorithm>
#include <functional>

namespace logmoduli {

namespace {

bool id_less(const std::string& a, const std::string& b) { return natural_less(a, b); }

// A special point on a vertex, addressed by its position in the graph.
struct PointRef {
    enum class Kind { leg, end, branch } kind;
    std::size_t index = 0;  // leg or edge index
    std::size_t slot = 0;   // edge end or branch index
    std::string owner;      // leg id or edge id
    std::optional<std::string> label;
};

std::vector<PointRef> points_on(const Graph& g, const std::string& v) {
    std::vector<PointRef> out;
    for (std::size_t i = 0; i < g.legs.size(); ++i)
        if (g.legs[i].vertex == v) out.push_back({PointRef::Kind::leg, i, 0, g.legs[i].id, g.legs[i].label});
    for (std::size_t i = 0; i < g.edges.size(); ++i) {
        const Edge& e = g.edges[i];
        if (e.is_multi()) {
            for (std::size_t j = 0; j < e.branches.size(); ++j)
                if (e.branches[j].vertex == v) out.push_back({PointRef::Kind::branch, i, j, e.id, e.branches[j].label});
        } else {
            for (std::size_t j = 0; j < 2; ++j)
                if (e.ends[j] == v) out.push_back({PointRef::Kind::end, i, j, e.id, e.labels[j]});
        }
    }
    return out;
}

ContactVector point_contact(const Graph& g, const PointRef& p) {
    if (p.kind == PointRef::Kind::leg) return g.legs[p.index].contact;
    const Edge& e = g.edges[p.index];
    if (p.kind == PointRef::Kind::branch) return e.branches[p.slot].contact;
    ContactVector c = e.contact;
    if (p.slot == 1)
        for (auto& x : c) x = -x;
    return c;
}

long long count_legs(const Graph& g, const std::string& v) {
    long long k = 0;
    for (const auto& l : g.legs)
        if (l.vertex == v) ++k;
    return k;
}

long long count_nodal_points(const Graph& g, const std::string& v) {
    long long c = 0;
    for (const auto& p : points_on(g, v))
        if (p.kind != PointRef::Kind::leg) ++c;
    return c;
}

void add_into(ContactVector& a, const ContactVector& b) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
}

// Two-branch multi-nodes become ordinary nodes; empty ones disappear.
void normalize_multinodes(Graph& g) {
    std::vector<Edge> kept;
    for (auto& e : g.edges) {
        if (e.is_multi() && e.branches.size() == 2) {
            Edge o;
            o.id = e.id;
            o.stratum = e.stratum;
            o.ends = {e.branches[0].vertex, e.branches[1].vertex};
            o.contact = e.branches[0].contact;
            o.labels = {e.branches[0].label, e.branches[1].label};
            kept.push_back(std::move(o));
        } else if (e.is_multi() || !e.ends[0].empty()) {
            kept.push_back(std::move(e));
        }
    }
    g.edges = std::move(kept);
}

// Identifies the special points on v that carry equal labels. Legs merge into one leg with the
// summed contact; nodal points merge their nodes into one multi-node.
void merge_labeled_points(Graph& g, const std::string& v) {
    std::map<std::string, std::vector<PointRef>> groups;
    for (const auto& p : points_on(g, v))
        if (p.label) groups[*p.label].push_back(p);

    std::set<std::string> drop_legs;
    std::set<std::string> drop_edges;
    std::vector<Edge> new_edges;
    std::map<std::string, ContactVector> leg_sum;
    for (const auto& [label, pts] : groups) {
        if (pts.size() < 2) continue;
        const bool any_leg = std::any_of(pts.begin(), pts.end(), [](const PointRef& p) { return p.kind == PointRef::Kind::leg; });
        const bool all_leg = std::all_of(pts.begin(), pts.end(), [](const PointRef& p) { return p.kind == PointRef::Kind::leg; });
        if (any_leg && !all_leg)
            throw InputError("label '" + label + "' on vertex '" + v + "' is shared by a marked point and a nodal point");
        if (all_leg) {
            std::vector<std::string> ids;
            for (const auto& p : pts) ids.push_back(p.owner);
            std::sort(ids.begin(), ids.end(), id_less);
            ContactVector sum(static_cast<std::size_t>(g.N), 0);
            for (const auto& p : pts) add_into(sum, point_contact(g, p));
            leg_sum[ids.front()] = sum;
            for (std::size_t i = 1; i < ids.size(); ++i) drop_legs.insert(ids[i]);
            continue;
        }
        std::map<std::string, std::size_t> owners;
        for (const auto& p : pts) {
            if (owners.count(p.owner))
                throw InputError("label '" + label + "' identifies two points of the same node '" + p.owner + "'");
            owners[p.owner] = p.index;
        }
        std::vector<std::string> edge_ids;
        for (const auto& [id, idx] : owners) edge_ids.push_back(id);
        std::sort(edge_ids.begin(), edge_ids.end(), id_less);
        Edge m;
        m.id = edge_ids.front();
        m.stratum = g.edges[owners.begin()->second].stratum;
        Branch merged;
        merged.edge = m.id;
        merged.vertex = v;
        merged.contact.assign(static_cast<std::size_t>(g.N), 0);
        merged.outward = true;
        merged.label = label;
        for (const auto& p : pts) {
            const Edge& e = g.edges[p.index];
            if (e.stratum != m.stratum)
                throw InputError("nodes identified by label '" + label + "' lie in differing strata");
            add_into(merged.contact, point_contact(g, p));
            if (e.is_multi()) {
                for (std::size_t j = 0; j < e.branches.size(); ++j)
                    if (j != p.slot) m.branches.push_back(e.branches[j]);
            } else {
                const std::size_t other = 1 - p.slot;
                Branch b;
                b.edge = e.id;
                b.vertex = e.ends[other];
                b.contact = e.contact;
                if (other == 1)
                    for (auto& x : b.contact) x = -x;
                b.outward = p.slot == 0;
                b.label = e.labels[other];
                m.branches.push_back(std::move(b));
            }
            drop_edges.insert(e.id);
        }
        m.branches.insert(m.branches.begin(), std::move(merged));
        new_edges.push_back(std::move(m));
    }
    if (drop_legs.empty() && drop_edges.empty() && leg_sum.empty()) return;
    std::vector<Leg> legs;
    for (auto& l : g.legs) {
        if (drop_legs.count(l.id)) continue;
        if (auto it = leg_sum.find(l.id); it != leg_sum.end()) l.contact = it->second;
        legs.push_back(std::move(l));
    }
    g.legs = std::move(legs);
    std::vector<Edge> edges;
    for (auto& e : g.edges)
        if (!drop_edges.count(e.id)) edges.push_back(std::move(e));
    for (auto& e : new_edges) edges.push_back(std::move(e));
    g.edges = std::move(edges);
    normalize_multinodes(g);
    canonicalize(g);
}

// Replaces every occurrence of a member of `members` by `target` and removes the other vertices.
void identify_vertices(Graph& g, const std::vector<std::string>& members, const std::string& target) {
    const std::set<std::string> set(members.begin(), members.end());
    auto remap = [&](std::string& id) {
        if (set.count(id)) id = target;
    };
    for (auto& l : g.legs) remap(l.vertex);
    for (auto& e : g.edges) {
        remap(e.ends[0]);
        remap(e.ends[1]);
        for (auto& b : e.branches) remap(b.vertex);
    }
    std::vector<Vertex> vs;
    for (auto& v : g.vertices)
        if (!set.count(v.id) || v.id == target) vs.push_back(std::move(v));
    g.vertices = std::move(vs);
}

struct UnionFind {
    std::map<std::string, std::string> parent;
    std::string find(const std::string& x) {
        auto it = parent.find(x);
        if (it == parent.end()) return parent[x] = x;
        if (it->second == x) return x;
        return it->second = find(it->second);
    }
    void unite(const std::string& a, const std::string& b) {
        const std::string ra = find(a), rb = find(b);
        if (ra == rb) return;
        if (id_less(ra, rb))
            parent[rb] = ra;
        else
            parent[ra] = rb;
    }
};

std::vector<std::string> edge_vertices(const Edge& e) {
    std::vector<std::string> out;
    if (e.is_multi())
        for (const auto& b : e.branches) out.push_back(b.vertex);
    else
        out = {e.ends[0], e.ends[1]};
    return out;
}

void check_image_consistency(const Graph& g, const std::vector<std::string>& members) {
    const Vertex& a = g.vertex(members.front());
    for (const auto& id : members) {
        const Vertex& b = g.vertex(id);
        if (b.stratum != a.stratum)
            throw InputError("components with image label '" + a.image_label.value_or("") + "' lie in differing strata");
        if (b.c1_log != a.c1_log || b.dot != a.dot)
            throw InputError("components with image label '" + a.image_label.value_or("") + "' have differing image classes");
    }
}

// Groups of bubble vertices sharing an image label; when `adjacent_only` is set the groups are the
// connected pieces of the label classes.
std::vector<std::vector<std::string>> label_classes(const Graph& g, bool adjacent_only) {
    UnionFind uf;
    std::map<std::string, std::vector<std::string>> by_label;
    for (const auto& v : g.vertices)
        if (v.kind == VertexKind::bubble && v.image_label) {
            uf.find(v.id);
            by_label[*v.image_label].push_back(v.id);
        }
    if (adjacent_only) {
        for (const auto& e : g.edges) {
            const auto vs = edge_vertices(e);
            for (std::size_t i = 0; i < vs.size(); ++i)
                for (std::size_t j = i + 1; j < vs.size(); ++j) {
                    const Vertex& a = g.vertex(vs[i]);
                    const Vertex& b = g.vertex(vs[j]);
                    if (vs[i] != vs[j] && a.kind == VertexKind::bubble && b.kind == VertexKind::bubble && a.image_label &&
                        a.image_label == b.image_label)
                        uf.unite(vs[i], vs[j]);
                }
        }
    } else {
        for (const auto& [label, ids] : by_label)
            for (const auto& id : ids) uf.unite(ids.front(), id);
    }
    std::map<std::string, std::vector<std::string>> classes;
    for (const auto& v : g.vertices)
        if (v.kind == VertexKind::bubble && v.image_label) classes[uf.find(v.id)].push_back(v.id);
    std::vector<std::vector<std::string>> out;
    for (auto& [root, ids] : classes) {
        if (ids.size() < 2) continue;
        std::sort(ids.begin(), ids.end(), id_less);
        out.push_back(ids);
    }
    return out;
}

RtStage make_stage(std::string name, Graph g, std::map<std::string, long long> mult) {
    canonicalize(g);
    RtStage s;
    s.name = std::move(name);
    s.ledger = edge_ledger(g);
    s.q = q_quantity(g);
    s.genus = total_genus(g);
    s.multiplicity = std::move(mult);
    s.graph = std::move(g);
    return s;
}

std::vector<std::vector<std::string>> ghost_clusters(const Graph& g) {
    UnionFind uf;
    for (const auto& v : g.vertices)
        if (v.kind == VertexKind::ghost) uf.find(v.id);
    for (const auto& e : g.edges) {
        if (e.is_multi()) continue;
        if (g.vertex(e.ends[0]).kind == VertexKind::ghost && g.vertex(e.ends[1]).kind == VertexKind::ghost) uf.unite(e.ends[0], e.ends[1]);
    }
    std::map<std::string, std::vector<std::string>> groups;
    for (const auto& v : g.vertices)
        if (v.kind == VertexKind::ghost) groups[uf.find(v.id)].push_back(v.id);
    std::vector<std::vector<std::string>> out;
    for (auto& [r, ids] : groups) {
        std::sort(ids.begin(), ids.end(), id_less);
        out.push_back(ids);
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return id_less(a.front(), b.front()); });
    return out;
}

}  // namespace

const RtStage& ReductionTrace::stage(const std::string& name) const {
    for (const auto& s : stages)
        if (s.name == name) return s;
    throw InternalError("missing reduction stage '" + name + "'");
}

ReductionTrace rt_reduce(const Graph& model) {
    Graph g = model;
    canonicalize(g);
    const ValidationReport rep = validate_graph(g, false);
    if (!rep.valid()) {
        const Violation& v = rep.violations.front();
        throw InputError("map model fails validation (" + v.code + " at " + v.element + "): " + v.message);
    }
    for (const auto& v : g.vertices) {
        if (v.cover_degree && *v.cover_degree < 1) throw InputError("cover_degree must be positive", "vertices." + v.id);
        if (v.cover_degree && *v.cover_degree > 1) {
            if (v.kind != VertexKind::bubble) throw InputError("only bubble components may be multiple covers", "vertices." + v.id);
            if (!v.base) throw InputError("cover vertex lacks underlying class pairings", "vertices." + v.id);
        }
    }
    for (const auto& e : g.edges)
        for (int side = 0; side < 2; ++side) {
            const Vertex& gv = g.vertex(e.ends[side]);
            const Vertex& w = g.vertex(e.ends[1 - side]);
            if (gv.kind == VertexKind::ghost && stratum_union(gv.stratum, w.stratum) != gv.stratum)
                throw InputError("component '" + w.id + "' meets ghost '" + gv.id + "' outside the ghost stratum");
        }

    ReductionTrace t;
    std::map<std::string, long long> mult;
    for (const auto& v : g.vertices)
        if (v.kind == VertexKind::bubble) mult[v.id] = v.cover_degree.value_or(1);
    t.stages.push_back(make_stage("input", g, mult));

    // Step (i): ghost clusters become multi-nodes.
    Graph gi = g;
    for (const auto& cluster : ghost_clusters(g)) {
        GhostCollapseRecord rec;
        rec.ghosts = cluster;
        for (const auto& id : cluster) rec.delta += ghost_collapse_delta(count_legs(g, id), count_nodal_points(g, id));
        auto res = collapse_ghost_cluster(gi, std::set<std::string>(cluster.begin(), cluster.end()));
        gi = std::move(res.graph);
        rec.multinode = res.multinode_id;
        t.dim_fiber += rec.delta;
        t.ghost_collapses.push_back(std::move(rec));
    }
    normalize_multinodes(gi);
    t.stages.push_back(make_stage("i", gi, mult));

    // Step (ii): covers are replaced by their images.
    Graph gii = gi;
    for (const auto& v0 : gi.vertices) {
        if (!v0.cover_degree || *v0.cover_degree < 2) continue;
        CoverRecord rec;
        rec.vertex = v0.id;
        rec.degree = *v0.cover_degree;
        rec.k_before = count_legs(gi, v0.id);
        rec.ell_before = count_nodal_points(gi, v0.id);
        const FiberDims f = mc_fiber_dims(rec.degree, contact_image_count(gi, v0.id), contact_point_count(gi, v0.id), v0.base->c1_log,
                                          gi.n, static_cast<long long>(v0.stratum.size()));
        rec.d_fiber = f.d_fiber;
        Vertex& v = gii.vertex(v0.id);
        v.c1_log = v0.base->c1_log;
        v.dot = v0.base->dot;
        v.cover_degree.reset();
        v.base.reset();
        merge_labeled_points(gii, v0.id);
        rec.k_after = count_legs(gii, v0.id);
        rec.ell_after = count_nodal_points(gii, v0.id);
        rec.delta = cover_replace_delta(rec.degree, v0.base->c1_log, rec.k_before, rec.ell_before, rec.k_after, rec.ell_after);
        t.dim_fiber += rec.d_fiber;
        t.covers.push_back(rec);
    }
    t.stages.push_back(make_stage("ii", gii, mult));

    for (const auto& [id, d] : mult) t.red_input_to_prime[id] = id;

    // Step (iii): adjacent bubbles with equal images collapse to one component.
    Graph giii = gii;
    std::map<std::string, long long> mult3 = mult;
    for (const auto& cls : label_classes(gii, true)) {
        check_image_consistency(giii, cls);
        const std::string target = cls.front();
        const std::set<std::string> members(cls.begin(), cls.end());
        std::vector<Edge> edges;
        for (auto& e : giii.edges) {
            if (!e.is_multi()) {
                if (members.count(e.ends[0]) && members.count(e.ends[1])) continue;
                edges.push_back(std::move(e));
                continue;
            }
            std::vector<Branch> inside, outside;
            for (auto& b : e.branches) (members.count(b.vertex) ? inside : outside).push_back(std::move(b));
            if (outside.empty()) continue;
            if (inside.size() > 1) {
                Branch merged = inside.front();
                merged.vertex = target;
                for (std::size_t j = 1; j < inside.size(); ++j) add_into(merged.contact, inside[j].contact);
                inside = {merged};
            }
            e.branches = std::move(inside);
            for (auto& b : outside) e.branches.push_back(std::move(b));
            edges.push_back(std::move(e));
        }
        giii.edges = std::move(edges);
        long long d = 0;
        for (const auto& id : cls) {
            d += mult3.at(id);
            if (id != target) mult3.erase(id);
        }
        mult3[target] = d;
        identify_vertices(giii, cls, target);
        for (auto& [from, to] : t.red_input_to_prime)
            if (members.count(to)) to = target;
        normalize_multinodes(giii);
    }
    t.stages.push_back(make_stage("iii", giii, mult3));

    // Step (iv): remaining components and nodal points with equal images are identified.
    Graph giv = giii;
    std::map<std::string, long long> mult4 = mult3;
    for (const auto& [id, d] : mult3) t.red_prime_to_double[id] = id;
    for (const auto& cls : label_classes(giii, false)) {
        check_image_consistency(giv, cls);
        const std::string target = cls.front();
        long long d = 0;
        for (const auto& id : cls) {
            d += mult4.at(id);
            if (id != target) mult4.erase(id);
            t.red_prime_to_double[id] = target;
        }
        mult4[target] = d;
        identify_vertices(giv, cls, target);
    }
    std::vector<std::string> bubbles;
    for (const auto& v : giv.vertices)
        if (v.kind == VertexKind::bubble) bubbles.push_back(v.id);
    for (const auto& id : bubbles) merge_labeled_points(giv, id);
    t.stages.push_back(make_stage("iv", giv, mult4));
    t.genus_rise = t.stage("iv").genus - t.stage("iii").genus;
    return t;
}

EdgeInvariantReport verify_edge_invariant(const ReductionTrace& trace) {
    EdgeInvariantReport r;
    const QLedger& a = trace.stage("iii").ledger;
    const QLedger& b = trace.stage("iv").ledger;
    std::set<std::string> keys;
    for (const auto& [k, v] : a.by_stratum) keys.insert(k);
    for (const auto& [k, v] : b.by_stratum) keys.insert(k);
    for (const auto& k : keys) {
        auto value = [&](const QLedger& l) {
            auto it = l.by_stratum.find(k);
            return it == l.by_stratum.end() ? 0LL : it->second.first - it->second.second;
        };
        const long long va = value(a), vb = value(b);
        r.per_stratum[k] = {va, vb};
        if (va != vb) {
            r.holds = false;
            r.failing_strata.push_back(k);
        }
    }
    return r;
}

TraceChecks check_trace(const ReductionTrace& t) {
    TraceChecks c;
    const auto& input = t.stage("input");
    const auto& final = t.stage("iv");
    std::map<std::string, long long> pushed;
    for (const auto& [id, d] : input.multiplicity) {
        const std::string& p = t.red_input_to_prime.at(id);
        pushed[t.red_prime_to_double.at(p)] += d;
    }
    if (pushed != final.multiplicity) {
        c.multiplicity_conserved = false;
        c.failures.push_back("multiplicity is not conserved along red");
    }
    for (const char* s : {"i", "ii", "iii"})
        if (t.stage(s).genus != input.genus) {
            c.genus_preserved = false;
            c.failures.push_back(std::string("genus changes in step (") + s + ")");
        }
    long long ghost = 0, cover = 0;
    for (const auto& r : t.ghost_collapses) ghost += r.delta;
    for (const auto& r : t.covers) cover += r.delta;
    if (input.q - t.stage("i").q != ghost) {
        c.ghost_q_identity = false;
        c.failures.push_back("Q(input) - Q(i) = " + std::to_string(input.q - t.stage("i").q) + " but the ghost deltas sum to " +
                             std::to_string(ghost));
    }
    if (t.stage("i").q - t.stage("ii").q != cover) {
        c.cover_q_identity = false;
        c.failures.push_back("Q(i) - Q(ii) = " + std::to_string(t.stage("i").q - t.stage("ii").q) + " but the cover deltas sum to " +
                             std::to_string(cover));
    }
    return c;
}

ClusterClassification classify_cluster(const Graph& g, const std::set<std::string>& cluster, bool nef) {
    if (cluster.empty()) throw InputError("empty cluster");
    for (const auto& id : cluster)
        if (!g.has_vertex(id)) throw InputError("unknown vertex id '" + id + "' in cluster");
    ClusterClassification out;
    for (const auto& id : cluster) {
        long long dp = 0;
        for (const auto& p : special_points(g, id))
            if (std::any_of(p.contact.begin(), p.contact.end(), [](long long x) { return x > 0; })) ++dp;
        out.delta_plus[id] = dp;
        if (nef && dp > 2) out.bound_ok = false;
    }
    for (const auto& l : g.legs)
        if (cluster.count(l.vertex)) ++out.external_marks;
    for (const auto& e : g.edges) {
        if (e.is_multi()) {
            long long in = 0, outside = 0;
            for (const auto& b : e.branches) (cluster.count(b.vertex) ? in : outside)++;
            if (outside > 0) out.external_nodes += in;
        } else if ((cluster.count(e.ends[0]) > 0) != (cluster.count(e.ends[1]) > 0)) {
            ++out.external_nodes;
        }
    }
    const long long ext = out.external_nodes + out.external_marks;
    if (ext <= 2 && out.external_nodes == 1 && out.external_marks == 0)
        out.type = "i";
    else if (ext <= 2 && out.external_nodes == 1 && out.external_marks == 1)
        out.type = "ii";
    else if (ext <= 2 && out.external_nodes == 2)
        out.type = "iii";
    else
        out.type = "not-a-cluster";

    // Sub-clusters reached through an internal node, excluding that node.
    auto side = [&](const std::string& start, const std::string& skip_edge) {
        std::set<std::string> seen{start};
        std::vector<std::string> stack{start};
        while (!stack.empty()) {
            const std::string v = stack.back();
            stack.pop_back();
            for (const auto& e : g.edges) {
                if (e.is_multi() || e.id == skip_edge) continue;
                for (int s = 0; s < 2; ++s)
                    if (e.ends[s] == v && cluster.count(e.ends[1 - s]) && !seen.count(e.ends[1 - s])) {
                        seen.insert(e.ends[1 - s]);
                        stack.push_back(e.ends[1 - s]);
                    }
            }
        }
        return seen;
    };
    for (const auto& e : g.edges) {
        if (e.is_multi() || e.is_loop() || !cluster.count(e.ends[0]) || !cluster.count(e.ends[1])) continue;
        for (int s = 0; s < 2; ++s) {
            const std::string& from = e.ends[s];
            const std::string& into = e.ends[1 - s];
            const auto part = side(into, e.id);
            if (part.count(from)) continue;
            bool free = true;
            for (const auto& l : g.legs)
                if (part.count(l.vertex)) free = false;
            for (const auto& f : g.edges) {
                if (f.id == e.id) continue;
                for (const auto& w : edge_vertices(f))
                    if (part.count(w))
                        for (const auto& x : edge_vertices(f))
                            if (!cluster.count(x)) free = false;
            }
            ContactVector c = e.contact;
            if (s == 1)
                for (auto& x : c) x = -x;
            const bool positive = std::any_of(c.begin(), c.end(), [](long long x) { return x > 0; });
            if (free && positive) out.infinite_chain.push_back(e.id + ":" + from + "->" + into);
        }
    }
    return out;
}

}  // namespace logmoduli

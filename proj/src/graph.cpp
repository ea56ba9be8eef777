#include "logmoduli/graph.hpp"

#include "logmoduli/errors.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>

namespace logmoduli {

std::string to_string(VertexKind k) {
    switch (k) {
        case VertexKind::principal: return "principal";
        case VertexKind::bubble: return "bubble";
        case VertexKind::ghost: return "ghost";
    }
    return "principal";
}

VertexKind parse_vertex_kind(const std::string& s, const std::string& field) {
    if (s == "principal") return VertexKind::principal;
    if (s == "bubble") return VertexKind::bubble;
    if (s == "ghost") return VertexKind::ghost;
    throw InputError("unknown vertex kind '" + s + "' (expected principal, bubble or ghost)", field);
}

std::size_t Graph::vertex_index(const std::string& id) const {
    for (std::size_t i = 0; i < vertices.size(); ++i)
        if (vertices[i].id == id) return i;
    throw StructuralError("unknown vertex id '" + id + "'");
}

std::size_t Graph::edge_index(const std::string& id) const {
    for (std::size_t i = 0; i < edges.size(); ++i)
        if (edges[i].id == id) return i;
    throw StructuralError("unknown edge id '" + id + "'");
}

bool Graph::has_vertex(const std::string& id) const {
    return std::any_of(vertices.begin(), vertices.end(), [&](const Vertex& v) { return v.id == id; });
}

bool Graph::has_multinode() const {
    return std::any_of(edges.begin(), edges.end(), [](const Edge& e) { return e.is_multi(); });
}

bool contains(const Stratum& s, int i) { return std::binary_search(s.begin(), s.end(), i); }

Stratum stratum_union(const Stratum& a, const Stratum& b) {
    Stratum out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

std::string stratum_key(const Stratum& s) {
    std::string out = "{";
    for (std::size_t k = 0; k < s.size(); ++k) {
        if (k) out += ",";
        out += std::to_string(s[k] + 1);
    }
    return out + "}";
}

std::vector<SpecialPoint> special_points(const Graph& g, const std::string& vertex_id) {
    std::vector<SpecialPoint> out;
    for (const auto& l : g.legs)
        if (l.vertex == vertex_id) out.push_back({SpecialPoint::Type::leg, l.id, 0, l.contact, l.label});
    for (const auto& e : g.edges) {
        if (e.is_multi()) {
            for (const auto& b : e.branches)
                if (b.vertex == vertex_id) out.push_back({SpecialPoint::Type::branch, b.edge, 0, b.contact, b.label});
            continue;
        }
        if (e.ends[0] == vertex_id) out.push_back({SpecialPoint::Type::edge_end, e.id, 0, e.contact, e.labels[0]});
        if (e.ends[1] == vertex_id) {
            ContactVector neg = e.contact;
            for (auto& x : neg) x = -x;
            out.push_back({SpecialPoint::Type::edge_end, e.id, 1, neg, e.labels[1]});
        }
    }
    return out;
}

void canonicalize(Graph& g) {
    auto by_id = [](const auto& a, const auto& b) { return natural_less(a.id, b.id); };
    std::sort(g.vertices.begin(), g.vertices.end(), by_id);
    std::sort(g.edges.begin(), g.edges.end(), by_id);
    std::sort(g.legs.begin(), g.legs.end(), by_id);
    for (auto& e : g.edges)
        std::sort(e.branches.begin(), e.branches.end(),
                  [](const Branch& a, const Branch& b) { return natural_less(a.edge, b.edge); });
}

namespace {

void check_stratum(const Stratum& s, int N, const std::string& where) {
    for (std::size_t k = 0; k < s.size(); ++k) {
        if (s[k] < 0 || s[k] >= N)
            throw StructuralError("stratum index " + std::to_string(s[k] + 1) + " outside 1.." + std::to_string(N), where);
        if (k > 0 && s[k] <= s[k - 1]) throw StructuralError("stratum indices must be distinct", where);
    }
}

void check_length(const std::vector<long long>& v, int N, const std::string& where) {
    if (static_cast<int>(v.size()) != N)
        throw StructuralError("vector has length " + std::to_string(v.size()) + ", expected N = " + std::to_string(N), where);
}

struct UnionFind {
    std::vector<std::size_t> parent;
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    std::size_t find(std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    bool unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent[std::max(a, b)] = std::min(a, b);
        return true;
    }
};

std::size_t component_count(const Graph& g) {
    UnionFind uf(g.vertices.size());
    for (const auto& e : g.edges) {
        if (e.is_multi()) {
            for (std::size_t j = 1; j < e.branches.size(); ++j)
                uf.unite(g.vertex_index(e.branches[0].vertex), g.vertex_index(e.branches[j].vertex));
        } else {
            uf.unite(g.vertex_index(e.ends[0]), g.vertex_index(e.ends[1]));
        }
    }
    std::size_t c = 0;
    for (std::size_t i = 0; i < g.vertices.size(); ++i)
        if (uf.find(i) == i) ++c;
    return c;
}

}  // namespace

void check_structure(const Graph& g) {
    if (g.N < 0) throw StructuralError("N must be non-negative", "N");
    if (g.n < 1) throw StructuralError("n must be positive", "n");
    if (g.vertices.empty()) throw StructuralError("graph has no vertices", "vertices");
    std::set<std::string> vids, pids;
    for (std::size_t k = 0; k < g.vertices.size(); ++k) {
        const auto& v = g.vertices[k];
        const std::string where = "vertices[" + std::to_string(k) + "]";
        if (v.id.empty()) throw StructuralError("empty vertex id", where + ".id");
        if (!vids.insert(v.id).second) throw StructuralError("duplicate vertex id '" + v.id + "'", where + ".id");
        if (v.genus < 0) throw StructuralError("negative genus", where + ".genus");
        check_stratum(v.stratum, g.N, where + ".stratum");
        check_length(v.dot, g.N, where + ".dot");
        if (v.cover_degree && *v.cover_degree < 1) throw StructuralError("cover_degree must be positive", where + ".cover_degree");
        if (v.base) check_length(v.base->dot, g.N, where + ".base.dot");
    }
    for (std::size_t k = 0; k < g.edges.size(); ++k) {
        const auto& e = g.edges[k];
        const std::string where = "edges[" + std::to_string(k) + "]";
        if (e.id.empty()) throw StructuralError("empty edge id", where + ".id");
        check_stratum(e.stratum, g.N, where + ".stratum");
        if (e.is_multi()) {
            for (std::size_t j = 0; j < e.branches.size(); ++j) {
                const auto& b = e.branches[j];
                const std::string bw = where + ".branches[" + std::to_string(j) + "]";
                if (!vids.count(b.vertex)) throw StructuralError("unknown vertex id '" + b.vertex + "'", bw + ".vertex");
                check_length(b.contact, g.N, bw + ".contact");
                if (b.edge.empty()) throw StructuralError("empty branch edge id", bw + ".edge");
                if (!pids.insert(b.edge).second) throw StructuralError("duplicate edge id '" + b.edge + "'", bw + ".edge");
            }
            if (!pids.insert(e.id).second) throw StructuralError("duplicate edge id '" + e.id + "'", where + ".id");
            continue;
        }
        if (!pids.insert(e.id).second) throw StructuralError("duplicate edge id '" + e.id + "'", where + ".id");
        for (int s = 0; s < 2; ++s)
            if (!vids.count(e.ends[s]))
                throw StructuralError("unknown vertex id '" + e.ends[s] + "'", where + ".ends[" + std::to_string(s) + "]");
        check_length(e.contact, g.N, where + ".contact");
    }
    for (std::size_t k = 0; k < g.legs.size(); ++k) {
        const auto& l = g.legs[k];
        const std::string where = "legs[" + std::to_string(k) + "]";
        if (l.id.empty()) throw StructuralError("empty leg id", where + ".id");
        if (!pids.insert(l.id).second) throw StructuralError("duplicate leg id '" + l.id + "'", where + ".id");
        if (!vids.count(l.vertex)) throw StructuralError("unknown vertex id '" + l.vertex + "'", where + ".vertex");
        check_length(l.contact, g.N, where + ".contact");
    }
}

long long first_betti(const Graph& g) {
    long long edges = 0;
    for (const auto& e : g.edges) edges += e.is_multi() ? static_cast<long long>(e.branches.size()) - 1 : 1;
    return edges - static_cast<long long>(g.vertices.size()) + static_cast<long long>(component_count(g));
}

long long total_genus(const Graph& g) {
    long long s = 0;
    for (const auto& v : g.vertices) s += v.genus;
    return s + first_betti(g);
}

bool is_connected(const Graph& g) { return component_count(g) == 1; }

ValidationReport validate_graph(const Graph& g, bool multinode_allowed) {
    check_structure(g);
    ValidationReport rep;
    auto add = [&](std::string code, std::string element, std::string msg) {
        rep.violations.push_back({std::move(code), std::move(element), std::move(msg)});
    };
    const int N = g.N;
    for (const auto& v : g.vertices) {
        if (v.kind == VertexKind::ghost) {
            const bool zero = v.c1_log == 0 && std::all_of(v.dot.begin(), v.dot.end(), [](long long x) { return x == 0; });
            if (!zero) add("ghost_degree", v.id, "ghost vertex must have A.D_i = 0 for all i and c1_log = 0");
        }
        if (v.kind != VertexKind::principal && v.genus != 0)
            add("bubble_genus", v.id, "bubble and ghost vertices must have genus 0");
        if (v.cover_degree && v.base) {
            const long long d = *v.cover_degree;
            bool ok = v.c1_log == d * v.base->c1_log;
            for (int i = 0; i < N; ++i) ok = ok && v.dot[i] == d * v.base->dot[i];
            if (!ok) add("cover_pairing", v.id, "pairings must equal cover_degree times the underlying class pairings");
        }
    }
    for (const auto& e : g.edges) {
        if (e.is_multi()) {
            if (!multinode_allowed) add("multinode", e.id, "multi-node edges are only allowed with multinode_allowed");
            for (const auto& b : e.branches) {
                const Vertex& v = g.vertex(b.vertex);
                for (int i : v.stratum)
                    if (!contains(e.stratum, i))
                        add("multinode_stratum", b.edge, "branch vertex stratum " + stratum_key(v.stratum) + " not contained in " + stratum_key(e.stratum));
                for (int i = 0; i < N; ++i) {
                    if (contains(e.stratum, i) && !contains(v.stratum, i) && b.contact[i] <= 0)
                        add("multinode_contact", b.edge, "entry " + std::to_string(i + 1) + " must be positive");
                    if (!contains(e.stratum, i) && b.contact[i] != 0)
                        add("multinode_contact", b.edge, "entry " + std::to_string(i + 1) + " must be zero outside the node stratum");
                }
            }
            continue;
        }
        const Vertex& a = g.vertex(e.ends[0]);
        const Vertex& b = g.vertex(e.ends[1]);
        if (e.stratum != stratum_union(a.stratum, b.stratum))
            add("edge_stratum", e.id, "I_e = " + stratum_key(e.stratum) + " differs from I_v1 u I_v2 = " + stratum_key(stratum_union(a.stratum, b.stratum)));
        for (int i = 0; i < N; ++i) {
            if (!contains(e.stratum, i)) {
                if (e.contact[i] != 0) add("edge_contact_support", e.id, "entry " + std::to_string(i + 1) + " must be zero outside I_e");
                continue;
            }
            if (!contains(a.stratum, i) && e.contact[i] <= 0)
                add("edge_contact_sign", e.id, "entry " + std::to_string(i + 1) + " must be positive at " + a.id);
            if (!contains(b.stratum, i) && -e.contact[i] <= 0)
                add("edge_contact_sign", e.id, "entry " + std::to_string(i + 1) + " must be positive at " + b.id);
        }
    }
    for (const auto& l : g.legs) {
        const Vertex& v = g.vertex(l.vertex);
        for (int i = 0; i < N; ++i)
            if (!contains(v.stratum, i) && l.contact[i] < 0)
                add("leg_contact_sign", l.id, "entry " + std::to_string(i + 1) + " must be non-negative off the vertex stratum");
    }
    for (const auto& v : g.vertices) {
        std::vector<long long> sum(static_cast<std::size_t>(N), 0);
        for (const auto& p : special_points(g, v.id))
            for (int i = 0; i < N; ++i) sum[i] += p.contact[i];
        for (int i = 0; i < N; ++i)
            if (sum[i] != v.dot[i])
                add("balance", v.id, "coordinate " + std::to_string(i + 1) + ": contacts sum to " + std::to_string(sum[i]) + " but A.D_i = " + std::to_string(v.dot[i]));
    }
    if (!is_connected(g)) add("connectivity", "graph", "graph is not connected");
    rep.genus = total_genus(g);
    if (g.declared_genus && *g.declared_genus != rep.genus)
        add("genus", "graph", "declared genus " + std::to_string(*g.declared_genus) + " differs from computed " + std::to_string(rep.genus));
    std::sort(rep.violations.begin(), rep.violations.end());
    rep.violations.erase(std::unique(rep.violations.begin(), rep.violations.end()), rep.violations.end());
    return rep;
}

namespace {

// Spanning-forest data for the subgraph of edges whose stratum contains coordinate i.
struct CoordinateForest {
    std::vector<std::size_t> active;        // edge indices in the subgraph
    std::vector<std::size_t> non_tree;      // edge indices outside the forest (loops included)
    std::vector<long> parent_edge;          // per vertex, -1 for roots
    std::vector<std::size_t> order;         // BFS order, roots first
    std::vector<std::size_t> root_of;
};

CoordinateForest build_forest(const Graph& g, int i) {
    CoordinateForest f;
    const std::size_t V = g.vertices.size();
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adj(V);
    for (std::size_t k = 0; k < g.edges.size(); ++k) {
        const Edge& e = g.edges[k];
        if (!contains(e.stratum, i)) continue;
        f.active.push_back(k);
        if (e.is_loop()) continue;
        const std::size_t a = g.vertex_index(e.ends[0]), b = g.vertex_index(e.ends[1]);
        adj[a].push_back({b, k});
        adj[b].push_back({a, k});
    }
    f.parent_edge.assign(V, -1);
    f.root_of.assign(V, V);
    std::vector<bool> tree_edge(g.edges.size(), false);
    for (std::size_t r = 0; r < V; ++r) {
        if (f.root_of[r] != V) continue;
        f.root_of[r] = r;
        std::size_t head = f.order.size();
        f.order.push_back(r);
        while (head < f.order.size()) {
            const std::size_t u = f.order[head++];
            for (auto [w, k] : adj[u]) {
                if (f.root_of[w] != V) continue;
                f.root_of[w] = r;
                f.parent_edge[w] = static_cast<long>(k);
                tree_edge[k] = true;
                f.order.push_back(w);
            }
        }
    }
    for (std::size_t k : f.active)
        if (!tree_edge[k]) f.non_tree.push_back(k);
    return f;
}

// Solves the balance equations for coordinate i given values on non-tree edges.
// Returns false when a root residual is nonzero.
bool peel(const Graph& g, const CoordinateForest& f, std::vector<long long> residual,
          const std::vector<long long>& non_tree_values, std::vector<long long>& values) {
    values.assign(g.edges.size(), 0);
    for (std::size_t t = 0; t < f.non_tree.size(); ++t) {
        const std::size_t k = f.non_tree[t];
        const Edge& e = g.edges[k];
        values[k] = non_tree_values[t];
        if (e.is_loop()) continue;
        residual[g.vertex_index(e.ends[0])] -= values[k];
        residual[g.vertex_index(e.ends[1])] += values[k];
    }
    for (std::size_t pos = f.order.size(); pos-- > 0;) {
        const std::size_t v = f.order[pos];
        if (f.parent_edge[v] < 0) {
            if (residual[v] != 0) return false;
            continue;
        }
        const std::size_t k = static_cast<std::size_t>(f.parent_edge[v]);
        const Edge& e = g.edges[k];
        const bool starts_here = g.vertex_index(e.ends[0]) == v;
        values[k] = starts_here ? residual[v] : -residual[v];
        const std::size_t p = starts_here ? g.vertex_index(e.ends[1]) : g.vertex_index(e.ends[0]);
        residual[p] -= starts_here ? -values[k] : values[k];
        residual[v] = 0;
    }
    return true;
}

bool coordinate_admissible(const Graph& g, int i, const std::vector<long long>& values) {
    for (std::size_t k = 0; k < g.edges.size(); ++k) {
        const Edge& e = g.edges[k];
        if (!contains(e.stratum, i)) {
            if (values[k] != 0) return false;
            continue;
        }
        if (!contains(g.vertex(e.ends[0]).stratum, i) && values[k] <= 0) return false;
        if (!contains(g.vertex(e.ends[1]).stratum, i) && values[k] >= 0) return false;
    }
    return true;
}

}  // namespace

DecorationResult solve_decorations(const Graph& skeleton, std::optional<long long> bound, std::size_t max_solutions) {
    check_structure(skeleton);
    if (skeleton.has_multinode()) throw PreconditionError("decoration solver does not accept multi-node edges");
    if (bound && *bound < 0) throw InputError("bound must be non-negative", "bound");
    const Graph& g = skeleton;
    const int N = g.N;
    const std::size_t V = g.vertices.size(), E = g.edges.size();
    DecorationResult out;
    out.particular.assign(E, ContactVector(static_cast<std::size_t>(N), 0));
    out.cycle_basis.resize(static_cast<std::size_t>(N));
    out.particular_admissible = true;
    std::vector<std::vector<std::vector<long long>>> per_coordinate(static_cast<std::size_t>(N));

    for (int i = 0; i < N; ++i) {
        const CoordinateForest f = build_forest(g, i);
        std::vector<long long> b(V, 0);
        for (std::size_t v = 0; v < V; ++v) b[v] = g.vertices[v].dot[i];
        for (const auto& l : g.legs) b[g.vertex_index(l.vertex)] -= l.contact[i];
        std::map<std::size_t, long long> comp_sum;
        for (std::size_t v = 0; v < V; ++v) comp_sum[f.root_of[v]] += b[v];
        for (auto [root, s] : comp_sum)
            if (s != 0) {
                out.conserved = false;
                out.conservation_failures.push_back("coordinate " + std::to_string(i + 1) + ": component of " +
                                                    g.vertices[root].id + " has net flow " + std::to_string(s));
            }
        if (!out.conserved) continue;
        if (!f.non_tree.empty()) out.has_cycles = true;
        std::vector<long long> vals;
        peel(g, f, b, std::vector<long long>(f.non_tree.size(), 0), vals);
        for (std::size_t k = 0; k < E; ++k) out.particular[k][i] = vals[k];
        if (!coordinate_admissible(g, i, vals)) out.particular_admissible = false;
        for (std::size_t t = 0; t < f.non_tree.size(); ++t) {
            std::vector<long long> unit(f.non_tree.size(), 0);
            unit[t] = 1;
            std::vector<long long> cyc;
            peel(g, f, std::vector<long long>(V, 0), unit, cyc);
            out.cycle_basis[i].push_back(cyc);
        }
        if (f.non_tree.empty()) {
            if (coordinate_admissible(g, i, vals)) per_coordinate[i].push_back(vals);
            continue;
        }
        if (!bound) continue;
        const long long B = *bound;
        std::vector<long long> t(f.non_tree.size(), -B);
        while (true) {
            if (peel(g, f, b, t, vals)) {
                const bool in_box = std::all_of(vals.begin(), vals.end(), [B](long long x) { return x >= -B && x <= B; });
                if (in_box && coordinate_admissible(g, i, vals)) {
                    per_coordinate[i].push_back(vals);
                    if (per_coordinate[i].size() > max_solutions)
                        throw CapacityError("more than " + std::to_string(max_solutions) + " decorations within the bound");
                }
            }
            std::size_t pos = 0;
            while (pos < t.size() && t[pos] == B) t[pos++] = -B;
            if (pos == t.size()) break;
            ++t[pos];
        }
    }
    if (!out.conserved) {
        out.particular_admissible = false;
        out.message = "no decoration exists: flow conservation fails";
        return out;
    }
    if (out.has_cycles && !bound) {
        out.message = "cyclic graph without bound: parametrization only";
        return out;
    }
    out.enumerated = true;
    std::size_t total = 1;
    for (int i = 0; i < N; ++i) {
        if (per_coordinate[i].empty()) {
            total = 0;
            break;
        }
        if (total > max_solutions / per_coordinate[i].size() + 1)
            throw CapacityError("more than " + std::to_string(max_solutions) + " decorations within the bound");
        total *= per_coordinate[i].size();
    }
    if (total > max_solutions) throw CapacityError("more than " + std::to_string(max_solutions) + " decorations within the bound");
    if (total > 0) {
        std::vector<std::size_t> idx(static_cast<std::size_t>(N), 0);
        while (true) {
            std::vector<ContactVector> sol(E, ContactVector(static_cast<std::size_t>(N), 0));
            for (int i = 0; i < N; ++i)
                for (std::size_t k = 0; k < E; ++k) sol[k][i] = per_coordinate[i][idx[i]][k];
            out.solutions.push_back(std::move(sol));
            int pos = 0;
            while (pos < N && idx[pos] + 1 == per_coordinate[pos].size()) idx[pos++] = 0;
            if (pos == N) break;
            ++idx[pos];
        }
    }
    std::sort(out.solutions.begin(), out.solutions.end());
    if (!out.has_cycles)
        out.message = out.solutions.empty() ? "none: sign constraints fail" : "unique decoration";
    else
        out.message = std::to_string(out.solutions.size()) + " decorations within bound";
    return out;
}

Graph with_contacts(const Graph& g, const std::vector<ContactVector>& contacts) {
    if (contacts.size() != g.edges.size()) throw InputError("contact list length differs from edge count");
    Graph out = g;
    for (std::size_t k = 0; k < contacts.size(); ++k) out.edges[k].contact = contacts[k];
    return out;
}

CollapseResult collapse_ghost_cluster(const Graph& g, const std::set<std::string>& cluster) {
    if (cluster.empty()) throw PreconditionError("empty ghost cluster");
    std::optional<Stratum> common;
    for (const auto& id : cluster) {
        if (!g.has_vertex(id)) throw InputError("unknown vertex id '" + id + "' in ghost cluster");
        const Vertex& v = g.vertex(id);
        if (v.kind != VertexKind::ghost) throw PreconditionError("vertex '" + id + "' is not a ghost");
        if (common && *common != v.stratum) throw InputError("ghost cluster vertices have differing strata");
        common = v.stratum;
    }
    // Connectivity inside the cluster through ordinary edges.
    std::vector<std::string> ids(cluster.begin(), cluster.end());
    std::sort(ids.begin(), ids.end(), [](const std::string& a, const std::string& b) { return natural_less(a, b); });
    std::set<std::string> reached{ids.front()};
    bool grew = true;
    while (grew) {
        grew = false;
        for (const auto& e : g.edges) {
            if (e.is_multi()) continue;
            const bool a = reached.count(e.ends[0]) > 0, b = reached.count(e.ends[1]) > 0;
            if (a != b) {
                const std::string& other = a ? e.ends[1] : e.ends[0];
                if (cluster.count(other)) {
                    reached.insert(other);
                    grew = true;
                }
            }
        }
    }
    if (reached.size() != cluster.size()) throw PreconditionError("ghost cluster is not connected");

    Graph out;
    out.N = g.N;
    out.n = g.n;
    out.declared_genus = g.declared_genus;
    for (const auto& v : g.vertices)
        if (!cluster.count(v.id)) out.vertices.push_back(v);
    for (const auto& l : g.legs)
        if (!cluster.count(l.vertex)) out.legs.push_back(l);
    Edge m;
    m.id = ids.front();
    m.stratum = *common;
    for (const auto& e : g.edges) {
        if (e.is_multi()) {
            for (const auto& b : e.branches)
                if (cluster.count(b.vertex)) throw PreconditionError("ghost cluster touches an existing multi-node");
            out.edges.push_back(e);
            continue;
        }
        const bool a = cluster.count(e.ends[0]) > 0, b = cluster.count(e.ends[1]) > 0;
        if (a && b) continue;
        if (!a && !b) {
            out.edges.push_back(e);
            continue;
        }
        Branch br;
        br.edge = e.id;
        if (a) {
            br.vertex = e.ends[1];
            br.outward = true;
            br.contact = e.contact;
            for (auto& x : br.contact) x = -x;
            br.label = e.labels[1];
        } else {
            br.vertex = e.ends[0];
            br.outward = false;
            br.contact = e.contact;
            br.label = e.labels[0];
        }
        m.branches.push_back(std::move(br));
    }
    if (m.branches.empty()) throw PreconditionError("ghost cluster has no external nodes");
    std::set<std::string> used;
    for (const auto& e : out.edges) used.insert(e.id);
    for (const auto& e : m.branches) used.insert(e.edge);
    for (const auto& l : out.legs) used.insert(l.id);
    while (used.count(m.id)) m.id += "'";
    const std::string mid = m.id;
    out.edges.push_back(std::move(m));
    canonicalize(out);
    return {std::move(out), mid};
}

Graph reorient_edge(const Graph& g, const std::string& edge_id) {
    Graph out = g;
    for (auto& e : out.edges) {
        if (e.is_multi()) {
            for (auto& b : e.branches)
                if (b.edge == edge_id) {
                    b.outward = !b.outward;
                    return out;
                }
            continue;
        }
        if (e.id != edge_id) continue;
        std::swap(e.ends[0], e.ends[1]);
        std::swap(e.labels[0], e.labels[1]);
        for (auto& x : e.contact) x = -x;
        return out;
    }
    throw InputError("unknown edge id '" + edge_id + "'");
}

}  // namespace logmoduli

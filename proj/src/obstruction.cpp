#include "logmoduli/obstruction.hpp"

#include "logmoduli/errors.hpp"

#include <algorithm>

namespace logmoduli {

namespace {

std::string describe_point(const std::string& edge, const std::string& vertex, int i) {
    return "edge " + edge + " at vertex " + vertex + ", coordinate " + std::to_string(i + 1);
}

void require_valid(const Graph& g, bool multinode_allowed) {
    const ValidationReport rep = validate_graph(g, multinode_allowed);
    if (!rep.valid()) {
        const Violation& v = rep.violations.front();
        throw InputError("graph fails validation (" + v.code + " at " + v.element + ": " + v.message + ")");
    }
}

IntMatrix reorder_columns(const IntMatrix& m, const std::vector<std::string>& from, const std::vector<std::string>& to) {
    if (from.size() != to.size()) throw InternalError("label sets differ in size");
    IntMatrix out(m.rows(), to.size());
    for (std::size_t c = 0; c < to.size(); ++c) {
        auto it = std::find(from.begin(), from.end(), to[c]);
        if (it == from.end()) throw InternalError("label '" + to[c] + "' missing");
        const std::size_t src = static_cast<std::size_t>(it - from.begin());
        for (std::size_t r = 0; r < m.rows(); ++r) out.at(r, c) = m.at(r, src);
    }
    return out;
}

IntMatrix checked_basis(const std::optional<IntMatrix>& supplied, const IntMatrix& fallback, const IntMatrix& map) {
    if (!supplied) return fallback;
    if (supplied->cols() != map.rows())
        throw InputError("character rows have " + std::to_string(supplied->cols()) + " entries, expected " + std::to_string(map.rows()), "characters");
    if (!annihilates(*supplied, map)) throw InputError("a supplied character does not vanish on the image of the lattice map", "characters");
    return *supplied;
}

}  // namespace

std::map<int, RationalSection> vertex_sections(const Graph& g, const std::string& vertex, const SectionData& data) {
    std::map<int, RationalSection> out;
    const Vertex& v = g.vertex(vertex);
    const auto pit = data.points.find(vertex);
    const std::vector<SpecialPoint> pts = special_points(g, vertex);
    bool any = pit != data.points.end();
    for (const auto& l : g.legs)
        if (l.vertex == vertex && l.point) any = true;
    if (!any) return out;
    std::vector<P1Point> coords;
    std::vector<std::string> ids;
    for (const auto& p : pts) {
        if (std::find(ids.begin(), ids.end(), p.id) != ids.end())
            throw PreconditionError("loop " + p.id + " on vertex " + vertex + ": sections on loop vertices are not supported");
        ids.push_back(p.id);
        std::optional<P1Point> c;
        if (pit != data.points.end()) {
            auto it = pit->second.find(p.id);
            if (it != pit->second.end()) c = it->second;
        }
        if (!c && p.type == SpecialPoint::Type::leg)
            for (const auto& l : g.legs)
                if (l.id == p.id) c = l.point;
        if (!c) throw MissingDataError("no coordinate for special point '" + p.id + "' on vertex '" + vertex + "'");
        for (std::size_t k = 0; k < coords.size(); ++k)
            if (coords[k] == *c)
                throw PreconditionError("special points '" + ids[k] + "' and '" + p.id + "' on vertex '" + vertex + "' coincide");
        coords.push_back(*c);
    }
    for (int i : v.stratum) {
        std::vector<std::pair<P1Point, long long>> divisor;
        for (std::size_t k = 0; k < pts.size(); ++k) divisor.push_back({coords[k], pts[k].contact[i]});
        GaussianRational scale(1);
        if (auto sit = data.scales.find(vertex); sit != data.scales.end())
            if (auto it = sit->second.find(i); it != sit->second.end()) scale = it->second;
        out.emplace(i, build_section(v.dot[i], divisor, scale));
    }
    return out;
}

std::vector<GaussianRational> evaluate_characters(const IntMatrix& basis, const std::vector<GaussianRational>& raw) {
    if (basis.cols() != raw.size()) throw InternalError("character length differs from torus rank");
    std::vector<GaussianRational> out;
    for (std::size_t r = 0; r < basis.rows(); ++r) {
        GaussianRational v(1);
        for (std::size_t c = 0; c < raw.size(); ++c) {
            const BigInt& e = basis.at(r, c);
            if (e != 0) v *= raw[c].pow(static_cast<long long>(e));
        }
        out.push_back(v);
    }
    return out;
}

ObstructionClass make_class(std::vector<std::string> labels, std::vector<GaussianRational> raw, IntMatrix basis) {
    ObstructionClass c;
    c.values = evaluate_characters(basis, raw);
    c.labels = std::move(labels);
    c.raw = std::move(raw);
    c.basis = std::move(basis);
    c.is_trivial = std::all_of(c.values.begin(), c.values.end(), [](const GaussianRational& x) { return x == GaussianRational(1); });
    return c;
}

GaussianRational eta_value(const Graph& g, const SectionData& data, std::map<std::string, std::map<int, RationalSection>>& cache,
                           const std::string& edge, const std::string& vertex, int i, long long order) {
    if (auto it = data.eta.find({edge, vertex, i}); it != data.eta.end()) {
        if (it->second.is_zero()) throw InputError("eta must be nonzero for " + describe_point(edge, vertex, i));
        return it->second;
    }
    const Vertex& v = g.vertex(vertex);
    if (!contains(v.stratum, i)) throw MissingDataError("missing eta for " + describe_point(edge, vertex, i));
    auto cit = cache.find(vertex);
    if (cit == cache.end()) cit = cache.emplace(vertex, vertex_sections(g, vertex, data)).first;
    if (cit->second.empty()) throw MissingDataError("missing eta for " + describe_point(edge, vertex, i) + " (no section data on the vertex)");
    P1Point where;
    bool found = false;
    if (auto pit = data.points.find(vertex); pit != data.points.end())
        if (auto it = pit->second.find(edge); it != pit->second.end()) {
            where = it->second;
            found = true;
        }
    if (!found) throw MissingDataError("no coordinate for node " + edge + " on vertex " + vertex);
    const LeadingTerm t = leading_coefficient(cit->second.at(i), where);
    if (t.order != order)
        throw InputError("section order " + std::to_string(t.order) + " differs from contact " + std::to_string(order) + " for " +
                         describe_point(edge, vertex, i));
    return t.eta;
}

ObstructionClass compute_ob(const Graph& g, const SectionData& data, const std::optional<IntMatrix>& characters) {
    require_valid(g, false);
    const LatticeMap L = build_rho(g);
    IntMatrix basis = checked_basis(characters, L.characters, L.matrix);
    std::map<std::string, std::map<int, RationalSection>> cache;
    std::vector<GaussianRational> raw;
    for (const auto& e : g.edges) {
        if (e.is_loop()) throw PreconditionError("edge " + e.id + " is a loop; eta ratios on loops are not supported");
        for (int i : e.stratum) {
            const GaussianRational a = eta_value(g, data, cache, e.id, e.ends[0], i, e.contact[i]);
            const GaussianRational b = eta_value(g, data, cache, e.id, e.ends[1], i, -e.contact[i]);
            raw.push_back(a / b);
        }
    }
    return make_class(L.row_labels, std::move(raw), std::move(basis));
}

ObstructionClass compute_ob_multinode(const Graph& g, const SectionData& data, const std::optional<IntMatrix>& characters) {
    require_valid(g, true);
    const MultinodeLattice ML = build_rho_multinode(g);
    IntMatrix basis = checked_basis(characters, ML.pulled_characters, ML.extended.matrix);
    std::map<std::string, std::map<int, RationalSection>> cache;
    std::map<std::string, GaussianRational> value;
    for (const auto& e : g.edges) {
        if (e.is_multi()) {
            for (const auto& b : e.branches)
                for (int i : e.stratum) {
                    const GaussianRational eta = eta_value(g, data, cache, b.edge, b.vertex, i, b.contact[i]);
                    value[b.edge + ":" + std::to_string(i + 1)] = b.outward ? eta.inverse() : eta;
                }
            continue;
        }
        if (e.is_loop()) throw PreconditionError("edge " + e.id + " is a loop; eta ratios on loops are not supported");
        for (int i : e.stratum) {
            const GaussianRational a = eta_value(g, data, cache, e.id, e.ends[0], i, e.contact[i]);
            const GaussianRational b = eta_value(g, data, cache, e.id, e.ends[1], i, -e.contact[i]);
            value[e.id + ":" + std::to_string(i + 1)] = a / b;
        }
    }
    std::vector<GaussianRational> raw;
    for (const auto& label : ML.extended.row_labels) raw.push_back(value.at(label));
    return make_class(ML.extended.row_labels, std::move(raw), std::move(basis));
}

ObstructionClass compute_o_v0(const Graph& g, const std::string& v0, const SectionData& data, const std::optional<IntMatrix>& characters) {
    require_valid(g, false);
    if (g.vertex(v0).kind != VertexKind::ghost) throw PreconditionError("vertex '" + v0 + "' is not a ghost");
    const LatticeMap L = build_rho(g);
    IntMatrix basis = checked_basis(characters, L.characters, L.matrix);
    std::map<std::string, std::map<int, RationalSection>> cache;
    std::vector<GaussianRational> raw;
    for (const auto& e : g.edges) {
        const bool touches = e.ends[0] == v0 || e.ends[1] == v0;
        if (touches && e.is_loop()) throw PreconditionError("ghost vertex carries a loop");
        for (int i : e.stratum) {
            if (!touches) {
                raw.emplace_back(1);
                continue;
            }
            const bool v0_is_end = e.ends[1] == v0;
            const long long order = v0_is_end ? -e.contact[i] : e.contact[i];
            const GaussianRational eta = eta_value(g, data, cache, e.id, v0, i, order);
            raw.push_back(v0_is_end ? eta : eta.inverse());
        }
    }
    return make_class(L.row_labels, std::move(raw), std::move(basis));
}

RelationCheck relation_check(const Graph& g, const std::string& v0, const SectionData& data, const std::optional<IntMatrix>& characters) {
    RelationCheck out;
    out.ob = compute_ob(g, data, characters);
    const LatticeMap L = build_rho(g);
    const CollapseResult cr = collapse_ghost_cluster(g, {v0});
    const MultinodeLattice ML = build_rho_multinode(cr.graph);
    const IntMatrix pulled = reorder_columns(ML.pulled_characters, ML.extended.row_labels, L.row_labels);
    out.lattices_agree = same_row_lattice(pulled, L.characters);
    const IntMatrix basis_bar = reorder_columns(out.ob.basis, L.row_labels, ML.extended.row_labels);
    out.ob_bar = compute_ob_multinode(cr.graph, data, basis_bar);
    out.o = compute_o_v0(g, v0, data, out.ob.basis);
    std::vector<GaussianRational> inv;
    for (const auto& x : out.o.raw) inv.push_back(x.inverse());
    out.o_display = make_class(out.o.labels, std::move(inv), out.o.basis);
    out.holds = out.lattices_agree && out.ob.values.size() == out.ob_bar.values.size();
    for (std::size_t k = 0; out.holds && k < out.ob.values.size(); ++k)
        if (out.ob.values[k] != out.ob_bar.values[k] * out.o.values[k].inverse()) out.holds = false;
    return out;
}

CollapseHomomorphism collapse_homomorphism(const Graph& expanded, const std::set<std::string>& ghost_tree) {
    if (ghost_tree.empty()) throw InputError("empty ghost tree");
    check_structure(expanded);
    std::optional<Stratum> common;
    for (const auto& id : ghost_tree) {
        if (!expanded.has_vertex(id)) throw InputError("unknown vertex id '" + id + "' in ghost tree");
        const Vertex& v = expanded.vertex(id);
        if (v.kind != VertexKind::ghost) throw InputError("vertex '" + id + "' is not a ghost");
        if (common && *common != v.stratum) throw InputError("ghost tree vertices have differing strata");
        common = v.stratum;
    }
    std::vector<std::string> ids(ghost_tree.begin(), ghost_tree.end());
    std::sort(ids.begin(), ids.end(), [](const std::string& a, const std::string& b) { return natural_less(a, b); });
    const std::string v0 = ids.front();

    Graph tree;
    tree.N = expanded.N;
    tree.n = expanded.n;
    for (const auto& id : ids) tree.vertices.push_back(expanded.vertex(id));
    for (const auto& e : expanded.edges) {
        if (e.is_multi()) throw InputError("expanded graph must not contain multi-nodes");
        if (ghost_tree.count(e.ends[0]) && ghost_tree.count(e.ends[1])) tree.edges.push_back(e);
    }
    if (!is_connected(tree)) throw InputError("ghost sub-tree is not connected");
    if (tree.edges.size() + 1 != tree.vertices.size()) throw InputError("ghost sub-graph is not a tree");

    Graph collapsed;
    collapsed.N = expanded.N;
    collapsed.n = expanded.n;
    collapsed.declared_genus = expanded.declared_genus;
    Vertex nv;
    nv.id = v0;
    nv.kind = VertexKind::ghost;
    nv.stratum = *common;
    nv.dot.assign(static_cast<std::size_t>(expanded.N), 0);
    collapsed.vertices.push_back(nv);
    for (const auto& v : expanded.vertices)
        if (!ghost_tree.count(v.id)) collapsed.vertices.push_back(v);
    for (auto l : expanded.legs) {
        if (ghost_tree.count(l.vertex)) l.vertex = v0;
        collapsed.legs.push_back(std::move(l));
    }
    for (auto e : expanded.edges) {
        const bool a = ghost_tree.count(e.ends[0]) > 0, b = ghost_tree.count(e.ends[1]) > 0;
        if (a && b) continue;
        if (a) e.ends[0] = v0;
        if (b) e.ends[1] = v0;
        collapsed.edges.push_back(std::move(e));
    }
    canonicalize(collapsed);

    CollapseHomomorphism out;
    out.collapsed_vertex = v0;
    const LatticeMap Le = build_rho(expanded);
    const LatticeMap Lc = build_rho(collapsed);
    out.phi = IntMatrix(0, Lc.characters.rows());
    for (std::size_t r = 0; r < Le.characters.rows(); ++r) {
        std::vector<BigInt> restricted(Lc.row_labels.size(), 0);
        for (std::size_t c = 0; c < Lc.row_labels.size(); ++c) {
            auto it = std::find(Le.row_labels.begin(), Le.row_labels.end(), Lc.row_labels[c]);
            if (it == Le.row_labels.end()) throw InternalError("collapsed torus coordinate missing from expansion");
            restricted[c] = Le.characters.at(r, static_cast<std::size_t>(it - Le.row_labels.begin()));
        }
        std::vector<BigInt> coeffs;
        if (!solve_in_row_lattice(Lc.characters, restricted, coeffs))
            throw InternalError("restricted character of the expansion is not a character of the collapse");
        out.phi.append_row(coeffs);
    }
    out.injective = rank(out.phi) == out.phi.rows();
    const auto inv = smith_invariants(out.phi);
    out.saturated = out.injective && std::all_of(inv.begin(), inv.end(), [](const BigInt& d) { return d == 1; });
    out.surjective = out.injective;
    out.collapsed = std::move(collapsed);

    const LatticeMap Lt = build_rho(tree);
    out.tree_kernel_rank = static_cast<long long>(Lt.kernel_rank()) - static_cast<long long>(common->size());
    out.tree_cokernel_zero = Lt.cokernel_rank() == 0;
    out.kernel_gain = static_cast<long long>(Le.kernel_rank()) - static_cast<long long>(Lc.kernel_rank());
    out.cokernel_drop = static_cast<long long>(Lc.cokernel_rank()) - static_cast<long long>(Le.cokernel_rank());
    out.euler_identity = out.kernel_gain + out.cokernel_drop == out.tree_kernel_rank;
    return out;
}

}  // namespace logmoduli

#include "logmoduli/dimension.hpp"

#include "logmoduli/errors.hpp"
#include "logmoduli/lattice.hpp"
#include "logmoduli/tropical.hpp"

#include <set>

namespace logmoduli {

long long expected_dim_log(long long c1_log, long long n, long long g, long long k) {
    if (n < 1 || g < 0 || k < 0) throw PreconditionError("expected_dim_log requires n >= 1 and g, k >= 0");
    return c1_log + (n - 3) * (1 - g) + k;
}

namespace {

long long total_c1(const Graph& g) {
    long long s = 0;
    for (const auto& v : g.vertices) s += v.c1_log;
    return s;
}

long long simple_component_dim(const Graph& g, const Vertex& v) {
    const long long points = static_cast<long long>(special_points(g, v.id).size());
    return v.c1_log + (g.n - 3) * (1 - v.genus) + points - static_cast<long long>(v.stratum.size());
}

}  // namespace

StratumDims stratum_dim(const Graph& g) {
    const ValidationReport rep = validate_graph(g, false);
    if (!rep.valid()) throw InputError("graph fails validation (" + rep.violations.front().code + ")");
    const LatticeMap L = build_rho(g);
    StratumDims out;
    out.d_log = expected_dim_log(total_c1(g), g.n, rep.genus, static_cast<long long>(g.k()));
    out.rank_k = static_cast<long long>(L.kernel_rank());
    out.dim_g = static_cast<long long>(L.cokernel_rank());
    out.via_kernel = out.d_log - out.rank_k;
    long long sum = 0;
    for (const auto& v : g.vertices) sum += simple_component_dim(g, v);
    for (const auto& e : g.edges) sum -= g.n - static_cast<long long>(e.stratum.size());
    out.via_components = sum - out.dim_g;
    if (out.via_components != out.via_kernel)
        throw InternalError("stratum dimension paths disagree: " + std::to_string(out.via_kernel) + " vs " + std::to_string(out.via_components));
    out.tropical_feasible = tropical_feasible(g).feasible;
    return out;
}

long long contact_point_count(const Graph& g, const std::string& vertex) {
    const Vertex& v = g.vertex(vertex);
    long long c = 0;
    for (const auto& p : special_points(g, vertex)) {
        bool positive = false;
        for (int i = 0; i < g.N; ++i)
            if (!contains(v.stratum, i) && p.contact[i] > 0) positive = true;
        if (positive) ++c;
    }
    return c;
}

long long contact_image_count(const Graph& g, const std::string& vertex) {
    const Vertex& v = g.vertex(vertex);
    std::set<std::string> labels;
    long long unlabeled = 0;
    for (const auto& p : special_points(g, vertex)) {
        bool positive = false;
        for (int i = 0; i < g.N; ++i)
            if (!contains(v.stratum, i) && p.contact[i] > 0) positive = true;
        if (!positive) continue;
        if (p.label)
            labels.insert(*p.label);
        else
            ++unlabeled;
    }
    return static_cast<long long>(labels.size()) + unlabeled;
}

FiberDims mc_fiber_dims(long long d, long long ell, long long k, long long c1_log_base, long long n, long long depth) {
    if (d < 1) throw PreconditionError("cover degree must be positive");
    if (ell < 0 || k < ell || (ell == 0 && k != 0))
        throw PreconditionError("contact counts must satisfy 0 <= ell <= k, and k = 0 when ell = 0");
    FiberDims f;
    f.realizable = k <= d * ell;
    f.n_eff = n - depth;
    f.d_fiber = (d - 1) * (2 - ell) + k - ell;
    f.d_down = c1_log_base + f.n_eff - 3 + ell;
    f.d_up = d * c1_log_base + f.n_eff - 3 + k;
    f.window_low = 3 - f.n_eff - ell;
    f.window_high_closed = ell > 2 ? 2 - ell : 0;
    f.window_high_open = f.window_high_closed;
    f.semipositive_window_violated = c1_log_base >= f.window_low && c1_log_base < f.window_high_open;
    f.positive_window_violated = c1_log_base >= f.window_low && c1_log_base <= f.window_high_closed;
    return f;
}

CoverStratum cover_stratum_dim(const Graph& g) {
    const ValidationReport rep = validate_graph(g, false);
    if (!rep.valid()) throw InputError("graph fails validation (" + rep.violations.front().code + ")");
    const LatticeMap L = build_rho(g);
    CoverStratum out;
    out.dim_g = static_cast<long long>(L.cokernel_rank());
    long long sum = 0;
    for (const auto& v : g.vertices) {
        long long dv;
        if (v.cover_degree && *v.cover_degree > 1) {
            if (!v.base) throw InputError("cover vertex '" + v.id + "' lacks underlying class pairings");
            const long long k_contact = contact_point_count(g, v.id);
            const long long ell = contact_image_count(g, v.id);
            const long long points = static_cast<long long>(special_points(g, v.id).size());
            const FiberDims f = mc_fiber_dims(*v.cover_degree, ell, k_contact, v.base->c1_log, g.n,
                                              static_cast<long long>(v.stratum.size()));
            dv = f.d_down + f.d_fiber + (points - k_contact);
        } else {
            dv = simple_component_dim(g, v);
        }
        out.per_vertex[v.id] = dv;
        sum += dv;
    }
    for (const auto& e : g.edges) sum -= g.n - static_cast<long long>(e.stratum.size());
    out.dimension = sum - out.dim_g;
    return out;
}

QLedger edge_ledger(const Graph& g) {
    QLedger q;
    for (const auto& e : g.edges) {
        const long long half = e.is_multi() ? static_cast<long long>(e.branches.size()) : 2;
        q.e_vec += half;
        q.e += 1;
        auto& slot = q.by_stratum[stratum_key(e.stratum)];
        slot.first += half;
        slot.second += 1;
    }
    return q;
}

long long q_quantity(const Graph& g) {
    long long q = total_c1(g) + static_cast<long long>(g.k());
    std::map<std::string, long long> sizes;
    for (const auto& e : g.edges) sizes[stratum_key(e.stratum)] = static_cast<long long>(e.stratum.size());
    const QLedger led = edge_ledger(g);
    q += 2 * led.e - led.e_vec;
    for (const auto& v : g.vertices) q -= static_cast<long long>(v.stratum.size());
    for (const auto& [key, counts] : led.by_stratum) q += (sizes[key] - 1) * (counts.first - counts.second);
    return q;
}

long long q_bound(const Graph& g) { return q_quantity(g) + (g.n - 3) * (1 - total_genus(g)); }

long long ghost_collapse_delta(long long k_v, long long ell_v) { return k_v + ell_v - 3; }

long long cover_replace_delta(long long d, long long c1_log_base, long long k_v, long long ell_v, long long k_bar, long long ell_bar) {
    return (d - 1) * c1_log_base + (k_v + ell_v) - (k_bar + ell_bar);
}

}  // namespace logmoduli

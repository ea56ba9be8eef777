#pragma once

// Shared helpers for the unit tests and the acceptance binary: seeded random data,
// graph builders and oracles that do not go through the library code under test.

#include "logmoduli/dimension.hpp"
#include "logmoduli/errors.hpp"
#include "logmoduli/gaussian.hpp"
#include "logmoduli/graph.hpp"
#include "logmoduli/json_io.hpp"
#include "logmoduli/lattice.hpp"
#include "logmoduli/obstruction.hpp"
#include "logmoduli/positivity.hpp"
#include "logmoduli/rt_process.hpp"
#include "logmoduli/tropical.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

namespace testsupport {

using namespace logmoduli;

inline std::string fixture(const std::string& name) { return std::string(FIXTURE_DIR) + "/" + name; }

inline GraphDocument load_fixture(const std::string& name) { return load_document(fixture(name)); }

inline IntMatrix document_characters(const GraphDocument& doc) {
    return characters_from_maps(*doc.characters, t_labels(doc.graph));
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    long long uniform(long long lo, long long hi) { return std::uniform_int_distribution<long long>(lo, hi)(gen_); }
    bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(gen_); }

    Rational rational(long long range = 9) { return Rational(uniform(-range, range), uniform(1, range)); }

    // Nonzero element of Q(i); about half of the samples are real.
    GaussianRational gaussian(long long range = 9) {
        for (;;) {
            GaussianRational z(rational(range), coin() ? rational(range) : Rational(0));
            if (!z.is_zero()) return z;
        }
    }

    // Nonzero Gaussian rational avoiding the listed values.
    GaussianRational gaussian_avoiding(const std::vector<GaussianRational>& avoid, long long range = 9) {
        for (;;) {
            GaussianRational z = gaussian(range);
            if (std::find(avoid.begin(), avoid.end(), z) == avoid.end()) return z;
        }
    }

    std::mt19937_64& engine() { return gen_; }

private:
    std::mt19937_64 gen_;
};

inline Vertex make_vertex(const std::string& id, Stratum stratum, long long c1, std::vector<long long> dot, VertexKind kind,
                          int genus = 0) {
    Vertex v;
    v.id = id;
    v.genus = genus;
    v.stratum = std::move(stratum);
    v.c1_log = c1;
    v.dot = std::move(dot);
    v.kind = kind;
    return v;
}

inline Edge make_edge(const std::string& id, const std::string& a, const std::string& b, Stratum stratum, ContactVector contact) {
    Edge e;
    e.id = id;
    e.ends = {a, b};
    e.stratum = std::move(stratum);
    e.contact = std::move(contact);
    return e;
}

inline Leg make_leg(const std::string& id, const std::string& v, ContactVector contact) {
    Leg l;
    l.id = id;
    l.vertex = v;
    l.contact = std::move(contact);
    return l;
}

inline Stratum full_stratum(int N) {
    Stratum s;
    for (int i = 0; i < N; ++i) s.push_back(i);
    return s;
}

// Sum of the contact vectors of the special points on each vertex, written into the dot pairings.
inline void balance_dots(Graph& g) {
    for (auto& v : g.vertices) {
        std::vector<long long> sum(static_cast<std::size_t>(g.N), 0);
        for (const auto& p : special_points(g, v.id))
            for (int i = 0; i < g.N; ++i) sum[i] += p.contact[i];
        v.dot = sum;
    }
}

// a lines of contact (3,1) with D_12 in P^4 joined by a degree d cover of a line in D_12.
inline Graph mc_issue_graph(long long a, long long d) {
    Graph g;
    g.N = 2;
    g.n = 4;
    Vertex v0 = make_vertex("v0", {0, 1}, d, {3 * d, d}, VertexKind::bubble);
    v0.cover_degree = static_cast<int>(d);
    v0.base = Pairing{1, {3, 1}};
    v0.image_label = "L12";
    g.vertices.push_back(v0);
    for (long long i = 1; i <= a; ++i) {
        const std::string id = std::to_string(i);
        Vertex v = make_vertex("v" + id, {}, 1, {3, 1}, VertexKind::bubble);
        v.image_label = "line" + id;
        g.vertices.push_back(v);
        g.edges.push_back(make_edge("e" + id, "v0", "v" + id, {0, 1}, {-3, -1}));
    }
    g.legs.push_back(make_leg("z1", "v0", {3 * (d + a), d + a}));
    canonicalize(g);
    return g;
}

// Random valid graph with N = 2, n = 3, at most `max_vars` tropical variables, no loops.
inline Graph random_valid_graph(Rng& rng, std::size_t max_vars = 8) {
    for (;;) {
        Graph g;
        g.N = 2;
        g.n = 3;
        const long long V = rng.uniform(1, 4);
        for (long long k = 0; k < V; ++k) {
            Stratum s;
            for (int i = 0; i < 2; ++i)
                if (rng.coin()) s.push_back(i);
            g.vertices.push_back(make_vertex("v" + std::to_string(k), s, rng.uniform(0, 3), {0, 0}, VertexKind::principal,
                                             static_cast<int>(rng.uniform(0, 1))));
        }
        std::vector<std::pair<long long, long long>> pairs;
        for (long long k = 1; k < V; ++k) pairs.push_back({rng.uniform(0, k - 1), k});
        if (V >= 2 && rng.coin(0.35)) {
            const long long a = rng.uniform(0, V - 1);
            long long b = rng.uniform(0, V - 2);
            if (b >= a) ++b;
            pairs.push_back({a, b});
        }
        std::size_t vars = pairs.size();
        for (const auto& v : g.vertices) vars += v.stratum.size();
        if (vars > max_vars) continue;
        int eid = 0;
        for (auto [a, b] : pairs) {
            if (rng.coin()) std::swap(a, b);
            const Vertex& va = g.vertices[static_cast<std::size_t>(a)];
            const Vertex& vb = g.vertices[static_cast<std::size_t>(b)];
            const Stratum I = stratum_union(va.stratum, vb.stratum);
            ContactVector c(2, 0);
            for (int i : I) {
                if (!contains(va.stratum, i))
                    c[i] = rng.uniform(1, 3);
                else if (!contains(vb.stratum, i))
                    c[i] = -rng.uniform(1, 3);
                else
                    c[i] = rng.uniform(-3, 3);
            }
            g.edges.push_back(make_edge("e" + std::to_string(++eid), va.id, vb.id, I, c));
        }
        int lid = 0;
        for (const auto& v : g.vertices) {
            ContactVector c(2, 0);
            for (int i = 0; i < 2; ++i) c[i] = contains(v.stratum, i) ? rng.uniform(-3, 3) : rng.uniform(0, 3);
            g.legs.push_back(make_leg("z" + std::to_string(++lid), v.id, c));
        }
        balance_dots(g);
        canonicalize(g);
        return g;
    }
}

// Random ghost bubble v0 with 2-4 neighbouring components and explicit eta data on the neighbours.
struct GhostInstance {
    Graph graph;
    SectionData data;
};

inline GhostInstance random_ghost_instance(Rng& rng) {
    GhostInstance out;
    Graph& g = out.graph;
    g.N = static_cast<int>(rng.uniform(2, 3));
    g.n = 3;
    const Stratum I = full_stratum(g.N);
    g.vertices.push_back(make_vertex("v0", I, 0, std::vector<long long>(static_cast<std::size_t>(g.N), 0), VertexKind::ghost));
    const long long r = rng.uniform(2, 4);
    std::vector<long long> total(static_cast<std::size_t>(g.N), 0);
    std::vector<GaussianRational> used;
    for (long long k = 1; k <= r; ++k) {
        const std::string vid = "v" + std::to_string(k), eid = "e" + std::to_string(k);
        Stratum J;
        for (int i = 0; i < g.N; ++i)
            if (rng.coin(0.3)) J.push_back(i);
        if (J.size() == I.size()) J.pop_back();
        ContactVector c(static_cast<std::size_t>(g.N), 0);  // contact read at v0
        for (int i = 0; i < g.N; ++i) {
            c[i] = contains(J, i) ? rng.uniform(-3, 3) : -rng.uniform(1, 3);
            total[i] += c[i];
        }
        g.vertices.push_back(make_vertex(vid, J, 1, {}, VertexKind::bubble));
        if (rng.coin()) {
            g.edges.push_back(make_edge(eid, "v0", vid, I, c));
        } else {
            ContactVector neg(c.size());
            for (std::size_t i = 0; i < c.size(); ++i) neg[i] = -c[i];
            g.edges.push_back(make_edge(eid, vid, "v0", I, neg));
        }
        const GaussianRational q = rng.gaussian_avoiding(used);
        used.push_back(q);
        out.data.points["v0"][eid] = P1Point::finite(q);
        for (int i = 0; i < g.N; ++i) out.data.eta[{eid, vid, i}] = rng.gaussian();
    }
    ContactVector leg(static_cast<std::size_t>(g.N), 0);
    for (int i = 0; i < g.N; ++i) leg[i] = -total[i];
    if (rng.coin()) {
        ContactVector a(leg.size()), b(leg.size());
        for (std::size_t i = 0; i < leg.size(); ++i) {
            a[i] = rng.uniform(-2, 2);
            b[i] = leg[i] - a[i];
        }
        g.legs.push_back(make_leg("z1", "v0", a));
        g.legs.push_back(make_leg("z2", "v0", b));
        g.legs.back().point = P1Point::finite(rng.gaussian_avoiding(used));
    } else {
        g.legs.push_back(make_leg("z1", "v0", leg));
    }
    g.legs.front().point = P1Point::at_infinity();
    for (int i = 0; i < g.N; ++i) out.data.scales["v0"][i] = rng.gaussian();
    balance_dots(g);
    canonicalize(g);
    return out;
}

// Random tree-shaped map model for the reduction. Ghosts and covers sit in D_12 with balancing
// marks; lines are simple curves outside D. Equal image labels mark equal image curves, and the
// points of a cover that share a label form groups of at most d points.
inline Graph random_rt_model(Rng& rng) {
    Graph g;
    g.N = 2;
    g.n = 3;
    struct LineClass {
        std::vector<long long> dot;
        long long c1;
    };
    std::vector<LineClass> classes;
    for (long long c = rng.uniform(1, 3); c > 0; --c) classes.push_back({{rng.uniform(1, 2), rng.uniform(1, 2)}, rng.uniform(0, 2)});
    const std::vector<Pairing> cover_bases = {Pairing{1, {1, 1}}, Pairing{2, {2, 1}}};

    const long long centers = rng.uniform(1, 2);
    int vid = 0, eid = 0, lid = 0;
    std::vector<std::string> center_ids;
    for (long long c = 0; c < centers; ++c) {
        const std::string id = "v" + std::to_string(vid++);
        if (rng.coin()) {
            g.vertices.push_back(make_vertex(id, {0, 1}, 0, {0, 0}, VertexKind::ghost));
        } else {
            const std::size_t b = static_cast<std::size_t>(rng.uniform(0, 1));
            const long long d = rng.uniform(2, 3);
            Vertex v = make_vertex(id, {0, 1}, d * cover_bases[b].c1_log, {d * cover_bases[b].dot[0], d * cover_bases[b].dot[1]},
                                   VertexKind::bubble);
            v.cover_degree = static_cast<int>(d);
            v.base = cover_bases[b];
            v.image_label = "K" + std::to_string(b);
            g.vertices.push_back(v);
        }
        center_ids.push_back(id);
    }
    if (centers == 2) {
        ContactVector c = {rng.uniform(-2, 2), rng.uniform(-2, 2)};
        if (c[0] == 0 && c[1] == 0) c[0] = 1;
        g.edges.push_back(make_edge("e" + std::to_string(++eid), center_ids[0], center_ids[1], {0, 1}, c));
    }
    for (const auto& cid : center_ids) {
        const Vertex center = g.vertex(cid);
        const bool ghost = center.kind == VertexKind::ghost;
        const long long d = center.cover_degree.value_or(1);
        const long long r = rng.uniform(ghost ? 2 : 1, 3);
        int group = 0;
        long long group_size = 0;
        for (long long k = 0; k < r; ++k) {
            const std::size_t cls = static_cast<std::size_t>(rng.uniform(0, static_cast<long long>(classes.size()) - 1));
            const std::string lid_v = "v" + std::to_string(vid++);
            Vertex line = make_vertex(lid_v, {}, classes[cls].c1, classes[cls].dot, VertexKind::bubble);
            line.image_label = "line" + std::to_string(cls);
            g.vertices.push_back(line);
            Edge e = make_edge("e" + std::to_string(++eid), cid, lid_v, {0, 1}, {-classes[cls].dot[0], -classes[cls].dot[1]});
            if (!ghost) {
                if (group_size == 0 || group_size >= d || rng.coin()) {
                    ++group;
                    group_size = 0;
                }
                ++group_size;
                e.labels[0] = "n" + cid + "_" + std::to_string(group);
            }
            g.edges.push_back(e);
        }
    }
    // Lines carry a single node, so their pairings already balance; the marks on a center absorb
    // the difference between its pairings and its node contacts.
    for (const auto& cid : center_ids) {
        const Vertex& center = g.vertex(cid);
        const std::vector<long long> want = center.dot;
        const bool cover = center.cover_degree.has_value();
        std::vector<long long> sum(2, 0);
        for (const auto& p : special_points(g, cid))
            for (int i = 0; i < 2; ++i) sum[i] += p.contact[i];
        ContactVector leg = {want[0] - sum[0], want[1] - sum[1]};
        if (cover && rng.coin()) {
            ContactVector a = {rng.uniform(-2, 2), rng.uniform(-2, 2)};
            ContactVector b = {leg[0] - a[0], leg[1] - a[1]};
            Leg la = make_leg("z" + std::to_string(++lid), cid, a);
            Leg lb = make_leg("z" + std::to_string(++lid), cid, b);
            if (rng.coin()) la.label = lb.label = "m" + cid;
            g.legs.push_back(la);
            g.legs.push_back(lb);
        } else {
            g.legs.push_back(make_leg("z" + std::to_string(++lid), cid, leg));
        }
    }
    canonicalize(g);
    return g;
}

// Rows of the tropical system written directly from the graph: for each edge e and i in I_e,
// lambda_e s_e,i + s_{start,i} - s_{end,i}.
inline IntMatrix tropical_system(const Graph& g) {
    std::vector<std::pair<std::string, int>> cols;
    for (const auto& e : g.edges) cols.push_back({"lambda:" + e.id, -1});
    for (const auto& v : g.vertices)
        for (int i : v.stratum) cols.push_back({v.id, i});
    auto col = [&](const std::string& id, int i) {
        for (std::size_t c = 0; c < cols.size(); ++c)
            if (cols[c].first == id && cols[c].second == i) return c;
        return cols.size();
    };
    std::vector<std::vector<long long>> rows;
    for (const auto& e : g.edges)
        for (int i : e.stratum) {
            std::vector<long long> row(cols.size(), 0);
            row[col("lambda:" + e.id, -1)] += e.contact[i];
            if (auto c = col(e.ends[0], i); c < cols.size()) row[c] += 1;
            if (auto c = col(e.ends[1], i); c < cols.size()) row[c] -= 1;
            rows.push_back(row);
        }
    return IntMatrix::from_rows(rows, cols.size());
}

// Solves the square rational system M y = b; false when M is singular.
inline bool solve_square(std::vector<std::vector<Rational>> M, std::vector<Rational> b, std::vector<Rational>& y) {
    const std::size_t n = M.size();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && M[p][c] == 0) ++p;
        if (p == n) return false;
        std::swap(M[p], M[c]);
        std::swap(b[p], b[c]);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c || M[r][c] == 0) continue;
            const Rational f = M[r][c] / M[c][c];
            for (std::size_t k = c; k < n; ++k) M[r][k] -= f * M[c][k];
            b[r] -= f * b[c];
        }
    }
    y.assign(n, 0);
    for (std::size_t r = 0; r < n; ++r) y[r] = b[r] / M[r][r];
    return true;
}

// Brute-force feasibility of {A x = 0, x >= 1}: with x = 1 + y the polyhedron {y >= 0, A y = -A 1}
// is nonempty iff one of its basic solutions is nonnegative, so every column basis is tried.
inline bool brute_force_positive_point(const IntMatrix& A) {
    const std::size_t k = A.cols();
    std::vector<std::vector<Rational>> rows;
    for (std::size_t r = 0; r < A.rows(); ++r) {
        std::vector<Rational> row(k);
        for (std::size_t c = 0; c < k; ++c) row[c] = Rational(A.at(r, c));
        auto trial = rows;
        trial.push_back(row);
        std::vector<std::vector<Rational>> copy = trial;
        if (rational_rank(copy) == trial.size()) rows = std::move(trial);
    }
    const std::size_t m = rows.size();
    if (m == 0) return true;
    std::vector<Rational> b(m, 0);
    for (std::size_t r = 0; r < m; ++r)
        for (std::size_t c = 0; c < k; ++c) b[r] -= rows[r][c];
    std::vector<bool> pick(k, false);
    std::fill(pick.begin(), pick.begin() + static_cast<long>(m), true);
    do {
        std::vector<std::size_t> cols;
        for (std::size_t c = 0; c < k; ++c)
            if (pick[c]) cols.push_back(c);
        std::vector<std::vector<Rational>> M(m, std::vector<Rational>(m));
        for (std::size_t r = 0; r < m; ++r)
            for (std::size_t j = 0; j < m; ++j) M[r][j] = rows[r][cols[j]];
        std::vector<Rational> y;
        if (solve_square(M, b, y) && std::all_of(y.begin(), y.end(), [](const Rational& x) { return x >= 0; })) return true;
    } while (std::prev_permutation(pick.begin(), pick.end()));
    return false;
}

// Multiplies the raw tuple by the image of a torus element t in (C*)^D under exp(rho).
inline std::vector<GaussianRational> act_by_image(const LatticeMap& L, const std::vector<GaussianRational>& raw,
                                                  const std::vector<GaussianRational>& t) {
    std::vector<GaussianRational> out = raw;
    for (std::size_t r = 0; r < L.matrix.rows(); ++r)
        for (std::size_t c = 0; c < L.matrix.cols(); ++c) {
            const long long e = static_cast<long long>(L.matrix.at(r, c));
            if (e != 0) out[r] *= t[c].pow(e);
        }
    return out;
}

}  // namespace testsupport

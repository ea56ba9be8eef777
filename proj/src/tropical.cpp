#include "logmoduli/tropical.hpp"

#include "logmoduli/errors.hpp"
#include "logmoduli/lattice.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace logmoduli {

PositivePointResult find_point_at_least_one(const IntMatrix& A) {
    const std::size_t m = A.rows(), n = A.cols();
    PositivePointResult out;
    if (m == 0) {
        out.feasible = true;
        out.point.assign(n, Rational(1));
        return out;
    }
    // Substitute x = 1 + y: A y = b with b = -A 1, y >= 0.
    std::vector<Rational> b(m, 0);
    for (std::size_t r = 0; r < m; ++r)
        for (std::size_t c = 0; c < n; ++c) b[r] -= Rational(A.at(r, c));
    std::vector<int> sign(m, 1);
    const std::size_t W = n + m;  // y columns then artificial columns
    std::vector<std::vector<Rational>> T(m, std::vector<Rational>(W + 1, 0));
    for (std::size_t r = 0; r < m; ++r) {
        sign[r] = b[r] < 0 ? -1 : 1;
        for (std::size_t c = 0; c < n; ++c) T[r][c] = Rational(A.at(r, c)) * sign[r];
        T[r][n + r] = 1;
        T[r][W] = b[r] * sign[r];
    }
    std::vector<std::size_t> basis(m);
    for (std::size_t r = 0; r < m; ++r) basis[r] = n + r;
    // Reduced costs for minimizing the sum of artificials; cost[W] holds minus the objective.
    std::vector<Rational> cost(W + 1, 0);
    for (std::size_t c = 0; c < W + 1; ++c) {
        if (c >= n && c < W) continue;
        for (std::size_t r = 0; r < m; ++r) cost[c] -= T[r][c];
    }
    while (true) {
        std::size_t enter = W;
        for (std::size_t c = 0; c < W; ++c)
            if (cost[c] < 0) {
                enter = c;
                break;
            }
        if (enter == W) break;
        std::size_t leave = m;
        Rational best_ratio;
        for (std::size_t r = 0; r < m; ++r) {
            if (T[r][enter] <= 0) continue;
            const Rational ratio = T[r][W] / T[r][enter];
            if (leave == m || ratio < best_ratio || (ratio == best_ratio && basis[r] < basis[leave])) {
                leave = r;
                best_ratio = ratio;
            }
        }
        if (leave == m) throw InternalError("phase-one simplex is unbounded");
        const Rational piv = T[leave][enter];
        for (auto& x : T[leave]) x /= piv;
        for (std::size_t r = 0; r < m; ++r) {
            if (r == leave || T[r][enter] == 0) continue;
            const Rational f = T[r][enter];
            for (std::size_t c = 0; c <= W; ++c)
                if (T[leave][c] != 0) T[r][c] -= f * T[leave][c];
        }
        const Rational f = cost[enter];
        for (std::size_t c = 0; c <= W; ++c)
            if (T[leave][c] != 0) cost[c] -= f * T[leave][c];
        basis[leave] = enter;
    }
    const Rational objective = -cost[W];
    if (objective == 0) {
        out.feasible = true;
        out.point.assign(n, Rational(1));
        for (std::size_t r = 0; r < m; ++r)
            if (basis[r] < n) out.point[basis[r]] += T[r][W];
        return out;
    }
    out.certificate.resize(m);
    for (std::size_t r = 0; r < m; ++r) out.certificate[r] = (Rational(1) - cost[n + r]) * sign[r];
    out.certificate_combination.assign(n, 0);
    for (std::size_t c = 0; c < n; ++c)
        for (std::size_t r = 0; r < m; ++r) out.certificate_combination[c] += out.certificate[r] * Rational(A.at(r, c));
    return out;
}

bool verify_certificate(const IntMatrix& A, const std::vector<Rational>& u) {
    if (u.size() != A.rows()) return false;
    Rational total = 0;
    for (std::size_t c = 0; c < A.cols(); ++c) {
        Rational w = 0;
        for (std::size_t r = 0; r < A.rows(); ++r) w += u[r] * Rational(A.at(r, c));
        if (w > 0) return false;
        total += w;
    }
    return total < 0;
}

bool fourier_motzkin_feasible(const IntMatrix& A, std::size_t max_variables) {
    const std::size_t n = A.cols();
    if (n > max_variables)
        throw CapacityError("Fourier-Motzkin cross-check limited to " + std::to_string(max_variables) + " variables");
    const IntMatrix K = kernel_basis(A);
    const std::size_t r = K.rows();
    if (r == 0) return n == 0;
    // Inequalities a . t >= c, normalized so the first nonzero coefficient has absolute value 1.
    using Ineq = std::map<std::vector<Rational>, Rational>;
    Ineq sys;
    bool contradiction = false;
    auto insert = [&](std::vector<Rational> a, Rational c) {
        std::size_t lead = 0;
        while (lead < a.size() && a[lead] == 0) ++lead;
        if (lead == a.size()) {
            if (c > 0) contradiction = true;
            return;
        }
        const Rational s = a[lead] < 0 ? Rational(-a[lead]) : a[lead];
        for (auto& x : a) x /= s;
        c /= s;
        auto it = sys.find(a);
        if (it == sys.end())
            sys.emplace(std::move(a), std::move(c));
        else if (c > it->second)
            it->second = c;
    };
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<Rational> a(r);
        for (std::size_t k = 0; k < r; ++k) a[k] = Rational(K.at(k, j));
        insert(std::move(a), Rational(1));
    }
    for (std::size_t v = r; v-- > 0 && !contradiction;) {
        std::vector<std::pair<std::vector<Rational>, Rational>> pos, neg;
        Ineq old;
        old.swap(sys);
        for (auto& [a, c] : old) {
            if (a[v] > 0)
                pos.push_back({a, c});
            else if (a[v] < 0)
                neg.push_back({a, c});
            else
                insert(a, c);
        }
        if (pos.size() * neg.size() > 200000) throw CapacityError("Fourier-Motzkin elimination exceeded 200000 inequalities");
        for (const auto& [ap, cp] : pos)
            for (const auto& [an, cn] : neg) {
                const Rational fp = Rational(1) / ap[v];
                const Rational fn = Rational(-1) / an[v];
                std::vector<Rational> a(r);
                for (std::size_t k = 0; k < r; ++k) a[k] = ap[k] * fp + an[k] * fn;
                a[v] = 0;
                insert(std::move(a), cp * fp + cn * fn);
            }
    }
    return !contradiction;
}

TropicalResult tropical_feasible(const Graph& g) {
    check_structure(g);
    const LatticeMap L = build_rho(g);
    TropicalResult out;
    out.equation_labels = L.row_labels;
    out.variable_labels = L.col_labels;
    PositivePointResult p = find_point_at_least_one(L.matrix);
    out.feasible = p.feasible;
    if (p.feasible) {
        TropicalWitness w;
        std::size_t col = 0;
        for (std::size_t k = 0; k < g.edges.size(); ++k) w.lambda.push_back(p.point[col++]);
        for (const auto& v : g.vertices) {
            std::vector<Rational> s(static_cast<std::size_t>(g.N), 0);
            for (int i : v.stratum) s[i] = p.point[col++];
            w.slopes.push_back(std::move(s));
        }
        if (!check_witness(g, w)) throw InternalError("simplex witness fails the tropical equations");
        out.witness = std::move(w);
    } else {
        if (!verify_certificate(L.matrix, p.certificate)) throw InternalError("infeasibility certificate does not verify");
        out.certificate = std::move(p.certificate);
        out.certificate_combination = std::move(p.certificate_combination);
    }
    if (L.matrix.cols() <= 12) {
        const bool fm = fourier_motzkin_feasible(L.matrix);
        out.fourier_motzkin_agrees = fm == out.feasible;
        if (fm != out.feasible) throw InternalError("simplex and Fourier-Motzkin disagree on tropical feasibility");
    }
    return out;
}

bool check_witness(const Graph& g, const TropicalWitness& w) {
    if (w.lambda.size() != g.edges.size() || w.slopes.size() != g.vertices.size()) return false;
    for (const auto& l : w.lambda)
        if (l <= 0) return false;
    for (std::size_t v = 0; v < g.vertices.size(); ++v) {
        if (w.slopes[v].size() != static_cast<std::size_t>(g.N)) return false;
        for (int i = 0; i < g.N; ++i) {
            const bool on = contains(g.vertices[v].stratum, i);
            if (on && w.slopes[v][i] <= 0) return false;
            if (!on && w.slopes[v][i] != 0) return false;
        }
    }
    for (std::size_t k = 0; k < g.edges.size(); ++k) {
        const Edge& e = g.edges[k];
        if (e.is_multi()) return false;
        const auto& s1 = w.slopes[g.vertex_index(e.ends[0])];
        const auto& s2 = w.slopes[g.vertex_index(e.ends[1])];
        for (int i : e.stratum)
            if (s2[i] - s1[i] != w.lambda[k] * e.contact[i]) return false;
    }
    return true;
}

namespace {

std::vector<std::vector<Rational>> invert(std::vector<std::vector<Rational>> B) {
    const std::size_t r = B.size();
    std::vector<std::vector<Rational>> inv(r, std::vector<Rational>(r, 0));
    for (std::size_t i = 0; i < r; ++i) inv[i][i] = 1;
    for (std::size_t c = 0; c < r; ++c) {
        std::size_t piv = c;
        while (piv < r && B[piv][c] == 0) ++piv;
        if (piv == r) throw InternalError("singular basis in double description");
        std::swap(B[c], B[piv]);
        std::swap(inv[c], inv[piv]);
        const Rational d = B[c][c];
        for (std::size_t j = 0; j < r; ++j) {
            B[c][j] /= d;
            inv[c][j] /= d;
        }
        for (std::size_t i = 0; i < r; ++i) {
            if (i == c || B[i][c] == 0) continue;
            const Rational f = B[i][c];
            for (std::size_t j = 0; j < r; ++j) {
                B[i][j] -= f * B[c][j];
                inv[i][j] -= f * inv[c][j];
            }
        }
    }
    return inv;
}

std::vector<Rational> normalize_ray(const std::vector<Rational>& v) {
    const std::vector<BigInt> p = primitive_vector(v);
    std::vector<Rational> out;
    for (const auto& x : p) out.emplace_back(x);
    return out;
}

Rational dot_q(const std::vector<Rational>& a, const std::vector<Rational>& b) {
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

}  // namespace

std::vector<std::vector<Rational>> pointed_cone_rays(const std::vector<std::vector<Rational>>& M) {
    if (M.empty()) return {};
    const std::size_t r = M.front().size();
    if (r == 0) return {};
    std::vector<std::size_t> chosen;
    std::vector<std::vector<Rational>> picked;
    for (std::size_t i = 0; i < M.size() && chosen.size() < r; ++i) {
        picked.push_back(M[i]);
        if (rational_rank(picked) == picked.size())
            chosen.push_back(i);
        else
            picked.pop_back();
    }
    if (chosen.size() != r) throw PreconditionError("constraint matrix does not have full column rank");
    const auto inv = invert(picked);
    struct Ray {
        std::vector<Rational> t;
        std::set<std::size_t> zeros;
    };
    std::vector<Ray> rays;
    for (std::size_t j = 0; j < r; ++j) {
        Ray ray;
        for (std::size_t i = 0; i < r; ++i) ray.t.push_back(inv[i][j]);
        ray.t = normalize_ray(ray.t);
        for (std::size_t i = 0; i < r; ++i)
            if (i != j) ray.zeros.insert(chosen[i]);
        rays.push_back(std::move(ray));
    }
    const std::set<std::size_t> chosen_set(chosen.begin(), chosen.end());
    for (std::size_t q = 0; q < M.size(); ++q) {
        if (chosen_set.count(q)) continue;
        std::vector<Rational> val(rays.size());
        for (std::size_t k = 0; k < rays.size(); ++k) val[k] = dot_q(M[q], rays[k].t);
        std::vector<Ray> next;
        for (std::size_t k = 0; k < rays.size(); ++k) {
            if (val[k] > 0) next.push_back(rays[k]);
            if (val[k] == 0) {
                Ray z = rays[k];
                z.zeros.insert(q);
                next.push_back(std::move(z));
            }
        }
        for (std::size_t p = 0; p < rays.size(); ++p) {
            if (val[p] <= 0) continue;
            for (std::size_t m = 0; m < rays.size(); ++m) {
                if (val[m] >= 0) continue;
                std::set<std::size_t> common;
                std::set_intersection(rays[p].zeros.begin(), rays[p].zeros.end(), rays[m].zeros.begin(),
                                      rays[m].zeros.end(), std::inserter(common, common.begin()));
                if (common.size() + 2 < r) continue;
                bool adjacent = true;
                for (std::size_t o = 0; o < rays.size() && adjacent; ++o) {
                    if (o == p || o == m) continue;
                    if (std::includes(rays[o].zeros.begin(), rays[o].zeros.end(), common.begin(), common.end()))
                        adjacent = false;
                }
                if (!adjacent) continue;
                Ray nr;
                nr.t.resize(r);
                for (std::size_t i = 0; i < r; ++i) nr.t[i] = val[p] * rays[m].t[i] - val[m] * rays[p].t[i];
                nr.t = normalize_ray(nr.t);
                nr.zeros = common;
                nr.zeros.insert(q);
                next.push_back(std::move(nr));
            }
        }
        rays = std::move(next);
    }
    std::vector<std::vector<Rational>> out;
    for (auto& ray : rays) out.push_back(std::move(ray.t));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

ConeResult cone_sigma(const Graph& g, std::size_t max_variables) {
    check_structure(g);
    const LatticeMap L = build_rho(g);
    const std::size_t n = L.matrix.cols();
    if (n > max_variables)
        throw CapacityError("cone_sigma is limited to " + std::to_string(max_variables) + " variables; this graph has " + std::to_string(n));
    ConeResult out;
    out.variable_labels = L.col_labels;
    out.kernel_rank = L.kernel_rank();
    const std::size_t r = L.kernel.rows();
    if (r == 0) return out;
    std::vector<std::vector<Rational>> M(n, std::vector<Rational>(r));
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < r; ++k) M[j][k] = Rational(L.kernel.at(k, j));
    std::vector<std::vector<Rational>> xs;
    for (const auto& t : pointed_cone_rays(M)) {
        std::vector<Rational> x(n, 0);
        for (std::size_t j = 0; j < n; ++j) x[j] = dot_q(M[j], t);
        bool zero = true;
        for (const auto& v : x) {
            if (v < 0) throw InternalError("cone ray leaves the nonnegative orthant");
            if (v != 0) zero = false;
        }
        if (zero) throw InternalError("zero ray in double description");
        xs.push_back(x);
        out.rays.push_back(primitive_vector(x));
    }
    std::sort(out.rays.begin(), out.rays.end());
    out.dimension = rational_rank(xs);
    // Every ray lies in the nonnegative orthant, so no nonzero line is contained in sigma.
    out.strictly_convex = true;
    return out;
}

}  // namespace logmoduli

#include "logmoduli/lattice.hpp"

#include "logmoduli/errors.hpp"

#include <algorithm>

namespace logmoduli {

std::vector<BigInt> LatticeMap::torsion() const {
    std::vector<BigInt> out;
    for (const auto& d : smith)
        if (d > 1) out.push_back(d);
    return out;
}

LatticeMap make_lattice_map(IntMatrix matrix, std::vector<std::string> rows, std::vector<std::string> cols) {
    LatticeMap m;
    m.matrix = std::move(matrix);
    m.row_labels = std::move(rows);
    m.col_labels = std::move(cols);
    m.rank = rank(m.matrix);
    m.kernel = kernel_basis(m.matrix);
    m.characters = left_kernel_basis(m.matrix);
    m.smith = smith_invariants(m.matrix);
    if (m.kernel.rows() != m.kernel_rank() || m.characters.rows() != m.cokernel_rank() || m.smith.size() != m.rank)
        throw InternalError("normal form ranks disagree");
    return m;
}

namespace {

std::string t_label(const std::string& edge, int i) { return edge + ":" + std::to_string(i + 1); }

}  // namespace

std::vector<std::string> t_labels(const Graph& g) {
    std::vector<std::string> out;
    for (const auto& e : g.edges)
        for (int i : e.stratum) out.push_back(t_label(e.id, i));
    return out;
}

LatticeMap build_rho(const Graph& g) {
    if (g.has_multinode()) throw PreconditionError("build_rho expects a graph without multi-nodes");
    std::vector<std::string> rows = t_labels(g);
    std::vector<std::string> cols;
    for (const auto& e : g.edges) cols.push_back("lambda:" + e.id);
    for (const auto& v : g.vertices)
        for (int i : v.stratum) cols.push_back("s:" + v.id + ":" + std::to_string(i + 1));
    IntMatrix m(rows.size(), cols.size());
    std::size_t row = 0;
    for (std::size_t k = 0; k < g.edges.size(); ++k) {
        const Edge& e = g.edges[k];
        for (int i : e.stratum) {
            m.at(row, k) = e.contact[i];
            if (!e.is_loop()) {
                std::size_t col = g.edges.size();
                for (const auto& v : g.vertices) {
                    for (int j : v.stratum) {
                        if (j == i) {
                            if (v.id == e.ends[0]) m.at(row, col) += 1;
                            if (v.id == e.ends[1]) m.at(row, col) -= 1;
                        }
                        ++col;
                    }
                }
            }
            ++row;
        }
    }
    return make_lattice_map(std::move(m), std::move(rows), std::move(cols));
}

MultinodeLattice build_rho_multinode(const Graph& g) {
    std::size_t multi_count = 0;
    const Edge* mn = nullptr;
    for (const auto& e : g.edges)
        if (e.is_multi()) {
            ++multi_count;
            mn = &e;
        }
    if (multi_count != 1) throw PreconditionError("build_rho_multinode expects exactly one multi-node");
    for (const auto& b : mn->branches)
        for (int i : g.vertex(b.vertex).stratum)
            if (!contains(mn->stratum, i))
                throw StructuralError("branch " + b.edge + " lies on a vertex whose stratum is not contained in the multi-node stratum");

    // Blocks of the full T: ordinary edges and branch edges, in natural id order.
    struct Block {
        std::string edge;
        const Edge* ordinary = nullptr;
        const Branch* branch = nullptr;
    };
    std::vector<Block> blocks;
    for (const auto& e : g.edges)
        if (!e.is_multi()) blocks.push_back({e.id, &e, nullptr});
    for (const auto& b : mn->branches) blocks.push_back({b.edge, nullptr, &b});
    std::sort(blocks.begin(), blocks.end(), [](const Block& a, const Block& b) { return natural_less(a.edge, b.edge); });

    std::vector<std::string> rows;
    std::vector<std::pair<std::size_t, int>> row_key;  // block index, divisor
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        const Stratum& s = blocks[b].ordinary ? blocks[b].ordinary->stratum : mn->stratum;
        for (int i : s) {
            rows.push_back(t_label(blocks[b].edge, i));
            row_key.push_back({b, i});
        }
    }
    std::vector<std::string> cols;
    for (const auto& b : blocks) cols.push_back("lambda:" + b.edge);
    for (const auto& v : g.vertices)
        for (int i : v.stratum) cols.push_back("s:" + v.id + ":" + std::to_string(i + 1));
    const std::size_t restricted_cols = cols.size();
    for (int i : mn->stratum) cols.push_back("s:" + mn->id + ":" + std::to_string(i + 1));

    IntMatrix ext(rows.size(), cols.size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        const auto [bi, i] = row_key[r];
        const Block& blk = blocks[bi];
        std::string start, end;
        if (blk.ordinary) {
            ext.at(r, bi) = blk.ordinary->contact[i];
            if (!blk.ordinary->is_loop()) {
                start = blk.ordinary->ends[0];
                end = blk.ordinary->ends[1];
            }
        } else {
            const Branch& br = *blk.branch;
            ext.at(r, bi) = br.outward ? -br.contact[i] : br.contact[i];
            (br.outward ? end : start) = br.vertex;
            std::size_t dc = restricted_cols;
            for (int j : mn->stratum) {
                if (j == i) ext.at(r, dc) = br.outward ? 1 : -1;
                ++dc;
            }
        }
        std::size_t col = blocks.size();
        for (const auto& v : g.vertices)
            for (int j : v.stratum) {
                if (j == i) {
                    if (v.id == start) ext.at(r, col) += 1;
                    if (v.id == end) ext.at(r, col) -= 1;
                }
                ++col;
            }
    }

    // Projection T -> T-bar killing the collapsed-vertex columns. The last branch is the reference.
    const Branch& ref = mn->branches.back();
    const long long eps_ref = ref.outward ? 1 : -1;
    std::vector<std::string> qrows;
    std::vector<std::vector<BigInt>> proj_rows;
    for (std::size_t r = 0; r < rows.size(); ++r) {
        const auto [bi, i] = row_key[r];
        if (blocks[bi].branch == &ref) continue;
        std::vector<BigInt> p(rows.size(), 0);
        p[r] = 1;
        if (blocks[bi].branch) {
            const long long eps = blocks[bi].branch->outward ? 1 : -1;
            for (std::size_t r2 = 0; r2 < rows.size(); ++r2)
                if (blocks[row_key[r2].first].branch == &ref && row_key[r2].second == i) p[r2] = -eps * eps_ref;
        }
        qrows.push_back(rows[r]);
        proj_rows.push_back(std::move(p));
    }
    const IntMatrix proj = IntMatrix::from_rows(proj_rows, rows.size());
    IntMatrix restricted(rows.size(), restricted_cols);
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < restricted_cols; ++c) restricted.at(r, c) = ext.at(r, c);
    std::vector<std::string> rcols(cols.begin(), cols.begin() + static_cast<std::ptrdiff_t>(restricted_cols));

    MultinodeLattice out;
    out.multinode_id = mn->id;
    out.quotient = make_lattice_map(multiply(proj, restricted), qrows, rcols);
    out.extended = make_lattice_map(std::move(ext), rows, cols);
    out.pulled_characters = hnf_rows(multiply(out.quotient.characters, proj));
    return out;
}

IntMatrix characters_from_maps(const std::vector<std::map<std::string, long long>>& rows,
                               const std::vector<std::string>& labels) {
    IntMatrix m(0, labels.size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        std::vector<BigInt> row(labels.size(), 0);
        for (const auto& [label, exp] : rows[r]) {
            auto it = std::find(labels.begin(), labels.end(), label);
            if (it == labels.end())
                throw InputError("unknown torus coordinate '" + label + "'", "characters[" + std::to_string(r) + "]");
            row[static_cast<std::size_t>(it - labels.begin())] = exp;
        }
        m.append_row(row);
    }
    return m;
}

bool annihilates(const IntMatrix& characters, const IntMatrix& m) {
    const IntMatrix prod = multiply(characters, m);
    for (std::size_t r = 0; r < prod.rows(); ++r)
        for (std::size_t c = 0; c < prod.cols(); ++c)
            if (prod.at(r, c) != 0) return false;
    return true;
}

}  // namespace logmoduli

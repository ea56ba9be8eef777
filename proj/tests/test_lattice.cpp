#include "support.hpp"

#include <doctest.h>

using namespace testsupport;

namespace {

IntMatrix random_matrix(Rng& rng, std::size_t r, std::size_t c, long long range = 4) {
    IntMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m.at(i, j) = rng.uniform(-range, range);
    return m;
}

bool is_zero(const IntMatrix& m) {
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (m.at(i, j) != 0) return false;
    return true;
}

}  // namespace

TEST_CASE("kernel bases are annihilated and have the complementary rank") {
    Rng rng(31);
    for (int s = 0; s < 100; ++s) {
        const std::size_t r = static_cast<std::size_t>(rng.uniform(1, 5)), c = static_cast<std::size_t>(rng.uniform(1, 6));
        const IntMatrix m = random_matrix(rng, r, c);
        const IntMatrix k = kernel_basis(m);  // rows x with m x = 0
        CHECK(k.rows() + rank(m) == c);
        if (k.rows()) CHECK(is_zero(multiply(m, k.transpose())));
        const IntMatrix lk = left_kernel_basis(m);
        CHECK(lk.rows() + rank(m) == r);
        if (lk.rows()) CHECK(is_zero(multiply(lk, m)));
    }
}

TEST_CASE("kernel lattices are saturated") {
    // 2x - 4y = 0 has kernel generated by (2, 1), not (4, 2).
    const IntMatrix m = IntMatrix::from_rows(std::vector<std::vector<long long>>{{2, -4}}, 2);
    const IntMatrix k = kernel_basis(m);
    REQUIRE(k.rows() == 1);
    CHECK(same_row_lattice(k, IntMatrix::from_rows(std::vector<std::vector<long long>>{{2, 1}}, 2)));
}

TEST_CASE("Smith invariants multiply to the determinant") {
    const IntMatrix m = IntMatrix::from_rows(std::vector<std::vector<long long>>{{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}}, 3);
    CHECK(smith_invariants(m) == std::vector<BigInt>{2, 6, 12});
    const IntMatrix id = IntMatrix::from_rows(std::vector<std::vector<long long>>{{1, 0}, {0, 1}}, 2);
    CHECK(smith_invariants(id) == std::vector<BigInt>{1, 1});
}

TEST_CASE("row HNF detects lattice membership") {
    const IntMatrix m = IntMatrix::from_rows(std::vector<std::vector<long long>>{{2, 0}, {0, 3}}, 2);
    const IntMatrix h = hnf_rows(m);
    CHECK(in_row_lattice(h, {4, 9}));
    CHECK_FALSE(in_row_lattice(h, {1, 0}));
    std::vector<BigInt> coeffs;
    REQUIRE(solve_in_row_lattice(h, {6, -3}, coeffs));
    CHECK(coeffs.size() == h.rows());
}

TEST_CASE("column echelon form is a unimodular change of basis") {
    Rng rng(32);
    for (int s = 0; s < 50; ++s) {
        const IntMatrix m = random_matrix(rng, 3, 4);
        const ColumnEchelon ce = column_echelon(m);
        CHECK(multiply(m, ce.U) == ce.H);
        CHECK(ce.rank == rank(m));
        CHECK(smith_invariants(ce.U).size() == 4);
        for (const auto& d : smith_invariants(ce.U)) CHECK(d == 1);
    }
}

TEST_CASE("two-line ghost group") {
    const Graph g = load_fixture("two_line_ghost.json").graph;
    const LatticeMap L = build_rho(g);
    CHECK(L.row_labels == std::vector<std::string>{"e1:1", "e1:2", "e2:1", "e2:2", "e3:1", "e3:2"});
    CHECK(L.col_labels == std::vector<std::string>{"lambda:e1", "lambda:e2", "lambda:e3", "s:v0:1", "s:v0:2"});
    CHECK(L.kernel_rank() == 1);
    CHECK(L.cokernel_rank() == 2);
    CHECK(L.torsion().empty());
    CHECK(annihilates(L.characters, L.matrix));
    CHECK(same_row_lattice(L.kernel, IntMatrix::from_rows(std::vector<std::vector<long long>>{{1, 1, 1, 1, 1}}, 5)));
}

TEST_CASE("rho rows follow lambda_e contact_i + s_start,i - s_end,i") {
    Rng rng(33);
    for (int s = 0; s < 40; ++s) {
        const Graph g = random_valid_graph(rng);
        const LatticeMap L = build_rho(g);
        for (std::size_t r = 0; r < L.row_labels.size(); ++r) {
            const std::string& label = L.row_labels[r];
            const std::string edge = label.substr(0, label.find(':'));
            const int i = std::stoi(label.substr(label.find(':') + 1)) - 1;
            const Edge& e = g.edges[g.edge_index(edge)];
            for (std::size_t c = 0; c < L.col_labels.size(); ++c) {
                const std::string& col = L.col_labels[c];
                BigInt expected = 0;
                if (col == "lambda:" + edge) expected += e.contact[static_cast<std::size_t>(i)];
                if (col == "s:" + e.ends[0] + ":" + std::to_string(i + 1)) expected += 1;
                if (col == "s:" + e.ends[1] + ":" + std::to_string(i + 1)) expected -= 1;
                CHECK(L.matrix.at(r, c) == expected);
            }
        }
    }
}

TEST_CASE("characters are the saturated left kernel") {
    Rng rng(34);
    for (int s = 0; s < 40; ++s) {
        const LatticeMap L = build_rho(random_valid_graph(rng));
        CHECK(L.characters.rows() == L.cokernel_rank());
        CHECK(annihilates(L.characters, L.matrix));
        CHECK(same_row_lattice(L.characters, left_kernel_basis(L.matrix)));
    }
}

TEST_CASE("star graph has one character, the alternating cycle") {
    const GraphDocument doc = load_fixture("good_ex2.json");
    const LatticeMap L = build_rho(doc.graph);
    CHECK(L.kernel_rank() == 1);
    CHECK(L.cokernel_rank() == 1);
    CHECK(same_row_lattice(L.characters, document_characters(doc)));
}

TEST_CASE("multi-node lattice splits off the collapsed vertex") {
    const Graph g = load_fixture("two_line_ghost.json").graph;
    const CollapseResult c = collapse_ghost_cluster(g, {"v0"});
    const MultinodeLattice m = build_rho_multinode(c.graph);
    CHECK(m.multinode_id == c.multinode_id);
    CHECK(annihilates(m.pulled_characters, m.extended.matrix));
    CHECK(m.quotient.cokernel_rank() == 2);
}

TEST_CASE("characters_from_maps rejects unknown labels") {
    CHECK_THROWS_AS(characters_from_maps({{{"e9:1", 1}}}, {"e1:1"}), InputError);
}

#include "support.hpp"

#include <doctest.h>

using namespace testsupport;

namespace {

std::set<std::string> codes(const ValidationReport& r) {
    std::set<std::string> out;
    for (const auto& v : r.violations) out.insert(v.code);
    return out;
}

}  // namespace

TEST_CASE("fixtures validate") {
    for (const char* name : {"two_line_ghost.json", "good_ex1.json", "good_ex1_degenerate.json", "good_ex2.json", "bad_ex1.json",
                             "mc_dep.json", "mc_issue.json", "p2_quartic.json", "g0_a0.json", "ga0_vertex_genus.json",
                             "ga0_cyclic.json"}) {
        CAPTURE(name);
        const ValidationReport r = validate_graph(load_fixture(name).graph);
        CHECK(r.valid());
    }
}

TEST_CASE("genus counts vertex genera and cycles") {
    CHECK(total_genus(load_fixture("ga0_vertex_genus.json").graph) == 2);
    const Graph cyc = load_fixture("ga0_cyclic.json").graph;
    CHECK(first_betti(cyc) == 1);
    CHECK(total_genus(cyc) == 1);
    CHECK(first_betti(load_fixture("two_line_ghost.json").graph) == 0);
}

TEST_CASE("each structural rule reports its own code") {
    const Graph base = load_fixture("two_line_ghost.json").graph;

    Graph g = base;
    g.vertex("v0").c1_log = 1;
    CHECK(codes(validate_graph(g)).count("ghost_degree"));

    g = base;
    g.vertex("v1").genus = 1;
    CHECK(codes(validate_graph(g)).count("bubble_genus"));

    g = base;
    g.edges[0].stratum = {0};
    CHECK(codes(validate_graph(g)).count("edge_stratum"));

    g = base;
    g.edges[0].contact = {1, -1};
    CHECK(codes(validate_graph(g)).count("edge_contact_sign"));

    g = base;
    g.legs[0].contact = {3, 1};
    CHECK(codes(validate_graph(g)).count("balance"));

    g = base;
    g.edges.pop_back();
    CHECK(codes(validate_graph(g)).count("connectivity"));

    g = base;
    g.declared_genus = 3;
    CHECK(codes(validate_graph(g)).count("genus"));

    g = load_fixture("bad_ex1.json").graph;
    g.vertex("v1").dot = {3, 2};
    CHECK(codes(validate_graph(g)).count("cover_pairing"));
}

TEST_CASE("off-stratum leg contacts must be non-negative") {
    Graph g = load_fixture("good_ex2.json").graph;
    for (auto& l : g.legs)
        if (l.vertex == "v1") l.contact = {4, -1, 0};
    CHECK(codes(validate_graph(g)).count("leg_contact_sign"));
}

TEST_CASE("violations are reported in a deterministic order") {
    Graph g = load_fixture("two_line_ghost.json").graph;
    g.vertex("v0").c1_log = 2;
    g.vertex("v3").genus = 1;
    g.vertex("v2").genus = 1;
    const ValidationReport r = validate_graph(g);
    CHECK(std::is_sorted(r.violations.begin(), r.violations.end()));
    CHECK(validate_graph(g).violations == r.violations);
}

TEST_CASE("canonicalize is idempotent and keeps the graph valid") {
    Rng rng(21);
    for (int s = 0; s < 30; ++s) {
        Graph g = random_valid_graph(rng);
        canonicalize(g);
        Graph h = g;
        canonicalize(h);
        CHECK(g == h);
        CHECK(validate_graph(g).valid());
    }
}

TEST_CASE("decorations of the zero-degree tree are trivial and unique") {
    const Graph g = load_fixture("g0_a0.json").graph;
    const DecorationResult d = solve_decorations(g, 3);
    CHECK(d.conserved);
    CHECK_FALSE(d.has_cycles);
    REQUIRE(d.enumerated);
    REQUIRE(d.solutions.size() == 1);
    for (const auto& c : d.solutions.front()) CHECK(std::all_of(c.begin(), c.end(), [](long long x) { return x == 0; }));
}

TEST_CASE("the cyclic zero-degree graph has a lattice of circulations") {
    const Graph g = load_fixture("ga0_cyclic.json").graph;
    const DecorationResult d = solve_decorations(g, 2);
    CHECK(d.has_cycles);
    CHECK(d.cycle_basis.size() == 2);  // one circulation per stratum coordinate
    REQUIRE(d.enumerated);
    CHECK(d.solutions.size() == 25);  // (2*2+1)^|I| with |I| = 2
}

TEST_CASE("decorations recover the edge contacts of a tree") {
    Rng rng(22);
    for (int s = 0; s < 30; ++s) {
        const Graph g = random_valid_graph(rng);
        if (first_betti(g) != 0) continue;
        const DecorationResult d = solve_decorations(g);
        REQUIRE(d.conserved);
        REQUIRE(d.particular.size() == g.edges.size());
        for (std::size_t e = 0; e < g.edges.size(); ++e) CHECK(d.particular[e] == g.edges[e].contact);
        CHECK(d.particular_admissible);
    }
}

TEST_CASE("reorienting an edge twice is the identity") {
    const Graph g = load_fixture("bad_ex1.json").graph;
    for (const auto& e : g.edges) {
        const Graph once = reorient_edge(g, e.id);
        const Edge& f = once.edges[once.edge_index(e.id)];
        CHECK(f.ends[0] == e.ends[1]);
        for (std::size_t i = 0; i < e.contact.size(); ++i) CHECK(f.contact[i] == -e.contact[i]);
        CHECK(validate_graph(once).valid());
        CHECK(reorient_edge(once, e.id) == g);
    }
}

TEST_CASE("collapsing a ghost produces one multi-node") {
    const Graph g = load_fixture("two_line_ghost.json").graph;
    const CollapseResult c = collapse_ghost_cluster(g, {"v0"});
    CHECK_FALSE(c.graph.has_vertex("v0"));
    REQUIRE(c.graph.has_multinode());
    const Edge& m = c.graph.edges[c.graph.edge_index(c.multinode_id)];
    CHECK(m.branches.size() == 3);
    CHECK(validate_graph(c.graph, true).valid());
    CHECK(codes(validate_graph(c.graph, false)).count("multinode"));
}

TEST_CASE("special points list legs and edge ends with inward contacts") {
    const Graph g = load_fixture("two_line_ghost.json").graph;
    const auto pts = special_points(g, "v0");
    CHECK(pts.size() == 5);
    std::vector<long long> sum(2, 0);
    for (const auto& p : pts)
        for (int i = 0; i < 2; ++i) sum[i] += p.contact[i];
    CHECK(sum == g.vertex("v0").dot);
}

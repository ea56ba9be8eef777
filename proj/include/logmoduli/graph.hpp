#pragma once

#include "logmoduli/gaussian.hpp"

#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace logmoduli {

using ContactVector = std::vector<long long>;
// Divisor indices are stored 0-based and sorted; the JSON format is 1-based.
using Stratum = std::vector<int>;

enum class VertexKind { principal, bubble, ghost };

std::string to_string(VertexKind k);
VertexKind parse_vertex_kind(const std::string& s, const std::string& field = {});

struct Pairing {
    long long c1_log = 0;
    std::vector<long long> dot;  // A . D_i
    friend bool operator==(const Pairing&, const Pairing&) = default;
};

struct Vertex {
    std::string id;
    int genus = 0;
    Stratum stratum;
    long long c1_log = 0;
    std::vector<long long> dot;
    VertexKind kind = VertexKind::principal;
    std::optional<std::string> image_label;
    std::optional<int> cover_degree;
    std::optional<Pairing> base;  // pairings of the underlying simple class of a cover
    friend bool operator==(const Vertex&, const Vertex&) = default;
};

// One branch of a multi-node. `contact` is the contact vector of the branch point on `vertex`.
// `outward` records that the reference orientation of the branch edge starts at the
// collapsed vertex and ends at `vertex`.
struct Branch {
    std::string edge;
    std::string vertex;
    ContactVector contact;
    bool outward = false;
    std::optional<std::string> label;
    friend bool operator==(const Branch&, const Branch&) = default;
};

struct Edge {
    std::string id;
    std::array<std::string, 2> ends;
    Stratum stratum;
    ContactVector contact;  // s for the orientation ends[0] -> ends[1], read at ends[0]
    std::array<std::optional<std::string>, 2> labels;
    std::vector<Branch> branches;  // non-empty only for multi-nodes

    bool is_multi() const { return !branches.empty(); }
    bool is_loop() const { return !is_multi() && ends[0] == ends[1]; }
    friend bool operator==(const Edge&, const Edge&) = default;
};

struct Leg {
    std::string id;
    std::string vertex;
    ContactVector contact;
    std::optional<P1Point> point;
    std::optional<std::string> label;
    friend bool operator==(const Leg&, const Leg&) = default;
};

struct Graph {
    int N = 0;
    int n = 0;
    std::optional<int> declared_genus;
    std::vector<Vertex> vertices;
    std::vector<Edge> edges;
    std::vector<Leg> legs;

    std::size_t vertex_index(const std::string& id) const;  // throws StructuralError
    const Vertex& vertex(const std::string& id) const { return vertices[vertex_index(id)]; }
    Vertex& vertex(const std::string& id) { return vertices[vertex_index(id)]; }
    std::size_t edge_index(const std::string& id) const;
    bool has_vertex(const std::string& id) const;
    bool has_multinode() const;
    std::size_t k() const { return legs.size(); }
    friend bool operator==(const Graph&, const Graph&) = default;
};

bool contains(const Stratum& s, int i);
Stratum stratum_union(const Stratum& a, const Stratum& b);
std::string stratum_key(const Stratum& s);  // "{1,2}" with 1-based indices

// A special point on a vertex: a leg, an end of an ordinary edge, or a multi-node branch.
struct SpecialPoint {
    enum class Type { leg, edge_end, branch } type;
    std::string id;        // leg id or edge id
    int end = 0;           // for edge ends: 0 or 1
    ContactVector contact; // contact vector of the point as seen from the vertex
    std::optional<std::string> label;
};
std::vector<SpecialPoint> special_points(const Graph& g, const std::string& vertex_id);

// Sorts vertices, edges, legs and branches by natural id order.
void canonicalize(Graph& g);

// Throws StructuralError for dangling ids, wrong vector lengths, duplicate ids, empty graphs.
void check_structure(const Graph& g);

// Total genus: sum of vertex genera plus the first Betti number of the (hyper)graph.
long long total_genus(const Graph& g);
long long first_betti(const Graph& g);
bool is_connected(const Graph& g);

struct Violation {
    std::string code;
    std::string element;
    std::string message;
    friend bool operator<(const Violation& a, const Violation& b) {
        if (a.code != b.code) return a.code < b.code;
        if (a.element != b.element) return natural_less(a.element, b.element);
        return a.message < b.message;
    }
    friend bool operator==(const Violation&, const Violation&) = default;
};

struct ValidationReport {
    std::vector<Violation> violations;
    long long genus = 0;
    bool valid() const { return violations.empty(); }
};

ValidationReport validate_graph(const Graph& g, bool multinode_allowed = false);

// Admissible edge decorations for a skeleton (edge contacts ignored).
struct DecorationResult {
    bool conserved = true;                     // flow conservation per coordinate
    std::vector<std::string> conservation_failures;
    bool has_cycles = false;
    std::vector<ContactVector> particular;     // one contact vector per edge; may violate signs
    bool particular_admissible = false;
    // Per coordinate i: basis vectors of the cycle space, each a vector of per-edge values.
    std::vector<std::vector<std::vector<long long>>> cycle_basis;
    bool enumerated = false;
    std::vector<std::vector<ContactVector>> solutions;  // complete admissible decorations
    std::string message;
};

DecorationResult solve_decorations(const Graph& skeleton, std::optional<long long> bound = std::nullopt,
                                   std::size_t max_solutions = 200000);

// Returns a copy of g with the given per-edge contacts installed.
Graph with_contacts(const Graph& g, const std::vector<ContactVector>& contacts);

// Collapses a connected set of ghost vertices sharing one stratum into a multi-node.
// Legs on the collapsed vertices are dropped. Returns the new graph and the multi-node id.
struct CollapseResult {
    Graph graph;
    std::string multinode_id;
};
CollapseResult collapse_ghost_cluster(const Graph& g, const std::set<std::string>& cluster);

// Flips the reference orientation of an edge (contact becomes the negated vector).
Graph reorient_edge(const Graph& g, const std::string& edge_id);

}  // namespace logmoduli

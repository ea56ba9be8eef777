#pragma once

#include "logmoduli/gaussian.hpp"
#include "logmoduli/graph.hpp"
#include "logmoduli/intmat.hpp"
#include "logmoduli/lattice.hpp"
#include "logmoduli/sections.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

namespace logmoduli {

// Inputs for the obstruction computations.
//   points: vertex -> special point id (leg id or edge id) -> coordinate on P^1
//   scales: vertex -> divisor index (0-based) -> scale of the section
//   eta:    (edge id, vertex id at the end, divisor index 0-based) -> leading coefficient
struct SectionData {
    std::map<std::string, std::map<std::string, P1Point>> points;
    std::map<std::string, std::map<int, GaussianRational>> scales;
    std::map<std::tuple<std::string, std::string, int>, GaussianRational> eta;
};

// Sections zeta_{v,i} for i in I_v built from the contacts at the special points of v.
// Empty when no coordinates were supplied for v.
std::map<int, RationalSection> vertex_sections(const Graph& g, const std::string& vertex, const SectionData& data);

struct ObstructionClass {
    std::vector<std::string> labels;       // T coordinates
    std::vector<GaussianRational> raw;     // the tuple of eta ratios
    IntMatrix basis;                       // character rows over `labels`
    std::vector<GaussianRational> values;  // one per character
    bool is_trivial = true;
};

std::vector<GaussianRational> evaluate_characters(const IntMatrix& basis, const std::vector<GaussianRational>& raw);
ObstructionClass make_class(std::vector<std::string> labels, std::vector<GaussianRational> raw, IntMatrix basis);

// Leading coefficient eta for the end of `edge` lying on `vertex`, in coordinate i, with the
// expected order `order`. Explicit data wins; otherwise the vertex section is used.
GaussianRational eta_value(const Graph& g, const SectionData& data, std::map<std::string, std::map<int, RationalSection>>& cache,
                           const std::string& edge, const std::string& vertex, int i, long long order);

ObstructionClass compute_ob(const Graph& g, const SectionData& data, const std::optional<IntMatrix>& characters = std::nullopt);

// For a graph with one multi-node; characters are over the full T coordinates (branch edges keep their ids).
ObstructionClass compute_ob_multinode(const Graph& g, const SectionData& data,
                                      const std::optional<IntMatrix>& characters = std::nullopt);

// The ghost-bubble class for ghost v0 of g, written on the T coordinates of g.
ObstructionClass compute_o_v0(const Graph& g, const std::string& v0, const SectionData& data,
                              const std::optional<IntMatrix>& characters = std::nullopt);

struct RelationCheck {
    ObstructionClass ob;
    ObstructionClass ob_bar;
    ObstructionClass o;          // convention ob = ob_bar * o^{-1}
    ObstructionClass o_display;  // o^{-1}, the factor with ob = ob_bar * o_display
    bool lattices_agree = false; // characters of g equal the pulled-back characters of the collapse
    bool holds = false;
};

RelationCheck relation_check(const Graph& g, const std::string& v0, const SectionData& data,
                             const std::optional<IntMatrix>& characters = std::nullopt);

struct CollapseHomomorphism {
    Graph collapsed;
    std::string collapsed_vertex;
    IntMatrix phi;            // rows: characters of the expanded graph, in the collapsed basis
    bool injective = false;   // on characters, equivalently the torus map is onto
    bool saturated = false;   // image of characters is saturated
    bool surjective = false;
    long long kernel_gain = 0;      // rank ker(expanded) - rank ker(collapsed)
    long long cokernel_drop = 0;    // rank coker(collapsed) - rank coker(expanded)
    long long tree_kernel_rank = 0; // rank ker of the ghost tree map with diagonal quotient
    bool tree_cokernel_zero = false;
    bool euler_identity = false;    // kernel_gain + cokernel_drop == tree_kernel_rank
};

CollapseHomomorphism collapse_homomorphism(const Graph& expanded, const std::set<std::string>& ghost_tree);

}  // namespace logmoduli

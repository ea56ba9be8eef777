#pragma once

#include "logmoduli/dimension.hpp"
#include "logmoduli/graph.hpp"

#include <map>
#include <set>
#include <string>
#include <vector>

namespace logmoduli {

// One graph of the reduction together with its bookkeeping.
struct RtStage {
    std::string name;  // "input", "i", "ii", "iii", "iv"
    Graph graph;
    QLedger ledger;
    long long q = 0;
    long long genus = 0;
    std::map<std::string, long long> multiplicity;  // bubble vertex id -> d
};

struct GhostCollapseRecord {
    std::vector<std::string> ghosts;
    std::string multinode;
    long long delta = 0;  // sum over the ghosts of k_v + ell_v - 3
};

struct CoverRecord {
    std::string vertex;
    long long degree = 1;
    long long k_before = 0;    // marked points on the cover
    long long ell_before = 0;  // nodal points on the cover
    long long k_after = 0;
    long long ell_after = 0;
    long long delta = 0;       // (d-1) c1_log(base) + (k+ell) - (k_after+ell_after)
    long long d_fiber = 0;
};

struct ReductionTrace {
    std::vector<RtStage> stages;  // input, i, ii, iii, iv
    // red maps between consecutive stages (bubble vertex id -> bubble vertex id).
    std::map<std::string, std::string> red_input_to_prime;   // V_b (non-ghost) -> V'_b
    std::map<std::string, std::string> red_prime_to_double;  // V'_b -> V''_b
    std::vector<GhostCollapseRecord> ghost_collapses;
    std::vector<CoverRecord> covers;
    long long genus_rise = 0;  // genus(iv) - genus(iii)
    long long dim_fiber = 0;   // sum over ghosts of (k+ell-3) plus the cover fibers

    const RtStage& stage(const std::string& name) const;
    const Graph& gamma() const { return stages.front().graph; }
    const Graph& gamma_prime() const { return stage("iii").graph; }
    const Graph& gamma_double_prime() const { return stage("iv").graph; }
};

// Runs steps (i)-(iv). Equal image labels drive the merging of components and special points.
ReductionTrace rt_reduce(const Graph& model);

struct EdgeInvariantReport {
    bool holds = true;
    std::vector<std::string> failing_strata;
    std::map<std::string, std::pair<long long, long long>> per_stratum;  // key -> (Gamma' value, Gamma'' value)
};

// |E-vec''_I| - |E''_I| = |E-vec'_I| - |E'_I| for every stratum I.
EdgeInvariantReport verify_edge_invariant(const ReductionTrace& trace);

// Multiplicity conservation, genus preservation through (i)-(iii) and the Q identities of steps (i), (ii).
struct TraceChecks {
    bool multiplicity_conserved = true;
    bool genus_preserved = true;
    bool ghost_q_identity = true;
    bool cover_q_identity = true;
    std::vector<std::string> failures;
};
TraceChecks check_trace(const ReductionTrace& trace);

struct ClusterClassification {
    std::string type;  // "i", "ii", "iii", "not-a-cluster"
    std::map<std::string, long long> delta_plus;
    long long external_nodes = 0;
    long long external_marks = 0;
    bool bound_ok = true;
    // Half-edges with a positive entry that point into a sub-cluster free of marks and external nodes.
    std::vector<std::string> infinite_chain;
};

ClusterClassification classify_cluster(const Graph& model, const std::set<std::string>& cluster, bool nef);

}  // namespace logmoduli

#pragma once

#include "logmoduli/graph.hpp"

#include <map>
#include <string>

namespace logmoduli {

// Complex expected dimension c1_log + (n-3)(1-g) + k.
long long expected_dim_log(long long c1_log, long long n, long long g, long long k);

struct StratumDims {
    long long d_log = 0;
    long long rank_k = 0;
    long long via_kernel = 0;      // d_log - rank K
    long long via_components = 0;  // per-component sum minus node codimensions minus dim G
    long long dim_g = 0;
    bool tropical_feasible = false;
};

// Both paths are computed; disagreement raises InternalError.
StratumDims stratum_dim(const Graph& g);

// Number of special points on v that meet D outside I_v (some positive entry off the stratum).
long long contact_point_count(const Graph& g, const std::string& vertex);

// Number of distinct images of those points (equal labels share an image; unlabeled points are distinct).
long long contact_image_count(const Graph& g, const std::string& vertex);

struct FiberDims {
    long long d_fiber = 0;
    long long d_down = 0;
    long long d_up = 0;
    long long n_eff = 0;            // n - |I|
    long long window_low = 0;       // closed forbidden interval [low, high_closed]
    long long window_high_closed = 0;
    long long window_high_open = 0; // half-open interval [low, high_open)
    bool semipositive_window_violated = false;
    bool positive_window_violated = false;
    bool realizable = true;  // k <= d*ell, i.e. every contact point lies over one of the ell images
};

// d: cover degree, ell: contact points of the image curve, k: contact points of the cover.
FiberDims mc_fiber_dims(long long d, long long ell, long long k, long long c1_log_base, long long n, long long depth);

struct CoverStratum {
    long long dimension = 0;
    std::map<std::string, long long> per_vertex;
    long long dim_g = 0;
};

// Dimension of a stratum whose bubbles may be multiple covers: cover vertices contribute the
// image-curve moduli plus the cover fiber (plus free non-contact special points) instead of the
// simple-map count.
CoverStratum cover_stratum_dim(const Graph& g);

struct QLedger {
    long long e_vec = 0;  // |E-vec|: half-edges (branches) over all nodes
    long long e = 0;      // |E|: nodes
    std::map<std::string, std::pair<long long, long long>> by_stratum;  // stratum key -> (|E-vec_I|, |E_I|)
};

QLedger edge_ledger(const Graph& g);
long long q_quantity(const Graph& g);
long long q_bound(const Graph& g);  // Q + (n-3)(1-g) with the genus of g

long long ghost_collapse_delta(long long k_v, long long ell_v);
long long cover_replace_delta(long long d, long long c1_log_base, long long k_v, long long ell_v, long long k_bar, long long ell_bar);

}  // namespace logmoduli

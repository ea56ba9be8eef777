#pragma once

#include "logmoduli/graph.hpp"
#include "logmoduli/intmat.hpp"

#include <optional>
#include <string>
#include <vector>

namespace logmoduli {

// Feasibility of {x : A x = 0, x >= 1} by exact phase-one simplex with Bland's rule.
// When infeasible, `certificate` holds multipliers u on the equations such that
// w = u^T A satisfies w <= 0 entrywise and sum(w) < 0, which contradicts x >= 1.
struct PositivePointResult {
    bool feasible = false;
    std::vector<Rational> point;
    std::vector<Rational> certificate;
    std::vector<Rational> certificate_combination;  // w = u^T A
};

PositivePointResult find_point_at_least_one(const IntMatrix& A);

// Independent check of a Farkas certificate for {A x = 0, x >= 1}.
bool verify_certificate(const IntMatrix& A, const std::vector<Rational>& u);

// Feasibility of the same system by Fourier-Motzkin elimination in kernel coordinates.
// Throws CapacityError above `max_variables` columns or when intermediate systems explode.
bool fourier_motzkin_feasible(const IntMatrix& A, std::size_t max_variables = 12);

struct TropicalWitness {
    std::vector<Rational> lambda;                   // per edge
    std::vector<std::vector<Rational>> slopes;      // per vertex, length N, zero off the stratum
};

struct TropicalResult {
    bool feasible = false;
    std::optional<TropicalWitness> witness;
    std::vector<std::string> equation_labels;       // rows of the system (T coordinates)
    std::vector<std::string> variable_labels;       // columns (lambda and slope variables)
    std::vector<Rational> certificate;              // multipliers on equations, when infeasible
    std::vector<Rational> certificate_combination;  // combined row, entrywise <= 0 with negative sum
    std::optional<bool> fourier_motzkin_agrees;     // set when the cross-check ran
};

TropicalResult tropical_feasible(const Graph& g);

// Checks a witness against the defining equations exactly.
bool check_witness(const Graph& g, const TropicalWitness& w);

struct ConeResult {
    std::size_t dimension = 0;
    std::size_t kernel_rank = 0;
    std::vector<std::vector<BigInt>> rays;  // primitive generators in variable coordinates
    bool strictly_convex = true;
    std::vector<std::string> variable_labels;
};

// sigma = K_R intersected with the nonnegative orthant, by double description.
ConeResult cone_sigma(const Graph& g, std::size_t max_variables = 20);

// Extreme rays of {t : M t >= 0} for M of full column rank.
std::vector<std::vector<Rational>> pointed_cone_rays(const std::vector<std::vector<Rational>>& M);

}  // namespace logmoduli

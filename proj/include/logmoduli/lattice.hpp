#pragma once

#include "logmoduli/graph.hpp"
#include "logmoduli/intmat.hpp"

#include <string>
#include <vector>

namespace logmoduli {

// Integer map D -> T with cached normal-form data.
struct LatticeMap {
    IntMatrix matrix;                     // rows: T coordinates, columns: D coordinates
    std::vector<std::string> row_labels;  // "e1:2" = edge e1, divisor 2
    std::vector<std::string> col_labels;  // "lambda:e1", "s:v0:2"
    std::size_t rank = 0;
    IntMatrix kernel;      // rows, saturated, row HNF
    IntMatrix characters;  // rows over T coordinates, saturated, row HNF
    std::vector<BigInt> smith;

    std::size_t domain_rank() const { return matrix.cols(); }
    std::size_t codomain_rank() const { return matrix.rows(); }
    std::size_t kernel_rank() const { return matrix.cols() - rank; }
    std::size_t cokernel_rank() const { return matrix.rows() - rank; }
    std::vector<BigInt> torsion() const;  // Smith invariants greater than 1
};

LatticeMap make_lattice_map(IntMatrix matrix, std::vector<std::string> rows, std::vector<std::string> cols);

// T coordinate labels of an ordinary graph, in matrix row order.
std::vector<std::string> t_labels(const Graph& g);

LatticeMap build_rho(const Graph& g);

// The map for a graph with one multi-node, with the node's block divided by the image of
// the collapsed vertex. `pulled_characters` are the characters of the quotient map written
// on the T coordinates of the un-collapsed graph (branch edges keep their ids).
struct MultinodeLattice {
    LatticeMap quotient;            // the split quotient map into T-bar
    LatticeMap extended;            // [restricted map | collapsed-vertex columns] on full T
    IntMatrix pulled_characters;    // rows over extended.row_labels
    std::string multinode_id;
};

MultinodeLattice build_rho_multinode(const Graph& g);

// Character rows (over a label set) given as label -> exponent maps.
IntMatrix characters_from_maps(const std::vector<std::map<std::string, long long>>& rows,
                               const std::vector<std::string>& labels);

// True when every row annihilates the columns of `m`.
bool annihilates(const IntMatrix& characters, const IntMatrix& m);

}  // namespace logmoduli

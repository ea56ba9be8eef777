#pragma once

#include "logmoduli/numeric.hpp"

#include <cstddef>
#include <vector>

namespace logmoduli {

// Dense integer matrix with explicit shape, so that 0 x n and n x 0 matrices keep their sizes.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    static IntMatrix from_rows(const std::vector<std::vector<BigInt>>& rows, std::size_t cols);
    static IntMatrix from_rows(const std::vector<std::vector<long long>>& rows, std::size_t cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    BigInt& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const BigInt& at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::vector<BigInt> row(std::size_t r) const;
    std::vector<BigInt> col(std::size_t c) const;
    std::vector<std::vector<BigInt>> row_list() const;
    void append_row(const std::vector<BigInt>& row);

    IntMatrix transpose() const;

    friend bool operator==(const IntMatrix& a, const IntMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<BigInt> data_;
};

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b);
std::vector<BigInt> multiply(const IntMatrix& a, const std::vector<BigInt>& x);
BigInt dot(const std::vector<BigInt>& a, const std::vector<BigInt>& b);

// Column echelon form H = M * U with U unimodular. The first `rank` columns of H
// are nonzero with strictly increasing pivot rows; the remaining columns are zero.
struct ColumnEchelon {
    IntMatrix H;
    IntMatrix U;
    std::size_t rank = 0;
};
ColumnEchelon column_echelon(const IntMatrix& m);

std::size_t rank(const IntMatrix& m);

// Row Hermite normal form of the row lattice; zero rows are dropped.
IntMatrix hnf_rows(const IntMatrix& m);

// Saturated basis (rows, in row HNF) of {x : M x = 0}.
IntMatrix kernel_basis(const IntMatrix& m);

// Saturated basis (rows, in row HNF) of {y : y^T M = 0}.
IntMatrix left_kernel_basis(const IntMatrix& m);

// Nonzero Smith invariants d_1 | d_2 | ... of M.
std::vector<BigInt> smith_invariants(const IntMatrix& m);

// Whether v lies in the row lattice of `hnf` (which must be in row HNF).
bool in_row_lattice(const IntMatrix& hnf, std::vector<BigInt> v);

// Coefficients c with c * basis = v when v is in the row lattice of a row HNF basis.
bool solve_in_row_lattice(const IntMatrix& hnf, std::vector<BigInt> v, std::vector<BigInt>& coeffs);

// Equality of the row lattices spanned by a and b.
bool same_row_lattice(const IntMatrix& a, const IntMatrix& b);

// Rank of a rational matrix given as integer rows (fraction free elimination).
std::size_t rational_rank(std::vector<std::vector<Rational>> rows);

}  // namespace logmoduli

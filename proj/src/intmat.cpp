#include "logmoduli/intmat.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace logmoduli {

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<BigInt>>& rows, std::size_t cols) {
    IntMatrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols) throw std::invalid_argument("IntMatrix::from_rows: ragged rows");
        for (std::size_t c = 0; c < cols; ++c) m.at(r, c) = rows[r][c];
    }
    return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<long long>>& rows, std::size_t cols) {
    IntMatrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols) throw std::invalid_argument("IntMatrix::from_rows: ragged rows");
        for (std::size_t c = 0; c < cols; ++c) m.at(r, c) = rows[r][c];
    }
    return m;
}

std::vector<BigInt> IntMatrix::row(std::size_t r) const {
    return std::vector<BigInt>(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                               data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

std::vector<BigInt> IntMatrix::col(std::size_t c) const {
    std::vector<BigInt> out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out[r] = at(r, c);
    return out;
}

std::vector<std::vector<BigInt>> IntMatrix::row_list() const {
    std::vector<std::vector<BigInt>> out;
    for (std::size_t r = 0; r < rows_; ++r) out.push_back(row(r));
    return out;
}

void IntMatrix::append_row(const std::vector<BigInt>& row) {
    if (row.size() != cols_) throw std::invalid_argument("IntMatrix::append_row: wrong length");
    data_.insert(data_.end(), row.begin(), row.end());
    ++rows_;
}

IntMatrix IntMatrix::transpose() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) t.at(c, r) = at(r, c);
    return t;
}

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("multiply: shape mismatch");
    IntMatrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            if (a.at(i, k) == 0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) out.at(i, j) += a.at(i, k) * b.at(k, j);
        }
    return out;
}

std::vector<BigInt> multiply(const IntMatrix& a, const std::vector<BigInt>& x) {
    if (a.cols() != x.size()) throw std::invalid_argument("multiply: shape mismatch");
    std::vector<BigInt> out(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) out[i] += a.at(i, k) * x[k];
    return out;
}

BigInt dot(const std::vector<BigInt>& a, const std::vector<BigInt>& b) {
    if (a.size() != b.size()) throw std::invalid_argument("dot: length mismatch");
    BigInt s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

namespace {

void swap_cols(IntMatrix& m, std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t r = 0; r < m.rows(); ++r) std::swap(m.at(r, a), m.at(r, b));
}

// col_dst -= q * col_src
void axpy_col(IntMatrix& m, std::size_t dst, std::size_t src, const BigInt& q) {
    for (std::size_t r = 0; r < m.rows(); ++r)
        if (m.at(r, src) != 0) m.at(r, dst) -= q * m.at(r, src);
}

void negate_col(IntMatrix& m, std::size_t c) {
    for (std::size_t r = 0; r < m.rows(); ++r) m.at(r, c) = -m.at(r, c);
}

void swap_rows(IntMatrix& m, std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m.at(a, c), m.at(b, c));
}

void axpy_row(IntMatrix& m, std::size_t dst, std::size_t src, const BigInt& q) {
    for (std::size_t c = 0; c < m.cols(); ++c)
        if (m.at(src, c) != 0) m.at(dst, c) -= q * m.at(src, c);
}

IntMatrix identity(std::size_t n) {
    IntMatrix u(n, n);
    for (std::size_t i = 0; i < n; ++i) u.at(i, i) = 1;
    return u;
}

}  // namespace

ColumnEchelon column_echelon(const IntMatrix& m) {
    ColumnEchelon out{m, identity(m.cols()), 0};
    IntMatrix& H = out.H;
    IntMatrix& U = out.U;
    std::size_t p = 0;
    for (std::size_t r = 0; r < H.rows() && p < H.cols(); ++r) {
        while (true) {
            std::size_t best = H.cols();
            for (std::size_t j = p; j < H.cols(); ++j) {
                if (H.at(r, j) == 0) continue;
                if (best == H.cols() || abs(H.at(r, j)) < abs(H.at(r, best))) best = j;
            }
            if (best == H.cols()) break;
            swap_cols(H, p, best);
            swap_cols(U, p, best);
            bool clean = true;
            for (std::size_t j = p + 1; j < H.cols(); ++j) {
                if (H.at(r, j) == 0) continue;
                const BigInt q = H.at(r, j) / H.at(r, p);
                axpy_col(H, j, p, q);
                axpy_col(U, j, p, q);
                if (H.at(r, j) != 0) clean = false;
            }
            if (clean) break;
        }
        if (H.at(r, p) == 0) continue;
        if (H.at(r, p) < 0) {
            negate_col(H, p);
            negate_col(U, p);
        }
        ++p;
    }
    out.rank = p;
    return out;
}

std::size_t rank(const IntMatrix& m) { return column_echelon(m).rank; }

IntMatrix hnf_rows(const IntMatrix& m) {
    const ColumnEchelon e = column_echelon(m.transpose());
    IntMatrix rows(e.rank, m.cols());
    for (std::size_t k = 0; k < e.rank; ++k)
        for (std::size_t c = 0; c < m.cols(); ++c) rows.at(k, c) = e.H.at(c, k);
    // Reduce entries above each pivot into [0, pivot).
    for (std::size_t k = 0; k < rows.rows(); ++k) {
        std::size_t pc = 0;
        while (pc < rows.cols() && rows.at(k, pc) == 0) ++pc;
        for (std::size_t above = 0; above < k; ++above) {
            const BigInt q = floor_div(rows.at(above, pc), rows.at(k, pc));
            if (q != 0) axpy_row(rows, above, k, q);
        }
    }
    return rows;
}

IntMatrix kernel_basis(const IntMatrix& m) {
    const ColumnEchelon e = column_echelon(m);
    IntMatrix k(0, m.cols());
    for (std::size_t c = e.rank; c < m.cols(); ++c) k.append_row(e.U.col(c));
    return hnf_rows(k);
}

IntMatrix left_kernel_basis(const IntMatrix& m) { return kernel_basis(m.transpose()); }

std::vector<BigInt> smith_invariants(const IntMatrix& m) {
    IntMatrix A = m;
    std::vector<BigInt> out;
    const std::size_t lim = std::min(A.rows(), A.cols());
    for (std::size_t t = 0; t < lim; ++t) {
        auto move_min_to_pivot = [&](bool whole_submatrix) {
            std::size_t bi = A.rows(), bj = A.cols();
            for (std::size_t i = t; i < A.rows(); ++i)
                for (std::size_t j = t; j < A.cols(); ++j) {
                    if (!whole_submatrix && i != t && j != t) continue;
                    if (A.at(i, j) == 0) continue;
                    if (bi == A.rows() || abs(A.at(i, j)) < abs(A.at(bi, bj))) {
                        bi = i;
                        bj = j;
                    }
                }
            if (bi == A.rows()) return false;
            swap_rows(A, t, bi);
            swap_cols(A, t, bj);
            return true;
        };
        if (!move_min_to_pivot(true)) break;
        while (true) {
            bool changed = false;
            for (std::size_t i = t + 1; i < A.rows(); ++i) {
                if (A.at(i, t) == 0) continue;
                axpy_row(A, i, t, A.at(i, t) / A.at(t, t));
                if (A.at(i, t) != 0) changed = true;
            }
            for (std::size_t j = t + 1; j < A.cols(); ++j) {
                if (A.at(t, j) == 0) continue;
                axpy_col(A, j, t, A.at(t, j) / A.at(t, t));
                if (A.at(t, j) != 0) changed = true;
            }
            if (changed) {
                move_min_to_pivot(false);
                continue;
            }
            bool fixed = false;
            for (std::size_t i = t + 1; i < A.rows() && !fixed; ++i)
                for (std::size_t j = t + 1; j < A.cols(); ++j)
                    if (A.at(i, j) % A.at(t, t) != 0) {
                        axpy_row(A, t, i, BigInt(-1));
                        fixed = true;
                        break;
                    }
            if (!fixed) break;
        }
        out.push_back(abs(A.at(t, t)));
    }
    return out;
}

bool solve_in_row_lattice(const IntMatrix& hnf, std::vector<BigInt> v, std::vector<BigInt>& coeffs) {
    if (v.size() != hnf.cols()) return false;
    coeffs.assign(hnf.rows(), 0);
    for (std::size_t k = 0; k < hnf.rows(); ++k) {
        std::size_t pc = 0;
        while (pc < hnf.cols() && hnf.at(k, pc) == 0) ++pc;
        if (pc == hnf.cols()) continue;
        for (std::size_t c = 0; c < pc; ++c)
            if (v[c] != 0) return false;
        if (v[pc] % hnf.at(k, pc) != 0) return false;
        const BigInt q = v[pc] / hnf.at(k, pc);
        coeffs[k] = q;
        for (std::size_t c = pc; c < hnf.cols(); ++c) v[c] -= q * hnf.at(k, c);
    }
    for (const auto& x : v)
        if (x != 0) return false;
    return true;
}

bool in_row_lattice(const IntMatrix& hnf, std::vector<BigInt> v) {
    std::vector<BigInt> coeffs;
    return solve_in_row_lattice(hnf, std::move(v), coeffs);
}

bool same_row_lattice(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols() != b.cols()) return false;
    return hnf_rows(a) == hnf_rows(b);
}

std::size_t rational_rank(std::vector<std::vector<Rational>> rows) {
    if (rows.empty()) return 0;
    const std::size_t cols = rows.front().size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
        std::size_t piv = r;
        while (piv < rows.size() && rows[piv][c] == 0) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[r], rows[piv]);
        for (std::size_t i = r + 1; i < rows.size(); ++i) {
            if (rows[i][c] == 0) continue;
            const Rational f = rows[i][c] / rows[r][c];
            for (std::size_t j = c; j < cols; ++j) rows[i][j] -= f * rows[r][j];
        }
        ++r;
    }
    return r;
}

}  // namespace logmoduli

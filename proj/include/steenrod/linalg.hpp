#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "steenrod/fp.hpp"

namespace steenrod {

/// Dense matrix over F_p.  Elimination always pivots on the first nonzero row
/// in column order, so reduced forms are reproducible across runs.
class FpMat {
    int rows_ = 0;
    int cols_ = 0;
    int p_ = 2;
    std::vector<int> a_;

public:
    FpMat() = default;
    FpMat(int rows, int cols, int p)
        : rows_(rows), cols_(cols), p_(p), a_(static_cast<size_t>(rows) * cols, 0) {
        if (rows < 0 || cols < 0) throw std::invalid_argument("FpMat: negative shape");
    }

    static FpMat identity(int n, int p) {
        FpMat m(n, n, p);
        for (int i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    int prime() const { return p_; }

    int& at(int r, int c) { return a_[static_cast<size_t>(r) * cols_ + c]; }
    int at(int r, int c) const { return a_[static_cast<size_t>(r) * cols_ + c]; }

    void set(int r, int c, long long v) { at(r, c) = fp_reduce(v, p_); }

    const std::vector<int>& data() const { return a_; }

    friend bool operator==(const FpMat&, const FpMat&) = default;

    FpMat times(const FpMat& o) const {
        if (cols_ != o.rows_) throw std::invalid_argument("FpMat::times: shape mismatch");
        FpMat r(rows_, o.cols_, p_);
        for (int i = 0; i < rows_; ++i)
            for (int k = 0; k < cols_; ++k) {
                int aik = at(i, k);
                if (aik == 0) continue;
                for (int j = 0; j < o.cols_; ++j)
                    r.at(i, j) = fp_reduce(r.at(i, j) + static_cast<long long>(aik) * o.at(k, j), p_);
            }
        return r;
    }

    std::vector<int> times(const std::vector<int>& v) const {
        if (static_cast<int>(v.size()) != cols_)
            throw std::invalid_argument("FpMat::times: vector size mismatch");
        std::vector<int> r(static_cast<size_t>(rows_), 0);
        for (int i = 0; i < rows_; ++i) {
            long long s = 0;
            for (int j = 0; j < cols_; ++j) s += static_cast<long long>(at(i, j)) * v[static_cast<size_t>(j)];
            r[static_cast<size_t>(i)] = fp_reduce(s, p_);
        }
        return r;
    }

    FpMat transposed() const {
        FpMat t(cols_, rows_, p_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
        return t;
    }

    /// Row-reduce in place to reduced echelon form; returns pivot columns.
    std::vector<int> rref_inplace() {
        std::vector<int> pivots;
        int r = 0;
        for (int c = 0; c < cols_ && r < rows_; ++c) {
            int pr = -1;
            for (int i = r; i < rows_; ++i)
                if (at(i, c) != 0) {
                    pr = i;
                    break;
                }
            if (pr < 0) continue;
            if (pr != r)
                for (int j = 0; j < cols_; ++j) std::swap(at(pr, j), at(r, j));
            int inv = fp_inv(at(r, c), p_);
            for (int j = 0; j < cols_; ++j) at(r, j) = fp_mul(at(r, j), inv, p_);
            for (int i = 0; i < rows_; ++i) {
                if (i == r || at(i, c) == 0) continue;
                int f = at(i, c);
                for (int j = 0; j < cols_; ++j)
                    at(i, j) = fp_sub(at(i, j), fp_mul(f, at(r, j), p_), p_);
            }
            pivots.push_back(c);
            ++r;
        }
        return pivots;
    }

    FpMat rref() const {
        FpMat m = *this;
        m.rref_inplace();
        return m;
    }

    int rank() const {
        FpMat m = *this;
        return static_cast<int>(m.rref_inplace().size());
    }

    /// Inverse of a square matrix, or nullopt if singular.
    std::optional<FpMat> inverse() const {
        if (rows_ != cols_) throw std::invalid_argument("FpMat::inverse: not square");
        FpMat aug(rows_, 2 * cols_, p_);
        for (int i = 0; i < rows_; ++i) {
            for (int j = 0; j < cols_; ++j) aug.at(i, j) = at(i, j);
            aug.at(i, cols_ + i) = 1;
        }
        auto piv = aug.rref_inplace();
        if (static_cast<int>(piv.size()) != rows_) return std::nullopt;
        for (int k = 0; k < rows_; ++k)
            if (piv[static_cast<size_t>(k)] != k) return std::nullopt;
        FpMat inv(rows_, cols_, p_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) inv.at(i, j) = aug.at(i, cols_ + j);
        return inv;
    }

    /// One solution x of A x = b, or nullopt if inconsistent.
    std::optional<std::vector<int>> solve(const std::vector<int>& b) const {
        if (static_cast<int>(b.size()) != rows_)
            throw std::invalid_argument("FpMat::solve: rhs size mismatch");
        FpMat aug(rows_, cols_ + 1, p_);
        for (int i = 0; i < rows_; ++i) {
            for (int j = 0; j < cols_; ++j) aug.at(i, j) = at(i, j);
            aug.at(i, cols_) = fp_reduce(b[static_cast<size_t>(i)], p_);
        }
        auto piv = aug.rref_inplace();
        for (size_t k = 0; k < piv.size(); ++k)
            if (piv[k] == cols_) return std::nullopt;  // pivot in the rhs column
        std::vector<int> x(static_cast<size_t>(cols_), 0);
        for (size_t k = 0; k < piv.size(); ++k)
            x[static_cast<size_t>(piv[k])] = aug.at(static_cast<int>(k), cols_);
        return x;
    }

    /// Basis of the null space {x : A x = 0}, one column vector per entry.
    std::vector<std::vector<int>> kernel_basis() const {
        FpMat m = *this;
        auto piv = m.rref_inplace();
        std::vector<char> is_pivot(static_cast<size_t>(cols_), 0);
        for (int c : piv) is_pivot[static_cast<size_t>(c)] = 1;
        std::vector<std::vector<int>> basis;
        for (int c = 0; c < cols_; ++c) {
            if (is_pivot[static_cast<size_t>(c)]) continue;
            std::vector<int> v(static_cast<size_t>(cols_), 0);
            v[static_cast<size_t>(c)] = 1;
            for (size_t k = 0; k < piv.size(); ++k)
                v[static_cast<size_t>(piv[k])] = fp_neg(m.at(static_cast<int>(k), c), p_);
            basis.push_back(std::move(v));
        }
        return basis;
    }
};

/// Span equality of two sets of column vectors given as matrices whose
/// columns are the vectors, over the same ambient space.
inline bool same_column_span(const FpMat& a, const FpMat& b) {
    if (a.rows() != b.rows()) throw std::invalid_argument("same_column_span: ambient mismatch");
    FpMat at = a.transposed();  // rows = vectors
    FpMat bt = b.transposed();
    FpMat ar = at.rref();
    FpMat br = bt.rref();
    int ra = at.rank(), rb = bt.rank();
    if (ra != rb) return false;
    // compare nonzero rows of the reduced forms
    for (int i = 0; i < ra; ++i)
        for (int j = 0; j < a.rows(); ++j)
            if (ar.at(i, j) != br.at(i, j)) return false;
    return true;
}

}  // namespace steenrod

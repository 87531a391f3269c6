#pragma once

#include <optional>
#include <vector>

#include "foldlab/quadratic.hpp"

namespace foldlab {

// Dense exact linear algebra over Q (Rat) or over the fraction field of the
// quadratic algebra (QScalar). Small systems only; plain Gaussian elimination
// with exact pivots.

template <class T>
using Matrix = std::vector<std::vector<T>>;

inline bool elem_is_zero(const Rat& x) { return x == 0; }
inline bool elem_is_zero(const QScalar& x) { return x.is_zero(); }
inline Rat elem_inverse(const Rat& x) { return 1 / x; }
inline QScalar elem_inverse(const QScalar& x) { return x.inverse(); }

// In-place reduced row echelon form. Returns the rank; records pivot columns
// if requested.
template <class T>
int rref(Matrix<T>& m, std::vector<int>* pivot_cols = nullptr) {
    if (m.empty()) return 0;
    int rows = (int)m.size(), cols = (int)m[0].size();
    int rank = 0;
    for (int col = 0; col < cols && rank < rows; ++col) {
        int pivot = -1;
        for (int r = rank; r < rows; ++r)
            if (!elem_is_zero(m[r][col])) {
                pivot = r;
                break;
            }
        if (pivot < 0) continue;
        std::swap(m[rank], m[pivot]);
        T inv = elem_inverse(m[rank][col]);
        for (int c = col; c < cols; ++c) m[rank][c] = m[rank][c] * inv;
        for (int r = 0; r < rows; ++r) {
            if (r == rank || elem_is_zero(m[r][col])) continue;
            T f = m[r][col];
            for (int c = col; c < cols; ++c) m[r][c] = m[r][c] - f * m[rank][c];
        }
        if (pivot_cols) pivot_cols->push_back(col);
        ++rank;
    }
    return rank;
}

template <class T>
int matrix_rank(Matrix<T> m) {
    return rref(m);
}

// Solve A x = b (A rows x cols, possibly overdetermined). Empty optional when
// inconsistent; free variables are set to zero.
template <class T>
std::optional<std::vector<T>> solve_linear(const Matrix<T>& a, const std::vector<T>& b) {
    int rows = (int)a.size();
    int cols = rows ? (int)a[0].size() : 0;
    Matrix<T> aug(rows, std::vector<T>(cols + 1));
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) aug[r][c] = a[r][c];
        aug[r][cols] = b[r];
    }
    std::vector<int> pivots;
    rref(aug, &pivots);
    for (int c : pivots)
        if (c == cols) return std::nullopt;
    std::vector<T> x(cols, T(0));
    for (std::size_t i = 0; i < pivots.size(); ++i) {
        // row i has leading 1 at pivots[i]
        x[pivots[i]] = aug[i][cols];
        for (int c = pivots[i] + 1; c < cols; ++c)
            if (!elem_is_zero(aug[i][c]) && !elem_is_zero(x[c]))
                x[pivots[i]] = x[pivots[i]] - aug[i][c] * x[c];
    }
    // verify (free variables were zeroed, so substitute once more)
    for (int r = 0; r < rows; ++r) {
        T acc(0);
        for (int c = 0; c < cols; ++c) acc = acc + a[r][c] * x[c];
        if (!elem_is_zero(acc - b[r])) return std::nullopt;
    }
    return x;
}

template <class T>
T determinant(Matrix<T> m) {
    int n = (int)m.size();
    T det(1);
    for (int col = 0; col < n; ++col) {
        int pivot = -1;
        for (int r = col; r < n; ++r)
            if (!elem_is_zero(m[r][col])) {
                pivot = r;
                break;
            }
        if (pivot < 0) return T(0);
        if (pivot != col) {
            std::swap(m[pivot], m[col]);
            det = T(0) - det;
        }
        det = det * m[col][col];
        T inv = elem_inverse(m[col][col]);
        for (int r = col + 1; r < n; ++r) {
            if (elem_is_zero(m[r][col])) continue;
            T f = m[r][col] * inv;
            for (int c = col; c < n; ++c) m[r][c] = m[r][c] - f * m[col][c];
        }
    }
    return det;
}

// Basis of the right nullspace of A.
template <class T>
Matrix<T> nullspace(Matrix<T> a) {
    int cols = a.empty() ? 0 : (int)a[0].size();
    std::vector<int> pivots;
    rref(a, &pivots);
    std::vector<bool> is_pivot(cols, false);
    for (int c : pivots) is_pivot[c] = true;
    Matrix<T> basis;
    for (int free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        std::vector<T> v(cols, T(0));
        v[free] = T(1);
        for (std::size_t i = 0; i < pivots.size(); ++i)
            v[pivots[i]] = T(0) - a[i][free];
        basis.push_back(std::move(v));
    }
    return basis;
}

}  // namespace foldlab

#pragma once

#include <vector>

#include "pvkit/errors.hpp"

namespace pvkit {

// Dense matrix helpers over an arbitrary field type T. T must provide
// +, -, *, inverse(), is_zero(), ==. A "one"/"zero" exemplar is passed in
// because field elements carry runtime field context.
template <typename T>
using Mat = std::vector<std::vector<T>>;

template <typename T>
Mat<T> mat_identity(std::size_t n, const T& zero, const T& one) {
    Mat<T> r(n, std::vector<T>(n, zero));
    for (std::size_t i = 0; i < n; ++i) r[i][i] = one;
    return r;
}

template <typename T>
Mat<T> mat_mul(const Mat<T>& a, const Mat<T>& b, const T& zero) {
    std::size_t m = a.size(), k = b.size(), n = b.empty() ? 0 : b[0].size();
    Mat<T> r(m, std::vector<T>(n, zero));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t t = 0; t < k; ++t) {
            if (a[i][t].is_zero()) continue;
            for (std::size_t j = 0; j < n; ++j)
                r[i][j] = r[i][j] + a[i][t] * b[t][j];
        }
    return r;
}

template <typename T>
std::vector<T> mat_apply(const Mat<T>& a, const std::vector<T>& v, const T& zero) {
    std::vector<T> r(a.size(), zero);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j)
            r[i] = r[i] + a[i][j] * v[j];
    return r;
}

template <typename T>
Mat<T> mat_transpose(const Mat<T>& a, const T& zero) {
    std::size_t m = a.size(), n = a.empty() ? 0 : a[0].size();
    Mat<T> r(n, std::vector<T>(m, zero));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) r[j][i] = a[i][j];
    return r;
}

template <typename T>
T mat_det(Mat<T> a, const T& zero, const T& one) {
    std::size_t n = a.size();
    T det = one;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && a[p][c].is_zero()) ++p;
        if (p == n) return zero;
        if (p != c) {
            std::swap(a[p], a[c]);
            det = zero - det;
        }
        det = det * a[c][c];
        T inv = a[c][c].inverse();
        for (std::size_t i = c + 1; i < n; ++i) {
            if (a[i][c].is_zero()) continue;
            T f = a[i][c] * inv;
            for (std::size_t j = c; j < n; ++j)
                a[i][j] = a[i][j] - f * a[c][j];
        }
    }
    return det;
}

// Gauss-Jordan inverse; throws domain_error when singular.
template <typename T>
Mat<T> mat_inverse(Mat<T> a, const T& zero, const T& one) {
    std::size_t n = a.size();
    Mat<T> inv = mat_identity(n, zero, one);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && a[p][c].is_zero()) ++p;
        if (p == n) throw domain_error("matrix is singular");
        if (p != c) {
            std::swap(a[p], a[c]);
            std::swap(inv[p], inv[c]);
        }
        T piv = a[c][c].inverse();
        for (std::size_t j = 0; j < n; ++j) {
            a[c][j] = a[c][j] * piv;
            inv[c][j] = inv[c][j] * piv;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == c || a[i][c].is_zero()) continue;
            T f = a[i][c];
            for (std::size_t j = 0; j < n; ++j) {
                a[i][j] = a[i][j] - f * a[c][j];
                inv[i][j] = inv[i][j] - f * inv[c][j];
            }
        }
    }
    return inv;
}

// Basis of the right kernel of a (m x n), as vectors of length n.
template <typename T>
std::vector<std::vector<T>> mat_kernel(Mat<T> a, const T& zero, const T& one) {
    std::size_t m = a.size(), n = a.empty() ? 0 : a[0].size();
    std::vector<long> pivot_col;
    std::size_t r = 0;
    for (std::size_t c = 0; c < n && r < m; ++c) {
        std::size_t p = r;
        while (p < m && a[p][c].is_zero()) ++p;
        if (p == m) continue;
        std::swap(a[p], a[r]);
        T inv = a[r][c].inverse();
        for (std::size_t j = c; j < n; ++j) a[r][j] = a[r][j] * inv;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == r || a[i][c].is_zero()) continue;
            T f = a[i][c];
            for (std::size_t j = c; j < n; ++j)
                a[i][j] = a[i][j] - f * a[r][j];
        }
        pivot_col.push_back(static_cast<long>(c));
        ++r;
    }
    std::vector<std::vector<T>> basis;
    std::vector<bool> is_pivot(n, false);
    for (long c : pivot_col) is_pivot[c] = true;
    for (std::size_t c = 0; c < n; ++c) {
        if (is_pivot[c]) continue;
        std::vector<T> v(n, zero);
        v[c] = one;
        for (std::size_t i = 0; i < pivot_col.size(); ++i)
            v[pivot_col[i]] = zero - a[i][c];
        basis.push_back(std::move(v));
    }
    return basis;
}

} // namespace pvkit

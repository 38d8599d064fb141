#pragma once
#include <optional>
#include <vector>

#include "chm/errors.hpp"
#include "chm/rational.hpp"

namespace chm {

using Vec = std::vector<Rat>;
using Mat = std::vector<Vec>;

namespace detail {

// Reduced row echelon form of [a | b]; returns pivot columns of a.
inline std::vector<std::size_t> rref(Mat& rows, std::size_t ncols) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < ncols && r < rows.size(); ++c) {
        std::size_t sel = r;
        while (sel < rows.size() && rows[sel][c] == 0) ++sel;
        if (sel == rows.size()) continue;
        std::swap(rows[r], rows[sel]);
        Rat pv = rows[r][c];
        for (auto& x : rows[r]) x /= pv;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i != r && rows[i][c] != 0) {
                Rat f = rows[i][c];
                for (std::size_t j = c; j < rows[i].size(); ++j)
                    rows[i][j] -= f * rows[r][j];
            }
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

inline Mat augment(const Mat& a, const Vec& b) {
    Mat rows(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        rows[i] = a[i];
        rows[i].push_back(b[i]);
    }
    return rows;
}

}  // namespace detail

// Unique exact solution of a x = b (a is m x n, m >= n allowed).
// Throws NonUnique when a has a nontrivial kernel, NoSolution when inconsistent.
inline Vec solve_unique(const Mat& a, const Vec& b) {
    if (a.empty()) {
        for (const auto& v : b)
            if (v != 0) throw NoSolution("inconsistent empty system");
        return {};
    }
    std::size_t n = a[0].size();
    Mat rows = detail::augment(a, b);
    auto pivots = detail::rref(rows, n);
    for (std::size_t i = pivots.size(); i < rows.size(); ++i)
        if (rows[i][n] != 0) throw NoSolution("inconsistent linear system");
    if (pivots.size() != n) throw NonUnique("underdetermined linear system");
    Vec x(n, Rat(0));
    for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = rows[i][n];
    return x;
}

// Any solution of a x = b, or nullopt when inconsistent (free variables -> 0).
inline std::optional<Vec> solve_any(const Mat& a, const Vec& b) {
    if (a.empty()) {
        for (const auto& v : b)
            if (v != 0) return std::nullopt;
        return Vec{};
    }
    std::size_t n = a[0].size();
    Mat rows = detail::augment(a, b);
    auto pivots = detail::rref(rows, n);
    for (std::size_t i = pivots.size(); i < rows.size(); ++i)
        if (rows[i][n] != 0) return std::nullopt;
    Vec x(n, Rat(0));
    for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = rows[i][n];
    return x;
}

inline Rat determinant(Mat m) {
    std::size_t n = m.size();
    Rat det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t sel = c;
        while (sel < n && m[sel][c] == 0) ++sel;
        if (sel == n) return 0;
        if (sel != c) {
            std::swap(m[sel], m[c]);
            det = -det;
        }
        det *= m[c][c];
        for (std::size_t i = c + 1; i < n; ++i) {
            if (m[i][c] == 0) continue;
            Rat f = m[i][c] / m[c][c];
            for (std::size_t j = c; j < n; ++j) m[i][j] -= f * m[c][j];
        }
    }
    return det;
}

inline Mat inverse(const Mat& m) {
    std::size_t n = m.size();
    Mat rows(n);
    for (std::size_t i = 0; i < n; ++i) {
        rows[i] = m[i];
        rows[i].resize(2 * n, Rat(0));
        rows[i][n + i] = 1;
    }
    auto pivots = detail::rref(rows, n);
    if (pivots.size() != n) throw SingularMatrix("matrix not invertible");
    Mat inv(n, Vec(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv[i][j] = rows[i][n + j];
    return inv;
}

}  // namespace chm

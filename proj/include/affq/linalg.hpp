#pragma once

#include <cstdint>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/rational.hpp>

#include "affq/error.hpp"

namespace affq {

using Int = long long;
using Vec = std::vector<Int>;
using Mat = std::vector<Vec>;

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::rational<BigInt>;

inline Mat identity_matrix(std::size_t n) {
    Mat m(n, Vec(n, 0));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

inline Mat mat_mul(const Mat& a, const Mat& b) {
    const std::size_t n = a.size();
    Mat r(n, Vec(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            const Int aik = a[i][k];
            if (aik == 0) continue;
            for (std::size_t j = 0; j < n; ++j) r[i][j] += aik * b[k][j];
        }
    return r;
}

inline Vec mat_apply(const Mat& a, const Vec& v) {
    const std::size_t n = a.size();
    Vec r(n, 0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) r[i] += a[i][j] * v[j];
    return r;
}

inline Mat mat_transpose(const Mat& a) {
    const std::size_t n = a.size();
    Mat r(n, Vec(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) r[j][i] = a[i][j];
    return r;
}

// Determinant over exact big integers (fraction-free is overkill at these sizes).
inline BigInt determinant(const Mat& a) {
    const std::size_t n = a.size();
    std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m[i][j] = Rational(a[i][j]);
    Rational det(1);
    for (std::size_t col = 0, row = 0; col < n && row < n; ++col, ++row) {
        std::size_t piv = row;
        while (piv < n && m[piv][col] == Rational(0)) ++piv;
        if (piv == n) return 0;
        if (piv != row) {
            std::swap(m[piv], m[row]);
            det = -det;
        }
        det *= m[row][col];
        for (std::size_t r = row + 1; r < n; ++r) {
            if (m[r][col] == Rational(0)) continue;
            Rational f = m[r][col] / m[row][col];
            for (std::size_t c = col; c < n; ++c) m[r][c] -= f * m[row][c];
        }
    }
    if (det.denominator() != 1) throw internal_error("determinant: non-integral result");
    return det.numerator();
}

inline std::size_t rank_exact(const Mat& a) {
    if (a.empty()) return 0;
    const std::size_t n = a.size(), w = a[0].size();
    std::vector<std::vector<Rational>> m(n, std::vector<Rational>(w));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < w; ++j) m[i][j] = Rational(a[i][j]);
    std::size_t rank = 0;
    for (std::size_t col = 0; col < w && rank < n; ++col) {
        std::size_t piv = rank;
        while (piv < n && m[piv][col] == Rational(0)) ++piv;
        if (piv == n) continue;
        std::swap(m[piv], m[rank]);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == rank || m[r][col] == Rational(0)) continue;
            Rational f = m[r][col] / m[rank][col];
            for (std::size_t c = col; c < w; ++c) m[r][c] -= f * m[rank][c];
        }
        ++rank;
    }
    return rank;
}

// One-dimensional right kernel of an integer matrix, scaled to primitive
// integer entries. Throws internal_error when the kernel is not a line.
inline Vec kernel_line(const Mat& a) {
    const std::size_t n = a.size();
    if (rank_exact(a) + 1 != n) throw internal_error("kernel_line: kernel dimension != 1");
    std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m[i][j] = Rational(a[i][j]);
    // Reduced row echelon form.
    std::vector<std::size_t> pivot_col;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < n && rank < n; ++col) {
        std::size_t piv = rank;
        while (piv < n && m[piv][col] == Rational(0)) ++piv;
        if (piv == n) continue;
        std::swap(m[piv], m[rank]);
        Rational p = m[rank][col];
        for (std::size_t c = 0; c < n; ++c) m[rank][c] /= p;
        for (std::size_t r = 0; r < n; ++r) {
            if (r == rank || m[r][col] == Rational(0)) continue;
            Rational f = m[r][col];
            for (std::size_t c = 0; c < n; ++c) m[r][c] -= f * m[rank][c];
        }
        pivot_col.push_back(col);
        ++rank;
    }
    std::vector<bool> is_pivot(n, false);
    for (auto c : pivot_col) is_pivot[c] = true;
    std::size_t free_col = 0;
    while (free_col < n && is_pivot[free_col]) ++free_col;
    std::vector<Rational> x(n, Rational(0));
    x[free_col] = Rational(1);
    for (std::size_t r = 0; r < rank; ++r) x[pivot_col[r]] = -m[r][free_col];
    // Clear denominators, divide by content.
    BigInt lcm = 1;
    for (auto& q : x) lcm = boost::multiprecision::lcm(lcm, q.denominator());
    std::vector<BigInt> z(n);
    BigInt g = 0;
    for (std::size_t i = 0; i < n; ++i) {
        z[i] = x[i].numerator() * (lcm / x[i].denominator());
        g = boost::multiprecision::gcd(g, z[i]);
    }
    if (g == 0) throw internal_error("kernel_line: zero kernel vector");
    Vec out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = static_cast<Int>(z[i] / g);
    return out;
}

// Solve a*x = b over the rationals for a square invertible a; requires an
// integral solution.
inline Vec solve_integral(const Mat& a, const Vec& b) {
    const std::size_t n = a.size();
    std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n + 1));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) m[i][j] = Rational(a[i][j]);
        m[i][n] = Rational(b[i]);
    }
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && m[piv][col] == Rational(0)) ++piv;
        if (piv == n) throw internal_error("solve_integral: singular matrix");
        std::swap(m[piv], m[col]);
        Rational p = m[col][col];
        for (std::size_t c = col; c <= n; ++c) m[col][c] /= p;
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || m[r][col] == Rational(0)) continue;
            Rational f = m[r][col];
            for (std::size_t c = col; c <= n; ++c) m[r][c] -= f * m[col][c];
        }
    }
    Vec out(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (m[i][n].denominator() != 1)
            throw internal_error("solve_integral: non-integral solution");
        out[i] = static_cast<Int>(m[i][n].numerator());
    }
    return out;
}

} // namespace affq

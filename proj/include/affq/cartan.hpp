#pragma once

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

#include "affq/linalg.hpp"

namespace affq {

/// A finite index set with a symmetric integer pairing. The distinguished
/// index i0 selects the affine node once the datum classifies as affine.
struct CartanDatum {
    std::vector<std::string> labels;
    Mat dot; // symmetric, dot[i][j] = i.j
    std::size_t i0 = 0;

    std::size_t size() const { return labels.size(); }

    std::size_t index_of(const std::string& label) const {
        for (std::size_t i = 0; i < labels.size(); ++i)
            if (labels[i] == label) return i;
        throw validation_error("unknown label '" + label + "'");
    }

    // <i, j'> = 2 (i.j) / (j.j)
    Int pairing(std::size_t i, std::size_t j) const { return 2 * dot[i][j] / dot[j][j]; }

    Mat cartan_matrix() const {
        const std::size_t n = size();
        Mat a(n, Vec(n));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) a[i][j] = pairing(i, j);
        return a;
    }

    // Per-entry invariants; names the offending pair on failure.
    void validate() const {
        const std::size_t n = size();
        if (n == 0) throw validation_error("empty index set");
        if (dot.size() != n) throw validation_error("dot matrix row count != |I|");
        for (std::size_t i = 0; i < n; ++i)
            if (dot[i].size() != n) throw validation_error("dot matrix is not square");
        if (i0 >= n) throw validation_error("distinguished index out of range");
        for (std::size_t i = 0; i < n; ++i) {
            if (dot[i][i] <= 0 || dot[i][i] % 2 != 0)
                throw validation_error("i.i not in {2,4,6,...} at '" + labels[i] + "'");
            for (std::size_t j = 0; j < n; ++j) {
                if (dot[i][j] != dot[j][i])
                    throw validation_error("dot matrix not symmetric at ('" + labels[i] +
                                           "','" + labels[j] + "')");
                if (i == j) continue;
                if (dot[i][j] > 0 || (2 * dot[i][j]) % dot[i][i] != 0)
                    throw validation_error("2(i.j)/(i.i) not in {0,-1,-2,...} at ('" +
                                           labels[i] + "','" + labels[j] + "')");
            }
        }
    }
};

enum class DatumClass { Finite, AffineUntwisted, AffineTwisted, Other };

inline const char* to_string(DatumClass c) {
    switch (c) {
        case DatumClass::Finite: return "finite";
        case DatumClass::AffineUntwisted: return "affine-untwisted";
        case DatumClass::AffineTwisted: return "affine-twisted";
        case DatumClass::Other: return "other";
    }
    return "other";
}

namespace detail {

inline bool is_connected(const Mat& dot) {
    const std::size_t n = dot.size();
    std::vector<bool> seen(n, false);
    std::vector<std::size_t> stack{0};
    seen[0] = true;
    while (!stack.empty()) {
        std::size_t v = stack.back();
        stack.pop_back();
        for (std::size_t u = 0; u < n; ++u)
            if (!seen[u] && dot[v][u] != 0) {
                seen[u] = true;
                stack.push_back(u);
            }
    }
    return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
}

inline bool is_positive_definite(const Mat& dot) {
    // Sylvester: all leading principal minors positive.
    const std::size_t n = dot.size();
    for (std::size_t k = 1; k <= n; ++k) {
        Mat sub(k, Vec(k));
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) sub[i][j] = dot[i][j];
        if (determinant(sub) <= 0) return false;
    }
    return true;
}

inline bool is_positive_semidefinite(const Mat& dot) {
    // All principal minors nonnegative; |I| is small enough to enumerate.
    const std::size_t n = dot.size();
    for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < n; ++i)
            if (mask & (std::size_t{1} << i)) idx.push_back(i);
        Mat sub(idx.size(), Vec(idx.size()));
        for (std::size_t i = 0; i < idx.size(); ++i)
            for (std::size_t j = 0; j < idx.size(); ++j) sub[i][j] = dot[idx[i]][idx[j]];
        if (determinant(sub) < 0) return false;
    }
    return true;
}

} // namespace detail

inline DatumClass classify(const CartanDatum& datum) {
    datum.validate();
    if (detail::is_positive_definite(datum.dot)) return DatumClass::Finite;
    if (!detail::is_connected(datum.dot)) return DatumClass::Other;
    if (!detail::is_positive_semidefinite(datum.dot)) return DatumClass::Other;
    if (rank_exact(datum.dot) + 1 != datum.size()) return DatumClass::Other;
    Int min_d = datum.dot[0][0];
    for (std::size_t i = 1; i < datum.size(); ++i) min_d = std::min(min_d, datum.dot[i][i]);
    return min_d == 2 ? DatumClass::AffineUntwisted : DatumClass::AffineTwisted;
}

/// Validated untwisted affine datum together with marks, comarks, d-values
/// and the central element c. Immutable after construction.
struct RootDatum {
    CartanDatum datum;
    Mat cartan;          // cartan[i][j] = <i, j'>
    Vec marks;           // r, normalized r[i0] = 1
    Vec comarks;         // r', normalized r'[i0] = 1
    Vec d;               // d_i = (i.i)/2
    Int D = 1;           // max d_i
    Vec dhat;            // d_i * dhat_i = D
    Vec c;               // sum_i r_i i, in the I-basis of Y
    std::vector<std::size_t> finite_nodes; // I \ {i0}, in declared order
    Int dual_coxeter_comark_sum = 0;        // sum_{i != i0} r'_i
    Int dual_coxeter_conventional = 0; // 1 + sum_{i != i0} r'_i

    std::size_t size() const { return datum.size(); }

    // Pairing of y in the I-basis of Y against i' in X.
    Int pair_coroot(const Vec& y, std::size_t i) const {
        Int s = 0;
        for (std::size_t j = 0; j < y.size(); ++j) s += y[j] * cartan[j][i];
        return s;
    }
};

inline std::pair<Vec, Vec> marks_comarks(const CartanDatum& datum) {
    if (classify(datum) != DatumClass::AffineUntwisted)
        throw validation_error("marks/comarks require an affine-untwisted datum");
    const Mat a = datum.cartan_matrix();
    Vec r = kernel_line(mat_transpose(a)); // sum_i r_i <i,j'> = 0
    Vec rp = kernel_line(a);               // sum_j r'_j <i,j'> = 0
    auto normalize = [&](Vec& v, const char* name) {
        if (v[datum.i0] == 0) throw internal_error(std::string(name) + ": zero at i0");
        if (v[datum.i0] < 0)
            for (auto& x : v) x = -x;
        if (v[datum.i0] != 1)
            throw internal_error(std::string(name) + ": kernel vector not primitive at i0");
        for (auto x : v)
            if (x <= 0) throw internal_error(std::string(name) + ": nonpositive entry");
    };
    normalize(r, "marks");
    normalize(rp, "comarks");
    return {r, rp};
}

inline RootDatum make_root_datum(const CartanDatum& datum) {
    if (classify(datum) != DatumClass::AffineUntwisted)
        throw validation_error("only untwisted affine data are accepted downstream");
    if (datum.dot[datum.i0][datum.i0] != 2)
        throw validation_error("d_{i0} != 1: i0 must be a short node");
    RootDatum rd;
    rd.datum = datum;
    rd.cartan = datum.cartan_matrix();
    std::tie(rd.marks, rd.comarks) = marks_comarks(datum);
    const std::size_t n = datum.size();
    rd.d.resize(n);
    for (std::size_t i = 0; i < n; ++i) rd.d[i] = datum.dot[i][i] / 2;
    rd.D = *std::max_element(rd.d.begin(), rd.d.end());
    rd.dhat.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (rd.D % rd.d[i] != 0)
            throw validation_error("d_i does not divide D at '" + datum.labels[i] + "'");
        rd.dhat[i] = rd.D / rd.d[i];
    }
    rd.c = rd.marks;
    for (std::size_t i = 0; i < n; ++i)
        if (i != datum.i0) rd.finite_nodes.push_back(i);
    // <c, j'> = 0 for all j.
    for (std::size_t j = 0; j < n; ++j)
        if (rd.pair_coroot(rd.c, j) != 0) throw internal_error("<c,j'> != 0");
    // Finite part must be positive definite.
    Mat fin(rd.finite_nodes.size(), Vec(rd.finite_nodes.size()));
    for (std::size_t i = 0; i < rd.finite_nodes.size(); ++i)
        for (std::size_t j = 0; j < rd.finite_nodes.size(); ++j)
            fin[i][j] = datum.dot[rd.finite_nodes[i]][rd.finite_nodes[j]];
    if (!fin.empty() && !detail::is_positive_definite(fin))
        throw internal_error("finite restriction is not positive definite");
    for (std::size_t i = 0; i < n; ++i)
        if (i != datum.i0) rd.dual_coxeter_comark_sum += rd.comarks[i];
    rd.dual_coxeter_conventional = rd.dual_coxeter_comark_sum + 1;
    return rd;
}

} // namespace affq

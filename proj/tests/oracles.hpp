#pragma once

// Independent brute-force oracles used by the test suite. Everything here is
// deliberately naive: BFS over group elements, subword enumeration, and
// inversion-set counting. The library under test must agree with these on
// every element they can reach.

#include <algorithm>
#include <map>
#include <set>
#include <vector>

#include "affq/characters.hpp"
#include "affq/roots.hpp"
#include "affq/weyl.hpp"

namespace oracle {

using affq::Int;
using affq::Mat;
using affq::Vec;
using affq::Weyl;
using affq::WeylElement;

// Cayley-graph distances from the identity, by plain BFS on matrices.
inline std::map<Mat, Int> bfs_lengths(const Weyl& w, Int radius) {
    std::map<Mat, Int> dist;
    dist[w.identity().fwd] = 0;
    std::vector<Mat> frontier{w.identity().fwd};
    for (Int r = 1; r <= radius; ++r) {
        std::vector<Mat> next;
        for (const auto& m : frontier)
            for (std::size_t i = 0; i < w.rank(); ++i) {
                WeylElement cand =
                    w.multiply(WeylElement{m, m, std::nullopt}, w.simple_reflection(i));
                if (dist.emplace(cand.fwd, r).second) next.push_back(cand.fwd);
            }
        frontier = std::move(next);
    }
    return dist;
}

// Bruhat order by the subword criterion: u <= w iff some subword of a reduced
// word of w is a reduced word of u; equivalently, u lies in the set of
// elements representable by subwords of any fixed reduced word of w.
inline std::set<Mat> subword_elements(const Weyl& w, const std::vector<std::size_t>& word) {
    std::set<Mat> out;
    const std::size_t k = word.size();
    for (std::uint64_t mask = 0; mask < (1ull << k); ++mask) {
        WeylElement e = w.identity();
        for (std::size_t t = 0; t < k; ++t)
            if (mask & (1ull << t)) e = w.multiply(e, w.simple_reflection(word[t]));
        out.insert(e.fwd);
    }
    return out;
}

inline bool subword_bruhat_leq(const Weyl& w, const WeylElement& u, const WeylElement& v) {
    auto word = w.length_and_word(v).second;
    return subword_elements(w, word).count(u.fwd) != 0;
}

// All reduced words of w, by descent recursion.
inline void all_reduced_words(const Weyl& w, const WeylElement& e,
                              std::vector<std::size_t>& acc,
                              std::vector<std::vector<std::size_t>>& out) {
    if (w.is_identity(e)) {
        out.push_back(std::vector<std::size_t>(acc.rbegin(), acc.rend()));
        return;
    }
    for (std::size_t i = 0; i < w.rank(); ++i)
        if (w.right_descent(e, i)) {
            acc.push_back(i);
            all_reduced_words(w, w.multiply(e, w.simple_reflection(i)), acc, out);
            acc.pop_back();
        }
}

inline std::vector<std::vector<std::size_t>> all_reduced_words(const Weyl& w,
                                                               const WeylElement& e) {
    std::vector<std::size_t> acc;
    std::vector<std::vector<std::size_t>> out;
    all_reduced_words(w, e, acc, out);
    return out;
}

// Semi-infinite length via the inversion set: signed count of inversions,
// +1 for semi-infinite-positive roots and -1 for the rest. Independent of the
// bounded-enumeration route inside the library.
inline Int semiinf_length_by_inversions(const affq::AffineRoots& roots,
                                        const WeylElement& w) {
    Int total = 0;
    for (const auto& r : roots.inversion_set(w)) total += roots.semiinf_plus(r) ? 1 : -1;
    return total;
}

} // namespace oracle

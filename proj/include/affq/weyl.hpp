#pragma once

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "affq/cartan.hpp"

namespace affq {

/// Affine Weyl group element: exact integer matrix acting on Y in the basis I,
/// with the inverse stored alongside. Equality is matrix equality; a reduced
/// word is a cache, never identity.
struct WeylElement {
    Mat fwd;
    Mat inv;
    std::optional<std::vector<std::size_t>> word_cache;

    bool operator==(const WeylElement& o) const { return fwd == o.fwd; }
    bool operator!=(const WeylElement& o) const { return !(*this == o); }
};

inline bool matrix_less(const Mat& a, const Mat& b) { return a < b; }

/// Weight of the X-lattice stored via its pairings <i, lambda>, i in I.
struct ExtendedWeight {
    Vec pairings;

    bool operator==(const ExtendedWeight& o) const { return pairings == o.pairings; }
};

/// Translation coordinates: integer coefficients over the basis {d_i i' : i in Ibar}.
struct TranslationVector {
    Vec coeffs; // indexed by position in RootDatum::finite_nodes

    bool operator==(const TranslationVector& o) const { return coeffs == o.coeffs; }
};

/// Context object for affine Weyl group arithmetic over a fixed root datum.
/// All operations are pure; elements are values.
class Weyl {
public:
    explicit Weyl(RootDatum rd, Int iteration_budget = 1000000)
        : rd_(std::move(rd)), budget_(iteration_budget) {
        const std::size_t n = rd_.size();
        refl_.reserve(n);
        for (std::size_t i = 0; i < n; ++i) {
            Mat s = identity_matrix(n);
            // s_i(e_j) = e_j - <j, i'> e_i
            for (std::size_t j = 0; j < n; ++j) s[i][j] -= rd_.cartan[j][i];
            refl_.push_back(std::move(s));
        }
    }

    const RootDatum& root_datum() const { return rd_; }
    std::size_t rank() const { return rd_.size(); }
    Int iteration_budget() const { return budget_; }

    WeylElement identity() const {
        return {identity_matrix(rank()), identity_matrix(rank()),
                std::vector<std::size_t>{}};
    }

    WeylElement simple_reflection(std::size_t i) const {
        if (i >= rank()) throw validation_error("simple_reflection: unknown label index");
        return {refl_[i], refl_[i], std::vector<std::size_t>{i}};
    }

    WeylElement simple_reflection(const std::string& label) const {
        return simple_reflection(rd_.datum.index_of(label));
    }

    WeylElement multiply(const WeylElement& u, const WeylElement& w) const {
        WeylElement r{mat_mul(u.fwd, w.fwd), mat_mul(w.inv, u.inv), std::nullopt};
        if (u.word_cache && w.word_cache) {
            // Compose caches only when lengths add.
            if (length(r) == static_cast<Int>(u.word_cache->size() + w.word_cache->size())) {
                std::vector<std::size_t> cat = *u.word_cache;
                cat.insert(cat.end(), w.word_cache->begin(), w.word_cache->end());
                r.word_cache = std::move(cat);
            }
        }
        return r;
    }

    WeylElement inverse(const WeylElement& w) const {
        WeylElement r{w.inv, w.fwd, std::nullopt};
        if (w.word_cache) {
            std::vector<std::size_t> rev(w.word_cache->rbegin(), w.word_cache->rend());
            r.word_cache = std::move(rev);
        }
        return r;
    }

    static bool equals(const WeylElement& u, const WeylElement& w) { return u == w; }

    bool is_identity(const WeylElement& w) const {
        return w.fwd == identity_matrix(rank());
    }

    // w(alpha_i) is a negative root (right descent test).
    bool right_descent(const WeylElement& w, std::size_t i) const {
        bool nonzero = false;
        for (std::size_t k = 0; k < rank(); ++k) {
            if (w.fwd[k][i] > 0) return false;
            if (w.fwd[k][i] != 0) nonzero = true;
        }
        return nonzero;
    }

    // w^{-1}(alpha_i) is a negative root, i.e. l(s_i w) < l(w).
    bool left_descent(const WeylElement& w, std::size_t i) const {
        bool nonzero = false;
        for (std::size_t k = 0; k < rank(); ++k) {
            if (w.inv[k][i] > 0) return false;
            if (w.inv[k][i] != 0) nonzero = true;
        }
        return nonzero;
    }

    // Deterministic descent peeling; smallest label wins ties.
    std::pair<Int, std::vector<std::size_t>> length_and_word(const WeylElement& w) const {
        Mat cur = w.fwd;
        std::vector<std::size_t> peeled;
        Int ops = 0;
        while (cur != identity_matrix(rank())) {
            std::size_t pick = rank();
            for (std::size_t i = 0; i < rank(); ++i) {
                bool neg = true, nonzero = false;
                for (std::size_t k = 0; k < rank(); ++k) {
                    if (cur[k][i] > 0) { neg = false; break; }
                    if (cur[k][i] != 0) nonzero = true;
                }
                if (neg && nonzero) { pick = i; break; }
            }
            if (pick == rank())
                throw internal_error("descent peeling: no descent on a non-identity element");
            cur = mat_mul(cur, refl_[pick]);
            peeled.push_back(pick);
            if (++ops > budget_)
                throw budget_error("descent peeling exceeded the iteration budget");
        }
        std::vector<std::size_t> word(peeled.rbegin(), peeled.rend());
        return {static_cast<Int>(word.size()), word};
    }

    Int length(const WeylElement& w) const { return length_and_word(w).first; }

    WeylElement from_word(const std::vector<std::size_t>& word) const {
        WeylElement r = identity();
        for (auto i : word) r = multiply(r, simple_reflection(i));
        return r;
    }

    // theta_z for z in Y'': acts on Y by y -> y - <y, z> c.
    WeylElement translation(const TranslationVector& z) const {
        const std::size_t n = rank();
        if (z.coeffs.size() != rd_.finite_nodes.size())
            throw validation_error("translation: wrong coefficient count");
        Vec p(n, 0); // p_j = <e_j, z>
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t a = 0; a < rd_.finite_nodes.size(); ++a)
                p[j] += z.coeffs[a] * rd_.d[rd_.finite_nodes[a]] *
                        rd_.cartan[j][rd_.finite_nodes[a]];
        Mat fwd = identity_matrix(n), inv = identity_matrix(n);
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t j = 0; j < n; ++j) {
                fwd[k][j] -= rd_.c[k] * p[j];
                inv[k][j] += rd_.c[k] * p[j];
            }
        return {std::move(fwd), std::move(inv), std::nullopt};
    }

    bool strictly_dominant(const TranslationVector& z) const {
        // <i, z> > 0 for all i in Ibar.
        for (std::size_t b = 0; b < rd_.finite_nodes.size(); ++b) {
            Int s = 0;
            for (std::size_t a = 0; a < rd_.finite_nodes.size(); ++a)
                s += z.coeffs[a] * rd_.d[rd_.finite_nodes[a]] *
                     rd_.cartan[rd_.finite_nodes[b]][rd_.finite_nodes[a]];
            if (s <= 0) return false;
        }
        return true;
    }

    TranslationVector scale(const TranslationVector& z, Int m) const {
        TranslationVector r = z;
        for (auto& x : r.coeffs) x *= m;
        return r;
    }

    // w = theta_z * wbar, wbar in the finite Weyl group.
    std::pair<TranslationVector, WeylElement> normal_form(const WeylElement& w) const {
        const auto& fin = rd_.finite_nodes;
        const std::size_t nf = fin.size();
        // Induced action on Ybar = Y / Zc (basis: images of Ibar).
        Mat proj(nf, Vec(nf));
        for (std::size_t b = 0; b < nf; ++b)
            for (std::size_t a = 0; a < nf; ++a)
                proj[a][b] = w.fwd[fin[a]][fin[b]] -
                             rd_.marks[fin[a]] * w.fwd[rd_.datum.i0][fin[b]];
        // Peel in the finite Weyl group acting on Ybar.
        WeylElement wbar = identity();
        Mat cur = proj;
        std::vector<std::size_t> peeled;
        Int ops = 0;
        while (cur != identity_matrix(nf)) {
            std::size_t pick = nf;
            for (std::size_t b = 0; b < nf; ++b) {
                bool neg = true, nonzero = false;
                for (std::size_t a = 0; a < nf; ++a) {
                    if (cur[a][b] > 0) { neg = false; break; }
                    if (cur[a][b] != 0) nonzero = true;
                }
                if (neg && nonzero) { pick = b; break; }
            }
            if (pick == nf)
                throw internal_error("normal_form: no finite descent");
            // s_{fin[pick]} restricted to Ybar.
            Mat sbar = identity_matrix(nf);
            for (std::size_t b = 0; b < nf; ++b)
                sbar[pick][b] -= rd_.cartan[fin[b]][fin[pick]];
            cur = mat_mul(cur, sbar);
            peeled.push_back(fin[pick]);
            if (++ops > budget_) throw budget_error("normal_form exceeded the iteration budget");
        }
        std::vector<std::size_t> word(peeled.rbegin(), peeled.rend());
        wbar = from_word(word);
        // theta = w * wbar^{-1}; read off the pairing row via the i0 coordinate.
        WeylElement theta = multiply(w, inverse(wbar));
        Vec p(nf, 0);
        for (std::size_t b = 0; b < nf; ++b) {
            Int diag = (rd_.datum.i0 == fin[b]) ? 1 : 0;
            p[b] = -(theta.fwd[rd_.datum.i0][fin[b]] - diag);
        }
        // Solve p_j = sum_a z_a d_a <j, a'> over Ibar.
        Mat bm(nf, Vec(nf));
        for (std::size_t b = 0; b < nf; ++b)
            for (std::size_t a = 0; a < nf; ++a)
                bm[b][a] = rd_.d[fin[a]] * rd_.cartan[fin[b]][fin[a]];
        TranslationVector z{solve_integral(bm, p)};
        if (multiply(translation(z), wbar) != w)
            throw internal_error("normal_form: reconstruction mismatch");
        return {z, wbar};
    }

    // Standard Bruhat order by recursive lifting on the smallest left descent.
    bool bruhat_leq(const WeylElement& u, const WeylElement& w) const {
        Int lw = length(w);
        if (lw == 0) return is_identity(u);
        if (length(u) > lw) return false;
        std::size_t s = rank();
        for (std::size_t i = 0; i < rank(); ++i)
            if (left_descent(w, i)) { s = i; break; }
        if (s == rank()) throw internal_error("bruhat_leq: no left descent");
        WeylElement sw = multiply(simple_reflection(s), w);
        if (left_descent(u, s)) {
            WeylElement su = multiply(simple_reflection(s), u);
            return bruhat_leq(su, sw);
        }
        return bruhat_leq(u, sw);
    }

    ExtendedWeight rho() const { return ExtendedWeight{Vec(rank(), 1)}; }

    Int level(const ExtendedWeight& lambda) const {
        Int k = 0;
        for (std::size_t i = 0; i < rank(); ++i) k += rd_.marks[i] * lambda.pairings[i];
        return k;
    }

    bool dominant(const ExtendedWeight& lambda) const {
        return std::all_of(lambda.pairings.begin(), lambda.pairings.end(),
                           [](Int p) { return p >= 0; });
    }

    // Linear action of w on X in pairing coordinates: <i, w(x)> = <w^{-1}(i), x>.
    ExtendedWeight apply_weight(const WeylElement& w, const ExtendedWeight& x) const {
        Vec out(rank(), 0);
        for (std::size_t i = 0; i < rank(); ++i)
            for (std::size_t j = 0; j < rank(); ++j)
                out[i] += w.inv[j][i] * x.pairings[j];
        return ExtendedWeight{out};
    }

    // Dot action: w . lambda = w(lambda + rho) - rho. Preserves the level.
    ExtendedWeight dot_action(const WeylElement& w, const ExtendedWeight& lambda) const {
        Vec shifted = lambda.pairings;
        for (auto& x : shifted) x += 1;
        ExtendedWeight r = apply_weight(w, ExtendedWeight{shifted});
        for (auto& x : r.pairings) x -= 1;
        return r;
    }

    struct WordLift {
        Vec lift;   // over I; image in X equals lambda - w.lambda
        Int height; // sum of lift coefficients
    };

    // Telescoping lift of lambda - w.lambda along a reduced word of w.
    // Resolves the height ambiguity caused by sum_i r'_i i' = 0 in X.
    WordLift word_lift(const WeylElement& w, const ExtendedWeight& lambda) const {
        auto [len, word] = length_and_word(w);
        (void)len;
        Vec mu = lambda.pairings;
        for (auto& x : mu) x += 1; // lambda + rho
        Vec lift(rank(), 0);
        Int height = 0;
        for (std::size_t j = word.size(); j-- > 0;) {
            // Here mu = s_{i_{j+1}} ... s_{i_n}(lambda + rho).
            std::size_t i = word[j];
            Int cj = mu[i];
            lift[i] += cj;
            height += cj;
            if (j > 0) {
                Vec next(rank());
                for (std::size_t a = 0; a < rank(); ++a)
                    next[a] = mu[a] - cj * rd_.cartan[a][i];
                mu = std::move(next);
            }
        }
        return {lift, height};
    }

    // Enumerate the closed ball of radius max_len in the Cayley graph.
    std::vector<WeylElement> length_ball(Int max_len) const {
        std::vector<WeylElement> ball{identity()};
        std::vector<Mat> seen{identity().fwd};
        std::sort(seen.begin(), seen.end());
        std::vector<WeylElement> frontier{identity()};
        for (Int l = 1; l <= max_len; ++l) {
            std::vector<WeylElement> next;
            for (const auto& w : frontier)
                for (std::size_t i = 0; i < rank(); ++i) {
                    WeylElement cand = multiply(w, simple_reflection(i));
                    if (std::binary_search(seen.begin(), seen.end(), cand.fwd)) continue;
                    seen.insert(std::upper_bound(seen.begin(), seen.end(), cand.fwd),
                                cand.fwd);
                    next.push_back(cand);
                }
            for (const auto& w : next) ball.push_back(w);
            frontier = std::move(next);
            if (static_cast<Int>(ball.size()) > budget_)
                throw budget_error("length_ball exceeded the iteration budget");
        }
        return ball;
    }

private:
    RootDatum rd_;
    Int budget_;
    std::vector<Mat> refl_;
};

} // namespace affq

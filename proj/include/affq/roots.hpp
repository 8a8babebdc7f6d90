#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "affq/weyl.hpp"

namespace affq {

/// Finite root system of the classical subdatum, with vectors in Zbar[Ibar]
/// (coordinates indexed by position in RootDatum::finite_nodes).
class FiniteRoots {
public:
    explicit FiniteRoots(const RootDatum& rd) : rd_(&rd) {
        const auto& fin = rd.finite_nodes;
        const std::size_t nf = fin.size();
        std::set<Vec> all;
        std::vector<Vec> frontier;
        for (std::size_t a = 0; a < nf; ++a) {
            Vec e(nf, 0);
            e[a] = 1;
            all.insert(e);
            frontier.push_back(e);
        }
        while (!frontier.empty()) {
            std::vector<Vec> next;
            for (const auto& f : frontier)
                for (std::size_t a = 0; a < nf; ++a) {
                    Vec g = f;
                    // s_a(f) = f - <f, a'> e_a
                    Int pr = 0;
                    for (std::size_t b = 0; b < nf; ++b)
                        pr += f[b] * rd.cartan[fin[b]][fin[a]];
                    g[a] -= pr;
                    if (all.insert(g).second) next.push_back(g);
                }
            frontier = std::move(next);
            if (all.size() > 100000)
                throw budget_error("finite root enumeration exceeded its budget");
        }
        roots_.assign(all.begin(), all.end());
        for (const auto& f : roots_)
            if (is_positive(f)) positives_.push_back(f);
    }

    const RootDatum& datum() const { return *rd_; }
    const std::vector<Vec>& all() const { return roots_; }
    const std::vector<Vec>& positives() const { return positives_; }

    bool contains(const Vec& f) const {
        return std::binary_search(roots_.begin(), roots_.end(), f);
    }

    static bool is_positive(const Vec& f) {
        bool nonzero = false;
        for (Int x : f) {
            if (x < 0) return false;
            if (x != 0) nonzero = true;
        }
        return nonzero;
    }

    // Symmetric form restricted to Zbar[Ibar].
    Int dot(const Vec& f, const Vec& g) const {
        const auto& fin = rd_->finite_nodes;
        Int s = 0;
        for (std::size_t a = 0; a < fin.size(); ++a)
            for (std::size_t b = 0; b < fin.size(); ++b)
                s += f[a] * g[b] * rd_->datum.dot[fin[a]][fin[b]];
        return s;
    }

    Int height(const Vec& f) const {
        Int h = 0;
        for (Int x : f) h += x;
        return h;
    }

    // d_f = (f, f)/2 and dhat_f = D / d_f.
    Int d_of(const Vec& f) const {
        Int ff = dot(f, f);
        if (ff <= 0 || ff % 2 != 0) throw internal_error("d_of: malformed root");
        return ff / 2;
    }

    Int dhat_of(const Vec& f) const {
        Int d = d_of(f);
        if (rd_->D % d != 0) throw internal_error("dhat_of: d does not divide D");
        return rd_->D / d;
    }

    // Winding step of the real-root family through f: the set of real roots
    // with finite part f is {f + d_f m c}. (Longer roots recur less often;
    // the step is d_f, as the orbit of the simple roots shows.)
    Int step_of(const Vec& f) const { return d_of(f); }

    // <f, g'> = 2 (f, g) / (g, g).
    Int pair_fin(const Vec& f, const Vec& g) const {
        Int gg = dot(g, g);
        Int num = 2 * dot(f, g);
        if (num % gg != 0) throw internal_error("pair_fin: non-integral pairing");
        return num / gg;
    }

private:
    const RootDatum* rd_;
    std::vector<Vec> roots_;
    std::vector<Vec> positives_;
};

/// Affine real/imaginary root presented as (finite part, winding m):
/// real f + m d_f c with f in Rbar, imaginary m c with m != 0.
struct AffineRoot {
    Vec finite; // over Ibar positions; all zero for imaginary roots
    Int m = 0;

    bool is_imaginary() const {
        return std::all_of(finite.begin(), finite.end(), [](Int x) { return x == 0; });
    }
    bool operator==(const AffineRoot& o) const { return finite == o.finite && m == o.m; }
    bool operator<(const AffineRoot& o) const {
        if (finite != o.finite) return finite < o.finite;
        return m < o.m;
    }
};

class AffineRoots {
public:
    explicit AffineRoots(const Weyl& weyl) : weyl_(&weyl), fin_(weyl.root_datum()) {}

    const Weyl& weyl() const { return *weyl_; }
    const FiniteRoots& finite() const { return fin_; }

    // Embed into Y = Z[I].
    Vec to_y(const AffineRoot& r) const {
        const auto& rd = weyl_->root_datum();
        Vec y(rd.size(), 0);
        Int t = r.is_imaginary() ? r.m : r.m * fin_.step_of(r.finite);
        for (std::size_t k = 0; k < rd.size(); ++k) y[k] = t * rd.c[k];
        if (!r.is_imaginary())
            for (std::size_t a = 0; a < rd.finite_nodes.size(); ++a)
                y[rd.finite_nodes[a]] += r.finite[a];
        return y;
    }

    // Recognise a root inside Y; nullopt if y is not a root.
    std::optional<AffineRoot> from_y(const Vec& y) const {
        const auto& rd = weyl_->root_datum();
        Int t = y[rd.datum.i0];
        Vec f(rd.finite_nodes.size(), 0);
        bool fzero = true;
        for (std::size_t a = 0; a < rd.finite_nodes.size(); ++a) {
            f[a] = y[rd.finite_nodes[a]] - rd.marks[rd.finite_nodes[a]] * t;
            if (f[a] != 0) fzero = false;
        }
        if (fzero) {
            if (t == 0) return std::nullopt;
            return AffineRoot{f, t};
        }
        if (!fin_.contains(f)) return std::nullopt;
        Int st = fin_.step_of(f);
        if (t % st != 0) return std::nullopt;
        return AffineRoot{f, t / st};
    }

    bool is_positive(const AffineRoot& r) const {
        if (r.is_imaginary()) return r.m > 0;
        if (r.m != 0) return r.m > 0;
        return FiniteRoots::is_positive(r.finite);
    }

    // Semi-infinite sign: + when the finite part is positive (real case),
    // or m > 0 (imaginary case); - otherwise.
    bool semiinf_plus(const AffineRoot& r) const {
        if (r.is_imaginary()) return r.m > 0;
        return FiniteRoots::is_positive(r.finite);
    }

    Int height(const AffineRoot& r) const {
        Vec y = to_y(r);
        Int h = 0;
        for (Int x : y) h += x;
        return h;
    }

    AffineRoot apply(const WeylElement& w, const AffineRoot& r) const {
        Vec y = mat_apply(w.fwd, to_y(r));
        auto out = from_y(y);
        if (!out) throw internal_error("apply: Weyl image is not a root");
        return *out;
    }

    AffineRoot simple_root(std::size_t i) const {
        const auto& rd = weyl_->root_datum();
        if (i == rd.datum.i0) {
            // alpha_{i0} = c - theta_short-part; recover via from_y on e_{i0}.
            Vec y(rd.size(), 0);
            y[i] = 1;
            auto r = from_y(y);
            if (!r) throw internal_error("simple_root: e_{i0} not recognised");
            return *r;
        }
        Vec f(rd.finite_nodes.size(), 0);
        for (std::size_t a = 0; a < rd.finite_nodes.size(); ++a)
            if (rd.finite_nodes[a] == i) f[a] = 1;
        return AffineRoot{f, 0};
    }

    // Inversion set of w along a reduced word i_1 ... i_k:
    // { alpha_{i_k}, s_{i_k}(alpha_{i_{k-1}}), ..., s_{i_k}...s_{i_2}(alpha_{i_1}) }.
    std::vector<AffineRoot> inversion_set(const WeylElement& w) const {
        auto [len, word] = weyl_->length_and_word(w);
        (void)len;
        std::vector<AffineRoot> inv;
        WeylElement acc = weyl_->identity();
        for (std::size_t j = word.size(); j-- > 0;) {
            inv.push_back(apply(acc, simple_root(word[j])));
            acc = weyl_->multiply(acc, weyl_->simple_reflection(word[j]));
        }
        return inv;
    }

    // l^{oo/2}(w) = #(inv(w) cap R^{oo/2,+}) - #(inv(w) cap R^{oo/2,-}),
    // evaluated by bounded enumeration of positive real roots sent to negatives,
    // with an empty outer shell certifying completeness.
    Int semiinf_length(const WeylElement& w) const {
        auto [z, wbar] = weyl_->normal_form(w);
        (void)wbar;
        const auto& rd = weyl_->root_datum();
        Int bound = 1;
        for (const auto& f : fin_.all()) {
            // |<f, z>| / d_f bounds the winding of any flipped root family.
            Int pr = 0;
            for (std::size_t a = 0; a < rd.finite_nodes.size(); ++a) {
                Int pf = 0;
                for (std::size_t b = 0; b < rd.finite_nodes.size(); ++b)
                    pf += f[b] * rd.cartan[rd.finite_nodes[b]][rd.finite_nodes[a]];
                pr += z.coeffs[a] * rd.d[rd.finite_nodes[a]] * pf;
            }
            Int dh = fin_.step_of(f);
            if (pr < 0) pr = -pr;
            bound = std::max(bound, (pr + dh - 1) / dh + 1);
        }
        for (int attempt = 0; attempt < 4; ++attempt) {
            Int plus = 0, minus = 0;
            bool shell_clean = true;
            for (const auto& f : fin_.all()) {
                bool fpos = FiniteRoots::is_positive(f);
                Int m_lo = fpos ? 0 : 1;
                for (Int m = m_lo; m <= bound; ++m) {
                    AffineRoot r{f, m};
                    AffineRoot img = apply(w, r);
                    if (is_positive(img)) continue;
                    if (m == bound) { shell_clean = false; break; }
                    if (semiinf_plus(r)) ++plus;
                    else ++minus;
                }
                if (!shell_clean) break;
            }
            if (shell_clean) return plus - minus;
            bound *= 2;
        }
        throw budget_error("semiinf_length: shell verification failed within budget");
    }

    // l^w(u) = l(w^{-1} u) - l(w^{-1}).
    Int twisted_length(const WeylElement& twist, const WeylElement& u) const {
        WeylElement ti = weyl_->inverse(twist);
        return weyl_->length(weyl_->multiply(ti, u)) - weyl_->length(ti);
    }

    struct Stabilization {
        Int m0 = 0;          // first index from which the sequence is constant
        Int value = 0;       // stable value; equals semiinf_length
        std::vector<Int> sequence;
    };

    // Sequence m -> l(w theta_{mx}) - l(theta_{mx}); deep right translation by
    // a dominant vector freezes the sequence at the semi-infinite length.
    // Detect the stabilization onset with a constant run of `window` further
    // values, then check against l^{oo/2}.
    Stabilization stabilization_m0(const WeylElement& w, const TranslationVector& x,
                                   Int window = 4, Int m_budget = 64) const {
        if (!weyl_->strictly_dominant(x))
            throw validation_error("stabilization_m0: x must be strictly dominant");
        std::vector<Int> seq;
        auto term = [&](Int m) {
            WeylElement th = weyl_->translation(weyl_->scale(x, m));
            return weyl_->length(weyl_->multiply(w, th)) - weyl_->length(th);
        };
        for (Int m = 0; m <= m_budget; ++m) {
            seq.push_back(term(m));
            Int n = static_cast<Int>(seq.size());
            if (n >= window + 1) {
                Int m0 = n - 1 - window;
                bool stable = true;
                for (Int k = m0; k < n - 1; ++k)
                    if (seq[k] != seq[k + 1]) { stable = false; break; }
                if (stable) {
                    while (m0 > 0 && seq[m0 - 1] == seq[m0]) --m0;
                    Int target = semiinf_length(w);
                    if (seq.back() != target)
                        throw internal_error(
                            "stabilization_m0: stable value disagrees with semiinf_length");
                    return {m0, seq.back(), seq};
                }
            }
        }
        throw budget_error("stabilization_m0: no stabilization within the m budget");
    }

    // Smallest strictly dominant translation vector in a small box (by total
    // size, then lexicographically); exists for every valid datum.
    TranslationVector dominant_translation(Int box = 6) const {
        const std::size_t nf = weyl_->root_datum().finite_nodes.size();
        std::optional<TranslationVector> best;
        Int best_sum = 0;
        Vec cur(nf, 1);
        while (true) {
            TranslationVector z{cur};
            Int sum = 0;
            for (Int x : cur) sum += x;
            if (weyl_->strictly_dominant(z) &&
                (!best || sum < best_sum || (sum == best_sum && cur < best->coeffs))) {
                best = z;
                best_sum = sum;
            }
            std::size_t a = 0;
            while (a < nf && cur[a] == box) cur[a++] = 1;
            if (a == nf) break;
            ++cur[a];
        }
        if (!best) throw internal_error("dominant_translation: no dominant vector in the box");
        return *best;
    }

    enum class Verdict { yes, no, inconclusive };

    // Certified semi-decision of the semi-infinite Bruhat order: translate both
    // arguments deep into the dominant chamber and compare ordinary Bruhat
    // verdicts across a grid; any disagreement or failed stabilization yields
    // `inconclusive`.
    Verdict semiinf_bruhat_leq(const WeylElement& u, const WeylElement& w,
                               Int certify_depth = 2) const {
        const auto& rd = weyl_->root_datum();
        const std::size_t nf = rd.finite_nodes.size();
        TranslationVector base = dominant_translation();
        try {
            stabilization_m0(u, base);
            stabilization_m0(w, base);
        } catch (const budget_error&) {
            return Verdict::inconclusive;
        }
        std::optional<bool> verdict;
        WeylElement deep = weyl_->translation(weyl_->scale(base, certify_depth));
        std::vector<Vec> grid;
        Vec cur(nf, 0);
        // All shift vectors with entries in [0, certify_depth].
        while (true) {
            grid.push_back(cur);
            std::size_t a = 0;
            while (a < nf && cur[a] == certify_depth) cur[a++] = 0;
            if (a == nf) break;
            ++cur[a];
        }
        for (const auto& g : grid) {
            WeylElement t = weyl_->multiply(weyl_->translation(TranslationVector{g}), deep);
            bool b = weyl_->bruhat_leq(weyl_->multiply(u, t), weyl_->multiply(w, t));
            if (!verdict) verdict = b;
            else if (*verdict != b) return Verdict::inconclusive;
        }
        return *verdict ? Verdict::yes : Verdict::no;
    }

private:
    const Weyl* weyl_;
    FiniteRoots fin_;
};

} // namespace affq

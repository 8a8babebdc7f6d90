#pragma once

#include <algorithm>
#include <cstdlib>
#include <map>
#include <tuple>
#include <utility>
#include <vector>

#include "affq/roots.hpp"

namespace affq {

/// Index into the extended positive root list ordered by a Beck convex order:
/// real roots carry a Beck integer k, imaginary roots a winding m >= 1 and a
/// finite node (the multiplicity slot).
struct ExtendedRootIndex {
    bool imaginary = false;
    Int k = 0;          // real case
    Int m = 0;          // imaginary case
    std::size_t node = 0;

    static ExtendedRootIndex real(Int k) { return {false, k, 0, 0}; }
    static ExtendedRootIndex imag(Int m, std::size_t node) { return {true, 0, m, node}; }

    // Total order key: k<=0 block, then imaginary block ascending in (m, node),
    // then k>=1 block descending in k.
    std::tuple<int, Int, Int> key() const {
        if (imaginary) return {1, m, static_cast<Int>(node)};
        if (k <= 0) return {0, -k, 0};
        return {2, -k, 0};
    }
    bool operator<(const ExtendedRootIndex& o) const { return key() < o.key(); }
    bool operator==(const ExtendedRootIndex& o) const { return key() == o.key(); }
    bool operator!=(const ExtendedRootIndex& o) const { return !(*this == o); }
};

struct ConvexWindow {
    Int real_lo = 0;    // inclusive Beck index range
    Int real_hi = 0;
    Int imag_cap = 0;   // windings 1..imag_cap
};

struct ThetaWindowReport {
    Int m = 0;
    std::vector<Int> upper;      // k with theta_{-mx}(beta_k) negative
    std::vector<Int> lower;      // k with theta_{mx}(beta_k) negative
    bool upper_contiguous = false; // equals {1, ..., m*d}
    bool lower_contiguous = false; // equals {-m*d+1, ..., 0}

    // Generator index set of the window subalgebra, ascending in the order
    // (lower set traversed from k = 0 downward).
    std::vector<ExtendedRootIndex> generators() const {
        std::vector<ExtendedRootIndex> g;
        for (auto it = lower.rbegin(); it != lower.rend(); ++it)
            g.push_back(ExtendedRootIndex::real(*it));
        return g;
    }
};

/// Beck convex order attached to a strictly dominant translation theta_x.
/// One instance is one order handle; graded-algebra values refuse to mix
/// handles. Root computations are memoised and idempotent.
class ConvexOrder {
public:
    ConvexOrder(const Weyl& weyl, TranslationVector x)
        : roots_(weyl), x_(std::move(x)) {
        if (!weyl.strictly_dominant(x_))
            throw validation_error("ConvexOrder: x must be strictly dominant");
        WeylElement theta = weyl.translation(x_);
        auto [len, word] = weyl.length_and_word(theta);
        d_ = len;
        word_ = std::move(word);
        if (d_ == 0) throw validation_error("ConvexOrder: theta_x is trivial");
        pos_prefix_.push_back(weyl.identity()); // s_{p_1}...s_{p_{k-1}} at slot k-1
        neg_prefix_.push_back(weyl.identity()); // s_{p_0}...s_{p_{k+1}} at slot -k
    }

    const AffineRoots& roots() const { return roots_; }
    const Weyl& weyl() const { return roots_.weyl(); }
    const TranslationVector& x() const { return x_; }
    Int theta_length() const { return d_; }
    const std::vector<std::size_t>& theta_word() const { return word_; }

    // Doubly infinite letter sequence p_k, periodic with period d.
    std::size_t letter(Int k) const {
        Int r = ((k - 1) % d_ + d_) % d_;
        return word_[static_cast<std::size_t>(r)];
    }

    AffineRoot root_of(const ExtendedRootIndex& idx) const {
        const auto& rd = weyl().root_datum();
        if (idx.imaginary) {
            if (idx.m < 1 || idx.node >= rd.finite_nodes.size())
                throw validation_error("root_of: malformed imaginary index");
            return AffineRoot{Vec(rd.finite_nodes.size(), 0), idx.m};
        }
        return beck_root(idx.k);
    }

    // beta_k for real Beck indices: beta_k = s_{p_1}...s_{p_{k-1}}(alpha_{p_k})
    // for k >= 1 and beta_k = s_{p_0} s_{p_-1}...s_{p_{k+1}}(alpha_{p_k}) for k <= 0.
    AffineRoot beck_root(Int k) const {
        auto it = beck_memo_.find(k);
        if (it != beck_memo_.end()) return it->second;
        const Weyl& wy = weyl();
        AffineRoot out{Vec(), 0};
        if (k >= 1) {
            while (static_cast<Int>(pos_prefix_.size()) < k)
                pos_prefix_.push_back(wy.multiply(
                    pos_prefix_.back(),
                    wy.simple_reflection(letter(static_cast<Int>(pos_prefix_.size())))));
            out = roots_.apply(pos_prefix_[static_cast<std::size_t>(k - 1)],
                               roots_.simple_root(letter(k)));
        } else {
            while (static_cast<Int>(neg_prefix_.size()) < -k + 1)
                neg_prefix_.push_back(wy.multiply(
                    neg_prefix_.back(),
                    wy.simple_reflection(letter(1 - static_cast<Int>(neg_prefix_.size())))));
            out = roots_.apply(neg_prefix_[static_cast<std::size_t>(-k)],
                               roots_.simple_root(letter(k)));
        }
        if (!roots_.is_positive(out))
            throw internal_error("beck_root: produced a non-positive root");
        beck_memo_.emplace(k, out);
        return out;
    }

    // Locate the Beck index of a positive real root; scans 0, 1, -1, 2, -2, ...
    Int find_real_index(const AffineRoot& r, Int cap = 100000) const {
        if (r.is_imaginary())
            throw validation_error("find_real_index: imaginary root");
        for (Int t = 0; t <= cap; ++t) {
            if (beck_root(-t) == r) return -t;
            if (t >= 1 && beck_root(t) == r) return t;
        }
        throw budget_error("find_real_index: index scan exceeded its cap");
    }

    int compare(const ExtendedRootIndex& a, const ExtendedRootIndex& b) const {
        if (a.key() < b.key()) return -1;
        if (b.key() < a.key()) return 1;
        return 0;
    }

    // All indices in the window, ascending in the convex order.
    std::vector<ExtendedRootIndex> window_indices(const ConvexWindow& w) const {
        std::vector<ExtendedRootIndex> out;
        for (Int k = 0; k >= w.real_lo; --k) out.push_back(ExtendedRootIndex::real(k));
        const auto& rd = weyl().root_datum();
        for (Int m = 1; m <= w.imag_cap; ++m)
            for (std::size_t a = 0; a < rd.finite_nodes.size(); ++a)
                out.push_back(ExtendedRootIndex::imag(m, a));
        for (Int k = w.real_hi; k >= 1; --k) out.push_back(ExtendedRootIndex::real(k));
        return out;
    }

    struct ConvexityViolation {
        ExtendedRootIndex a, b, sum;
    };

    // Check alpha < alpha + beta < beta for all in-window pairs whose sum is
    // again a root. Pairs of two imaginary roots are exempt: the imaginary
    // block is internally ordered by an arbitrary tie-break, and no total
    // order on {mc} can place (r+s)c between rc and sc, so convexity only
    // constrains pairs involving a real root.
    std::vector<ConvexityViolation> convexity_check(const ConvexWindow& w) const {
        auto idxs = window_indices(w);
        std::vector<ConvexityViolation> bad;
        for (std::size_t i = 0; i < idxs.size(); ++i)
            for (std::size_t j = i + 1; j < idxs.size(); ++j) {
                const auto& a = idxs[i];
                const auto& b = idxs[j];
                if (a.imaginary && b.imaginary) continue;
                Vec ya = roots_.to_y(root_of(a));
                Vec yb = roots_.to_y(root_of(b));
                Vec ys(ya.size());
                for (std::size_t t = 0; t < ya.size(); ++t) ys[t] = ya[t] + yb[t];
                auto sum = roots_.from_y(ys);
                if (!sum || !roots_.is_positive(*sum)) continue;
                ExtendedRootIndex si;
                if (sum->is_imaginary()) {
                    si = ExtendedRootIndex::imag(sum->m, 0);
                } else {
                    Int k;
                    try {
                        k = find_real_index(*sum, 4 * (std::max(std::abs(w.real_lo),
                                                                 std::abs(w.real_hi)) + d_));
                    } catch (const budget_error&) {
                        continue; // sum lies outside any index we can witness
                    }
                    si = ExtendedRootIndex::real(k);
                }
                if (!(compare(a, si) < 0 && compare(si, b) < 0))
                    bad.push_back({a, b, si});
            }
        return bad;
    }

    // Sign tests defining the twisting windows of theta_{mx}:
    // upper = {k : theta_{-mx}(beta_k) in R^-}, lower = {k : theta_{mx}(beta_k) in R^-}.
    ThetaWindowReport theta_window(Int m) const {
        if (m < 1) throw validation_error("theta_window: m must be >= 1");
        const Weyl& wy = weyl();
        WeylElement tp = wy.translation(wy.scale(x_, m));
        WeylElement tm = wy.inverse(tp);
        ThetaWindowReport rep;
        rep.m = m;
        Int pad = m * d_ + d_;
        for (Int k = -pad; k <= pad; ++k) {
            AffineRoot b = beck_root(k);
            if (!roots_.is_positive(roots_.apply(tm, b))) rep.upper.push_back(k);
            if (!roots_.is_positive(roots_.apply(tp, b))) rep.lower.push_back(k);
        }
        std::sort(rep.upper.begin(), rep.upper.end());
        std::sort(rep.lower.begin(), rep.lower.end());
        auto is_range = [](const std::vector<Int>& v, Int lo, Int hi) {
            if (static_cast<Int>(v.size()) != hi - lo + 1) return false;
            for (std::size_t t = 0; t < v.size(); ++t)
                if (v[t] != lo + static_cast<Int>(t)) return false;
            return true;
        };
        rep.upper_contiguous = is_range(rep.upper, 1, m * d_);
        rep.lower_contiguous = is_range(rep.lower, -m * d_ + 1, 0);
        return rep;
    }

    // Semi-infinite side of an indexed root: true for R^{oo/2,+}.
    bool semiinf_plus(const ExtendedRootIndex& idx) const {
        return roots_.semiinf_plus(root_of(idx));
    }

    // Partition of window indices into (minus side, plus side) of R^{oo/2}.
    std::pair<std::vector<ExtendedRootIndex>, std::vector<ExtendedRootIndex>>
    semiinf_pbw_index(const ConvexWindow& w) const {
        std::pair<std::vector<ExtendedRootIndex>, std::vector<ExtendedRootIndex>> out;
        for (const auto& idx : window_indices(w))
            (semiinf_plus(idx) ? out.second : out.first).push_back(idx);
        return out;
    }

private:
    AffineRoots roots_;
    TranslationVector x_;
    Int d_ = 0;
    std::vector<std::size_t> word_;
    mutable std::vector<WeylElement> pos_prefix_;
    mutable std::vector<WeylElement> neg_prefix_;
    mutable std::map<Int, AffineRoot> beck_memo_;
};

} // namespace affq

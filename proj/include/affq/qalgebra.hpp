#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "affq/convex.hpp"
#include "affq/laurent.hpp"
#include "affq/modp.hpp"

namespace affq {

/// (finite-root-lattice weight, energy) bidegree of PBW data.
struct MultiDegree {
    Vec weight; // over Ibar positions
    Int energy = 0;

    bool operator==(const MultiDegree& o) const {
        return weight == o.weight && energy == o.energy;
    }
    bool operator<(const MultiDegree& o) const {
        if (energy != o.energy) return energy < o.energy;
        return weight < o.weight;
    }
    MultiDegree operator+(const MultiDegree& o) const {
        Vec w = weight;
        for (std::size_t t = 0; t < w.size(); ++t) w[t] += o.weight[t];
        return {w, energy + o.energy};
    }
    MultiDegree operator-(const MultiDegree& o) const {
        Vec w = weight;
        for (std::size_t t = 0; t < w.size(); ++t) w[t] -= o.weight[t];
        return {w, energy - o.energy};
    }
};

/// One extended-index generator with its bidegree.
struct GeneratorInfo {
    ExtendedRootIndex idx;
    MultiDegree degree;
};

inline GeneratorInfo make_generator(const ConvexOrder& ord, const ExtendedRootIndex& idx) {
    AffineRoot r = ord.root_of(idx);
    Vec w = r.is_imaginary() ? Vec(r.finite.size(), 0) : r.finite;
    return {idx, {w, ord.roots().height(r)}};
}

// Straightening exponent <pi(a), pi(b)'> on finite parts; zero when either
// root is imaginary (imaginary generators are central at the graded level).
inline Int pairing_exponent(const ConvexOrder& ord, const ExtendedRootIndex& a,
                            const ExtendedRootIndex& b) {
    if (a.imaginary || b.imaginary) return 0;
    AffineRoot ra = ord.root_of(a), rb = ord.root_of(b);
    return ord.roots().finite().pair_fin(ra.finite, rb.finite);
}

/// Ordered product of extended-index powers, stored ascending in the convex
/// order with strictly positive exponents.
struct PBWMonomial {
    std::vector<std::pair<ExtendedRootIndex, Int>> factors;

    bool operator==(const PBWMonomial& o) const {
        if (factors.size() != o.factors.size()) return false;
        for (std::size_t t = 0; t < factors.size(); ++t)
            if (factors[t].first != o.factors[t].first ||
                factors[t].second != o.factors[t].second)
                return false;
        return true;
    }
    bool operator<(const PBWMonomial& o) const {
        std::vector<std::pair<std::tuple<int, Int, Int>, Int>> a, b;
        for (const auto& [i, e] : factors) a.push_back({i.key(), e});
        for (const auto& [i, e] : o.factors) b.push_back({i.key(), e});
        return a < b;
    }
};

inline MultiDegree monomial_degree(const ConvexOrder& ord, const PBWMonomial& m) {
    MultiDegree d{Vec(ord.weyl().root_datum().finite_nodes.size(), 0), 0};
    for (const auto& [idx, e] : m.factors) {
        GeneratorInfo g = make_generator(ord, idx);
        for (Int t = 0; t < e; ++t) d = d + g.degree;
    }
    return d;
}

// Straighten the concatenation a * b into a single sorted monomial with its
// v-power: every out-of-order pair (beta in a) > (gamma in b) contributes
// <pi(gamma), pi(beta)'> per unit of both exponents.
inline std::pair<PBWMonomial, Int> straighten_monomials(const ConvexOrder& ord,
                                                        const PBWMonomial& a,
                                                        const PBWMonomial& b) {
    Int e = 0;
    for (const auto& [bi, bexp] : a.factors)
        for (const auto& [gj, gexp] : b.factors)
            if (gj.key() < bi.key())
                e += bexp * gexp * pairing_exponent(ord, gj, bi);
    std::map<std::tuple<int, Int, Int>, std::pair<ExtendedRootIndex, Int>> merged;
    for (const auto& [i, x] : a.factors) {
        auto& slot = merged[i.key()];
        slot.first = i;
        slot.second += x;
    }
    for (const auto& [i, x] : b.factors) {
        auto& slot = merged[i.key()];
        slot.first = i;
        slot.second += x;
    }
    PBWMonomial out;
    for (const auto& [k, ie] : merged) {
        (void)k;
        if (ie.second != 0) out.factors.push_back(ie);
    }
    return {out, e};
}

/// Finite Laurent combination of PBW monomials over one convex-order handle.
class GradedElement {
public:
    explicit GradedElement(const ConvexOrder* ord) : order_(ord) {}

    static GradedElement zero(const ConvexOrder& ord) { return GradedElement(&ord); }
    static GradedElement one(const ConvexOrder& ord) {
        GradedElement r(&ord);
        r.terms_[PBWMonomial{}] = LaurentScalar::one();
        return r;
    }
    static GradedElement generator(const ConvexOrder& ord, const ExtendedRootIndex& idx) {
        GradedElement r(&ord);
        r.terms_[PBWMonomial{{{idx, 1}}}] = LaurentScalar::one();
        return r;
    }
    static GradedElement monomial(const ConvexOrder& ord, PBWMonomial m, LaurentScalar c) {
        GradedElement r(&ord);
        if (!c.is_zero()) r.terms_[std::move(m)] = std::move(c);
        return r;
    }

    const ConvexOrder* order() const { return order_; }
    const std::map<PBWMonomial, LaurentScalar>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    bool operator==(const GradedElement& o) const {
        return order_ == o.order_ && terms_ == o.terms_;
    }

    GradedElement operator+(const GradedElement& o) const {
        check_handle(o);
        GradedElement r = *this;
        for (const auto& [m, c] : o.terms_) {
            LaurentScalar& t = r.terms_[m];
            t += c;
            if (t.is_zero()) r.terms_.erase(m);
        }
        return r;
    }

    GradedElement scale(const LaurentScalar& s) const {
        GradedElement r(order_);
        if (s.is_zero()) return r;
        for (const auto& [m, c] : terms_) r.terms_[m] = c * s;
        return r;
    }

private:
    void check_handle(const GradedElement& o) const {
        if (order_ != o.order_)
            throw validation_error("GradedElement: mismatched convex-order handles");
    }

    friend GradedElement straighten_product(const GradedElement&, const GradedElement&);

    const ConvexOrder* order_;
    std::map<PBWMonomial, LaurentScalar> terms_;
};

inline GradedElement straighten_product(const GradedElement& a, const GradedElement& b) {
    a.check_handle(b);
    GradedElement r(a.order_);
    for (const auto& [ma, ca] : a.terms_)
        for (const auto& [mb, cb] : b.terms_) {
            auto [m, e] = straighten_monomials(*a.order_, ma, mb);
            LaurentScalar& t = r.terms_[m];
            t += ca * cb * LaurentScalar::v_power(e);
            if (t.is_zero()) r.terms_.erase(m);
        }
    return r;
}

// All extended indices whose root has energy <= cap, ascending in the order.
inline std::vector<ExtendedRootIndex> indices_with_energy_le(const ConvexOrder& ord,
                                                             Int cap) {
    const auto& roots = ord.roots();
    const auto& rd = ord.weyl().root_datum();
    Int hc = 0;
    for (Int r : rd.marks) hc += r;
    std::vector<ExtendedRootIndex> out;
    for (const auto& f : roots.finite().all()) {
        Int hf = roots.finite().height(f);
        Int dh = roots.finite().step_of(f);
        Int m0 = FiniteRoots::is_positive(f) ? 0 : 1;
        for (Int m = m0; hf + m * dh * hc <= cap; ++m)
            out.push_back(ExtendedRootIndex::real(
                ord.find_real_index(AffineRoot{f, m})));
    }
    for (Int m = 1; m * hc <= cap; ++m)
        for (std::size_t a = 0; a < rd.finite_nodes.size(); ++a)
            out.push_back(ExtendedRootIndex::imag(m, a));
    std::sort(out.begin(), out.end());
    return out;
}

// Number of PBW monomials over `gens` of exactly the given degree. Requires
// every generator energy >= 1, so the search is bounded by the energy.
inline Int graded_dimension(const ConvexOrder& ord,
                            const std::vector<ExtendedRootIndex>& gens,
                            const MultiDegree& degree) {
    std::vector<GeneratorInfo> gi;
    for (const auto& g : gens) {
        gi.push_back(make_generator(ord, g));
        if (gi.back().degree.energy < 1)
            throw validation_error("graded_dimension: generator of nonpositive energy");
    }
    std::function<Int(std::size_t, MultiDegree)> rec =
        [&](std::size_t i, MultiDegree rem) -> Int {
        if (rem.energy < 0) return 0;
        if (i == gi.size())
            return (rem.energy == 0 &&
                    std::all_of(rem.weight.begin(), rem.weight.end(),
                                [](Int x) { return x == 0; }))
                       ? 1
                       : 0;
        Int total = 0;
        MultiDegree cur = rem;
        for (Int k = 0; k * gi[i].degree.energy <= rem.energy; ++k) {
            total += rec(i + 1, cur);
            cur = cur - gi[i].degree;
        }
        return total;
    };
    return rec(0, degree);
}

// Exponent vectors over `gens` (energies >= 1) with total energy <= cap.
inline std::vector<std::vector<Int>> monomials_with_energy_le(
    const std::vector<GeneratorInfo>& gens, Int cap) {
    for (const auto& g : gens)
        if (g.degree.energy < 1)
            throw validation_error("monomials_with_energy_le: nonpositive energy");
    std::vector<std::vector<Int>> out;
    std::vector<Int> cur(gens.size(), 0);
    std::function<void(std::size_t, Int)> rec = [&](std::size_t i, Int rem) {
        if (i == gens.size()) {
            out.push_back(cur);
            return;
        }
        for (Int k = 0; k * gens[i].degree.energy <= rem; ++k) {
            cur[i] = k;
            rec(i + 1, rem - k * gens[i].degree.energy);
        }
        cur[i] = 0;
    };
    rec(0, cap);
    return out;
}

// Exponent vectors over `gens` (energies >= 1) of exactly the given degree.
inline std::vector<std::vector<Int>> monomials_of_degree(
    const std::vector<GeneratorInfo>& gens, const MultiDegree& degree) {
    std::vector<std::vector<Int>> out;
    if (degree.energy < 0) return out;
    std::vector<Int> cur(gens.size(), 0);
    std::function<void(std::size_t, MultiDegree)> rec = [&](std::size_t i,
                                                            MultiDegree rem) {
        if (rem.energy < 0) return;
        if (i == gens.size()) {
            if (rem.energy == 0 &&
                std::all_of(rem.weight.begin(), rem.weight.end(),
                            [](Int x) { return x == 0; }))
                out.push_back(cur);
            return;
        }
        MultiDegree r = rem;
        for (Int k = 0; k * gens[i].degree.energy <= rem.energy; ++k) {
            cur[i] = k;
            rec(i + 1, r);
            r = r - gens[i].degree;
        }
        cur[i] = 0;
    };
    rec(0, degree);
    return out;
}

// Dimension of the semi-infinite PBW span at an exact degree: E-side over the
// minus-side window indices as-is, F-side over negated plus-side degrees.
inline Int semiinf_pbw_dimension(const ConvexOrder& ord, const ConvexWindow& window,
                                 const MultiDegree& degree) {
    auto [minus, plus] = ord.semiinf_pbw_index(window);
    std::vector<GeneratorInfo> real_gens;
    std::vector<Int> imag_energies;
    for (const auto& idx : minus) {
        GeneratorInfo g = make_generator(ord, idx);
        if (idx.imaginary)
            throw internal_error("semiinf_pbw_dimension: imaginary minus-side index");
        real_gens.push_back(g);
    }
    for (const auto& idx : plus) {
        GeneratorInfo g = make_generator(ord, idx);
        g.degree.energy = -g.degree.energy;
        for (auto& x : g.degree.weight) x = -x;
        if (idx.imaginary) imag_energies.push_back(g.degree.energy);
        else real_gens.push_back(g);
    }
    auto hgt = [](const Vec& v) {
        Int h = 0;
        for (Int x : v) h += x;
        return h;
    };
    for (const auto& g : real_gens)
        if (hgt(g.degree.weight) >= 0)
            throw internal_error("semiinf_pbw_dimension: real generator of nonnegative height");
    // Real exponents are bounded by the weight height; imaginary F-side
    // generators then absorb the residual (nonpositive) energy exactly.
    std::function<Int(Int)> imag_count = [&](Int rem) -> Int {
        std::function<Int(std::size_t, Int)> rec = [&](std::size_t i, Int r) -> Int {
            if (r > 0) return 0;
            if (i == imag_energies.size()) return r == 0 ? 1 : 0;
            Int total = 0;
            for (Int k = 0; k * imag_energies[i] >= r; ++k)
                total += rec(i + 1, r - k * imag_energies[i]);
            return total;
        };
        return rec(0, rem);
    };
    std::function<Int(std::size_t, MultiDegree)> rec = [&](std::size_t i,
                                                           MultiDegree rem) -> Int {
        if (i == real_gens.size()) {
            if (!std::all_of(rem.weight.begin(), rem.weight.end(),
                             [](Int x) { return x == 0; }))
                return 0;
            return imag_count(rem.energy);
        }
        Int hr = hgt(rem.weight);
        Int hg = hgt(real_gens[i].degree.weight); // < 0
        Int kmax = hr <= 0 ? hr / hg : 0;
        Int total = 0;
        MultiDegree r = rem;
        for (Int k = 0; k <= kmax; ++k) {
            total += rec(i + 1, r);
            r = r - real_gens[i].degree;
        }
        return total;
    };
    return rec(0, degree);
}

// Spot-check that products of minus-side generators stay in the minus-side
// monomial span (support classification is preserved by straightening).
inline bool semiinf_closure_check(const ConvexOrder& ord, const ConvexWindow& window) {
    auto [minus, plus] = ord.semiinf_pbw_index(window);
    (void)plus;
    for (const auto& a : minus)
        for (const auto& b : minus) {
            GradedElement p = straighten_product(GradedElement::generator(ord, a),
                                                 GradedElement::generator(ord, b));
            for (const auto& [m, c] : p.terms()) {
                (void)c;
                for (const auto& [idx, e] : m.factors) {
                    (void)e;
                    if (ord.semiinf_plus(idx)) return false;
                }
            }
        }
    return true;
}

/// q-twisted exterior algebra on the dual window generators; elements are
/// Laurent combinations of strictly increasing index subsets.
class ExteriorAlgebra {
public:
    using Elem = std::map<std::vector<std::size_t>, LaurentScalar>;

    ExteriorAlgebra(const ConvexOrder& ord, std::vector<ExtendedRootIndex> gens)
        : order_(&ord) {
        for (const auto& g : gens) gens_.push_back(make_generator(ord, g));
        cexp_.assign(gens_.size(), std::vector<Int>(gens_.size(), 0));
        for (std::size_t i = 0; i < gens_.size(); ++i)
            for (std::size_t j = 0; j < gens_.size(); ++j)
                cexp_[i][j] = pairing_exponent(ord, gens_[i].idx, gens_[j].idx);
    }

    std::size_t ell() const { return gens_.size(); }
    const std::vector<GeneratorInfo>& generators() const { return gens_; }
    Int cexp(std::size_t i, std::size_t j) const { return cexp_[i][j]; }

    Elem one() const { return {{{}, LaurentScalar::one()}}; }
    Elem basis(std::vector<std::size_t> subset) const {
        return {{std::move(subset), LaurentScalar::one()}};
    }

    // xi_S * xi_T in the plain anticommutative algebra Lambda_q: zero on
    // overlap, sign (-1)^{inversions between S and T}. (The q-twist enters
    // only through the Koszul differential, not these relations.)
    Elem mul(const Elem& x, const Elem& y) const {
        Elem r;
        for (const auto& [s, cs] : x)
            for (const auto& [t, ct] : y) {
                bool overlap = false;
                for (auto a : s)
                    if (std::binary_search(t.begin(), t.end(), a)) { overlap = true; break; }
                if (overlap) continue;
                long sign = 1;
                for (auto a : s)
                    for (auto b : t)
                        if (a > b) sign = -sign;
                std::vector<std::size_t> u;
                std::merge(s.begin(), s.end(), t.begin(), t.end(), std::back_inserter(u));
                LaurentScalar& slot = r[u];
                slot += cs * ct * LaurentScalar::monomial(sign, 0);
                if (slot.is_zero()) r.erase(u);
            }
        return r;
    }

    // Top-degree coefficient of x ^ y.
    LaurentScalar frobenius_pairing(const Elem& x, const Elem& y) const {
        Elem p = mul(x, y);
        std::vector<std::size_t> top(ell());
        for (std::size_t i = 0; i < ell(); ++i) top[i] = i;
        auto it = p.find(top);
        return it == p.end() ? LaurentScalar::zero() : it->second;
    }

private:
    const ConvexOrder* order_;
    std::vector<GeneratorInfo> gens_;
    std::vector<std::vector<Int>> cexp_;
};

struct QuadraticDualReport {
    std::vector<ExtendedRootIndex> generators;
    std::vector<std::vector<Int>> cexp;   // straightening exponents c_ij
    std::size_t dim_relations = 0;        // dim J
    std::size_t dim_dual_relations = 0;   // dim J^perp
    bool matches_plain_exterior = false;  // dual == untwisted exterior algebra
    std::vector<std::size_t> dual_dims;   // dims of A^! by degree
};

// Quadratic dual of the window subalgebra A: J is spanned by the
// q-commutators E_j E_i - v^{c_ij} E_i E_j (i < j); J^perp is spanned by all
// e*_aa together with e*_ij + v^{c_ij} e*_ji, presenting the q-twisted
// exterior algebra. Diagonal generator rescaling scales both terms of each
// dual relation equally, so the dual equals the untwisted exterior algebra
// exactly when every c_ij vanishes; the report records the verdict.
inline QuadraticDualReport quadratic_dual(const ConvexOrder& ord,
                                          const std::vector<ExtendedRootIndex>& gens) {
    QuadraticDualReport rep;
    rep.generators = gens;
    const std::size_t n = gens.size();
    rep.cexp.assign(n, std::vector<Int>(n, 0));
    bool plain = true;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            rep.cexp[i][j] = pairing_exponent(ord, gens[i], gens[j]);
            if (i < j && rep.cexp[i][j] != 0) plain = false;
        }
    rep.dim_relations = n * (n - 1) / 2;
    rep.dim_dual_relations = n * n - rep.dim_relations;
    rep.matches_plain_exterior = plain;
    // dim A^!_j = C(n, j).
    std::vector<std::size_t> dims(n + 1, 0);
    dims[0] = 1;
    for (std::size_t j = 1; j <= n; ++j)
        dims[j] = dims[j - 1] * (n - j + 1) / j;
    rep.dual_dims = dims;
    return rep;
}

struct KoszulReport {
    std::vector<std::pair<std::uint64_t, std::uint64_t>> specializations; // (p, v)
    std::map<MultiDegree, std::vector<std::size_t>> homology; // ranks by hom. degree
    bool stable = true;
    Int energy_cap = 0;
    std::uint64_t seed = 0;
};

namespace detail {

inline const std::vector<std::uint64_t>& koszul_primes() {
    static const std::vector<std::uint64_t> ps = {2147483647ULL, 2147483629ULL,
                                                  2147483587ULL, 2147483579ULL};
    return ps;
}

struct SymbolicComplex {
    // Per multidegree, per homological degree: basis size and the boundary
    // matrix d_n : K_n -> K_{n-1} (rows = K_{n-1} basis, cols = K_n basis).
    struct Slice {
        std::vector<std::size_t> dims; // by homological degree 0..ell
        std::vector<std::vector<std::vector<LaurentScalar>>> boundary; // [n][row][col]
    };
    std::map<MultiDegree, Slice> slices;
    std::size_t ell = 0;
};

inline std::map<MultiDegree, std::vector<std::size_t>> specialized_homology(
    const SymbolicComplex& cx, const PrimeField& field, std::uint64_t vval) {
    std::map<MultiDegree, std::vector<std::size_t>> out;
    for (const auto& [tau, slice] : cx.slices) {
        std::vector<std::size_t> ranks(slice.dims.size(), 0);
        std::vector<std::vector<std::vector<std::uint64_t>>> mats(slice.dims.size());
        for (std::size_t n = 1; n < slice.dims.size(); ++n) {
            if (slice.dims[n] == 0 || slice.dims[n - 1] == 0) continue;
            std::vector<std::vector<std::uint64_t>> m(
                slice.dims[n - 1], std::vector<std::uint64_t>(slice.dims[n], 0));
            for (std::size_t r = 0; r < slice.dims[n - 1]; ++r)
                for (std::size_t c = 0; c < slice.dims[n]; ++c)
                    m[r][c] = field.eval(slice.boundary[n][r][c], vval);
            mats[n] = m;
            ranks[n] = field.rank(std::move(m));
        }
        // d_{n} o d_{n+1} must vanish mod p for every specialization.
        for (std::size_t n = 1; n + 1 < slice.dims.size(); ++n) {
            if (mats[n].empty() || mats[n + 1].empty()) continue;
            for (std::size_t r = 0; r < slice.dims[n - 1]; ++r)
                for (std::size_t c = 0; c < slice.dims[n + 1]; ++c) {
                    std::uint64_t acc = 0;
                    for (std::size_t k = 0; k < slice.dims[n]; ++k)
                        acc = field.add(acc, field.mul(mats[n][r][k], mats[n + 1][k][c]));
                    if (acc != 0)
                        throw internal_error("koszul: differential does not square to zero");
                }
        }
        std::vector<std::size_t> hom(slice.dims.size(), 0);
        for (std::size_t n = 0; n < slice.dims.size(); ++n) {
            std::size_t rin = n + 1 < slice.dims.size() ? ranks[n + 1] : 0;
            hom[n] = slice.dims[n] - ranks[n] - rin;
        }
        out[tau] = hom;
    }
    return out;
}

inline void run_specializations(const SymbolicComplex& cx, std::uint64_t seed,
                                KoszulReport& rep) {
    std::mt19937_64 rng(seed);
    const auto& primes = koszul_primes();
    std::vector<std::map<MultiDegree, std::vector<std::size_t>>> tables;
    for (int draw = 0; draw < 4; ++draw) {
        std::uint64_t p = primes[static_cast<std::size_t>(draw) % primes.size()];
        std::uint64_t v = 2 + rng() % (p - 3);
        rep.specializations.emplace_back(p, v);
        tables.push_back(specialized_homology(cx, PrimeField(p), v));
        for (std::size_t t = 0; t + 1 < tables.size(); ++t)
            if (tables[t] == tables.back()) {
                rep.homology = tables.back();
                rep.stable = true;
                return;
            }
    }
    rep.stable = false;
    rep.homology = tables.back();
}

} // namespace detail

// Koszul complex K_* = A (x) (A^!)^* of the window subalgebra on `gens`,
// with differential right-multiplication (x) left-contraction by the
// canonical element; slice-complete for every multidegree of energy <= cap.
// Homology ranks are computed over >= 2 modular specializations of v.
inline KoszulReport koszul_homology(const ConvexOrder& ord,
                                    const std::vector<ExtendedRootIndex>& gens,
                                    Int energy_cap, std::uint64_t seed,
                                    bool flip_orientation = false) {
    if (gens.size() > 20)
        throw budget_error("koszul_homology: too many window generators");
    std::vector<GeneratorInfo> gi;
    for (const auto& g : gens) gi.push_back(make_generator(ord, g));
    std::vector<std::vector<Int>> cexp(gi.size(), std::vector<Int>(gi.size(), 0));
    for (std::size_t i = 0; i < gi.size(); ++i)
        for (std::size_t j = 0; j < gi.size(); ++j)
            cexp[i][j] = pairing_exponent(ord, gi[i].idx, gi[j].idx);
    auto monos = monomials_with_energy_le(gi, energy_cap);
    std::map<std::vector<Int>, std::size_t> mono_id;
    for (std::size_t t = 0; t < monos.size(); ++t) mono_id[monos[t]] = t;

    const std::size_t n = gi.size();
    auto degree_of = [&](const std::vector<Int>& a, std::uint32_t mask) {
        MultiDegree d{Vec(gi.empty() ? 0 : gi[0].degree.weight.size(), 0), 0};
        for (std::size_t i = 0; i < n; ++i) {
            for (Int t = 0; t < a[i]; ++t) d = d + gi[i].degree;
            if (mask & (1u << i)) d = d + gi[i].degree;
        }
        return d;
    };

    // Bucket basis elements (monomial, subset) by multidegree and |subset|.
    struct Basis {
        std::vector<std::vector<std::pair<std::size_t, std::uint32_t>>> by_n;
        std::vector<std::map<std::pair<std::size_t, std::uint32_t>, std::size_t>> pos;
    };
    std::map<MultiDegree, Basis> buckets;
    for (std::size_t t = 0; t < monos.size(); ++t)
        for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
            MultiDegree tau = degree_of(monos[t], mask);
            if (tau.energy > energy_cap) continue;
            auto& b = buckets[tau];
            if (b.by_n.empty()) {
                b.by_n.resize(n + 1);
                b.pos.resize(n + 1);
            }
            std::size_t hn = static_cast<std::size_t>(__builtin_popcount(mask));
            b.pos[hn][{t, mask}] = b.by_n[hn].size();
            b.by_n[hn].push_back({t, mask});
        }

    detail::SymbolicComplex cx;
    cx.ell = n;
    for (auto& [tau, b] : buckets) {
        detail::SymbolicComplex::Slice slice;
        slice.dims.resize(n + 1);
        for (std::size_t hn = 0; hn <= n; ++hn) slice.dims[hn] = b.by_n[hn].size();
        slice.boundary.resize(n + 1);
        for (std::size_t hn = 1; hn <= n; ++hn) {
            slice.boundary[hn].assign(
                slice.dims[hn - 1], std::vector<LaurentScalar>(slice.dims[hn]));
            for (std::size_t col = 0; col < slice.dims[hn]; ++col) {
                auto [t, mask] = b.by_n[hn][col];
                for (std::size_t i = 0; i < n; ++i) {
                    if (!(mask & (1u << i))) continue;
                    std::vector<Int> a2 = monos[t];
                    a2[i] += 1;
                    auto it = mono_id.find(a2);
                    if (it == mono_id.end())
                        throw internal_error("koszul_homology: incomplete monomial slice");
                    Int exp = 0;
                    long sign = 1;
                    if (!flip_orientation) {
                        for (std::size_t j = i + 1; j < n; ++j)
                            exp += monos[t][j] * cexp[i][j];
                        for (std::size_t u = 0; u < i; ++u)
                            if (mask & (1u << u)) {
                                sign = -sign;
                                exp -= cexp[u][i];
                            }
                    } else {
                        for (std::size_t j = 0; j < i; ++j)
                            exp += monos[t][j] * cexp[j][i];
                        for (std::size_t u = i + 1; u < n; ++u)
                            if (mask & (1u << u)) {
                                sign = -sign;
                                exp -= cexp[i][u];
                            }
                    }
                    std::uint32_t m2 = mask & ~(1u << i);
                    std::size_t row = b.pos[hn - 1].at({it->second, m2});
                    slice.boundary[hn][row][col] +=
                        LaurentScalar::monomial(sign, exp);
                }
            }
        }
        cx.slices[tau] = std::move(slice);
    }

    KoszulReport rep;
    rep.energy_cap = energy_cap;
    rep.seed = seed;
    detail::run_specializations(cx, seed, rep);
    return rep;
}

// The complex K (x)_A A^*: basis (subset S, dual monomial b) in homological
// degree |S|, with multidegree deg(S) - deg(b); homology of a Koszul window
// algebra concentrates in the top homological degree. Scanned multidegrees
// are those reachable with dual-monomial energy <= energy_cap; each scanned
// slice is complete by exact-degree enumeration.
inline KoszulReport koszul_cotor(const ConvexOrder& ord,
                                 const std::vector<ExtendedRootIndex>& gens,
                                 Int energy_cap, std::uint64_t seed) {
    if (gens.size() > 20) throw budget_error("koszul_cotor: too many generators");
    std::vector<GeneratorInfo> gi;
    for (const auto& g : gens) gi.push_back(make_generator(ord, g));
    std::vector<std::vector<Int>> cexp(gi.size(), std::vector<Int>(gi.size(), 0));
    for (std::size_t i = 0; i < gi.size(); ++i)
        for (std::size_t j = 0; j < gi.size(); ++j)
            cexp[i][j] = pairing_exponent(ord, gi[i].idx, gi[j].idx);
    const std::size_t n = gi.size();
    auto subset_degree = [&](std::uint32_t mask) {
        MultiDegree d{Vec(gi.empty() ? 0 : gi[0].degree.weight.size(), 0), 0};
        for (std::size_t i = 0; i < n; ++i)
            if (mask & (1u << i)) d = d + gi[i].degree;
        return d;
    };
    std::set<MultiDegree> taus;
    auto scan_monos = monomials_with_energy_le(gi, energy_cap);
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        MultiDegree ds = subset_degree(mask);
        for (const auto& b : scan_monos) {
            MultiDegree db{Vec(ds.weight.size(), 0), 0};
            for (std::size_t i = 0; i < n; ++i)
                for (Int t = 0; t < b[i]; ++t) db = db + gi[i].degree;
            taus.insert(ds - db);
        }
    }
    detail::SymbolicComplex cx;
    cx.ell = n;
    for (const auto& tau : taus) {
        std::vector<std::vector<std::pair<std::uint32_t, std::vector<Int>>>> by_n(n + 1);
        std::vector<std::map<std::pair<std::uint32_t, std::vector<Int>>, std::size_t>>
            pos(n + 1);
        for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
            MultiDegree nu = subset_degree(mask) - tau;
            for (const auto& b : monomials_of_degree(gi, nu)) {
                std::size_t hn = static_cast<std::size_t>(__builtin_popcount(mask));
                pos[hn][{mask, b}] = by_n[hn].size();
                by_n[hn].push_back({mask, b});
            }
        }
        detail::SymbolicComplex::Slice slice;
        slice.dims.resize(n + 1);
        for (std::size_t hn = 0; hn <= n; ++hn) slice.dims[hn] = by_n[hn].size();
        slice.boundary.resize(n + 1);
        for (std::size_t hn = 1; hn <= n; ++hn) {
            slice.boundary[hn].assign(
                slice.dims[hn - 1], std::vector<LaurentScalar>(slice.dims[hn]));
            for (std::size_t col = 0; col < slice.dims[hn]; ++col) {
                const auto& [mask, b] = by_n[hn][col];
                for (std::size_t i = 0; i < n; ++i) {
                    if (!(mask & (1u << i)) || b[i] < 1) continue;
                    std::vector<Int> b2 = b;
                    b2[i] -= 1;
                    Int exp = 0;
                    long sign = 1;
                    // Contraction is dual to left multiplication by the i-th
                    // generator, so the exponent collects straightening past
                    // the generators with smaller keys.
                    for (std::size_t j = 0; j < i; ++j) exp += b2[j] * cexp[j][i];
                    for (std::size_t u = 0; u < i; ++u)
                        if (mask & (1u << u)) {
                            sign = -sign;
                            exp -= cexp[u][i];
                        }
                    std::uint32_t m2 = mask & ~(1u << i);
                    std::size_t row = pos[hn - 1].at({m2, b2});
                    slice.boundary[hn][row][col] += LaurentScalar::monomial(sign, exp);
                }
            }
        }
        cx.slices[tau] = std::move(slice);
    }
    KoszulReport rep;
    rep.energy_cap = energy_cap;
    rep.seed = seed;
    detail::run_specializations(cx, seed, rep);
    return rep;
}

} // namespace affq

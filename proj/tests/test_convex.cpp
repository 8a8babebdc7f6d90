#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <memory>
#include <set>

#include "affq/convex.hpp"
#include "affq/io.hpp"

using namespace affq;

namespace {
ConvexOrder make_order(const char* preset, Vec x) {
    static std::vector<std::unique_ptr<Weyl>> keep;
    keep.push_back(std::make_unique<Weyl>(make_root_datum(preset_datum(preset))));
    return ConvexOrder(*keep.back(), TranslationVector{std::move(x)});
}
} // namespace

TEST_CASE("Beck roots near zero in rank 2") {
    ConvexOrder ord = make_order("A1~", {1});
    REQUIRE(ord.theta_length() == 2);
    // beta_0 = alpha, beta_{-1} = alpha + c, beta_1 = c - alpha, beta_2 = 2c - alpha
    REQUIRE(ord.beck_root(0) == AffineRoot{{1}, 0});
    REQUIRE(ord.beck_root(-1) == AffineRoot{{1}, 1});
    REQUIRE(ord.beck_root(-2) == AffineRoot{{1}, 2});
    REQUIRE(ord.beck_root(1) == AffineRoot{{-1}, 1});
    REQUIRE(ord.beck_root(2) == AffineRoot{{-1}, 2});
}

TEST_CASE("Beck roots are distinct and cover low-height positive reals") {
    for (const char* p : {"A1~", "A2~"}) {
        ConvexOrder ord = p == std::string("A1~") ? make_order(p, {1})
                                                  : make_order(p, {1, 1});
        const Int span = 40;
        std::set<AffineRoot> seen;
        for (Int k = -span; k <= span; ++k) {
            AffineRoot r = ord.beck_root(k);
            REQUIRE_FALSE(r.is_imaginary());
            REQUIRE(seen.insert(r).second); // distinct
            REQUIRE(ord.roots().is_positive(r));
        }
        // every positive real root of height <= 12 appears at exactly one index
        const auto& roots = ord.roots();
        const auto& fin = roots.finite();
        for (const auto& f : fin.all())
            for (Int m = FiniteRoots::is_positive(f) ? 0 : 1;; ++m) {
                AffineRoot r{f, m};
                if (roots.height(r) > 12) break;
                Int k = ord.find_real_index(r);
                REQUIRE(ord.beck_root(k) == r);
            }
    }
}

TEST_CASE("index ordering places the imaginary block between the two real tails") {
    ConvexOrder ord = make_order("A1~", {1});
    auto neg = ExtendedRootIndex::real(0);
    auto negdeep = ExtendedRootIndex::real(-3);
    auto imag = ExtendedRootIndex::imag(2, 0);
    auto pos = ExtendedRootIndex::real(1);
    auto posdeep = ExtendedRootIndex::real(4);
    REQUIRE(ord.compare(neg, imag) < 0);
    REQUIRE(ord.compare(neg, negdeep) < 0); // k <= 0 tail increases as k decreases
    REQUIRE(ord.compare(imag, pos) < 0);
    REQUIRE(ord.compare(pos, posdeep) > 0); // k >= 1 tail is decreasing in k
    REQUIRE(ord.compare(imag, imag) == 0);
}

TEST_CASE("convexity check is clean on wide windows") {
    ConvexOrder a1 = make_order("A1~", {1});
    REQUIRE(a1.convexity_check({-50, 50, 3}).empty());
    ConvexOrder a2 = make_order("A2~", {1, 1});
    REQUIRE(a2.convexity_check({-30, 30, 3}).empty());
    ConvexOrder c2 = make_order("C2~", {2, 3});
    REQUIRE(c2.convexity_check({-10, 10, 2}).empty());
}

TEST_CASE("theta window sign sets") {
    ConvexOrder ord = make_order("A1~", {1});
    auto rep1 = ord.theta_window(1);
    REQUIRE(rep1.lower == std::vector<Int>{-1, 0});
    REQUIRE(rep1.upper == std::vector<Int>{1, 2});
    REQUIRE(rep1.lower_contiguous);
    REQUIRE(rep1.upper_contiguous);
    auto rep2 = ord.theta_window(2);
    REQUIRE(rep2.lower.size() == 4);
    REQUIRE(rep2.upper.size() == 4);
    // windows are nested in m
    for (Int k : rep1.lower) REQUIRE(std::count(rep2.lower.begin(), rep2.lower.end(), k));
    for (Int k : rep1.upper) REQUIRE(std::count(rep2.upper.begin(), rep2.upper.end(), k));
}

TEST_CASE("theta window sizes equal m times the translation length") {
    for (Int m = 1; m <= 3; ++m) {
        ConvexOrder a2 = make_order("A2~", {1, 1});
        auto rep = a2.theta_window(m);
        REQUIRE(static_cast<Int>(rep.lower.size()) == m * a2.theta_length());
        REQUIRE(static_cast<Int>(rep.upper.size()) == m * a2.theta_length());
    }
    ConvexOrder c2 = make_order("C2~", {2, 3});
    auto rep = c2.theta_window(1);
    REQUIRE(static_cast<Int>(rep.lower.size()) == c2.theta_length());
}

TEST_CASE("window generators are the lower sign set in descending order") {
    ConvexOrder ord = make_order("A1~", {1});
    auto gens = ord.theta_window(1).generators();
    REQUIRE(gens.size() == 2);
    REQUIRE(gens[0] == ExtendedRootIndex::real(0));
    REQUIRE(gens[1] == ExtendedRootIndex::real(-1));
}

TEST_CASE("window indices include requested imaginary layers") {
    ConvexOrder ord = make_order("A1~", {1});
    auto idx = ord.window_indices({-2, 2, 2});
    // reals -2..2 plus imaginary (m,node) for m=1,2 with one finite node
    REQUIRE(idx.size() == 5 + 2);
    Int imag = 0;
    for (const auto& i : idx) imag += i.imaginary ? 1 : 0;
    REQUIRE(imag == 2);
    // sorted ascending in the convex order
    for (std::size_t t = 0; t + 1 < idx.size(); ++t)
        REQUIRE(ord.compare(idx[t], idx[t + 1]) < 0);
}

TEST_CASE("semi-infinite index partition") {
    ConvexOrder ord = make_order("A1~", {1});
    auto [minus, plus] = ord.semiinf_pbw_index({-2, 2, 1});
    for (const auto& i : minus) REQUIRE_FALSE(ord.semiinf_plus(i));
    for (const auto& i : plus) REQUIRE(ord.semiinf_plus(i));
    REQUIRE(minus.size() + plus.size() == ord.window_indices({-2, 2, 1}).size());
    // k <= 0 indices have negative finite part in rank 2, so they are minus-side
    for (const auto& i : minus) {
        REQUIRE_FALSE(i.imaginary);
        REQUIRE(i.k >= 1);
    }
}

TEST_CASE("non-dominant x is rejected") {
    auto rd = make_root_datum(preset_datum("A1~"));
    Weyl w(rd);
    REQUIRE_THROWS_AS(ConvexOrder(w, TranslationVector{{0}}), validation_error);
    REQUIRE_THROWS_AS(ConvexOrder(w, TranslationVector{{-2}}), validation_error);
}

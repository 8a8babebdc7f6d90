#include <catch2/catch_amalgamated.hpp>

#include "affq/io.hpp"
#include "affq/weyl.hpp"
#include "oracles.hpp"

using namespace affq;

namespace {
Weyl make(const char* preset) { return Weyl(make_root_datum(preset_datum(preset))); }
} // namespace

TEST_CASE("simple reflections are involutions") {
    for (const char* p : {"A1~", "A2~", "C2~"}) {
        Weyl w = make(p);
        for (std::size_t i = 0; i < w.rank(); ++i) {
            auto s = w.simple_reflection(i);
            REQUIRE(w.is_identity(w.multiply(s, s)));
            REQUIRE(w.length(s) == 1);
        }
    }
}

TEST_CASE("descent peeling agrees with BFS distance") {
    struct Case { const char* preset; Int radius; };
    for (auto [preset, radius] : {Case{"A1~", 10}, Case{"A2~", 6}, Case{"C2~", 6}}) {
        Weyl w = make(preset);
        auto dist = oracle::bfs_lengths(w, radius);
        for (const auto& [mat, d] : dist) {
            auto [len, word] = w.length_and_word(WeylElement{mat, mat, std::nullopt});
            REQUIRE(len == d);
            REQUIRE(w.from_word(word).fwd == mat);
            REQUIRE(static_cast<Int>(word.size()) == d);
        }
    }
}

TEST_CASE("reduced word of the basic translation in rank 2") {
    Weyl w = make("A1~");
    auto theta = w.translation(TranslationVector{{1}});
    auto [len, word] = w.length_and_word(theta);
    REQUIRE(len == 2);
    REQUIRE(word == std::vector<std::size_t>{0, 1});
}

TEST_CASE("word length three round trip") {
    Weyl w = make("A1~");
    auto e = w.from_word({0, 1, 0});
    REQUIRE(w.length(e) == 3);
}

TEST_CASE("translations compose additively and invert") {
    for (const char* p : {"A1~", "A2~", "C2~"}) {
        Weyl w = make(p);
        std::size_t nf = w.root_datum().finite_nodes.size();
        Vec a(nf, 0), b(nf, 0);
        a[0] = 2;
        b[nf - 1] = -1;
        auto ta = w.translation(TranslationVector{a});
        auto tb = w.translation(TranslationVector{b});
        Vec ab = a;
        for (std::size_t t = 0; t < nf; ++t) ab[t] += b[t];
        REQUIRE(w.multiply(ta, tb) == w.translation(TranslationVector{ab}));
        Vec na = a;
        for (auto& x : na) x = -x;
        REQUIRE(w.is_identity(w.multiply(ta, w.translation(TranslationVector{na}))));
    }
}

TEST_CASE("normal form round trip over a length ball") {
    for (const char* p : {"A1~", "A2~"}) {
        Weyl w = make(p);
        for (const auto& e : w.length_ball(5)) {
            auto [z, wbar] = w.normal_form(e);
            // wbar is a product of finite reflections
            for (auto i : w.length_and_word(wbar).second)
                REQUIRE(i != w.root_datum().datum.i0);
            REQUIRE(w.multiply(w.translation(z), wbar) == e);
        }
    }
}

TEST_CASE("Bruhat lifting agrees with the subword oracle") {
    struct Case { const char* preset; Int radius; };
    for (auto [preset, radius] : {Case{"A1~", 6}, Case{"A2~", 4}}) {
        Weyl w = make(preset);
        auto ball = w.length_ball(radius);
        for (const auto& u : ball)
            for (const auto& v : ball)
                REQUIRE(w.bruhat_leq(u, v) == oracle::subword_bruhat_leq(w, u, v));
    }
}

TEST_CASE("Bruhat order basics") {
    Weyl w = make("A2~");
    auto e = w.identity();
    for (const auto& v : w.length_ball(4)) {
        REQUIRE(w.bruhat_leq(e, v));
        REQUIRE(w.bruhat_leq(v, v));
        if (!w.is_identity(v)) REQUIRE_FALSE(w.bruhat_leq(v, e));
    }
}

TEST_CASE("dot action and plain action on weights") {
    Weyl w = make("A1~");
    ExtendedWeight zero{Vec(2, 0)};
    // w . 0 = w(rho) - rho
    auto s1 = w.simple_reflection(1);
    auto r = w.dot_action(s1, zero);
    // s1 . 0 has pairing -2 against node 1: s1(rho) - rho = -alpha_1'
    REQUIRE(r.pairings[1] == -2);
    REQUIRE(w.dot_action(w.identity(), zero) == zero);
}

TEST_CASE("word lift telescopes against the inversion-set sum") {
    for (const char* p : {"A1~", "A2~"}) {
        Weyl w = make(p);
        AffineRoots roots(w);
        ExtendedWeight zero{Vec(w.rank(), 0)};
        for (const auto& e : w.length_ball(6)) {
            Vec total(w.rank(), 0);
            for (const auto& r : roots.inversion_set(e)) {
                Vec y = roots.to_y(r);
                for (std::size_t t = 0; t < y.size(); ++t) total[t] += y[t];
            }
            auto lift = w.word_lift(w.inverse(e), zero);
            REQUIRE(lift.lift == total);
        }
    }
}

namespace {
// Telescoping lift along an explicit reduced word, mirroring the definition.
Weyl::WordLift lift_along(const Weyl& w, const std::vector<std::size_t>& word,
                          const ExtendedWeight& lambda) {
    const auto& rd = w.root_datum();
    Vec mu = lambda.pairings;
    for (auto& x : mu) x += 1;
    Vec lift(w.rank(), 0);
    Int height = 0;
    for (std::size_t j = word.size(); j-- > 0;) {
        std::size_t i = word[j];
        Int cj = mu[i];
        lift[i] += cj;
        height += cj;
        Vec next(w.rank());
        for (std::size_t a = 0; a < w.rank(); ++a) next[a] = mu[a] - cj * rd.cartan[a][i];
        mu = std::move(next);
    }
    return {lift, height};
}
} // namespace

TEST_CASE("word lift is independent of the reduced word") {
    Weyl w = make("A2~");
    ExtendedWeight lam{Vec(3, 1)};
    for (const auto& e : w.length_ball(5)) {
        auto ref = w.word_lift(e, lam);
        for (const auto& word : oracle::all_reduced_words(w, e)) {
            REQUIRE(w.from_word(word) == e);
            auto alt = lift_along(w, word, lam);
            REQUIRE(alt.lift == ref.lift);
            REQUIRE(alt.height == ref.height);
        }
    }
}

TEST_CASE("dominance and level") {
    Weyl w = make("A1~");
    ExtendedWeight lam{{1, 0}};
    REQUIRE(w.dominant(lam));
    REQUIRE(w.level(lam) == 1); // pairing against c with comarks (1,1): 1+0... level uses comarks
    ExtendedWeight bad{{-1, 0}};
    REQUIRE_FALSE(w.dominant(bad));
}

TEST_CASE("strict dominance of translation vectors") {
    Weyl a1 = make("A1~");
    REQUIRE(a1.strictly_dominant(TranslationVector{{1}}));
    REQUIRE_FALSE(a1.strictly_dominant(TranslationVector{{0}}));
    REQUIRE_FALSE(a1.strictly_dominant(TranslationVector{{-1}}));
    Weyl c2 = make("C2~");
    REQUIRE(c2.strictly_dominant(TranslationVector{{2, 3}}));
    REQUIRE_FALSE(c2.strictly_dominant(TranslationVector{{1, 1}}));
}

TEST_CASE("length budget raises budget_error") {
    Weyl w(make_root_datum(preset_datum("A1~")), 3);
    auto theta = w.translation(TranslationVector{{5}}); // length 10 > budget
    REQUIRE_THROWS_AS(w.length(theta), budget_error);
}

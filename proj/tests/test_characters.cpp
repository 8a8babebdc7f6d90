#include <catch2/catch_amalgamated.hpp>

#include <memory>
#include <set>

#include "affq/characters.hpp"
#include "affq/io.hpp"

using namespace affq;

namespace {
struct Ctx {
    std::unique_ptr<Weyl> weyl;
    std::unique_ptr<Characters> ch;
    explicit Ctx(const char* preset) {
        weyl = std::make_unique<Weyl>(make_root_datum(preset_datum(preset)));
        ch = std::make_unique<Characters>(*weyl);
    }
};

Int table_coeff(const std::map<CharKey, Int>& t, Vec offset, Int energy) {
    auto it = t.find(CharKey{std::move(offset), energy});
    return it == t.end() ? 0 : it->second;
}
} // namespace

TEST_CASE("Verma relative table, rank one") {
    Ctx c("A1~");
    auto t = c.ch->verma_relative_table(2);
    REQUIRE(table_coeff(t, {0}, 0) == 1);
    // energy -1 slice: exactly the two real roots of height one, with
    // opposite finite offsets; the imaginary root sits at height two
    REQUIRE(table_coeff(t, {-1}, -1) == 1);
    REQUIRE(table_coeff(t, {1}, -1) == 1);
    REQUIRE(table_coeff(t, {0}, -1) == 0);
    Int dim1 = 0, dim2 = 0;
    for (const auto& [k, v] : t) {
        if (k.t == -1) dim1 += v;
        if (k.t == -2) dim2 += v;
    }
    REQUIRE(dim1 == 2);
    // height-two slice: squares and the cross term of the two height-one
    // letters, plus one imaginary direction
    REQUIRE(dim2 == 4);
    REQUIRE(table_coeff(t, {0}, -2) == 2);
}

TEST_CASE("Verma relative table is independent of depth on shared range") {
    Ctx c("A2~");
    auto a = c.ch->verma_relative_table(2);
    auto b = c.ch->verma_relative_table(4);
    for (const auto& [k, v] : a) {
        REQUIRE(table_coeff(b, k.offset, k.t) == v);
    }
    REQUIRE_THROWS_AS(c.ch->verma_relative_table(-1), validation_error);
}

TEST_CASE("verma_character requires a dominant base weight") {
    Ctx c("A1~");
    REQUIRE_THROWS_AS(c.ch->verma_character(ExtendedWeight{{-1, 0}}, 2),
                      validation_error);
    auto ch = c.ch->verma_character(c.weyl->rho(), 3);
    REQUIRE(ch.base == c.weyl->rho());
    REQUIRE(table_coeff(ch.table, {0}, 0) == 1);
}

TEST_CASE("energy shift of dot-translated weights") {
    Ctx c("A1~");
    auto lambda = c.weyl->rho(); // pairings (1, 1)
    REQUIRE(c.ch->energy_shift(lambda, c.weyl->identity()) == 0);
    // s_i . lambda shifts energy by <lambda + rho, i'> = lambda_i + 1
    for (std::size_t i = 0; i < 2; ++i)
        REQUIRE(c.ch->energy_shift(lambda, c.weyl->simple_reflection(i)) ==
                lambda.pairings[i] + 1);
    // word independence: shift only depends on the group element
    auto w = c.weyl->from_word({0, 1, 0});
    REQUIRE(c.ch->energy_shift(lambda, w) ==
            c.ch->energy_shift(lambda, c.weyl->multiply(
                                           c.weyl->multiply(c.weyl->simple_reflection(0),
                                                            c.weyl->simple_reflection(1)),
                                           c.weyl->simple_reflection(0))));
}

TEST_CASE("euler ball respects the shift-versus-length bound") {
    Ctx c("A1~");
    auto ball = c.ch->euler_ball(c.weyl->rho(), 4);
    REQUIRE(ball.size() >= 1);
    for (const auto& w : ball)
        REQUIRE(c.ch->energy_shift(c.weyl->rho(), w) >= c.weyl->length(w));
}

TEST_CASE("BGG Euler characteristic basics") {
    Ctx c("A1~");
    auto lam = ExtendedWeight{{1, 0}};
    auto ch = c.ch->bgg_euler(lam, 4);
    REQUIRE(table_coeff(ch.table, {0}, 0) == 1);
    // alternating sum keeps every surviving coefficient nonnegative (it is a
    // genuine character on the truncation range)
    for (const auto& [k, v] : ch.table) {
        REQUIRE(k.t <= 0);
        REQUIRE(v >= 0);
    }
    REQUIRE_THROWS_AS(c.ch->bgg_euler(ExtendedWeight{{-1, 0}}, 2), validation_error);
}

TEST_CASE("twisted BGG agrees with BGG at m = 0 and stabilizes for m >= 1") {
    Ctx c("A1~");
    auto lam = ExtendedWeight{{1, 0}};
    TranslationVector x{{1}};
    auto plain = c.ch->bgg_euler(lam, 4);
    auto m0 = c.ch->twisted_bgg_euler(lam, 0, x, 4);
    REQUIRE(m0.table == plain.table);
    auto m1 = c.ch->twisted_bgg_euler(lam, 1, x, 4);
    auto m2 = c.ch->twisted_bgg_euler(lam, 2, x, 4);
    REQUIRE(m1.table == plain.table);
    REQUIRE(m2.table == plain.table);
    REQUIRE_THROWS_AS(c.ch->twisted_bgg_euler(lam, -1, x, 4), validation_error);
}

TEST_CASE("twisted BGG equality holds beyond rank one") {
    Ctx c("C2~");
    auto lam = c.weyl->rho();
    TranslationVector x{{2, 3}};
    auto plain = c.ch->bgg_euler(lam, 3);
    auto m1 = c.ch->twisted_bgg_euler(lam, 1, x, 3);
    REQUIRE(m1.table == plain.table);
}

TEST_CASE("finite-m Tor table for rank one") {
    Ctx c("A1~");
    auto lam = ExtendedWeight{{1, 0}};
    TranslationVector x{{1}};
    auto t = c.ch->tor_table(lam, 1, x, -2, 6);
    REQUIRE(t.tag == "m=1");
    std::map<Int, Int> counts;
    for (const auto& e : t.entries) ++counts[e.n];
    REQUIRE(counts[-2] == 1);
    for (Int n = -1; n <= 6; ++n) REQUIRE(counts[n] == 2);
    // entries are sorted and words are reduced expressions of distinct elements
    std::set<Mat> seen;
    for (std::size_t i = 0; i < t.entries.size(); ++i) {
        if (i > 0) REQUIRE(t.entries[i - 1].n <= t.entries[i].n);
        auto v = c.weyl->from_word(t.entries[i].word);
        REQUIRE(c.weyl->length(v) == static_cast<Int>(t.entries[i].word.size()));
        REQUIRE(seen.insert(v.fwd).second);
        REQUIRE(t.entries[i].weight == c.weyl->dot_action(v, lam));
    }
    // the n = -2 entry is theta^{-1} itself, acting trivially on the grading base
    REQUIRE(t.entries.front().n == -2);
    REQUIRE_THROWS_AS(c.ch->tor_table(lam, 0, x, 0, 1), validation_error);
    REQUIRE_THROWS_AS(c.ch->tor_table(lam, 1, TranslationVector{{0}}, 0, 1),
                      validation_error);
}

TEST_CASE("limit Tor table for rank one") {
    Ctx c("A1~");
    auto lam = ExtendedWeight{{1, 0}};
    auto t = c.ch->tor_limit_table(lam, -5, 5);
    REQUIRE(t.tag == "limit");
    REQUIRE(t.entries.size() == 11);
    std::map<Int, std::vector<std::size_t>> words;
    for (const auto& e : t.entries) {
        REQUIRE(words.emplace(e.n, e.word).second); // exactly one entry per n
        auto v = c.weyl->from_word(e.word);
        REQUIRE(c.ch->roots().semiinf_length(v) == e.n);
    }
    REQUIRE(words.at(0) == std::vector<std::size_t>{});
    REQUIRE(words.at(1) == std::vector<std::size_t>{1});
    REQUIRE(words.at(-1) == std::vector<std::size_t>{0});
    REQUIRE(words.at(2) == std::vector<std::size_t>({0, 1}));
    REQUIRE(words.at(-2) == std::vector<std::size_t>({1, 0}));
    REQUIRE(words.at(3) == std::vector<std::size_t>({1, 0, 1}));
}

TEST_CASE("limit table is an honest budget failure beyond rank one") {
    Ctx a2("A2~");
    REQUIRE_THROWS_AS(a2.ch->tor_limit_table(a2.weyl->rho(), -2, 2), budget_error);
    Ctx c2("C2~");
    REQUIRE_THROWS_AS(c2.ch->tor_limit_table(c2.weyl->rho(), -2, 2), budget_error);
}

TEST_CASE("stabilization report matches the limit grading") {
    Ctx c("A1~");
    auto rep = c.ch->stabilization_report(ExtendedWeight{{1, 0}},
                                          TranslationVector{{1}}, -3, 3);
    REQUIRE(rep.size() == 7);
    for (const auto& e : rep) {
        REQUIRE(e.value == e.n);
        REQUIRE(!e.sequence.empty());
        // the tail of the sequence is constant from m0 onwards
        for (std::size_t i = static_cast<std::size_t>(e.m0); i < e.sequence.size(); ++i)
            REQUIRE(e.sequence[i] == e.value);
    }
}

TEST_CASE("finite subgroup enumeration") {
    REQUIRE(Ctx("A1~").ch->finite_group().size() == 2);
    REQUIRE(Ctx("A2~").ch->finite_group().size() == 6);
    REQUIRE(Ctx("C2~").ch->finite_group().size() == 8);
}

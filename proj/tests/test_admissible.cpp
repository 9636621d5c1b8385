#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "steenrod/admissible.hpp"

using namespace steenrod;

namespace {

AdmissibleElement adm(std::initializer_list<std::pair<Word, int>> ts, const PrimeContext& ctx) {
    AdmissibleElement a;
    for (const auto& [w, c] : ts) {
        a.degree = word_degree(w, ctx.p);
        a.add_term(w, c, ctx);
    }
    return a;
}

}  // namespace

TEST_CASE("change of basis shape and invertibility") {
    PrimeContext c2 = PrimeContext::make(2);
    auto cob1 = change_of_basis(1, c2);
    REQUIRE(cob1->words.size() == 1);
    REQUIRE(cob1->milnor_from_admissible == FpMat::identity(1, 2));
    auto cob7 = change_of_basis(7, c2);
    REQUIRE(cob7->words.size() == 4);
    REQUIRE(cob7->milnor_from_admissible.times(cob7->admissible_from_milnor) ==
            FpMat::identity(4, 2));

    PrimeContext c3 = PrimeContext::make(3);
    auto cob5 = change_of_basis(5, c3);
    REQUIRE(cob5->words.size() == 2);
    REQUIRE(cob5->milnor_from_admissible.times(cob5->admissible_from_milnor) ==
            FpMat::identity(2, 3));
}

TEST_CASE("milnor to admissible pinned conversions") {
    PrimeContext c2 = PrimeContext::make(2);
    // Sq(0,1) = Sq^3 + Sq^2 Sq^1
    Element sq01 = Element::single(MilnorMonomial{BSeq{}, Seq({0, 1})}, 1, 2);
    AdmissibleElement conv = milnor_to_admissible(sq01, c2);
    REQUIRE(conv == adm({{Word::sq({3}), 1}, {Word::sq({2, 1}), 1}}, c2));
    // Sq(n) = Sq^n
    for (int n = 1; n <= 12; ++n) {
        Element sqn = Element::single(MilnorMonomial{BSeq{}, Seq({n})}, 1, 2);
        REQUIRE(milnor_to_admissible(sqn, c2) == adm({{Word::sq({n}), 1}}, c2));
    }
    REQUIRE(milnor_to_admissible(Element{}, c2).is_zero());
    REQUIRE_THROWS_AS(milnor_to_admissible(milnor_sq(1).plus(milnor_sq(2), 2), c2),
                      std::invalid_argument);
}

TEST_CASE("round trip through the admissible basis") {
    for (int p : {2, 3}) {
        PrimeContext ctx = PrimeContext::make(p);
        int bound = ctx.degree_cap;  // every admissible word up to the cap
        for (int n = 0; n <= bound; ++n) {
            auto cob = change_of_basis(n, ctx);
            for (const Word& w : cob->words) {
                AdmissibleElement back = milnor_to_admissible(word_to_milnor(w, ctx), ctx);
                REQUIRE(back == adm({{w, 1}}, ctx));
            }
            for (const auto& m : cob->monomials) {
                Element e = Element::single(m, 1, p);
                REQUIRE(admissible_to_milnor(milnor_to_admissible(e, ctx), ctx) == e);
            }
        }
    }
}

TEST_CASE("rewrite of non-admissible words") {
    PrimeContext c2 = PrimeContext::make(2);
    REQUIRE(rewrite_word(Word::sq({2, 2}), c2) == adm({{Word::sq({3, 1}), 1}}, c2));
    REQUIRE(rewrite_word(Word::sq({1, 1}), c2).is_zero());
    REQUIRE(rewrite_word(Word::sq({5, 2}), c2) == adm({{Word::sq({5, 2}), 1}}, c2));
    // words with adjacent betas evaluate to zero
    PrimeContext c3 = PrimeContext::make(3);
    REQUIRE(rewrite_word(Word::odd({1, 1}, {0}), c3).is_zero());
    for (int i = 1; i <= 3; ++i)
        REQUIRE(rewrite_word(Word::odd({0, 1, 1}, {i, 0}), c3).is_zero());
}

TEST_CASE("rewrite respects the excess bound on random words") {
    for (int p : {2, 3}) {
        PrimeContext ctx = PrimeContext::make(p);
        std::mt19937_64 rng(0xabcdef12);
        int done = 0;
        while (done < 200) {
            int len = 1 + static_cast<int>(rng() % 4);
            std::vector<int> ops(static_cast<size_t>(len));
            for (int& o : ops) o = static_cast<int>(rng() % 8);
            Word w;
            if (p == 2) {
                w = Word::sq(ops);
            } else {
                std::vector<int> eps(static_cast<size_t>(len) + 1);
                for (int& e : eps) e = static_cast<int>(rng() % 2);
                w = Word::odd(eps, ops);
            }
            if (w.is_unit() || is_admissible(w, p)) continue;
            if (word_degree(w, p) > 30) continue;
            ++done;
            long long e = word_excess(w, p);
            AdmissibleElement rw = rewrite_word(w, ctx);
            for (const auto& [term, c] : rw.terms) REQUIRE(word_excess(term, p) >= e);
        }
    }
}

TEST_CASE("element excess pinned values") {
    PrimeContext c2 = PrimeContext::make(2);
    REQUIRE(element_excess(adm({{Word::sq({3, 1}), 1}}, c2), c2) == 2);
    REQUIRE(element_excess(adm({{Word::sq({6}), 1}}, c2), c2) == 6);
    PrimeContext c3 = PrimeContext::make(3);
    REQUIRE(element_excess(adm({{Word::odd({0, 0}, {2}), 1}}, c3), c3) == 4);   // P^2
    REQUIRE(element_excess(adm({{Word::odd({1, 0}, {2}), 1}}, c3), c3) == 5);   // beta P^2
    REQUIRE_THROWS_AS(element_excess(AdmissibleElement{}, c3), std::invalid_argument);
}

TEST_CASE("admissible element rejects non-admissible words") {
    PrimeContext c2 = PrimeContext::make(2);
    AdmissibleElement a;
    REQUIRE_THROWS_AS(a.add_term(Word::sq({1, 1}), 1, c2), std::invalid_argument);
}

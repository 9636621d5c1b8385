#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "steenrod/milnor.hpp"

using namespace steenrod;

namespace {

MilnorMonomial mono(std::vector<int> e, std::vector<int> r) {
    return MilnorMonomial{BSeq(std::move(e)), Seq(std::move(r))};
}

Element sq_of(std::vector<int> r) { return Element::single(mono({}, std::move(r)), 1, 2); }

}  // namespace

TEST_CASE("monomial degree and weight") {
    PrimeContext c2 = PrimeContext::make(2);
    REQUIRE(mono({}, {1, 1}).degree(2) == 4);
    REQUIRE(mono({}, {1, 1}).weight(2) == 2);
    REQUIRE(mono({}, {4}).degree(2) == 4);
    REQUIRE(mono({}, {4}).weight(2) == 4);
    REQUIRE(mono({1}, {}).degree(3) == 1);       // Q_0
    REQUIRE(mono({0, 1}, {}).degree(3) == 5);    // Q_1
    REQUIRE(mono({}, {1}).degree(3) == 4);       // P(1)
    REQUIRE(mono({1}, {1}).weight(3) == 3);
    REQUIRE(MilnorMonomial{}.degree(5) == 0);
}

TEST_CASE("milnor basis enumeration matches dimensions") {
    PrimeContext c2 = PrimeContext::make(2);
    REQUIRE(milnor_basis(0, c2).size() == 1);
    REQUIRE(milnor_basis(1, c2).size() == 1);
    REQUIRE(milnor_basis(4, c2).size() == 2);
    REQUIRE(milnor_basis(7, c2).size() == 4);
    for (int n = 0; n <= 20; ++n)
        for (const auto& m : milnor_basis(n, c2)) REQUIRE(m.degree(2) == n);
}

TEST_CASE("product: pinned small cases") {
    PrimeContext c2 = PrimeContext::make(2);
    REQUIRE(milnor_product(milnor_sq(1), milnor_sq(1), c2).is_zero());
    REQUIRE(milnor_product(milnor_sq(2), milnor_sq(2), c2) == sq_of({1, 1}));
    REQUIRE(milnor_product(milnor_sq(1), milnor_sq(2), c2) == sq_of({3}));
    REQUIRE(milnor_product(milnor_sq(2), milnor_sq(1), c2) ==
            sq_of({3}).plus(sq_of({0, 1}), 2));
    REQUIRE(milnor_product(milnor_unit(), sq_of({2, 1}), c2) == sq_of({2, 1}));
    REQUIRE(milnor_product(sq_of({2, 1}), milnor_unit(), c2) == sq_of({2, 1}));

    PrimeContext c3 = PrimeContext::make(3);
    // P(1) Q_0 = Q_0 P(1) + Q_1
    Element lhs = milnor_product(milnor_P(1), milnor_Q(0), c3);
    Element rhs = Element::single(mono({1}, {1}), 1, 3);
    rhs.add_term(mono({0, 1}, {}), 1, 3);
    REQUIRE(lhs == rhs);
    // beta^2 = 0
    REQUIRE(milnor_product(milnor_Q(0), milnor_Q(0), c3).is_zero());
    // Q_1 Q_0 = -Q_0 Q_1
    Element q1q0 = milnor_product(milnor_Q(1), milnor_Q(0), c3);
    REQUIRE(q1q0 == Element::single(mono({1, 1}, {}), 3 - 1, 3));
}

TEST_CASE("product: graded and unital") {
    for (int p : {2, 3}) {
        PrimeContext ctx = PrimeContext::make(p, 40);
        for (int na = 0; na <= 8; ++na)
            for (int nb = 0; nb <= 8; ++nb)
                for (const auto& a : milnor_basis(na, ctx))
                    for (const auto& b : milnor_basis(nb, ctx)) {
                        Element ab = milnor_product_mono(a, b, ctx);
                        auto d = homogeneous_degree(ab, p);
                        if (d) REQUIRE(*d == na + nb);
                    }
    }
}

TEST_CASE("product: associativity") {
    for (int p : {2, 3}) {
        PrimeContext ctx = PrimeContext::make(p);
        // exhaustive over basis triples of total degree at most 20
        int bound = 20;
        for (int na = 1; na <= bound; ++na)
            for (int nb = 1; na + nb <= bound; ++nb)
                for (int nc = 1; na + nb + nc <= bound; ++nc)
                    for (const auto& a : milnor_basis(na, ctx))
                        for (const auto& b : milnor_basis(nb, ctx))
                            for (const auto& c : milnor_basis(nc, ctx)) {
                                Element ea = Element::single(a, 1, p);
                                Element eb = Element::single(b, 1, p);
                                Element ec = Element::single(c, 1, p);
                                REQUIRE(milnor_product(milnor_product(ea, eb, ctx), ec, ctx) ==
                                        milnor_product(ea, milnor_product(eb, ec, ctx), ctx));
                            }
        // random triples up to the cap
        std::mt19937_64 rng(20240811);
        for (int trial = 0; trial < 500; ++trial) {
            auto pick = [&](int maxdeg) {
                int n = static_cast<int>(rng() % (maxdeg + 1));
                auto basis = milnor_basis(n, ctx);
                if (basis.empty()) return MilnorMonomial{};
                return basis[rng() % basis.size()];
            };
            int third = ctx.degree_cap / 3;
            MilnorMonomial a = pick(third), b = pick(third), c = pick(third);
            Element ea = Element::single(a, 1, p);
            Element eb = Element::single(b, 1, p);
            Element ec = Element::single(c, 1, p);
            REQUIRE(milnor_product(milnor_product(ea, eb, ctx), ec, ctx) ==
                    milnor_product(ea, milnor_product(eb, ec, ctx), ctx));
        }
    }
}

TEST_CASE("coproduct: pinned small cases") {
    PrimeContext c2 = PrimeContext::make(2);
    TensorElement d1 = milnor_coproduct(milnor_sq(1), c2);
    TensorElement expect1;
    expect1.add_term({mono({}, {1}), mono({}, {})}, 1, 2);
    expect1.add_term({mono({}, {}), mono({}, {1})}, 1, 2);
    REQUIRE(d1 == expect1);

    TensorElement d2 = milnor_coproduct(milnor_sq(2), c2);
    TensorElement expect2;
    expect2.add_term({mono({}, {2}), mono({}, {})}, 1, 2);
    expect2.add_term({mono({}, {1}), mono({}, {1})}, 1, 2);
    expect2.add_term({mono({}, {}), mono({}, {2})}, 1, 2);
    REQUIRE(d2 == expect2);

    PrimeContext c3 = PrimeContext::make(3);
    TensorElement dq = milnor_coproduct(milnor_Q(0), c3);
    TensorElement expectq;
    expectq.add_term({mono({1}, {}), mono({}, {})}, 1, 3);
    expectq.add_term({mono({}, {}), mono({1}, {})}, 1, 3);
    REQUIRE(dq == expectq);
}

TEST_CASE("coproduct: coassociativity and counit") {
    for (int p : {2, 3}) {
        PrimeContext ctx = PrimeContext::make(p);
        for (int n = 0; n <= 14; ++n)
            for (const auto& m : milnor_basis(n, ctx)) {
                TensorElement d = milnor_coproduct_mono(m, ctx);
                // counit: the part with unit on either side reproduces m
                Element left_unit, right_unit;
                for (const auto& [t, c] : d.terms()) {
                    if (t.left.is_unit()) left_unit.add_term(t.right, c, p);
                    if (t.right.is_unit()) right_unit.add_term(t.left, c, p);
                }
                Element self = Element::single(m, 1, p);
                REQUIRE(left_unit == self);
                REQUIRE(right_unit == self);
                // coassociativity via triple splittings
                LinearCombo<Tensor3Mono<MilnorMonomial>> lhs, rhs;
                for (const auto& [t, c] : d.terms()) {
                    TensorElement dl = milnor_coproduct_mono(t.left, ctx);
                    for (const auto& [u, cu] : dl.terms())
                        lhs.add_term({u.left, u.right, t.right},
                                     static_cast<long long>(c) * cu, p);
                    TensorElement dr = milnor_coproduct_mono(t.right, ctx);
                    for (const auto& [u, cu] : dr.terms())
                        rhs.add_term({t.left, u.left, u.right},
                                     static_cast<long long>(c) * cu, p);
                }
                REQUIRE(lhs == rhs);
            }
    }
}

TEST_CASE("coproduct is multiplicative (Hopf compatibility)") {
    for (int p : {2, 3}) {
        PrimeContext ctx = PrimeContext::make(p);
        std::mt19937_64 rng(777);
        auto random_mono = [&](int maxdeg) {
            int n = static_cast<int>(rng() % (maxdeg + 1));
            auto basis = milnor_basis(n, ctx);
            if (basis.empty()) return MilnorMonomial{};
            return basis[rng() % basis.size()];
        };
        auto tensor_mult = [&](const TensorElement& x, const TensorElement& y) {
            TensorElement out;
            for (const auto& [tx, cx] : x.terms())
                for (const auto& [ty, cy] : y.terms()) {
                    // Koszul sign: move ty.left past tx.right
                    long long sign = 1;
                    if (p != 2 && tx.right.degree(p) % 2 == 1 && ty.left.degree(p) % 2 == 1)
                        sign = -1;
                    Element lm = milnor_product_mono(tx.left, ty.left, ctx);
                    Element rm = milnor_product_mono(tx.right, ty.right, ctx);
                    for (const auto& [l, cl] : lm.terms())
                        for (const auto& [r, cr] : rm.terms())
                            out.add_term({l, r},
                                         sign * cx * cy % p * cl % p * cr, p);
                }
            return out;
        };
        for (int trial = 0; trial < 200; ++trial) {
            MilnorMonomial a = random_mono(7), b = random_mono(7);
            TensorElement lhs =
                milnor_coproduct(milnor_product_mono(a, b, ctx), ctx);
            TensorElement rhs =
                tensor_mult(milnor_coproduct_mono(a, ctx), milnor_coproduct_mono(b, ctx));
            REQUIRE(lhs == rhs);
        }
    }
}

TEST_CASE("p-th root") {
    PrimeContext c3 = PrimeContext::make(3);
    REQUIRE(pth_root(milnor_P(3), c3) == milnor_P(1));
    REQUIRE(pth_root(Element::single(mono({1, 1}, {}), 1, 3), c3).is_zero());  // Q_0 Q_1, degree 6
    REQUIRE(pth_root(Element::single(mono({}, {1, 2}), 1, 3), c3).is_zero());  // 3 does not divide R
    PrimeContext c2 = PrimeContext::make(2);
    REQUIRE(pth_root(milnor_sq(2), c2) == milnor_sq(1));
    REQUIRE(pth_root(Element::single(mono({}, {2, 2}), 1, 2), c2) ==
            Element::single(mono({}, {1, 1}), 1, 2));
    REQUIRE_THROWS_AS(pth_root(milnor_sq(3), c2), std::invalid_argument);
    Element het = milnor_sq(2).plus(milnor_sq(4), 2);
    REQUIRE_THROWS_AS(pth_root(het, c2), std::invalid_argument);
}

TEST_CASE("element add guards degree mismatch") {
    PrimeContext c2 = PrimeContext::make(2);
    REQUIRE_THROWS_AS(element_add(milnor_sq(1), milnor_sq(2), c2), std::invalid_argument);
    Element a = sq_of({3});
    REQUIRE(element_add(a, Element{}, c2) == a);
    REQUIRE(element_add(a, a, c2).is_zero());  // characteristic 2
    PrimeContext c3 = PrimeContext::make(3);
    Element b = milnor_P(1);
    REQUIRE(element_add(b, element_scale(b, 2, c3), c3).is_zero());
    // (Sq(3) + Sq(0,1)) + Sq(3) = Sq(0,1)
    Element s = sq_of({3}).plus(sq_of({0, 1}), 2);
    REQUIRE(element_add(s, sq_of({3}), c2) == sq_of({0, 1}));
}

TEST_CASE("word evaluation") {
    PrimeContext c2 = PrimeContext::make(2);
    REQUIRE(word_to_milnor(Word::sq({2, 1}), c2) == sq_of({3}).plus(sq_of({0, 1}), 2));
    REQUIRE(word_to_milnor(Word::sq({1}), c2) == milnor_sq(1));
    REQUIRE(word_to_milnor(Word{}, c2) == milnor_unit());
    REQUIRE(word_to_milnor(Word::sq({1, 1}), c2).is_zero());
    PrimeContext c3 = PrimeContext::make(3);
    REQUIRE(word_to_milnor(Word::beta(), c3) == milnor_Q(0));
    REQUIRE(word_to_milnor(Word::odd({1, 1}, {0}), c3).is_zero());  // beta P^0 beta
    REQUIRE_THROWS_AS(word_to_milnor(Word::sq({100}), c2), CapExceeded);
}

TEST_CASE("cap refusal in products") {
    PrimeContext tight = PrimeContext::make(2, 5);
    REQUIRE_THROWS_AS(milnor_product(milnor_sq(3), milnor_sq(3), tight), CapExceeded);
}

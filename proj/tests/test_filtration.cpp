#include <catch2/catch_amalgamated.hpp>
#include <sstream>

#include "steenrod/congruences.hpp"

using namespace steenrod;

TEST_CASE("filtration bases in both presentations") {
    PrimeContext c2 = PrimeContext::make(2);
    // F_2 in degree 4: span{Sq(4), Sq(1,1)}
    auto f = filtration_basis(2, 4, FiltrationKind::milnor, c2);
    REQUIRE(f.dim() == 2);
    auto fa = filtration_basis(2, 4, FiltrationKind::admissible, c2);
    REQUIRE(fa.dim() == 2);
    REQUIRE(subspace_equal(f, fa, c2));
    // i <= 0 gives everything
    REQUIRE(filtration_basis(0, 4, FiltrationKind::milnor, c2).dim() == f.ambient_dim);
    REQUIRE(filtration_basis(-5, 4, FiltrationKind::admissible, c2).dim() == f.ambient_dim);

    // below the top degree the level vanishes
    PrimeContext c3 = PrimeContext::make(3);
    // (F_{2i+eps})^k = 0 for k < 2i(p-1)+eps: level 4 = 2*2, threshold 8
    REQUIRE(filtration_basis(4, 7, FiltrationKind::milnor, c3).dim() == 0);
    REQUIRE(filtration_basis(4, 8, FiltrationKind::milnor, c3).dim() == 1);
}

TEST_CASE("subspace equality guards and behavior") {
    PrimeContext c2 = PrimeContext::make(2);
    auto a = filtration_basis(1, 4, FiltrationKind::milnor, c2);
    auto b = filtration_basis(1, 5, FiltrationKind::milnor, c2);
    REQUIRE_THROWS_AS(subspace_equal(a, b, c2), std::invalid_argument);
    REQUIRE(subspace_equal(a, a, c2));
    auto smaller = filtration_basis(4, 4, FiltrationKind::milnor, c2);
    REQUIRE_FALSE(subspace_equal(a, smaller, c2));
}

TEST_CASE("E-quotients pinned dimensions") {
    PrimeContext c3 = PrimeContext::make(3);
    // one-dimensional top class with representative beta P^2
    EQuotient q = e_quotient(5, 9, c3);
    REQUIRE(q.dim() == 1);
    Element rep = word_to_milnor(word_top_class(1, 2, 3), c3);
    REQUIRE(rep.term_count() == 1);
    REQUIRE(rep.terms().begin()->first == q.basis[0]);
    // vanishing off the congruence classes mod 2p
    for (int i = 0; i <= 6; ++i)
        for (int j = 0; j <= 14; ++j) {
            int r = (i + j) % 6;
            if (r != 0 && r != 2) REQUIRE(e_quotient(i, j, c3).dim() == 0);
        }
    PrimeContext c2 = PrimeContext::make(2);
    REQUIRE(e_quotient(0, 0, c2).dim() == 1);
    REQUIRE(e_quotient(3, 5, c2).dim() == 1);  // Sq(2,1)
}

TEST_CASE("equotient class extraction") {
    PrimeContext c2 = PrimeContext::make(2);
    EQuotient q = e_quotient(3, 5, c2);
    // Sq(4)Sq(1) = Sq(5) + Sq(2,1); the weight-5 part is in F_4 and drops out
    Element prod = milnor_product(milnor_sq(4), milnor_sq(1), c2);
    auto cls = equotient_class(prod, q, c2);
    REQUIRE(cls == std::vector<int>{1});
    Element wrongdeg = milnor_sq(4);
    REQUIRE_THROWS_AS(equotient_class(wrongdeg, q, c2), std::invalid_argument);
    // Sq(5) alone has weight 5 >= 3, class 0 in E_3
    REQUIRE(equotient_class(milnor_sq(5), q, c2) == std::vector<int>{0});
    // Sq(1,...) of lower weight is rejected
    EQuotient q4 = e_quotient(4, 5, c2);
    REQUIRE_THROWS_AS(equotient_class(prod, q4, c2), std::invalid_argument);
}

TEST_CASE("mu_tilde pinned instances") {
    PrimeContext c2 = PrimeContext::make(2);
    // j = 0 is the identity on the top class
    auto mt0 = mu_tilde(2, 0, 0, c2);
    REQUIRE(mt0->mat == FpMat::identity(1, 2));
    // i' = 2, eps = 0, j = 1: (A/F_4)^1 is spanned by Sq(1)
    auto mt = mu_tilde(2, 0, 1, c2);
    REQUIRE(mt->domain.size() == 1);
    REQUIRE(mt->codomain.dim() == 1);
    REQUIRE(mt->mat.at(0, 0) == 1);

    PrimeContext c3 = PrimeContext::make(3);
    auto mt3 = mu_tilde(1, 0, 1, c3);
    REQUIRE(mt3->mat.rows() == mt3->mat.cols());
    REQUIRE(mt3->mat.inverse().has_value());
}

TEST_CASE("gamma pinned instances") {
    PrimeContext c2 = PrimeContext::make(2);
    // p=2, i=1, j=1, eps=0: Sq(2) (x) g_1 -> g_2 (x) pi(Sq(1))
    GammaResult g = gamma_map(1, 1, 0, milnor_sq(2), c2);
    REQUIRE(g.s == 1);
    REQUIRE(g.quotient.size() == 1);
    REQUIRE(g.quotient[0] == MilnorMonomial{BSeq{}, Seq({1})});
    REQUIRE(g.coeffs == std::vector<int>{1});
    // theta = 1 with j = 0 acts as the identity
    GammaResult gid = gamma_map(3, 0, 0, milnor_unit(), c2);
    REQUIRE(gid.coeffs == std::vector<int>{1});

    PrimeContext c3 = PrimeContext::make(3);
    // odd shift from an even level is trivial
    for (const auto& th : milnor_basis(8, c3)) {  // 2jp+2 with j=1, p=3
        GammaResult gz = gamma_map(2, 3, 1, Element::single(th, 1, 3), c3);
        REQUIRE(gz.is_zero());
    }
    REQUIRE_THROWS_AS(gamma_map(1, 1, 0, milnor_sq(5), c2), std::invalid_argument);
}

TEST_CASE("condition families pass on small ranges") {
    for (int p : {2, 3}) {
        PrimeContext ctx = PrimeContext::make(p);
        REQUIRE(verify_e1_e2(ctx, 10).all_ok());
        REQUIRE(verify_e3(ctx, 4, 6).all_ok());
        REQUIRE(verify_e4(ctx, 4, 6).all_ok());
        REQUIRE(verify_e5(ctx, 4, 8).all_ok());
        REQUIRE(verify_span(ctx, 6, 10).all_ok());
        REQUIRE(verify_weight(ctx, 10).all_ok());
        REQUIRE(verify_fil1(ctx, 6, 12).all_ok());
        REQUIRE(verify_fil2(ctx, 50, 12345, 20).all_ok());
        REQUIRE(verify_a5(ctx, 10).all_ok());
    }
}

TEST_CASE("congruence families pass on small ranges") {
    PrimeContext c2 = PrimeContext::make(2);
    REQUIRE(verify_cong1(c2, 12).all_ok());
    REQUIRE(verify_cong22(c2, 12).all_ok());
    REQUIRE(verify_cong32(c2, 12).all_ok());
    REQUIRE(verify_cong42(c2, 10).all_ok());
    REQUIRE(verify_e9(c2, 10).all_ok());

    PrimeContext c3 = PrimeContext::make(3);
    REQUIRE(verify_cong1(c3, 14).all_ok());
    REQUIRE(verify_cong2(c3, 14).all_ok());
    REQUIRE(verify_cong3(c3, 14).all_ok());
    REQUIRE(verify_cong4(c3, 12).all_ok());
    REQUIRE(verify_e9(c3, 12).all_ok());
}

TEST_CASE("report emission") {
    PrimeContext c2 = PrimeContext::make(2);
    Report rep = verify_fil1(c2, 2, 4);
    REQUIRE(rep.all_ok());
    std::ostringstream os;
    emit_jsonl(rep, os);
    REQUIRE(os.str().find("\"family\":\"fil1\"") != std::string::npos);
    REQUIRE(os.str().find("\"status\":\"pass\"") != std::string::npos);
}

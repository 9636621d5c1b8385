#include <catch2/catch_amalgamated.hpp>

#include "steenrod/group_scheme.hpp"

using namespace steenrod;

TEST_CASE("generator degrees and levels") {
    REQUIRE(upoly_gen_degree({2, 1}, 2) == 1);
    REQUIRE(upoly_gen_degree({3, 1}, 2) == 3);
    REQUIRE(upoly_gen_degree({3, 2}, 2) == 2);
    REQUIRE(upoly_gen_degree({2, 1}, 3) == 1);   // 2p^0 - 1
    REQUIRE(upoly_gen_degree({3, 1}, 3) == 5);   // 2p - 1
    REQUIRE(upoly_gen_degree({3, 2}, 3) == 4);   // 2(p - 1)
    REQUIRE(upoly_gen_degree({4, 2}, 3) == 16);  // 2(p^2 - 1)
    REQUIRE(upoly_gen_level({2, 1}, 3) == 1);
    REQUIRE(upoly_gen_level({4, 2}, 3) == 2);
    REQUIRE(upoly_gen_level({4, 3}, 3) == 6);  // 2p
    REQUIRE(upoly_gen_level({3, 2}, 2) == 2);
    REQUIRE(upoly_gen_exterior({3, 1}, 3));
    REQUIRE_FALSE(upoly_gen_exterior({3, 2}, 3));
    REQUIRE_FALSE(upoly_gen_exterior({3, 1}, 2));
    REQUIRE_THROWS_AS(upoly_gen(1, 1, 2), std::invalid_argument);
}

TEST_CASE("unipotent coproduct pinned values") {
    // mu*(x_21) = x_21 (x) 1 + 1 (x) x_21
    UPolyTensor d21 = upoly_coproduct_gen({2, 1}, 2);
    REQUIRE(d21.term_count() == 2);
    // mu*(x_31) = x_31 (x) 1 + x_32 (x) x_21 + 1 (x) x_31
    UPolyTensor d31 = upoly_coproduct_gen({3, 1}, 2);
    REQUIRE(d31.term_count() == 3);
    UPolyMonomial x32, x21;
    x32.exps[{3, 2}] = 1;
    x21.exps[{2, 1}] = 1;
    REQUIRE(d31.coeff({x32, x21}) == 1);
    // mu*(1) = 1 (x) 1
    REQUIRE(upoly_coproduct_mono(UPolyMonomial{}, 3).term_count() == 1);
}

TEST_CASE("unipotent antipode pinned values") {
    // iota*(x_32) = -x_32
    UPolyMonomial x32;
    x32.exps[{3, 2}] = 1;
    REQUIRE(upoly_antipode_gen({3, 2}, 3) == UPolyElement::single(x32, 3 - 1, 3));
    // iota*(x_31) = -x_31 + x_32 x_21
    UPolyElement a31 = upoly_antipode_gen({3, 1}, 3);
    UPolyMonomial x31, x32x21;
    x31.exps[{3, 1}] = 1;
    x32x21.exps[{3, 2}] = 1;
    x32x21.exps[{2, 1}] = 1;
    UPolyElement expect = UPolyElement::single(x31, 3 - 1, 3);
    expect.add_term(x32x21, 1, 3);
    REQUIRE(a31 == expect);
    // iota*(1) = 1
    REQUIRE(upoly_antipode_mono(UPolyMonomial{}, 3) == upoly_unit());
}

TEST_CASE("unipotent product signs") {
    // exterior generators anticommute at odd p
    UPolyMonomial x21, x31;
    x21.exps[{2, 1}] = 1;
    x31.exps[{3, 1}] = 1;
    UPolyElement ab = upoly_product_mono(x21, x31, 3);
    UPolyElement ba = upoly_product_mono(x31, x21, 3);
    REQUIRE(ab == ba.scaled(3 - 1, 3));
    REQUIRE(upoly_product_mono(x21, x21, 3).is_zero());
    // polynomial at p = 2
    UPolyMonomial y21;
    y21.exps[{2, 1}] = 1;
    UPolyElement sq = upoly_product_mono(y21, y21, 2);
    REQUIRE(!sq.is_zero());
    REQUIRE(sq.terms().begin()->first.exps.at({2, 1}) == 2);
}

TEST_CASE("rho on generators and kernel") {
    PrimeContext c2 = PrimeContext::make(2);
    REQUIRE(rho_p_gen({2, 1}, c2) == dual_xi(1));          // zeta_1
    REQUIRE(rho_p_gen({3, 2}, c2) == dual_xi(1, 2));       // zeta_1^2
    REQUIRE(rho_p_gen({4, 2}, c2) == dual_xi(2, 2));       // zeta_2^2
    PrimeContext c3 = PrimeContext::make(3);
    REQUIRE(rho_p_gen({3, 1}, c3) == dual_tau(1).scaled(2, 3));  // -tau_1
    REQUIRE(rho_p_gen({4, 2}, c3) == dual_xi(2));
    REQUIRE(rho_p_gen({4, 3}, c3) == dual_xi(1, 3));       // xi_1^p
    // degree preservation
    for (auto [i, j] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {3, 2}, {4, 2}, {4, 3}}) {
        for (int p : {2, 3}) {
            if (p != 2 || true) {
                PrimeContext ctx = PrimeContext::make(p);
                UPolyGen g{i, j};
                DualElement r = rho_p_gen(g, ctx);
                REQUIRE(r.terms().begin()->first.degree(p) == upoly_gen_degree(g, p));
            }
        }
    }
}

TEST_CASE("scheme verifier families on small ranges") {
    for (int p : {2, 3}) {
        PrimeContext ctx = PrimeContext::make(p);
        REQUIRE(verify_upoly_hopf(ctx, p == 2 ? 10 : 12).all_ok());
        REQUIRE(verify_rho_hopf(ctx, p == 2 ? 10 : 12).all_ok());
        REQUIRE(verify_induced_filt(ctx, 5, p == 2 ? 10 : 12).all_ok());
        REQUIRE(verify_induced_filt2(ctx, 3).all_ok());
        REQUIRE(verify_coaction(ctx, 4).all_ok());
    }
}

TEST_CASE("test ring arithmetic") {
    GradedTestRing ring = default_ring_b(3);  // E(z) (x) F_3[w]/(w^8)
    RingElement z = ring.gen(0), w = ring.gen(1);
    REQUIRE(ring.mul(z, z).is_zero());
    REQUIRE(!ring.mul(w, w).is_zero());
    REQUIRE(ring.pow(w, 8).is_zero());
    REQUIRE(ring.mul(z, w) == ring.mul(w, z));  // z odd, w even: no sign
    REQUIRE(ring.monomials_of_degree(5).size() == 1);  // z w^2
    REQUIRE(ring.monomials_of_degree(4).size() == 1);  // w^2
    REQUIRE(ring.homogeneous_of_degree(ring.mul(z, w), 3));
    GradedTestRing ra = default_ring_a(2);
    REQUIRE(ra.pow(ra.gen(0), 4).is_zero());
    REQUIRE(!ra.pow(ra.gen(0), 3).is_zero());
}

TEST_CASE("theta_n pinned 3x3 example") {
    // p = 2, ring F_2[y]/(y^4): phi(x_21) = y, psi(x_32) = y^2
    PrimeContext c2 = PrimeContext::make(2);
    GradedTestRing ring = default_ring_a(2);
    UnAlgebraMap phi, psi;
    phi.n = psi.n = 3;
    phi.ring = psi.ring = &ring;
    phi.img[{2, 1}] = ring.gen(0);
    psi.img[{3, 2}] = ring.pow(ring.gen(0), 2);
    UnipotentMatrix prod = u_n_product(theta_n(phi, 2), theta_n(psi, 2));
    UnipotentMatrix conv = theta_n(convolve(phi, psi, 2), 2);
    REQUIRE(prod == conv);
    // identity map goes to the identity matrix
    UnAlgebraMap idmap;
    idmap.n = 3;
    idmap.ring = &ring;
    REQUIRE(theta_n(idmap, 2) == UnipotentMatrix::identity(3, ring));
}

TEST_CASE("theta_n families") {
    for (int p : {2, 3}) {
        PrimeContext ctx = PrimeContext::make(p);
        GradedTestRing ra = default_ring_a(p), rb = default_ring_b(p);
        REQUIRE(verify_theta_n(ctx, 3, ra, 25, 42).all_ok());
        REQUIRE(verify_theta_n(ctx, 3, rb, 25, 43).all_ok());
        REQUIRE(verify_theta_n(ctx, 4, rb, 10, 44).all_ok());
    }
}

TEST_CASE("formal series composition basics") {
    PrimeContext c3 = PrimeContext::make(3);
    GradedTestRing ring = appendix_ring(3);
    std::mt19937_64 rng(7);
    DualAlgebraMap f = random_dual_map(ring, 3, c3, rng);
    EpsFormalSeries sf = theta_appendix(f, c3);
    EpsFormalSeries id = EpsFormalSeries::identity(ring, 3);
    REQUIRE(compose_formal(sf, id, 3) == sf);
    REQUIRE(compose_formal(id, sf, 3) == sf);
    // even series composition coefficient: sum a_i (a'_j)^{p^i}
    EpsFormalSeries g = sf, h = sf;
    for (auto& b : g.b) b = RingElement{};
    std::mt19937_64 rng2(8);
    DualAlgebraMap f2 = random_dual_map(ring, 3, c3, rng2);
    h = theta_appendix(f2, c3);
    for (auto& b : h.b) b = RingElement{};
    EpsFormalSeries gh = compose_formal(g, h, 3);
    for (int k = 0; k <= 3; ++k) {
        RingElement expect;
        for (int i = 0; i <= k; ++i) {
            long long pi = 1;
            for (int t = 0; t < i; ++t) pi *= 3;
            expect = expect.plus(
                ring.mul(g.a[static_cast<size_t>(i)],
                         ring.pow(h.a[static_cast<size_t>(k - i)], pi)),
                3);
        }
        REQUIRE(gh.a[static_cast<size_t>(k)] == expect);
        REQUIRE(gh.b[static_cast<size_t>(k)].is_zero());
    }
    EpsFormalSeries bad = sf;
    bad.a[0] = RingElement{};
    REQUIRE_THROWS_AS(compose_formal(bad, sf, 3), std::invalid_argument);
}

TEST_CASE("theta transports convolution to composition") {
    for (int p : {2, 3}) {
        PrimeContext ctx = PrimeContext::make(p);
        ThetaOrder ord = ThetaOrder::unresolved;
        Report rep = verify_theta_formal(ctx, 20, 2024, &ord);
        REQUIRE(rep.all_ok());
        REQUIRE(ord != ThetaOrder::unresolved);
    }
}

#pragma once

#include "steenrod/group_scheme.hpp"
#include "steenrod/serialize.hpp"
#include "steenrod/unstable_checks.hpp"

namespace steenrod {

/// Knobs for the verification families.  Every family is deterministic given
/// the context, the ranges and the seed.
struct VerifyOptions {
    PrimeContext ctx = PrimeContext::make(2);
    int max_degree = 16;
    int max_level = 8;
    int samples = 200;
    unsigned long long seed = 1;
    int module_cap = 14;     // cap D for unstable-module families
    int ses_dim = 2;         // total dim bound of the V sweep
    int ses_top_degree = 4;  // top degree of the V sweep
    std::optional<GradedTestRing> test_ring;
};

/// Basis theorem bookkeeping: counts agree and the change of basis inverts.
inline Report verify_basis(const VerifyOptions& o) {
    Report rep;
    for (int n = 0; n <= o.max_degree; ++n) {
        CheckRecord rec;
        rec.family = "basis";
        rec.p = o.ctx.p;
        rec.indices = {{"n", n}};
        rec.checked = 1;
        try {
            auto cob = change_of_basis(n, o.ctx);
            rec.indices.push_back({"dim", static_cast<long long>(cob->words.size())});
            if (cob->words.size() != cob->monomials.size()) {
                rec.ok = false;
                rec.witness = "count mismatch";
            }
        } catch (const std::logic_error& e) {
            rec.ok = false;
            rec.witness = e.what();
        }
        rep.add(rec);
    }
    return rep;
}

/// Excess bound under rewriting on seeded random non-admissible words.
inline Report verify_excess_bound(const VerifyOptions& o) {
    Report rep;
    CheckRecord rec;
    rec.family = "excess-bound";
    rec.p = o.ctx.p;
    rec.indices = {{"samples", o.samples}, {"max_degree", o.max_degree}};
    std::mt19937_64 rng(o.seed);
    while (rec.checked < o.samples) {
        int len = 1 + static_cast<int>(rng() % 4);
        std::vector<int> ops(static_cast<size_t>(len));
        for (int& x : ops) x = static_cast<int>(rng() % 8);
        Word w;
        if (o.ctx.p == 2) {
            w = Word::sq(ops);
        } else {
            std::vector<int> eps(static_cast<size_t>(len) + 1);
            for (int& e : eps) e = static_cast<int>(rng() % 2);
            w = Word::odd(eps, ops);
        }
        if (w.is_unit() || is_admissible(w, o.ctx.p)) continue;
        if (word_degree(w, o.ctx.p) > o.max_degree) continue;
        ++rec.checked;
        long long e = word_excess(w, o.ctx.p);
        try {
            AdmissibleElement rw = rewrite_word(w, o.ctx);
            for (const auto& [term, c] : rw.terms)
                if (word_excess(term, o.ctx.p) < e) {
                    rec.ok = false;
                    rec.witness = "term below input excess";
                }
        } catch (const std::logic_error& err) {
            rec.ok = false;
            rec.witness = err.what();
        }
    }
    rep.add(rec);
    return rep;
}

/// The free module on one degree-1 class has one-dimensional components
/// exactly where the quotient by the filtration allows.
inline Report verify_free_pattern(const VerifyOptions& o) {
    Report rep;
    CheckRecord rec;
    rec.family = "free-pattern";
    rec.p = o.ctx.p;
    int cap = std::min(o.module_cap, o.ctx.degree_cap);
    rec.indices = {{"cap", cap}};
    UnstableModule f =
        free_unstable(FiniteGradedVectorSpace::concentrated(1, 1), cap, o.ctx);
    for (int n = 0; n <= cap; ++n) {
        ++rec.checked;
        // expected: one basis vector per monomial of degree n-1 and weight <= 1
        int expect = 0;
        if (n >= 1)
            for (const auto& m : milnor_basis_cached(n - 1, o.ctx))
                if (m.weight(o.ctx.p) <= 1) ++expect;
        if (f.dim(n) != expect) {
            rec.ok = false;
            rec.witness = "dimension mismatch in degree " + std::to_string(n);
        }
        if (o.ctx.p == 2) {
            bool inset = n == 1 || (n >= 2 && (n & (n - 1)) == 0);
            if (f.dim(n) != (inset ? 1 : 0)) {
                rec.ok = false;
                rec.witness = "power-of-two pattern failed in degree " + std::to_string(n);
            }
        }
    }
    rep.add(rec);
    return rep;
}

/// Unstable-module families built over the small V sweep.
inline Report verify_ses_family(const VerifyOptions& o) {
    Report rep;
    for (const auto& v : small_spaces(o.ses_dim, o.ses_top_degree))
        rep.merge(verify_ses(v, o.module_cap, o.ctx));
    return rep;
}

inline Report verify_um_family(const VerifyOptions& o) {
    Report rep;
    int cap = o.module_cap;
    FiniteGradedVectorSpace v1 = FiniteGradedVectorSpace::concentrated(1, 1);
    FiniteGradedVectorSpace v2;
    v2.dims[2] = 1;
    v2.dims[3] = 1;
    UnstableModule f1 = free_unstable(v1, cap, o.ctx);
    UnstableModule f2 = free_unstable(v2, cap, o.ctx);
    rep.merge(verify_um(f1, "free(S1)"));
    rep.merge(verify_um(f2, "free(S2+S3)"));
    rep.merge(verify_um(phi(f1), "phi(free(S1))"));
    rep.merge(verify_um(omega(f2), "omega(free)"));
    rep.merge(verify_um(omega1(f2), "omega1(free)"));
    rep.merge(verify_um(tensor_unstable(f1, f1), "tensor"));
    return rep;
}

inline Report verify_suspension_family(const VerifyOptions& o) {
    Report rep;
    FiniteGradedVectorSpace v;
    v.dims[1] = 1;
    v.dims[2] = 1;
    UnstableModule f = free_unstable(v, o.module_cap, o.ctx);
    rep.merge(verify_suspension_iso(f, "free"));
    rep.merge(verify_suspension_iso(phi(f), "phi(free)"));
    rep.merge(verify_suspension_iso(tensor_unstable(f, f), "tensor"));
    return rep;
}

inline std::vector<std::string> known_families() {
    return {"basis",        "excess-bound", "span",          "weight",       "fil1",
            "fil2",         "e1",           "e2",            "e3",           "e4",
            "e5",           "e9",           "a5",            "cong1",        "cong2",
            "cong22",       "cong3",        "cong32",        "cong4",        "cong42",
            "dual-filt3",   "pairing",      "dual-conditions", "e1-7",       "adjoint",
            "scheme-hopf",  "rho",          "induced-filt",  "induced-filt2", "theta-n",
            "theta-formal", "coaction",     "ses",           "um",           "suspension",
            "triangle",     "phi-exact",    "free-pattern"};
}

inline Report run_family(const std::string& family, const VerifyOptions& o) {
    const PrimeContext& ctx = o.ctx;
    if (family == "basis") return verify_basis(o);
    if (family == "excess-bound") return verify_excess_bound(o);
    if (family == "span") return verify_span(ctx, o.max_level, o.max_degree);
    if (family == "weight") return verify_weight(ctx, o.max_degree);
    if (family == "fil1") return verify_fil1(ctx, o.max_level, o.max_degree);
    if (family == "fil2") return verify_fil2(ctx, o.samples, o.seed, o.max_degree);
    if (family == "e1" || family == "e2") return verify_e1_e2(ctx, o.max_degree);
    if (family == "e3") return verify_e3(ctx, o.max_level, o.max_degree);
    if (family == "e4") return verify_e4(ctx, o.max_level, o.max_degree);
    if (family == "e5") return verify_e5(ctx, o.max_level, o.max_degree);
    if (family == "e9") return verify_e9(ctx, o.max_degree);
    if (family == "a5") return verify_a5(ctx, o.max_degree);
    if (family == "cong1") return verify_cong1(ctx, o.max_degree);
    if (family == "cong2") return verify_cong2(ctx, o.max_degree);
    if (family == "cong22") return verify_cong22(ctx, o.max_degree);
    if (family == "cong3") return verify_cong3(ctx, o.max_degree);
    if (family == "cong32") return verify_cong32(ctx, o.max_degree);
    if (family == "cong4") return verify_cong4(ctx, o.max_degree);
    if (family == "cong42") return verify_cong42(ctx, o.max_degree);
    if (family == "dual-filt3") return verify_dual_filt3(ctx, o.max_level, o.max_degree);
    if (family == "pairing") return verify_pairing(ctx, o.max_degree);
    if (family == "dual-conditions" || family == "e1*" || family == "e2*" || family == "e3*" ||
        family == "e4*" || family == "e5*" || family == "e6*" || family == "e7*") {
        Report all = verify_dual_conditions(ctx, o.max_level, o.max_degree);
        if (family == "dual-conditions") return all;
        Report filtered;
        std::string want = family.substr(0, 2) + "star";
        for (const auto& r : all.records)
            if (r.family == want) filtered.add(r);
        return filtered;
    }
    if (family == "e1-7") return verify_e1_7_crosscheck(ctx, o.max_level, o.max_degree);
    if (family == "adjoint") return verify_adjoint(ctx, o.max_degree);
    if (family == "scheme-hopf") return verify_upoly_hopf(ctx, o.max_degree);
    if (family == "rho") return verify_rho_hopf(ctx, o.max_degree);
    if (family == "induced-filt") return verify_induced_filt(ctx, o.max_level, o.max_degree);
    if (family == "induced-filt2") return verify_induced_filt2(ctx, o.max_level);
    if (family == "theta-n") {
        Report rep;
        GradedTestRing ra = o.test_ring ? *o.test_ring : default_ring_a(ctx.p);
        GradedTestRing rb = o.test_ring ? *o.test_ring : default_ring_b(ctx.p);
        rep.merge(verify_theta_n(ctx, 3, ra, o.samples, o.seed));
        rep.merge(verify_theta_n(ctx, 3, rb, o.samples, o.seed + 1));
        rep.merge(verify_theta_n(ctx, 4, ra, o.samples, o.seed + 2));
        rep.merge(verify_theta_n(ctx, 4, rb, o.samples, o.seed + 3));
        return rep;
    }
    if (family == "theta-formal") return verify_theta_formal(ctx, o.samples, o.seed);
    if (family == "coaction") {
        Report rep;
        for (int n = 1; n <= 5; ++n) rep.merge(verify_coaction(ctx, n));
        return rep;
    }
    if (family == "ses") return verify_ses_family(o);
    if (family == "um") return verify_um_family(o);
    if (family == "suspension") return verify_suspension_family(o);
    if (family == "triangle") {
        Report rep;
        FiniteGradedVectorSpace v;
        v.dims[1] = 1;
        v.dims[3] = 1;
        rep.merge(verify_triangle(v, o.module_cap, ctx));
        return rep;
    }
    if (family == "phi-exact") {
        Report rep;
        FiniteGradedVectorSpace v;
        v.dims[1] = 1;
        v.dims[2] = 1;
        rep.merge(verify_phi_exact(v, o.module_cap, ctx));
        return rep;
    }
    if (family == "free-pattern") return verify_free_pattern(o);
    if (family == "all") {
        Report rep;
        for (const auto& f : known_families()) rep.merge(run_family(f, o));
        return rep;
    }
    throw std::invalid_argument("unknown verify family: " + family);
}

}  // namespace steenrod

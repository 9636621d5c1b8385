#pragma once

#include "steenrod/unstable.hpp"

namespace steenrod {

/// The two instability criteria agree (and hold) on a module.
inline Report verify_um(const UnstableModule& m, const std::string& label) {
    Report rep;
    CheckRecord rec;
    rec.family = "um";
    rec.p = m.ctx.p;
    rec.indices = {{"cap", m.cap}, {"total_dim", m.total_dim()}};
    rec.checked = 1;
    InstabilityReport full = check_unstable(m);
    InstabilityReport top = check_unstable_top(m);
    if (full.unstable != top.unstable) {
        rec.ok = false;
        rec.witness = label + ": criteria disagree";
    } else if (!full.unstable) {
        rec.ok = false;
        rec.witness = label + ": not unstable, e.g. " +
                      (full.witnesses.empty() ? std::string("?") : full.witnesses.front());
    }
    rep.add(rec);
    return rep;
}

/// The suspension short exact sequence 0 -> Phi F(V) -> F(V) -> Sigma F(V[-1]) -> 0,
/// checked degreewise by ranks.
inline Report verify_ses(const FiniteGradedVectorSpace& v, int cap, const PrimeContext& ctx) {
    Report rep;
    UnstableModule f = free_unstable(v, cap, ctx);
    UnstableModule pf = phi(f);
    ModuleMap lam = lambda(pf, f);
    FiniteGradedVectorSpace vdown = v.shifted(-1);
    UnstableModule fdown = free_unstable(vdown, cap - 1, ctx);
    UnstableModule sf = suspension(fdown, 1);

    CheckRecord rec;
    rec.family = "ses";
    rec.p = ctx.p;
    rec.indices = {{"cap", cap}, {"vdim", v.total_dim()}};
    std::string wit;
    if (!is_module_map(lam, &wit)) {
        rec.ok = false;
        rec.witness = "lambda is not a module map: " + wit;
    }
    for (int k = 0; k <= std::min(lam.cap, sf.cap); ++k) {
        ++rec.checked;
        // rho: [mu]_n (x) v -> [mu]_{n-1} (x) v when the weight allows
        FpMat rho(sf.dim(k), f.dim(k), ctx.p);
        auto src = free_basis_at(v, k, ctx);
        auto dst = free_basis_at(vdown, k - 1, ctx);
        for (size_t c = 0; c < src.size(); ++c) {
            if (src[c].mono.weight(ctx.p) > src[c].n - 1) continue;
            for (size_t r = 0; r < dst.size(); ++r)
                if (dst[r].n == src[c].n - 1 && dst[r].vidx == src[c].vidx &&
                    dst[r].mono == src[c].mono) {
                    rho.at(static_cast<int>(r), static_cast<int>(c)) = 1;
                    break;
                }
        }
        int rank_lam = lam.block(k).rank();
        int rank_rho = rho.rank();
        bool inj = rank_lam == pf.dim(k);
        bool surj = rank_rho == sf.dim(k);
        FpMat comp = rho.times(lam.block(k));
        bool zero = true;
        for (int x : comp.data())
            if (x) zero = false;
        bool exact_mid = rank_lam + rank_rho == f.dim(k);
        if (!(inj && surj && zero && exact_mid)) {
            rec.ok = false;
            rec.witness = "exactness fails in degree " + std::to_string(k);
        }
    }
    rep.add(rec);
    return rep;
}

/// The canonical map Sigma M -> Sigma Omega Sigma M is an isomorphism: the
/// evaluation out of Phi Sigma M vanishes, so Omega Sigma M reproduces M on
/// the nose (same dimensions, same tables).
inline Report verify_suspension_iso(const UnstableModule& m, const std::string& label) {
    Report rep;
    CheckRecord rec;
    rec.family = "suspension";
    rec.p = m.ctx.p;
    rec.indices = {{"cap", m.cap}, {"total_dim", m.total_dim()}};
    rec.checked = 1;
    UnstableModule sm = suspension(m, 1);
    UnstableModule osm = omega(sm);
    int cap = std::min(m.cap, osm.cap);
    for (int k = 0; k <= cap; ++k)
        if (m.dim(k) != osm.dim(k)) {
            rec.ok = false;
            rec.witness = label + ": dimension drift in degree " + std::to_string(k);
        }
    if (rec.ok)
        for (int j = 1; j <= cap && rec.ok; ++j)
            for (size_t t = 0; t < milnor_basis_cached(j, m.ctx).size() && rec.ok; ++t)
                for (int n = 0; n + j <= cap; ++n)
                    if (!(m.act_mono(j, static_cast<int>(t), n) ==
                          osm.act_mono(j, static_cast<int>(t), n))) {
                        rec.ok = false;
                        rec.witness = label + ": action drift in degree " + std::to_string(n);
                        break;
                    }
    rep.add(rec);
    return rep;
}

/// Triangle identity of the free/forgetful adjunction on F(V).
inline Report verify_triangle(const FiniteGradedVectorSpace& v, int cap,
                              const PrimeContext& ctx) {
    Report rep;
    CheckRecord rec;
    rec.family = "triangle";
    rec.p = ctx.p;
    rec.indices = {{"cap", cap}, {"vdim", v.total_dim()}};
    UnstableModule f = free_unstable(v, cap, ctx);
    FiniteGradedVectorSpace w;
    for (int n = 0; n <= cap; ++n)
        if (f.dim(n)) w.dims[n] = f.dim(n);
    UnstableModule fw = free_unstable(w, cap, ctx);
    for (int k = 0; k <= cap; ++k) {
        ++rec.checked;
        auto fb = free_basis_at(v, k, ctx);
        auto wb = free_basis_at(w, k, ctx);
        // eta sends the V-basis vector v at degree n to [1]_n (x) v in F(V)^n;
        // its W-index is the position of the unit-monomial entry.
        FpMat feta(fw.dim(k), f.dim(k), ctx.p);
        for (size_t c = 0; c < fb.size(); ++c) {
            int widx = -1;
            auto fbn = free_basis_at(v, fb[c].n, ctx);
            for (size_t t = 0; t < fbn.size(); ++t)
                if (fbn[t].n == fb[c].n && fbn[t].vidx == fb[c].vidx && fbn[t].mono.is_unit())
                    widx = static_cast<int>(t);
            for (size_t r = 0; r < wb.size(); ++r)
                if (wb[r].n == fb[c].n && wb[r].vidx == widx && wb[r].mono == fb[c].mono) {
                    feta.at(static_cast<int>(r), static_cast<int>(c)) = 1;
                    break;
                }
        }
        // counit evaluates [mu]_n (x) w to mu . w in F(V)
        FpMat eps(f.dim(k), fw.dim(k), ctx.p);
        for (size_t c = 0; c < wb.size(); ++c) {
            long long d = wb[c].mono.degree(ctx.p);
            std::vector<int> img;
            if (d == 0) {
                img = f.unit_vector(wb[c].n, wb[c].vidx);
            } else {
                img = f.act(Element::single(wb[c].mono, 1, ctx.p), static_cast<int>(d),
                            wb[c].n, f.unit_vector(wb[c].n, wb[c].vidx));
            }
            for (size_t r = 0; r < img.size(); ++r)
                eps.at(static_cast<int>(r), static_cast<int>(c)) = img[r];
        }
        if (!(eps.times(feta) == FpMat::identity(f.dim(k), ctx.p))) {
            rec.ok = false;
            rec.witness = "triangle identity fails in degree " + std::to_string(k);
        }
    }
    rep.add(rec);
    return rep;
}

/// Phi of a morphism: the slot-wise blocks.
inline ModuleMap phi_map(const ModuleMap& f, const UnstableModule& phi_src,
                         const UnstableModule& phi_dst) {
    const PrimeContext& ctx = f.src->ctx;
    ModuleMap out;
    out.src = &phi_src;
    out.dst = &phi_dst;
    out.cap = std::min(phi_src.cap, phi_dst.cap);
    out.blocks.resize(static_cast<size_t>(out.cap) + 1);
    for (int k = 0; k <= out.cap; ++k) {
        auto s = phi_slot_of_degree(k, ctx.p);
        if (s && *s <= f.cap && phi_src.dim(k) == f.src->dim(*s) &&
            phi_dst.dim(k) == f.dst->dim(*s)) {
            out.blocks[static_cast<size_t>(k)] = f.block(*s);
        } else {
            out.blocks[static_cast<size_t>(k)] =
                FpMat(phi_dst.dim(k), phi_src.dim(k), ctx.p);
        }
    }
    return out;
}

/// Phi preserves the exactness of the suspension sequence.
inline Report verify_phi_exact(const FiniteGradedVectorSpace& v, int cap,
                               const PrimeContext& ctx) {
    Report rep;
    CheckRecord rec;
    rec.family = "phi-exact";
    rec.p = ctx.p;
    rec.indices = {{"cap", cap}, {"vdim", v.total_dim()}};
    UnstableModule f = free_unstable(v, cap, ctx);
    UnstableModule pf = phi(f);
    UnstableModule ppf = phi(pf);
    ModuleMap lam = lambda(pf, f);
    FiniteGradedVectorSpace vdown = v.shifted(-1);
    UnstableModule fdown = free_unstable(vdown, cap - 1, ctx);
    UnstableModule sf = suspension(fdown, 1);
    UnstableModule psf = phi(sf);
    // rho as a ModuleMap
    ModuleMap rho;
    rho.src = &f;
    rho.dst = &sf;
    rho.cap = std::min(f.cap, sf.cap);
    rho.blocks.resize(static_cast<size_t>(rho.cap) + 1);
    for (int k = 0; k <= rho.cap; ++k) {
        FpMat b(sf.dim(k), f.dim(k), ctx.p);
        auto src = free_basis_at(v, k, ctx);
        auto dst = free_basis_at(vdown, k - 1, ctx);
        for (size_t c = 0; c < src.size(); ++c) {
            if (src[c].mono.weight(ctx.p) > src[c].n - 1) continue;
            for (size_t r = 0; r < dst.size(); ++r)
                if (dst[r].n == src[c].n - 1 && dst[r].vidx == src[c].vidx &&
                    dst[r].mono == src[c].mono) {
                    b.at(static_cast<int>(r), static_cast<int>(c)) = 1;
                    break;
                }
        }
        rho.blocks[static_cast<size_t>(k)] = std::move(b);
    }
    ModuleMap plam = phi_map(lam, ppf, pf);
    ModuleMap prho = phi_map(rho, pf, psf);
    for (int k = 0; k <= std::min(plam.cap, prho.cap); ++k) {
        ++rec.checked;
        int rank_l = plam.block(k).rank();
        int rank_r = prho.block(k).rank();
        FpMat comp = prho.block(k).times(plam.block(k));
        bool zero = true;
        for (int x : comp.data())
            if (x) zero = false;
        if (!(rank_l == ppf.dim(k) && rank_r == psf.dim(k) && zero &&
              rank_l + rank_r == pf.dim(k))) {
            rec.ok = false;
            rec.witness = "Phi breaks exactness in degree " + std::to_string(k);
        }
    }
    rep.add(rec);
    return rep;
}

/// All V with total dimension <= dim_bound supported in degrees <= top_degree.
inline std::vector<FiniteGradedVectorSpace> small_spaces(int dim_bound, int top_degree) {
    std::vector<FiniteGradedVectorSpace> out;
    std::vector<int> dims(static_cast<size_t>(top_degree) + 1, 0);
    std::function<void(int, int)> rec = [&](int n, int remaining) {
        if (n > top_degree) {
            FiniteGradedVectorSpace v;
            for (int t = 0; t <= top_degree; ++t)
                if (dims[static_cast<size_t>(t)]) v.dims[t] = dims[static_cast<size_t>(t)];
            out.push_back(std::move(v));
            return;
        }
        for (int d = 0; d <= remaining; ++d) {
            dims[static_cast<size_t>(n)] = d;
            rec(n + 1, remaining - d);
        }
        dims[static_cast<size_t>(n)] = 0;
    };
    rec(0, dim_bound);
    return out;
}

}  // namespace steenrod

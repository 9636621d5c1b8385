#pragma once

#include <set>

#include "steenrod/scheme.hpp"
#include "steenrod/testring.hpp"

namespace steenrod {

/// n x n unipotent matrix over a test ring, entry (i,j) homogeneous of the
/// degree of x_{ij}.
struct UnipotentMatrix {
    int n = 0;
    const GradedTestRing* ring = nullptr;
    std::vector<std::vector<RingElement>> a;  // 1-indexed logically; stored 0-based

    static UnipotentMatrix identity(int n, const GradedTestRing& ring) {
        UnipotentMatrix m;
        m.n = n;
        m.ring = &ring;
        m.a.assign(static_cast<size_t>(n), std::vector<RingElement>(static_cast<size_t>(n)));
        for (int i = 0; i < n; ++i) m.a[static_cast<size_t>(i)][static_cast<size_t>(i)] = ring.unit();
        return m;
    }

    void validate(int p) const {
        for (int i = 1; i <= n; ++i)
            for (int j = 1; j <= n; ++j) {
                const RingElement& e = a[static_cast<size_t>(i) - 1][static_cast<size_t>(j) - 1];
                if (i < j && !e.is_zero())
                    throw std::invalid_argument("unipotent matrix: nonzero above the diagonal");
                if (i == j && !(e == ring->unit()))
                    throw std::invalid_argument("unipotent matrix: diagonal is not 1");
                if (i > j && !e.is_zero() &&
                    !ring->homogeneous_of_degree(e, upoly_gen_degree({i, j}, p)))
                    throw std::invalid_argument("unipotent matrix: entry degree mismatch");
            }
    }

    friend bool operator==(const UnipotentMatrix& x, const UnipotentMatrix& y) {
        return x.n == y.n && x.a == y.a;
    }
};

inline UnipotentMatrix u_n_product(const UnipotentMatrix& x, const UnipotentMatrix& y) {
    if (x.n != y.n || x.ring != y.ring)
        throw std::invalid_argument("u_n_product: incompatible matrices");
    const GradedTestRing& ring = *x.ring;
    UnipotentMatrix out;
    out.n = x.n;
    out.ring = x.ring;
    out.a.assign(static_cast<size_t>(x.n), std::vector<RingElement>(static_cast<size_t>(x.n)));
    for (int i = 0; i < x.n; ++i)
        for (int j = 0; j < x.n; ++j) {
            RingElement s;
            for (int k = 0; k < x.n; ++k)
                s = s.plus(ring.mul(x.a[static_cast<size_t>(i)][static_cast<size_t>(k)],
                                    y.a[static_cast<size_t>(k)][static_cast<size_t>(j)]),
                           ring.prime());
            out.a[static_cast<size_t>(i)][static_cast<size_t>(j)] = std::move(s);
        }
    return out;
}

/// Algebra map A(n) -> R*, stored by generator images (the algebra is free
/// graded-commutative on the x_{ij} with i <= n).
struct UnAlgebraMap {
    int n = 0;
    const GradedTestRing* ring = nullptr;
    std::map<UPolyGen, RingElement> img;

    RingElement eval_mono(const UPolyMonomial& m, int p) const {
        RingElement acc = ring->unit();
        for (const auto& [g, e] : m.exps) {
            if (g.i > n) throw std::invalid_argument("UnAlgebraMap: generator outside A(n)");
            auto it = img.find(g);
            RingElement v = it == img.end() ? RingElement{} : it->second;
            for (int t = 0; t < e; ++t) acc = ring->mul(acc, v);
            if (acc.is_zero()) return acc;
        }
        return acc;
    }

    RingElement eval(const UPolyElement& x, int p) const {
        RingElement out;
        for (const auto& [m, c] : x.terms())
            out = out.plus(eval_mono(m, p).scaled(c, ring->prime()), ring->prime());
        return out;
    }
};

inline std::vector<UPolyGen> un_generators(int n, int p) {
    std::vector<UPolyGen> gens;
    for (int i = 2; i <= n; ++i)
        for (int j = 1; j < i; ++j) gens.push_back({i, j});
    return gens;
}

/// theta_n: the matrix of generator images.
inline UnipotentMatrix theta_n(const UnAlgebraMap& f, int p) {
    UnipotentMatrix m = UnipotentMatrix::identity(f.n, *f.ring);
    for (const auto& g : un_generators(f.n, p)) {
        auto it = f.img.find(g);
        if (it != f.img.end())
            m.a[static_cast<size_t>(g.i) - 1][static_cast<size_t>(g.j) - 1] = it->second;
    }
    m.validate(p);
    return m;
}

/// Convolution of algebra maps through the coproduct of A(n).
inline UnAlgebraMap convolve(const UnAlgebraMap& f, const UnAlgebraMap& g, int p) {
    if (f.n != g.n || f.ring != g.ring) throw std::invalid_argument("convolve: mismatch");
    UnAlgebraMap out;
    out.n = f.n;
    out.ring = f.ring;
    for (const auto& gen : un_generators(f.n, p)) {
        RingElement v;
        for (const auto& [t, c] : upoly_coproduct_gen(gen, p).terms()) {
            RingElement prod = f.ring->mul(f.eval_mono(t.left, p), g.eval_mono(t.right, p));
            v = v.plus(prod.scaled(c, f.ring->prime()), f.ring->prime());
        }
        out.img[gen] = std::move(v);
    }
    return out;
}

/// Composition with the conjugation of A(n): the group inverse.
inline UnAlgebraMap map_antipode(const UnAlgebraMap& f, int p) {
    UnAlgebraMap out;
    out.n = f.n;
    out.ring = f.ring;
    for (const auto& gen : un_generators(f.n, p))
        out.img[gen] = f.eval(upoly_antipode_gen(gen, p), p);
    return out;
}

inline UnAlgebraMap random_un_map(int n, const GradedTestRing& ring, int p,
                                  std::mt19937_64& rng) {
    UnAlgebraMap f;
    f.n = n;
    f.ring = &ring;
    for (const auto& g : un_generators(n, p))
        f.img[g] = ring.random_element(upoly_gen_degree(g, p), rng);
    return f;
}

/// theta_n is a group isomorphism: bijective on all algebra maps into the
/// ring (when the count is small enough to enumerate), a homomorphism for
/// convolution, and antipode goes to the matrix inverse.
inline Report verify_theta_n(const PrimeContext& ctx, int n, const GradedTestRing& ring,
                             int pairs, unsigned long long seed) {
    Report rep;
    const int p = ctx.p;
    std::mt19937_64 rng(seed);
    {
        CheckRecord rec;
        rec.family = "theta-n";
        rec.p = p;
        rec.indices = {{"n", n}, {"part", 0}};  // homomorphism + inverse
        for (int t = 0; t < pairs; ++t) {
            ++rec.checked;
            UnAlgebraMap f = random_un_map(n, ring, p, rng);
            UnAlgebraMap g = random_un_map(n, ring, p, rng);
            UnipotentMatrix lhs = theta_n(convolve(f, g, p), p);
            UnipotentMatrix rhs = u_n_product(theta_n(f, p), theta_n(g, p));
            if (!(lhs == rhs)) {
                rec.ok = false;
                rec.witness = "convolution does not match the matrix product";
            }
            UnipotentMatrix inv = theta_n(map_antipode(f, p), p);
            if (!(u_n_product(theta_n(f, p), inv) == UnipotentMatrix::identity(n, ring))) {
                rec.ok = false;
                rec.witness = "antipode does not give the matrix inverse";
            }
        }
        rep.add(rec);
    }
    {
        CheckRecord rec;
        rec.family = "theta-n";
        rec.p = p;
        rec.indices = {{"n", n}, {"part", 1}};  // bijectivity by enumeration
        auto gens = un_generators(n, p);
        std::vector<std::vector<RingMono>> bases;
        long long count = 1;
        for (const auto& g : gens) {
            bases.push_back(ring.monomials_of_degree(upoly_gen_degree(g, p)));
            for (size_t t = 0; t < bases.back().size(); ++t) count *= p;
            if (count > (1 << 16)) break;
        }
        if (count <= (1 << 16) && bases.size() == gens.size()) {
            std::set<std::vector<std::vector<RingElement>>> images;
            long long total = 0;
            std::vector<int> coefs;
            std::function<void(size_t)> rec2 = [&](size_t gi) {
                if (gi == gens.size()) {
                    UnAlgebraMap f;
                    f.n = n;
                    f.ring = &ring;
                    size_t ci = 0;
                    for (size_t t = 0; t < gens.size(); ++t) {
                        RingElement v;
                        for (const auto& m : bases[t]) v.add_term(m, coefs[ci++], p);
                        f.img[gens[t]] = v;
                    }
                    images.insert(theta_n(f, p).a);
                    ++total;
                    return;
                }
                for (size_t t = 0; t < bases[gi].size(); ++t) coefs.push_back(0);
                std::function<void(size_t, size_t)> assign = [&](size_t off, size_t nvals) {
                    if (nvals == 0) {
                        rec2(gi + 1);
                        return;
                    }
                    for (int c = 0; c < p; ++c) {
                        coefs[off] = c;
                        assign(off + 1, nvals - 1);
                    }
                };
                size_t base = coefs.size() - bases[gi].size();
                assign(base, bases[gi].size());
                coefs.resize(base);
            };
            rec2(0);
            rec.checked = total;
            // injectivity: distinct maps gave distinct matrices; surjectivity
            // onto U_n: the matrix entries range over all of R^{deg x_{ij}}
            if (static_cast<long long>(images.size()) != total) {
                rec.ok = false;
                rec.witness = "theta_n is not injective";
            }
            long long un_size = 1;
            for (const auto& g : gens) {
                size_t dim = ring.monomials_of_degree(upoly_gen_degree(g, p)).size();
                for (size_t t = 0; t < dim; ++t) un_size *= p;
            }
            if (total != un_size) {
                rec.ok = false;
                rec.witness = "cardinality mismatch with U_n(R)";
            }
        }
        rep.add(rec);
    }
    return rep;
}

// ---------------------------------------------------------------------------
// The standard comodules and the coaction check.
// ---------------------------------------------------------------------------

/// phi_n(v_j) = v_j (x) 1 + sum_{i>j} v_i (x) x_{ij}; composing with rho_p
/// reproduces the classical coaction formulas.
inline Report verify_coaction(const PrimeContext& ctx, int n) {
    Report rep;
    const int p = ctx.p;
    CheckRecord rec;
    rec.family = "coaction";
    rec.p = p;
    rec.indices = {{"n", n}};
    auto entry = [&](int i, int j) -> UPolyElement {  // 1-indexed
        if (i == j) return upoly_unit();
        if (i < j) return UPolyElement{};
        return upoly_gen(i, j, p);
    };
    // coassociativity: for all k >= j: sum_i x_{ki} (x) x_{ij} = mu*(x_{kj})
    for (int j = 1; j <= n; ++j)
        for (int k = j; k <= n; ++k) {
            ++rec.checked;
            UPolyTensor lhs;
            for (int i = j; i <= k; ++i) {
                for (const auto& [ml, cl] : entry(k, i).terms())
                    for (const auto& [mr, cr] : entry(i, j).terms())
                        lhs.add_term({ml, mr}, static_cast<long long>(cl) * cr, p);
            }
            UPolyTensor rhs;
            if (k == j) {
                rhs.add_term({UPolyMonomial{}, UPolyMonomial{}}, 1, p);
            } else {
                rhs = upoly_coproduct_gen({k, j}, p);
            }
            if (!(lhs == rhs)) {
                rec.ok = false;
                rec.witness = "coassociativity failed at (" + std::to_string(k) + "," +
                              std::to_string(j) + ")";
            }
        }
    // (id (x) rho_p) phi_n matches the classical coaction columns
    for (int j = 1; j <= n; ++j)
        for (int i = j; i <= n; ++i) {
            ++rec.checked;
            DualElement got = rho_p(entry(i, j), ctx);
            DualElement expect;
            if (p != 2 && j == 1) {
                expect = (i == 1) ? dual_unit() : dual_tau(i - 2).scaled(p - 1, p);
            } else {
                long long e = 1;
                if (p == 2)
                    for (int t = 1; t < j; ++t) e *= 2;
                else
                    for (int t = 2; t < j; ++t) e *= p;
                expect = dual_xi(i - j, static_cast<int>(e));
            }
            if (!(got == expect)) {
                rec.ok = false;
                rec.witness = "coaction mismatch at (" + std::to_string(i) + "," +
                              std::to_string(j) + ")";
            }
        }
    rep.add(rec);
    return rep;
}

// ---------------------------------------------------------------------------
// Additive formal series with an epsilon part, and the representation of the
// dual algebra's affine group by series composition.
// ---------------------------------------------------------------------------

/// f(X) = sum_{i<=N} (a_i + b_i eps) X^{p^i} with eps^2 = 0, a_0 = 1.
struct EpsFormalSeries {
    const GradedTestRing* ring = nullptr;
    std::vector<RingElement> a;  // even coefficients, a[0] must be the unit
    std::vector<RingElement> b;  // eps coefficients

    int order() const { return static_cast<int>(a.size()) - 1; }

    static EpsFormalSeries identity(const GradedTestRing& ring, int order) {
        EpsFormalSeries f;
        f.ring = &ring;
        f.a.assign(static_cast<size_t>(order) + 1, RingElement{});
        f.b.assign(static_cast<size_t>(order) + 1, RingElement{});
        f.a[0] = ring.unit();
        return f;
    }

    bool strict() const { return !a.empty() && a[0] == ring->unit(); }

    friend bool operator==(const EpsFormalSeries& x, const EpsFormalSeries& y) {
        return x.a == y.a && x.b == y.b;
    }
};

/// (f o g)(X), truncated at the common order.  Powers in characteristic p
/// spread additively, so (c + d eps)^{p^i} = c^{p^i} for i >= 1.
inline EpsFormalSeries compose_formal(const EpsFormalSeries& f, const EpsFormalSeries& g,
                                      int p) {
    if (f.ring != g.ring) throw std::invalid_argument("compose_formal: ring mismatch");
    if (!f.strict() || !g.strict())
        throw std::invalid_argument("compose_formal: series must be strict (a_0 = 1)");
    const GradedTestRing& ring = *f.ring;
    int order = std::min(f.order(), g.order());
    EpsFormalSeries h = EpsFormalSeries::identity(ring, order);
    for (int k = 0; k <= order; ++k) {
        RingElement ha, hb;
        for (int i = 0; i <= k; ++i) {
            int j = k - i;
            if (i == 0) {
                // (a_0 + b_0 eps)(c_j + d_j eps) = a_0 c_j + (a_0 d_j + b_0 c_j) eps
                ha = ha.plus(ring.mul(f.a[0], g.a[static_cast<size_t>(j)]), p);
                hb = hb.plus(ring.mul(f.a[0], g.b[static_cast<size_t>(j)]), p);
                hb = hb.plus(ring.mul(f.b[0], g.a[static_cast<size_t>(j)]), p);
            } else {
                long long pi = 1;
                for (int t = 0; t < i; ++t) pi *= p;
                RingElement cpi = ring.pow(g.a[static_cast<size_t>(j)], pi);
                ha = ha.plus(ring.mul(f.a[static_cast<size_t>(i)], cpi), p);
                hb = hb.plus(ring.mul(f.b[static_cast<size_t>(i)], cpi), p);
            }
        }
        h.a[static_cast<size_t>(k)] = std::move(ha);
        h.b[static_cast<size_t>(k)] = std::move(hb);
    }
    return h;
}

/// Compositional inverse g with f o g = X, to the order of f.
inline EpsFormalSeries compose_inverse(const EpsFormalSeries& f, int p) {
    if (!f.strict()) throw std::invalid_argument("compose_inverse: non-strict series");
    const GradedTestRing& ring = *f.ring;
    EpsFormalSeries g = EpsFormalSeries::identity(ring, f.order());
    g.b[0] = f.b[0].scaled(p - 1, p);  // cancel the eps part at X
    for (int k = 1; k <= f.order(); ++k) {
        // coefficient of X^{p^k} in f o g must vanish
        RingElement ha, hb;
        for (int i = 1; i <= k; ++i) {
            int j = k - i;
            long long pi = 1;
            for (int t = 0; t < i; ++t) pi *= p;
            RingElement cpi = ring.pow(g.a[static_cast<size_t>(j)], pi);
            ha = ha.plus(ring.mul(f.a[static_cast<size_t>(i)], cpi), p);
            hb = hb.plus(ring.mul(f.b[static_cast<size_t>(i)], cpi), p);
        }
        // i = 0 contributes a_0 c_k + (a_0 d_k + b_0 c_k) eps = c_k + d_k eps + b_0 c_k eps
        g.a[static_cast<size_t>(k)] = ha.scaled(p - 1, p);
        RingElement dk = hb.plus(ring.mul(f.b[0], g.a[static_cast<size_t>(k)]), p);
        g.b[static_cast<size_t>(k)] = dk.scaled(p - 1, p);
    }
    return g;
}

/// Algebra map from the dual Steenrod algebra to a test ring, stored by
/// generator images (xi_i even, tau_i odd; tau images absent at p = 2).
struct DualAlgebraMap {
    const GradedTestRing* ring = nullptr;
    int order = 3;                     // generators with index <= order
    std::vector<RingElement> xi_img;   // index 1..order
    std::vector<RingElement> tau_img;  // index 0..order (odd p)

    RingElement eval_mono(const DualMonomial& m, const PrimeContext& ctx) const {
        RingElement acc = ring->unit();
        for (int s : m.e.support()) {
            if (s > order) return RingElement{};
            acc = ring->mul(acc, tau_img[static_cast<size_t>(s)]);
            if (acc.is_zero()) return acc;
        }
        for (int t = 1; t <= m.r.size(); ++t) {
            if (m.r.at(t) == 0) continue;
            if (t > order) return RingElement{};
            acc = ring->mul(acc, ring->pow(xi_img[static_cast<size_t>(t) - 1], m.r.at(t)));
            if (acc.is_zero()) return acc;
        }
        return acc;
    }

    RingElement eval(const DualElement& x, const PrimeContext& ctx) const {
        RingElement out;
        for (const auto& [m, c] : x.terms())
            out = out.plus(eval_mono(m, ctx).scaled(c, ring->prime()), ring->prime());
        return out;
    }
};

/// theta(phi) = sum (phi(xi_i) + phi(tau_i) eps) X^{p^i}.
inline EpsFormalSeries theta_appendix(const DualAlgebraMap& phi, const PrimeContext& ctx) {
    EpsFormalSeries f = EpsFormalSeries::identity(*phi.ring, phi.order);
    for (int i = 1; i <= phi.order; ++i) f.a[static_cast<size_t>(i)] = phi.xi_img[static_cast<size_t>(i) - 1];
    if (ctx.p != 2)
        for (int i = 0; i <= phi.order; ++i) f.b[static_cast<size_t>(i)] = phi.tau_img[static_cast<size_t>(i)];
    return f;
}

/// Convolution of algebra maps out of the dual algebra, computed through
/// dual_coproduct on the generators.
inline DualAlgebraMap dual_map_convolve(const DualAlgebraMap& f, const DualAlgebraMap& g,
                                        const PrimeContext& ctx) {
    if (f.ring != g.ring || f.order != g.order)
        throw std::invalid_argument("dual_map_convolve: mismatch");
    const GradedTestRing& ring = *f.ring;
    DualAlgebraMap out;
    out.ring = f.ring;
    out.order = f.order;
    auto conv_gen = [&](const DualMonomial& gen) {
        RingElement v;
        for (const auto& [t, c] : dual_coproduct_mono(gen, ctx).terms()) {
            RingElement prod = ring.mul(f.eval_mono(t.left, ctx), g.eval_mono(t.right, ctx));
            v = v.plus(prod.scaled(c, ring.prime()), ring.prime());
        }
        return v;
    };
    for (int i = 1; i <= f.order; ++i)
        out.xi_img.push_back(conv_gen(dual_xi(i).terms().begin()->first));
    if (ctx.p != 2)
        for (int i = 0; i <= f.order; ++i)
            out.tau_img.push_back(conv_gen(dual_tau(i).terms().begin()->first));
    return out;
}

/// Convolution inverse, solved generator by generator in degree order and
/// verified by the caller.
inline DualAlgebraMap dual_map_inverse(const DualAlgebraMap& f, const PrimeContext& ctx) {
    const GradedTestRing& ring = *f.ring;
    DualAlgebraMap inv;
    inv.ring = f.ring;
    inv.order = f.order;
    inv.xi_img.assign(static_cast<size_t>(f.order), RingElement{});
    if (ctx.p != 2) inv.tau_img.assign(static_cast<size_t>(f.order) + 1, RingElement{});
    auto solve_gen = [&](const DualMonomial& gen, RingElement& slot) {
        // 0 = sum over mu*(gen) of f(left) inv(right); the right = gen term
        // has left = 1, so it isolates the unknown.
        RingElement rest;
        for (const auto& [t, c] : dual_coproduct_mono(gen, ctx).terms()) {
            if (t.right == gen) continue;
            RingElement prod = ring.mul(f.eval_mono(t.left, ctx), inv.eval_mono(t.right, ctx));
            rest = rest.plus(prod.scaled(c, ring.prime()), ring.prime());
        }
        slot = rest.scaled(ctx.p - 1, ctx.p);
    };
    // degree order: tau_0, xi_1, tau_1, xi_2, tau_2, ...
    if (ctx.p != 2) solve_gen(dual_tau(0).terms().begin()->first, inv.tau_img[0]);
    for (int i = 1; i <= f.order; ++i) {
        solve_gen(dual_xi(i).terms().begin()->first, inv.xi_img[static_cast<size_t>(i) - 1]);
        if (ctx.p != 2)
            solve_gen(dual_tau(i).terms().begin()->first, inv.tau_img[static_cast<size_t>(i)]);
    }
    return inv;
}

inline DualAlgebraMap random_dual_map(const GradedTestRing& ring, int order,
                                      const PrimeContext& ctx, std::mt19937_64& rng) {
    DualAlgebraMap f;
    f.ring = &ring;
    f.order = order;
    for (int i = 1; i <= order; ++i) {
        long long d = dual_xi(i).terms().begin()->first.degree(ctx.p);
        f.xi_img.push_back(ring.random_element(d, rng));
    }
    if (ctx.p != 2)
        for (int i = 0; i <= order; ++i) {
            long long d = dual_tau(i).terms().begin()->first.degree(ctx.p);
            f.tau_img.push_back(ring.random_element(d, rng));
        }
    return f;
}

/// Test ring for the series representation: populates the generator degrees
/// of the dual algebra up to index 3.
inline GradedTestRing appendix_ring(int p) {
    if (p == 2) return GradedTestRing(2, "series", {{"y", 1, 1, 16}});
    // xi degrees are multiples of 2p-2; tau degrees are those plus one
    long long pn = 1;
    for (int t = 0; t < 3; ++t) pn *= p;
    int trunc = static_cast<int>((pn - 1) / (p - 1)) + 1;
    return GradedTestRing(p, "series", {{"z", 1, 1, 2}, {"w", 2 * p - 2, 0, trunc + 1}});
}

/// Does theta transport convolution to composition?  Both orders are tried
/// once; the one that holds is reported (see ThetaOrder), then the sampled
/// pairs all use it.  Also checks that the convolution inverse goes to the
/// compositional inverse.
enum class ThetaOrder { left_then_right, right_then_left, unresolved };

inline Report verify_theta_formal(const PrimeContext& ctx, int pairs, unsigned long long seed,
                                  ThetaOrder* resolved = nullptr) {
    Report rep;
    const int p = ctx.p;
    GradedTestRing ring = appendix_ring(p);
    std::mt19937_64 rng(seed);
    int order = 3;  // truncation exponent p^order, reduced if the cap demands
    while (order > 1 &&
           dual_tau(order).terms().begin()->first.degree(p) > ctx.degree_cap)
        --order;

    ThetaOrder ord = ThetaOrder::unresolved;
    {
        DualAlgebraMap f = random_dual_map(ring, order, ctx, rng);
        DualAlgebraMap g = random_dual_map(ring, order, ctx, rng);
        EpsFormalSeries conv = theta_appendix(dual_map_convolve(f, g, ctx), ctx);
        EpsFormalSeries fg = compose_formal(theta_appendix(f, ctx), theta_appendix(g, ctx), p);
        EpsFormalSeries gf = compose_formal(theta_appendix(g, ctx), theta_appendix(f, ctx), p);
        if (conv == gf)
            ord = ThetaOrder::right_then_left;
        else if (conv == fg)
            ord = ThetaOrder::left_then_right;
    }
    if (resolved) *resolved = ord;
    CheckRecord rec;
    rec.family = "theta-formal";
    rec.p = p;
    rec.indices = {{"order_resolved", ord == ThetaOrder::right_then_left ? 1
                                      : ord == ThetaOrder::left_then_right ? 0
                                                                           : -1}};
    if (ord == ThetaOrder::unresolved) {
        rec.ok = false;
        rec.witness = "neither composition order matches the convolution";
        rep.add(rec);
        return rep;
    }
    for (int t = 0; t < pairs; ++t) {
        ++rec.checked;
        DualAlgebraMap f = random_dual_map(ring, order, ctx, rng);
        DualAlgebraMap g = random_dual_map(ring, order, ctx, rng);
        EpsFormalSeries conv = theta_appendix(dual_map_convolve(f, g, ctx), ctx);
        EpsFormalSeries comp =
            ord == ThetaOrder::right_then_left
                ? compose_formal(theta_appendix(g, ctx), theta_appendix(f, ctx), p)
                : compose_formal(theta_appendix(f, ctx), theta_appendix(g, ctx), p);
        if (!(conv == comp)) {
            rec.ok = false;
            rec.witness = "convolution/composition mismatch";
        }
        // inverse transport
        DualAlgebraMap fi = dual_map_inverse(f, ctx);
        // confirm it is a convolution inverse on the generators
        DualAlgebraMap check = dual_map_convolve(f, fi, ctx);
        bool inv_ok = true;
        for (const auto& v : check.xi_img) inv_ok = inv_ok && v.is_zero();
        for (const auto& v : check.tau_img) inv_ok = inv_ok && v.is_zero();
        EpsFormalSeries si = compose_inverse(theta_appendix(f, ctx), p);
        EpsFormalSeries via = theta_appendix(fi, ctx);
        if (!inv_ok || !(via == si)) {
            rec.ok = false;
            rec.witness = "inverse transport failed";
        }
        // identity sanity: f o f^{-1} = X
        EpsFormalSeries idser = EpsFormalSeries::identity(ring, order);
        if (!(compose_formal(theta_appendix(f, ctx), si, p) == idser)) {
            rec.ok = false;
            rec.witness = "compositional inverse is not an inverse";
        }
    }
    rep.add(rec);
    return rep;
}

}  // namespace steenrod

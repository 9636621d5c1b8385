#pragma once

#include "steenrod/congruences.hpp"

namespace steenrod {

/// Finitely supported graded vector space with named basis vectors.
struct FiniteGradedVectorSpace {
    std::map<int, int> dims;

    static FiniteGradedVectorSpace concentrated(int degree, int dim) {
        FiniteGradedVectorSpace v;
        if (dim > 0) v.dims[degree] = dim;
        return v;
    }

    int dim(int n) const {
        auto it = dims.find(n);
        return it == dims.end() ? 0 : it->second;
    }

    int total_dim() const {
        int t = 0;
        for (const auto& [n, d] : dims) t += d;
        return t;
    }

    int min_degree() const { return dims.empty() ? 0 : dims.begin()->first; }

    FiniteGradedVectorSpace shifted(int by) const {
        FiniteGradedVectorSpace v;
        for (const auto& [n, d] : dims) v.dims[n + by] = d;
        return v;
    }

    friend bool operator==(const FiniteGradedVectorSpace&,
                           const FiniteGradedVectorSpace&) = default;
};

/// Cached canonical Milnor basis per (p, degree).
inline const std::vector<MilnorMonomial>& milnor_basis_cached(int n, const PrimeContext& ctx) {
    static std::mutex mu;
    static std::map<std::pair<int, int>, std::unique_ptr<std::vector<MilnorMonomial>>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(ctx.p, n);
    auto it = cache.find(key);
    if (it == cache.end())
        it = cache.emplace(key, std::make_unique<std::vector<MilnorMonomial>>(milnor_basis(n, ctx)))
                 .first;
    return *it->second;
}

inline int milnor_basis_index(const MilnorMonomial& m, int n, const PrimeContext& ctx) {
    const auto& basis = milnor_basis_cached(n, ctx);
    auto it = std::lower_bound(basis.begin(), basis.end(), m);
    if (it == basis.end() || !(*it == m)) return -1;
    return static_cast<int>(it - basis.begin());
}

/// Module presented by degreewise bases up to a cap, with the full table of
/// actions of Milnor basis elements.  The table is closed data: every functor
/// below is a transformation of tables.
struct UnstableModule {
    PrimeContext ctx;
    int cap = 0;
    std::vector<int> dims;                                // degree 0..cap
    std::vector<std::vector<std::string>> names;          // basis names per degree
    // action[j][t]: the t-th Milnor monomial of degree j acting out of each
    // degree n: matrix dims[n+j] x dims[n], indexed action[j][t][n]
    std::vector<std::vector<std::vector<FpMat>>> action;

    int dim(int n) const {
        return (n >= 0 && n <= cap) ? dims[static_cast<size_t>(n)] : 0;
    }

    int total_dim() const {
        int t = 0;
        for (int d : dims) t += d;
        return t;
    }

    const FpMat& act_mono(int j, int t, int n) const {
        return action[static_cast<size_t>(j)][static_cast<size_t>(t)][static_cast<size_t>(n)];
    }

    /// Apply an element of the algebra, homogeneous of degree j (possibly
    /// zero), to a vector in degree n.
    std::vector<int> act(const Element& theta, int j, int n, const std::vector<int>& v) const {
        auto d = homogeneous_degree(theta, ctx.p);
        if (d && *d != j)
            throw std::invalid_argument("UnstableModule::act: element degree mismatch");
        if (!d && !theta.is_zero())
            throw std::invalid_argument("UnstableModule::act: non-homogeneous element");
        if (n < 0 || n > cap || n + j > cap)
            throw std::invalid_argument("UnstableModule::act: degree out of range");
        if (j == 0) {
            std::vector<int> out(static_cast<size_t>(dim(n)), 0);
            for (const auto& [m, c] : theta.terms())
                for (size_t k = 0; k < out.size(); ++k)
                    out[k] = fp_reduce(out[k] + static_cast<long long>(c) * v[k], ctx.p);
            return out;
        }
        std::vector<int> out(static_cast<size_t>(dim(n + j)), 0);
        for (const auto& [m, c] : theta.terms()) {
            int t = milnor_basis_index(m, j, ctx);
            const FpMat& mat = act_mono(j, t, n);
            if (mat.rows() == 0 || mat.cols() == 0) continue;
            std::vector<int> part = mat.times(v);
            for (size_t k = 0; k < out.size(); ++k)
                out[k] = fp_reduce(out[k] + static_cast<long long>(c) * part[k], ctx.p);
        }
        return out;
    }

    std::vector<int> unit_vector(int n, int idx) const {
        std::vector<int> v(static_cast<size_t>(dim(n)), 0);
        v[static_cast<size_t>(idx)] = 1;
        return v;
    }
};

/// Build the table by evaluating a callback on every (monomial, degree) cell.
inline UnstableModule make_module(
    const PrimeContext& ctx, int cap, std::vector<int> dims,
    std::vector<std::vector<std::string>> names,
    const std::function<FpMat(const MilnorMonomial&, int j, int n)>& act) {
    UnstableModule m{ctx, cap, std::move(dims), std::move(names), {}};
    m.action.resize(static_cast<size_t>(cap) + 1);
    for (int j = 1; j <= cap; ++j) {
        const auto& basis = milnor_basis_cached(j, ctx);
        m.action[static_cast<size_t>(j)].resize(basis.size());
        for (size_t t = 0; t < basis.size(); ++t) {
            auto& per_n = m.action[static_cast<size_t>(j)][static_cast<size_t>(t)];
            per_n.resize(static_cast<size_t>(cap) + 1);
            for (int n = 0; n + j <= cap; ++n) {
                if (m.dims[static_cast<size_t>(n)] == 0 ||
                    m.dims[static_cast<size_t>(n + j)] == 0) {
                    per_n[static_cast<size_t>(n)] =
                        FpMat(m.dims[static_cast<size_t>(n + j)], m.dims[static_cast<size_t>(n)],
                              ctx.p);
                    continue;
                }
                per_n[static_cast<size_t>(n)] = act(basis[t], j, n);
            }
        }
    }
    return m;
}

/// Instability in the filtration form: everything of weight above the source
/// degree acts by zero.  Returns the witnesses of any violation.
struct InstabilityReport {
    bool unstable = true;
    std::vector<std::string> witnesses;
};

inline InstabilityReport check_unstable(const UnstableModule& m) {
    InstabilityReport rep;
    const PrimeContext& ctx = m.ctx;
    for (int n = 0; n <= m.cap; ++n) {
        if (m.dim(n) == 0) continue;
        for (int j = 1; n + j <= m.cap; ++j) {
            const auto& basis = milnor_basis_cached(j, ctx);
            for (size_t t = 0; t < basis.size(); ++t) {
                if (basis[t].weight(ctx.p) < n + 1) continue;
                const FpMat& mat = m.act_mono(j, static_cast<int>(t), n);
                bool zero = true;
                for (int v : mat.data())
                    if (v) zero = false;
                if (!zero) {
                    rep.unstable = false;
                    rep.witnesses.push_back("(" + detail::describe_mono(basis[t], ctx.p) +
                                            ", degree " + std::to_string(n) + ")");
                }
            }
        }
    }
    return rep;
}

/// Instability in the top-class form: beta^eps P^i kills every degree below
/// 2i + eps.
inline InstabilityReport check_unstable_top(const UnstableModule& m) {
    InstabilityReport rep;
    const PrimeContext& ctx = m.ctx;
    for (int s = 1; s <= m.cap; ++s) {
        Word top = (ctx.p == 2) ? word_top_class(0, s, 2) : word_top_class(s % 2, s / 2, ctx.p);
        long long d = word_degree(top, ctx.p);
        Element e = word_to_milnor(top, ctx);
        for (int n = 0; n < s; ++n) {
            if (n + d > m.cap || m.dim(n) == 0) continue;
            for (int idx = 0; idx < m.dim(n); ++idx) {
                std::vector<int> out = m.act(e, static_cast<int>(d), n, m.unit_vector(n, idx));
                for (int v : out)
                    if (v) {
                        rep.unstable = false;
                        rep.witnesses.push_back("(top class " + std::to_string(s) + ", degree " +
                                                std::to_string(n) + ")");
                        goto next_vector;
                    }
            next_vector:;
            }
        }
    }
    return rep;
}

/// Associativity of the stored table: (theta theta') m = theta (theta' m),
/// exhaustively in low total degree plus seeded random triples.
inline bool validate_associativity(const UnstableModule& m, int exhaustive_degree, int samples,
                                   unsigned long long seed, std::string* witness = nullptr) {
    const PrimeContext& ctx = m.ctx;
    auto check_triple = [&](int j1, size_t t1, int j2, size_t t2, int n) -> bool {
        if (n + j1 + j2 > m.cap || m.dim(n) == 0) return true;
        const auto& b1 = milnor_basis_cached(j1, ctx);
        const auto& b2 = milnor_basis_cached(j2, ctx);
        Element prod = milnor_product_mono(b1[t1], b2[t2], ctx);
        for (int idx = 0; idx < m.dim(n); ++idx) {
            std::vector<int> v = m.unit_vector(n, idx);
            std::vector<int> lhs = m.act(prod, j1 + j2, n, v);
            std::vector<int> rhs =
                m.act(Element::single(b1[t1], 1, ctx.p), j1, n + j2,
                      m.act(Element::single(b2[t2], 1, ctx.p), j2, n, v));
            if (lhs != rhs) {
                if (witness)
                    *witness = "associativity failed at (" + detail::describe_mono(b1[t1], ctx.p) +
                               ", " + detail::describe_mono(b2[t2], ctx.p) + ", degree " +
                               std::to_string(n) + ")";
                return false;
            }
        }
        return true;
    };
    for (int j1 = 1; j1 <= exhaustive_degree; ++j1)
        for (int j2 = 1; j1 + j2 <= exhaustive_degree; ++j2)
            for (int n = 0; n + j1 + j2 <= std::min(m.cap, exhaustive_degree); ++n)
                for (size_t t1 = 0; t1 < milnor_basis_cached(j1, ctx).size(); ++t1)
                    for (size_t t2 = 0; t2 < milnor_basis_cached(j2, ctx).size(); ++t2)
                        if (!check_triple(j1, t1, j2, t2, n)) return false;
    std::mt19937_64 rng(seed);
    for (int s = 0; s < samples; ++s) {
        int j1 = 1 + static_cast<int>(rng() % std::max(1, m.cap / 2));
        int j2 = 1 + static_cast<int>(rng() % std::max(1, m.cap / 2));
        if (j1 + j2 > m.cap) continue;
        int n = static_cast<int>(rng() % static_cast<unsigned>(m.cap - j1 - j2 + 1));
        const auto& b1 = milnor_basis_cached(j1, ctx);
        const auto& b2 = milnor_basis_cached(j2, ctx);
        if (b1.empty() || b2.empty()) continue;
        if (!check_triple(j1, rng() % b1.size(), j2, rng() % b2.size(), n)) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// The free functor.
// ---------------------------------------------------------------------------

/// Basis bookkeeping for F(V) = sum_n A/F_{n+1} (x) V^n: at degree k the
/// basis vectors are (n, monomial of degree k-n and weight <= n, V-index).
struct FreeBasisEntry {
    int n = 0;
    MilnorMonomial mono;
    int vidx = 0;
};

inline std::vector<FreeBasisEntry> free_basis_at(const FiniteGradedVectorSpace& v, int k,
                                                 const PrimeContext& ctx) {
    std::vector<FreeBasisEntry> out;
    for (const auto& [n, d] : v.dims) {
        if (n < 0 || n > k) continue;
        for (const auto& m : milnor_basis_cached(k - n, ctx)) {
            if (m.weight(ctx.p) > n) continue;
            for (int idx = 0; idx < d; ++idx) out.push_back({n, m, idx});
        }
    }
    return out;
}

/// F(V) = sum_n A/F_{n+1} (x) V^n.  Components of V in negative degrees
/// contribute nothing (there A/F_{n+1} = 0), which is what the suspension
/// exact sequence needs at the bottom.
inline UnstableModule free_unstable(const FiniteGradedVectorSpace& v, int cap,
                                    const PrimeContext& ctx) {
    ctx.check_degree(cap, "free_unstable");
    std::vector<std::vector<FreeBasisEntry>> bases(static_cast<size_t>(cap) + 1);
    std::vector<int> dims(static_cast<size_t>(cap) + 1, 0);
    std::vector<std::vector<std::string>> names(static_cast<size_t>(cap) + 1);
    for (int k = 0; k <= cap; ++k) {
        bases[static_cast<size_t>(k)] = free_basis_at(v, k, ctx);
        dims[static_cast<size_t>(k)] = static_cast<int>(bases[static_cast<size_t>(k)].size());
        for (const auto& e : bases[static_cast<size_t>(k)])
            names[static_cast<size_t>(k)].push_back(
                "[" + detail::describe_mono(e.mono, ctx.p) + "]_" + std::to_string(e.n) + "(x)v" +
                std::to_string(e.n) + "_" + std::to_string(e.vidx));
    }
    auto index_of = [&](int k, int n, const MilnorMonomial& m, int vidx) -> int {
        const auto& b = bases[static_cast<size_t>(k)];
        for (size_t t = 0; t < b.size(); ++t)
            if (b[t].n == n && b[t].vidx == vidx && b[t].mono == m) return static_cast<int>(t);
        return -1;
    };
    return make_module(ctx, cap, dims, names, [&](const MilnorMonomial& th, int j, int n) {
        FpMat mat(dims[static_cast<size_t>(n + j)], dims[static_cast<size_t>(n)], ctx.p);
        const auto& src = bases[static_cast<size_t>(n)];
        for (size_t c = 0; c < src.size(); ++c) {
            // theta . [mu]_m (x) v = [theta mu]_m (x) v, truncated to weight <= m
            Element prod = milnor_product_mono(th, src[c].mono, ctx);
            for (const auto& [res, coeff] : prod.terms()) {
                if (res.weight(ctx.p) > src[c].n) continue;
                int r = index_of(n + j, src[c].n, res, src[c].vidx);
                mat.at(r, static_cast<int>(c)) = coeff;
            }
        }
        return mat;
    });
}

// ---------------------------------------------------------------------------
// Morphisms.
// ---------------------------------------------------------------------------

struct ModuleMap {
    const UnstableModule* src = nullptr;
    const UnstableModule* dst = nullptr;
    int cap = 0;                  // valid degrees 0..cap
    std::vector<FpMat> blocks;    // blocks[k]: dst.dim(k) x src.dim(k)

    const FpMat& block(int k) const { return blocks[static_cast<size_t>(k)]; }
};

/// Does the map commute with every stored action in range?
inline bool is_module_map(const ModuleMap& f, std::string* witness = nullptr) {
    const PrimeContext& ctx = f.src->ctx;
    for (int j = 1; j <= f.cap; ++j) {
        const auto& basis = milnor_basis_cached(j, ctx);
        for (size_t t = 0; t < basis.size(); ++t)
            for (int n = 0; n + j <= f.cap; ++n) {
                if (f.src->dim(n) == 0) continue;
                FpMat lhs = f.block(n + j).times(f.src->act_mono(j, static_cast<int>(t), n));
                FpMat rhs = f.dst->act_mono(j, static_cast<int>(t), n).times(f.block(n));
                if (!(lhs == rhs)) {
                    if (witness)
                        *witness = "fails to commute with " +
                                   detail::describe_mono(basis[t], ctx.p) + " out of degree " +
                                   std::to_string(n);
                    return false;
                }
            }
    }
    return true;
}

// ---------------------------------------------------------------------------
// Suspension.
// ---------------------------------------------------------------------------

inline UnstableModule suspension(const UnstableModule& m, int by) {
    if (by < 0) {
        for (int k = 0; k < -by; ++k)
            if (m.dim(k) != 0)
                throw std::invalid_argument("suspension: negative shift hits nonzero degrees");
    }
    int cap = m.cap + by;
    UnstableModule out{m.ctx, cap, std::vector<int>(static_cast<size_t>(cap) + 1, 0),
                       std::vector<std::vector<std::string>>(static_cast<size_t>(cap) + 1), {}};
    for (int k = 0; k <= cap; ++k) {
        int from = k - by;
        if (from >= 0 && from <= m.cap) {
            out.dims[static_cast<size_t>(k)] = m.dim(from);
            out.names[static_cast<size_t>(k)] =
                from < static_cast<int>(m.names.size()) ? m.names[static_cast<size_t>(from)]
                                                        : std::vector<std::string>{};
        }
    }
    out.action.resize(static_cast<size_t>(cap) + 1);
    for (int j = 1; j <= cap; ++j) {
        const auto& basis = milnor_basis_cached(j, m.ctx);
        out.action[static_cast<size_t>(j)].resize(basis.size());
        for (size_t t = 0; t < basis.size(); ++t) {
            auto& per_n = out.action[static_cast<size_t>(j)][static_cast<size_t>(t)];
            per_n.resize(static_cast<size_t>(cap) + 1);
            for (int n = 0; n + j <= cap; ++n) {
                int from = n - by;
                if (from >= 0 && from + j <= m.cap && j <= m.cap)
                    per_n[static_cast<size_t>(n)] = m.act_mono(j, static_cast<int>(t), from);
                else
                    per_n[static_cast<size_t>(n)] =
                        FpMat(out.dim(n + j), out.dim(n), m.ctx.p);
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Phi and lambda.
// ---------------------------------------------------------------------------

inline long long phi_degree_of_slot(int s, int p) {
    return 2LL * (s / 2) * p + 2 * (s % 2);
}

inline std::optional<int> phi_slot_of_degree(long long k, int p) {
    if (k < 0) return std::nullopt;
    if (k % (2 * p) == 0) return static_cast<int>(k / p);
    if ((k - 2) % (2 * p) == 0) return static_cast<int>((k - 2) / p) + 1;
    return std::nullopt;
}

namespace detail {

/// gamma on a basis monomial, memoized across modules.
inline const GammaResult& gamma_mono_cached(int i, int j, int eps, const MilnorMonomial& th,
                                            const PrimeContext& ctx) {
    static std::mutex mu;
    static std::map<std::tuple<int, int, int, int, MilnorMonomial>, std::unique_ptr<GammaResult>>
        cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_tuple(ctx.p, i, j, eps, th);
    auto it = cache.find(key);
    if (it == cache.end())
        it = cache
                 .emplace(key, std::make_unique<GammaResult>(
                                   gamma_map(i, j, eps, Element::single(th, 1, ctx.p), ctx)))
                 .first;
    return *it->second;
}

}  // namespace detail

/// Phi M: one copy of M^s in degree 2ip + 2eps (s = 2i + eps), with the
/// action transported through gamma.
inline UnstableModule phi(const UnstableModule& m) {
    const PrimeContext& ctx = m.ctx;
    int cap = m.cap;
    std::vector<int> dims(static_cast<size_t>(cap) + 1, 0);
    std::vector<std::vector<std::string>> names(static_cast<size_t>(cap) + 1);
    for (int k = 0; k <= cap; ++k) {
        auto s = phi_slot_of_degree(k, ctx.p);
        if (!s || *s > m.cap) continue;
        dims[static_cast<size_t>(k)] = m.dim(*s);
        for (int idx = 0; idx < m.dim(*s); ++idx)
            names[static_cast<size_t>(k)].push_back("g_" + std::to_string(*s) + "(x)m" +
                                                    std::to_string(idx));
    }
    return make_module(ctx, cap, dims, names, [&](const MilnorMonomial& th, int j, int k) {
        // action out of Phi-degree k (slot s) into Phi-degree k + j (slot s2)
        FpMat mat(dims[static_cast<size_t>(k + j)], dims[static_cast<size_t>(k)], ctx.p);
        auto s = phi_slot_of_degree(k, ctx.p);
        auto s2 = phi_slot_of_degree(k + j, ctx.p);
        if (!s || !s2 || dims[static_cast<size_t>(k)] == 0 ||
            dims[static_cast<size_t>(k + j)] == 0)
            return mat;
        int bigJ = *s2 - *s;
        if (bigJ < 0 || *s2 > m.cap) return mat;
        const GammaResult& g =
            detail::gamma_mono_cached(*s2 / 2, bigJ, *s2 % 2, th, ctx);
        // sum_l c_l (q_l . -) : M^s -> M^{s + J}
        for (size_t l = 0; l < g.quotient.size(); ++l) {
            if (g.coeffs[l] == 0) continue;
            int t = milnor_basis_index(g.quotient[l], bigJ, ctx);
            const FpMat& qact = bigJ == 0 ? FpMat::identity(m.dim(*s), ctx.p)
                                          : m.act_mono(bigJ, t, *s);
            for (int r = 0; r < mat.rows(); ++r)
                for (int c = 0; c < mat.cols(); ++c)
                    mat.at(r, c) = fp_reduce(
                        mat.at(r, c) + static_cast<long long>(g.coeffs[l]) * qact.at(r, c),
                        ctx.p);
        }
        return mat;
    });
}

/// lambda: Phi M -> M, g_s (x) m -> (beta^eps P^i) m.
inline ModuleMap lambda(const UnstableModule& phi_m, const UnstableModule& m) {
    const PrimeContext& ctx = m.ctx;
    ModuleMap f;
    f.src = &phi_m;
    f.dst = &m;
    f.cap = std::min(phi_m.cap, m.cap);
    f.blocks.resize(static_cast<size_t>(f.cap) + 1);
    for (int k = 0; k <= f.cap; ++k) {
        FpMat b(m.dim(k), phi_m.dim(k), ctx.p);
        auto s = phi_slot_of_degree(k, ctx.p);
        if (s && phi_m.dim(k) > 0 && m.dim(k) > 0) {
            Word top = (ctx.p == 2) ? word_top_class(0, *s, 2)
                                    : word_top_class(*s % 2, *s / 2, ctx.p);
            Element e = word_to_milnor(top, ctx);
            for (int idx = 0; idx < m.dim(*s); ++idx) {
                std::vector<int> img = m.act(e, k - *s, *s, m.unit_vector(*s, idx));
                for (int r = 0; r < m.dim(k); ++r) b.at(r, idx) = img[static_cast<size_t>(r)];
            }
        }
        f.blocks[static_cast<size_t>(k)] = std::move(b);
    }
    return f;
}

// ---------------------------------------------------------------------------
// Kernel, cokernel, Omega and Omega^1.
// ---------------------------------------------------------------------------

namespace detail {

/// Reduced basis of the column space plus the complement coordinates, giving
/// a deterministic projection onto the quotient.
struct QuotientData {
    std::vector<std::vector<int>> reduced_rows;  // rref of the image, as rows
    std::vector<int> pivots;                     // pivot coordinates
    std::vector<int> complement;                 // non-pivot coordinates
};

inline QuotientData quotient_data(const FpMat& image_cols, int p) {
    FpMat rows = image_cols.transposed();
    std::vector<int> piv = rows.rref_inplace();
    QuotientData q;
    q.pivots = piv;
    std::vector<char> is_piv(static_cast<size_t>(image_cols.rows()), 0);
    for (int c : piv) is_piv[static_cast<size_t>(c)] = 1;
    for (int c = 0; c < image_cols.rows(); ++c)
        if (!is_piv[static_cast<size_t>(c)]) q.complement.push_back(c);
    for (size_t r = 0; r < piv.size(); ++r) {
        std::vector<int> row(static_cast<size_t>(image_cols.rows()), 0);
        for (int c = 0; c < image_cols.rows(); ++c) row[static_cast<size_t>(c)] = rows.at(static_cast<int>(r), c);
        q.reduced_rows.push_back(std::move(row));
    }
    return q;
}

/// Coordinates of x in the quotient by the image (reduce, then read off the
/// complement slots).
inline std::vector<int> project_quotient(const QuotientData& q, std::vector<int> x, int p) {
    for (size_t r = 0; r < q.reduced_rows.size(); ++r) {
        int c = q.pivots[r];
        int coeff = x[static_cast<size_t>(c)];
        if (coeff == 0) continue;
        for (size_t k = 0; k < x.size(); ++k)
            x[k] = fp_sub(x[k], fp_mul(coeff, q.reduced_rows[r][k], p), p);
    }
    std::vector<int> out;
    out.reserve(q.complement.size());
    for (int c : q.complement) out.push_back(x[static_cast<size_t>(c)]);
    return out;
}

}  // namespace detail

/// Sigma^{-1} Coker lambda.  Also returns (through out parameters, when
/// non-null) the degreewise image ranks for exactness bookkeeping.
inline UnstableModule omega(const UnstableModule& m, std::vector<int>* image_ranks = nullptr) {
    const PrimeContext& ctx = m.ctx;
    UnstableModule pm = phi(m);
    ModuleMap lam = lambda(pm, m);
    int cap = lam.cap;
    std::vector<detail::QuotientData> quot(static_cast<size_t>(cap) + 1);
    std::vector<int> dims(static_cast<size_t>(cap) + 1, 0);
    if (image_ranks) image_ranks->assign(static_cast<size_t>(cap) + 1, 0);
    for (int k = 0; k <= cap; ++k) {
        quot[static_cast<size_t>(k)] = detail::quotient_data(lam.block(k), ctx.p);
        dims[static_cast<size_t>(k)] =
            static_cast<int>(quot[static_cast<size_t>(k)].complement.size());
        if (image_ranks)
            (*image_ranks)[static_cast<size_t>(k)] =
                static_cast<int>(quot[static_cast<size_t>(k)].pivots.size());
    }
    if (dims[0] != 0) throw std::logic_error("omega: cokernel survives in degree 0");
    // cokernel presentation before desuspending
    std::vector<int> cdims(dims.begin(), dims.end());
    std::vector<std::vector<std::string>> names(static_cast<size_t>(cap) + 1);
    for (int k = 0; k <= cap; ++k)
        for (int t = 0; t < cdims[static_cast<size_t>(k)]; ++t)
            names[static_cast<size_t>(k)].push_back("q" + std::to_string(k) + "_" +
                                                    std::to_string(t));
    UnstableModule coker = make_module(
        ctx, cap, cdims, names, [&](const MilnorMonomial& th, int j, int n) {
            FpMat mat(cdims[static_cast<size_t>(n + j)], cdims[static_cast<size_t>(n)], ctx.p);
            const auto& qsrc = quot[static_cast<size_t>(n)];
            const auto& qdst = quot[static_cast<size_t>(n + j)];
            int t = milnor_basis_index(th, j, ctx);
            for (size_t c = 0; c < qsrc.complement.size(); ++c) {
                std::vector<int> rep(static_cast<size_t>(m.dim(n)), 0);
                rep[static_cast<size_t>(qsrc.complement[c])] = 1;
                std::vector<int> img = m.act_mono(j, t, n).times(rep);
                std::vector<int> cls = detail::project_quotient(qdst, std::move(img), ctx.p);
                for (size_t r = 0; r < cls.size(); ++r)
                    mat.at(static_cast<int>(r), static_cast<int>(c)) = cls[r];
            }
            return mat;
        });
    return suspension(coker, -1);
}

/// Sigma^{-1} Ker lambda.
inline UnstableModule omega1(const UnstableModule& m) {
    const PrimeContext& ctx = m.ctx;
    UnstableModule pm = phi(m);
    ModuleMap lam = lambda(pm, m);
    int cap = lam.cap;
    std::vector<FpMat> kerbases(static_cast<size_t>(cap) + 1);
    std::vector<int> dims(static_cast<size_t>(cap) + 1, 0);
    for (int k = 0; k <= cap; ++k) {
        auto kb = lam.block(k).kernel_basis();
        FpMat basis(pm.dim(k), static_cast<int>(kb.size()), ctx.p);
        for (size_t c = 0; c < kb.size(); ++c)
            for (int r = 0; r < pm.dim(k); ++r) basis.at(r, static_cast<int>(c)) = kb[c][static_cast<size_t>(r)];
        kerbases[static_cast<size_t>(k)] = std::move(basis);
        dims[static_cast<size_t>(k)] = static_cast<int>(kb.size());
    }
    if (dims[0] != 0) throw std::logic_error("omega1: kernel survives in degree 0");
    std::vector<std::vector<std::string>> names(static_cast<size_t>(cap) + 1);
    for (int k = 0; k <= cap; ++k)
        for (int t = 0; t < dims[static_cast<size_t>(k)]; ++t)
            names[static_cast<size_t>(k)].push_back("k" + std::to_string(k) + "_" +
                                                    std::to_string(t));
    UnstableModule ker = make_module(
        ctx, cap, dims, names, [&](const MilnorMonomial& th, int j, int n) {
            FpMat mat(dims[static_cast<size_t>(n + j)], dims[static_cast<size_t>(n)], ctx.p);
            int t = milnor_basis_index(th, j, ctx);
            const FpMat& src = kerbases[static_cast<size_t>(n)];
            const FpMat& dst = kerbases[static_cast<size_t>(n + j)];
            for (int c = 0; c < src.cols(); ++c) {
                std::vector<int> v(static_cast<size_t>(src.rows()));
                for (int r = 0; r < src.rows(); ++r) v[static_cast<size_t>(r)] = src.at(r, c);
                std::vector<int> img = pm.act_mono(j, t, n).times(v);
                auto sol = dst.solve(img);
                if (!sol)
                    throw std::logic_error("omega1: kernel is not closed under the action");
                for (size_t r = 0; r < sol->size(); ++r)
                    mat.at(static_cast<int>(r), c) = (*sol)[r];
            }
            return mat;
        });
    return suspension(ker, -1);
}

// ---------------------------------------------------------------------------
// Tensor product with the Cartan action.
// ---------------------------------------------------------------------------

inline UnstableModule tensor_unstable(const UnstableModule& a, const UnstableModule& b) {
    const PrimeContext& ctx = a.ctx;
    int cap = std::min(a.cap, b.cap);
    std::vector<int> dims(static_cast<size_t>(cap) + 1, 0);
    std::vector<std::vector<std::string>> names(static_cast<size_t>(cap) + 1);
    // basis at degree k: (n, ia, ib) with n + n' = k, lexicographic by n, ia, ib
    auto offset = [&](int k, int n, int ia, int ib) -> int {
        int off = 0;
        for (int t = 0; t < n; ++t) off += a.dim(t) * b.dim(k - t);
        return off + ia * b.dim(k - n) + ib;
    };
    for (int k = 0; k <= cap; ++k) {
        for (int n = 0; n <= k; ++n) dims[static_cast<size_t>(k)] += a.dim(n) * b.dim(k - n);
        for (int n = 0; n <= k; ++n)
            for (int ia = 0; ia < a.dim(n); ++ia)
                for (int ib = 0; ib < b.dim(k - n); ++ib)
                    names[static_cast<size_t>(k)].push_back(
                        "a" + std::to_string(n) + "_" + std::to_string(ia) + "(x)b" +
                        std::to_string(k - n) + "_" + std::to_string(ib));
    }
    return make_module(ctx, cap, dims, names, [&](const MilnorMonomial& th, int j, int k) {
        FpMat mat(dims[static_cast<size_t>(k + j)], dims[static_cast<size_t>(k)], ctx.p);
        TensorElement d = milnor_coproduct_mono(th, ctx);
        for (int n = 0; n <= k; ++n) {
            if (a.dim(n) == 0 || b.dim(k - n) == 0) continue;
            for (const auto& [t, c] : d.terms()) {
                long long d1 = t.left.degree(ctx.p);
                long long d2 = t.right.degree(ctx.p);
                // Koszul: theta'' crosses the degree-n left factor
                int sign = 1;
                if (ctx.p != 2 && d2 % 2 == 1 && n % 2 == 1) sign = -1;
                int t1 = milnor_basis_index(t.left, static_cast<int>(d1), ctx);
                int t2 = milnor_basis_index(t.right, static_cast<int>(d2), ctx);
                const FpMat& ma = d1 == 0 ? FpMat::identity(a.dim(n), ctx.p)
                                          : a.act_mono(static_cast<int>(d1), t1, n);
                const FpMat& mb = d2 == 0 ? FpMat::identity(b.dim(k - n), ctx.p)
                                          : b.act_mono(static_cast<int>(d2), t2, k - n);
                if (ma.rows() == 0 || mb.rows() == 0) continue;
                for (int ia = 0; ia < a.dim(n); ++ia)
                    for (int ib = 0; ib < b.dim(k - n); ++ib) {
                        int col = offset(k, n, ia, ib);
                        for (int ra = 0; ra < ma.rows(); ++ra)
                            for (int rb = 0; rb < mb.rows(); ++rb) {
                                int row = offset(k + j, n + static_cast<int>(d1), ra, rb);
                                long long val =
                                    static_cast<long long>(sign) * c * ma.at(ra, ia) %
                                    ctx.p * mb.at(rb, ib);
                                mat.at(row, col) =
                                    fp_reduce(mat.at(row, col) + val, ctx.p);
                            }
                    }
            }
        }
        return mat;
    });
}

}  // namespace steenrod

#pragma once

#include <mutex>
#include <random>
#include <sstream>

#include "steenrod/admissible.hpp"
#include "steenrod/report.hpp"

namespace steenrod {

/// beta^eps P^i as a word (Sq^i at p = 2, where eps must be 0).
inline Word word_top_class(int eps, int i, int p) {
    if (p == 2) {
        if (eps != 0) throw std::invalid_argument("word_top_class: eps with p = 2");
        return i == 0 ? Word{} : Word::sq({i});
    }
    if (i == 0) return eps ? Word::beta() : Word{};
    return Word::odd({eps, 0}, {i});
}

/// A basis of a subspace of one degree component of the algebra.
struct GradedSubspace {
    int degree = 0;
    int level = 0;
    int ambient_dim = 0;
    std::vector<Element> basis;

    int dim() const { return static_cast<int>(basis.size()); }
};

enum class FiltrationKind { admissible, milnor };

/// (F_i A)^n in either presentation: admissible words of excess >= i, or
/// Milnor monomials of weight >= i.
inline GradedSubspace filtration_basis(int i, int n, FiltrationKind kind,
                                       const PrimeContext& ctx) {
    ctx.check_degree(n, "filtration_basis");
    GradedSubspace out;
    out.degree = n;
    out.level = i;
    auto cob = change_of_basis(n, ctx);
    out.ambient_dim = static_cast<int>(cob->monomials.size());
    if (kind == FiltrationKind::milnor) {
        for (const auto& m : cob->monomials)
            if (m.weight(ctx.p) >= i) out.basis.push_back(Element::single(m, 1, ctx.p));
    } else {
        for (size_t k = 0; k < cob->words.size(); ++k)
            if (word_excess(cob->words[k], ctx.p) >= i)
                out.basis.push_back(cob->word_expansions[k]);
    }
    return out;
}

inline FpMat subspace_matrix(const GradedSubspace& s, const PrimeContext& ctx) {
    auto cob = change_of_basis(s.degree, ctx);
    FpMat m(s.ambient_dim, s.dim(), ctx.p);
    for (int c = 0; c < s.dim(); ++c) {
        std::vector<int> col = cob->coordinates(s.basis[static_cast<size_t>(c)], ctx.p);
        for (int r = 0; r < s.ambient_dim; ++r) m.at(r, c) = col[static_cast<size_t>(r)];
    }
    return m;
}

inline bool subspace_equal(const GradedSubspace& a, const GradedSubspace& b,
                           const PrimeContext& ctx) {
    if (a.degree != b.degree) throw std::invalid_argument("subspace_equal: degree mismatch");
    return same_column_span(subspace_matrix(a, ctx), subspace_matrix(b, ctx));
}

/// E_i^j = (F_i)^j / (F_{i+1})^j, presented by the monomials of weight
/// exactly i (coset representatives).
struct EQuotient {
    int level = 0;
    int degree = 0;
    std::vector<MilnorMonomial> basis;

    int dim() const { return static_cast<int>(basis.size()); }

    int index_of(const MilnorMonomial& m) const {
        auto it = std::lower_bound(basis.begin(), basis.end(), m);
        if (it == basis.end() || !(*it == m)) return -1;
        return static_cast<int>(it - basis.begin());
    }
};

inline EQuotient e_quotient(int i, int j, const PrimeContext& ctx) {
    ctx.check_degree(j, "e_quotient");
    EQuotient q;
    q.level = i;
    q.degree = j;
    for (const auto& m : milnor_basis(j, ctx))
        if (m.weight(ctx.p) == i) q.basis.push_back(m);
    return q;
}

/// Coordinates of the class of x in E_i^j.  Requires x in F_i (all weights
/// at least the level); terms of weight > i are the F_{i+1} part and drop out.
inline std::vector<int> equotient_class(const Element& x, const EQuotient& q,
                                        const PrimeContext& ctx) {
    std::vector<int> v(static_cast<size_t>(q.dim()), 0);
    for (const auto& [m, c] : x.terms()) {
        if (m.degree(ctx.p) != q.degree)
            throw std::invalid_argument("equotient_class: degree mismatch");
        long long w = m.weight(ctx.p);
        if (w < q.level) throw std::invalid_argument("equotient_class: element not in F_level");
        if (w > q.level) continue;
        v[static_cast<size_t>(q.index_of(m))] = c;
    }
    return v;
}

/// The multiplication isomorphism out of the one-dimensional top class:
/// E_{2i'+eps}^{2i'(p-1)+eps} (x) (A/F_{2i'-j+eps+1})^j -> E_{2i'-j+eps}^{2i'(p-1)+j+eps},
/// as a square invertible matrix over the canonical bases.
struct MuTilde {
    int i_prime = 0, eps = 0, j = 0;
    Word top;                                // beta^eps P^{i'}
    std::vector<MilnorMonomial> domain;      // quotient basis: degree j, weight <= 2i'-j+eps
    EQuotient codomain;
    FpMat mat;
    FpMat inv;
};

inline std::shared_ptr<const MuTilde> mu_tilde(int i_prime, int eps, int j,
                                               const PrimeContext& ctx) {
    long long target_deg = 2LL * i_prime * (ctx.p - 1) + eps + j;
    ctx.check_degree(target_deg, "mu_tilde");
    static std::mutex mu;
    static std::map<std::tuple<int, int, int, int>, std::shared_ptr<const MuTilde>> cache;
    std::tuple<int, int, int, int> key{ctx.p, i_prime, eps, j};
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    auto mt = std::make_shared<MuTilde>();
    mt->i_prime = i_prime;
    mt->eps = eps;
    mt->j = j;
    mt->top = (ctx.p == 2) ? word_top_class(0, 2 * i_prime + eps, 2)
                           : word_top_class(eps, i_prime, ctx.p);
    int s = 2 * i_prime - j + eps;
    for (const auto& m : milnor_basis(j, ctx))
        if (m.weight(ctx.p) <= s) mt->domain.push_back(m);
    mt->codomain = e_quotient(s, static_cast<int>(target_deg), ctx);
    if (static_cast<int>(mt->domain.size()) != mt->codomain.dim())
        throw std::logic_error("mu_tilde: matrix is not square at (i',eps,j) = (" +
                               std::to_string(i_prime) + "," + std::to_string(eps) + "," +
                               std::to_string(j) + ")");
    Element top_elem = word_to_milnor(mt->top, ctx);
    FpMat m(mt->codomain.dim(), static_cast<int>(mt->domain.size()), ctx.p);
    for (size_t c = 0; c < mt->domain.size(); ++c) {
        Element prod = milnor_product(top_elem, Element::single(mt->domain[c], 1, ctx.p), ctx);
        std::vector<int> cls = equotient_class(prod, mt->codomain, ctx);
        for (int r = 0; r < mt->codomain.dim(); ++r) m.at(r, static_cast<int>(c)) = cls[static_cast<size_t>(r)];
    }
    auto inv = m.inverse();
    if (!inv)
        throw std::logic_error("mu_tilde: singular at (i',eps,j) = (" + std::to_string(i_prime) +
                               "," + std::to_string(eps) + "," + std::to_string(j) + ")");
    mt->mat = std::move(m);
    mt->inv = std::move(*inv);
    std::lock_guard<std::mutex> lock(mu);
    auto [it, ok] = cache.emplace(key, std::move(mt));
    return it->second;
}

/// gamma_{i,j,eps}: multiply into the top class and pull back through the
/// inverse of mu_tilde.  The result is the coefficient vector of the quotient
/// component over mu_tilde's domain basis (the left factor is the generator
/// class of E_{2i+eps}^{2i(p-1)+eps}).
struct GammaResult {
    int s = 0;                               // input level 2i - j + eps
    std::vector<MilnorMonomial> quotient;    // basis of (A/F_{s+1})^j
    std::vector<int> coeffs;

    bool is_zero() const {
        for (int c : coeffs)
            if (c) return false;
        return true;
    }
};

inline int gamma_kappa(int j, int eps) { return (j % 2 == 0) ? eps : 1 - eps; }

inline long long gamma_theta_degree(int i, int j, int eps, int p) {
    int kappa = gamma_kappa(j, eps);
    return static_cast<long long>(p) * j - static_cast<long long>(p - 2) * (eps - kappa);
}

inline GammaResult gamma_map(int i, int j, int eps, const Element& theta,
                             const PrimeContext& ctx) {
    if (i < 0 || j < 0 || eps < 0 || eps > 1)
        throw std::invalid_argument("gamma_map: indices out of range");
    int s = 2 * i - j + eps;
    if (s < 0) throw std::invalid_argument("gamma_map: negative input level");
    int kappa = gamma_kappa(j, eps);
    long long want = gamma_theta_degree(i, j, eps, ctx.p);
    auto d = homogeneous_degree(theta, ctx.p);
    if (!theta.is_zero() && (!d || *d != want))
        throw std::invalid_argument("gamma_map: theta must be homogeneous of degree " +
                                    std::to_string(want));
    auto mt = mu_tilde(i, eps, j, ctx);
    GammaResult out;
    out.s = s;
    out.quotient = mt->domain;
    out.coeffs.assign(mt->domain.size(), 0);
    if (theta.is_zero()) return out;

    Word input_word = (ctx.p == 2) ? word_top_class(0, s, 2)
                                   : word_top_class(kappa, (s - kappa) / 2, ctx.p);
    Element z = milnor_product(theta, word_to_milnor(input_word, ctx), ctx);
    if (z.is_zero()) return out;
    std::vector<int> cls = equotient_class(z, mt->codomain, ctx);
    auto coeffs = mt->inv.times(cls);
    out.coeffs = std::move(coeffs);
    return out;
}

// ---------------------------------------------------------------------------
// Condition verifiers.  Each emits one record per verification cell; a cell
// aggregates the exhaustive instances that share its indices.
// ---------------------------------------------------------------------------

namespace detail {

inline std::string describe_mono(const MilnorMonomial& m, int p) {
    std::ostringstream os;
    if (p == 2) {
        os << "Sq(";
    } else {
        os << "Q(";
        for (int s = 0; s < m.e.size(); ++s) os << (s ? "," : "") << m.e.at(s);
        os << ") P(";
    }
    for (int t = 1; t <= m.r.size(); ++t) os << (t > 1 ? "," : "") << m.r.at(t);
    os << ")";
    return os.str();
}

}  // namespace detail

/// (E1): F_i = A for i <= 0, in both presentations; (E2): F_i^n vanishes for
/// large i.
inline Report verify_e1_e2(const PrimeContext& ctx, int max_degree) {
    Report rep;
    for (int n = 0; n <= max_degree; ++n) {
        auto cob = change_of_basis(n, ctx);
        int ambient = static_cast<int>(cob->monomials.size());
        CheckRecord rec;
        rec.family = "e1";
        rec.p = ctx.p;
        rec.indices = {{"n", n}};
        for (int i : {-3, -1, 0}) {
            auto fa = filtration_basis(i, n, FiltrationKind::admissible, ctx);
            auto fm = filtration_basis(i, n, FiltrationKind::milnor, ctx);
            rec.checked += 2;
            if (fa.dim() != ambient || fm.dim() != ambient) {
                rec.ok = false;
                rec.witness = "F_" + std::to_string(i) + " is a proper subspace";
            }
        }
        rep.add(rec);

        CheckRecord rec2;
        rec2.family = "e2";
        rec2.p = ctx.p;
        rec2.indices = {{"n", n}};
        long long maxw = 0;
        for (const auto& m : cob->monomials) maxw = std::max(maxw, m.weight(ctx.p));
        auto f = filtration_basis(static_cast<int>(maxw) + 1, n, FiltrationKind::milnor, ctx);
        auto fa = filtration_basis(static_cast<int>(maxw) + 1, n, FiltrationKind::admissible, ctx);
        rec2.checked = 2;
        if (f.dim() != 0 || fa.dim() != 0) {
            rec2.ok = false;
            rec2.witness = "no vanishing level found";
        }
        rep.add(rec2);
    }
    return rep;
}

/// (E3): the filtration levels are left ideals.  For monomials theta, m the
/// strongest requirement is min_weight(theta m) >= min(max_level, weight m).
inline Report verify_e3(const PrimeContext& ctx, int max_level, int max_degree) {
    Report rep;
    for (int d1 = 0; d1 <= max_degree; ++d1)
        for (int d2 = 0; d2 + d1 <= 2 * max_degree && d2 <= max_degree; ++d2) {
            CheckRecord rec;
            rec.family = "e3";
            rec.p = ctx.p;
            rec.indices = {{"deg_theta", d1}, {"deg_m", d2}};
            for (const auto& theta : milnor_basis(d1, ctx))
                for (const auto& m : milnor_basis(d2, ctx)) {
                    Element prod = milnor_product_mono(theta, m, ctx);
                    ++rec.checked;
                    long long bound = std::min<long long>(max_level, m.weight(ctx.p));
                    auto w = min_weight(prod, ctx.p);
                    if (w && *w < bound) {
                        rec.ok = false;
                        rec.witness = detail::describe_mono(theta, ctx.p) + " * " +
                                      detail::describe_mono(m, ctx.p);
                    }
                }
            rep.add(rec);
        }
    return rep;
}

/// (E4): right multiplication by A^j drops the level by at most j.
inline Report verify_e4(const PrimeContext& ctx, int max_level, int max_degree) {
    Report rep;
    for (int d1 = 0; d1 <= max_degree; ++d1)
        for (int d2 = 0; d2 <= max_degree; ++d2) {
            CheckRecord rec;
            rec.family = "e4";
            rec.p = ctx.p;
            rec.indices = {{"deg_m", d1}, {"deg_theta", d2}};
            for (const auto& m : milnor_basis(d1, ctx))
                for (const auto& theta : milnor_basis(d2, ctx)) {
                    Element prod = milnor_product_mono(m, theta, ctx);
                    ++rec.checked;
                    long long bound = std::min<long long>(max_level, m.weight(ctx.p)) - d2;
                    auto w = min_weight(prod, ctx.p);
                    if (w && *w < bound) {
                        rec.ok = false;
                        rec.witness = detail::describe_mono(m, ctx.p) + " * " +
                                      detail::describe_mono(theta, ctx.p);
                    }
                }
            rep.add(rec);
        }
    return rep;
}

/// (E5): the coproduct respects total level.
inline Report verify_e5(const PrimeContext& ctx, int max_level, int max_degree) {
    Report rep;
    for (int n = 0; n <= max_degree; ++n) {
        CheckRecord rec;
        rec.family = "e5";
        rec.p = ctx.p;
        rec.indices = {{"n", n}};
        for (const auto& m : milnor_basis(n, ctx)) {
            TensorElement d = milnor_coproduct_mono(m, ctx);
            ++rec.checked;
            long long bound = std::min<long long>(max_level, m.weight(ctx.p));
            for (const auto& [t, c] : d.terms())
                if (t.left.weight(ctx.p) + t.right.weight(ctx.p) < bound) {
                    rec.ok = false;
                    rec.witness = detail::describe_mono(m, ctx.p);
                }
        }
        rep.add(rec);
    }
    return rep;
}

/// Span equality of the two filtration presentations.
inline Report verify_span(const PrimeContext& ctx, int max_level, int max_degree) {
    Report rep;
    for (int n = 0; n <= max_degree; ++n) {
        CheckRecord rec;
        rec.family = "span";
        rec.p = ctx.p;
        rec.indices = {{"n", n}};
        for (int i = 0; i <= max_level; ++i) {
            auto fa = filtration_basis(i, n, FiltrationKind::admissible, ctx);
            auto fm = filtration_basis(i, n, FiltrationKind::milnor, ctx);
            ++rec.checked;
            if (!subspace_equal(fa, fm, ctx)) {
                rec.ok = false;
                rec.witness = "i=" + std::to_string(i);
            }
        }
        rep.add(rec);
    }
    return rep;
}

/// Monomial weight equals the excess of the admissible expansion (the exact
/// filtration level of a Milnor basis element).
inline Report verify_weight(const PrimeContext& ctx, int max_degree) {
    Report rep;
    for (int n = 1; n <= max_degree; ++n) {
        CheckRecord rec;
        rec.family = "weight";
        rec.p = ctx.p;
        rec.indices = {{"n", n}};
        for (const auto& m : milnor_basis(n, ctx)) {
            ++rec.checked;
            AdmissibleElement a = milnor_to_admissible(Element::single(m, 1, ctx.p), ctx);
            if (element_excess(a, ctx) != m.weight(ctx.p)) {
                rec.ok = false;
                rec.witness = detail::describe_mono(m, ctx.p);
            }
        }
        rep.add(rec);
    }
    return rep;
}

/// Arbitrary words land in the filtration level given by their excess.
inline Report verify_fil2(const PrimeContext& ctx, int samples, unsigned long long seed,
                          int max_degree) {
    Report rep;
    CheckRecord rec;
    rec.family = "fil2";
    rec.p = ctx.p;
    rec.indices = {{"samples", samples}, {"max_degree", max_degree}};
    std::mt19937_64 rng(seed);
    while (rec.checked < samples) {
        int len = 1 + static_cast<int>(rng() % 4);
        std::vector<int> ops(static_cast<size_t>(len));
        for (int& o : ops) o = static_cast<int>(rng() % 8);
        Word w;
        if (ctx.p == 2) {
            w = Word::sq(ops);
        } else {
            std::vector<int> eps(static_cast<size_t>(len) + 1);
            for (int& e : eps) e = static_cast<int>(rng() % 2);
            w = Word::odd(eps, ops);
        }
        if (word_degree(w, ctx.p) > max_degree) continue;
        ++rec.checked;
        Element x = word_to_milnor(w, ctx);
        auto mw = min_weight(x, ctx.p);
        if (mw && *mw < word_excess(w, ctx.p)) {
            rec.ok = false;
            rec.witness = "word excess bound failed";
        }
    }
    rep.add(rec);
    return rep;
}

/// Vanishing below the top degree, one-dimensional top classes, and the
/// congruence constraint on nonzero quotients.
inline Report verify_fil1(const PrimeContext& ctx, int max_level, int max_degree) {
    Report rep;
    for (int i2 = 0; i2 <= max_level; ++i2) {
        int i = i2 / 2, eps = i2 % 2;
        long long top = 2LL * i * (ctx.p - 1) + eps;
        if (top > max_degree) continue;
        CheckRecord rec;
        rec.family = "fil1";
        rec.p = ctx.p;
        rec.indices = {{"level", i2}};
        for (int k = 0; k < top; ++k) {
            ++rec.checked;
            if (filtration_basis(i2, k, FiltrationKind::milnor, ctx).dim() != 0) {
                rec.ok = false;
                rec.witness = "nonzero below top degree, k=" + std::to_string(k);
            }
        }
        {
            ++rec.checked;
            auto f = filtration_basis(i2, static_cast<int>(top), FiltrationKind::milnor, ctx);
            Element expected = word_to_milnor(
                ctx.p == 2 ? word_top_class(0, i2, 2) : word_top_class(eps, i, ctx.p), ctx);
            bool ok = f.dim() == 1 && expected.term_count() == 1 &&
                      f.basis[0] == expected;
            if (!ok) {
                rec.ok = false;
                rec.witness = "top class is not spanned by beta^eps P^i";
            }
        }
        rep.add(rec);
    }
    // E_i^j = 0 unless i + j = 0 or 2 modulo 2p
    for (int i = 0; i <= max_level; ++i) {
        CheckRecord rec;
        rec.family = "fil1";
        rec.p = ctx.p;
        rec.indices = {{"level", i}, {"congruence", 1}};
        for (int j = 0; j <= max_degree; ++j) {
            int r = (i + j) % (2 * ctx.p);
            if (r == 0 || r == 2) continue;
            ++rec.checked;
            if (e_quotient(i, j, ctx).dim() != 0) {
                rec.ok = false;
                rec.witness = "E nonzero at j=" + std::to_string(j);
            }
        }
        rep.add(rec);
    }
    return rep;
}

/// Square invertibility of all mu_tilde in range.
inline Report verify_a5(const PrimeContext& ctx, int max_degree) {
    Report rep;
    for (int i_prime = 0;; ++i_prime) {
        long long base = 2LL * i_prime * (ctx.p - 1);
        if (base > max_degree) break;
        for (int eps = 0; eps <= 1; ++eps)
            for (int j = 0; base + j + eps <= max_degree; ++j) {
                CheckRecord rec;
                rec.family = "a5";
                rec.p = ctx.p;
                rec.indices = {{"i_prime", i_prime}, {"eps", eps}, {"j", j}};
                rec.checked = 1;
                try {
                    auto mt = mu_tilde(i_prime, eps, j, ctx);
                    rec.indices.push_back({"dim", mt->codomain.dim()});
                } catch (const std::logic_error& e) {
                    rec.ok = false;
                    rec.witness = e.what();
                }
                rep.add(rec);
            }
    }
    return rep;
}

}  // namespace steenrod

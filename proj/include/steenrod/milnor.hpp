#pragma once

#include <functional>
#include <mutex>
#include <optional>
#include <vector>

#include "steenrod/element.hpp"
#include "steenrod/seq.hpp"

namespace steenrod {

/// Q(E) P(R) for odd p, Sq(R) for p = 2 (E then always empty).
struct MilnorMonomial {
    BSeq e;
    Seq r;

    MilnorMonomial() = default;
    MilnorMonomial(BSeq e_, Seq r_) : e(std::move(e_)), r(std::move(r_)) {}

    bool is_unit() const { return e.empty() && r.empty(); }

    long long degree(int p) const {
        long long d = 0;
        if (p != 2) {
            long long pk = 1;
            for (int s = 0; s < e.size(); ++s, pk *= p) d += e.at(s) * (2 * pk - 1);
            long long pt = p;
            for (int t = 1; t <= r.size(); ++t, pt *= p) d += 2LL * r.at(t) * (pt - 1);
        } else {
            long long pt = 2;
            for (int t = 1; t <= r.size(); ++t, pt *= 2) d += static_cast<long long>(r.at(t)) * (pt - 1);
        }
        return d;
    }

    /// |E| + 2|R| for odd p, |R| for p = 2: the exact excess-filtration level.
    long long weight(int p) const { return p == 2 ? r.sum() : e.sum() + 2 * r.sum(); }

    friend auto operator<=>(const MilnorMonomial&, const MilnorMonomial&) = default;
};

using Element = LinearCombo<MilnorMonomial>;
using TensorElement = LinearCombo<TensorMono<MilnorMonomial>>;

inline Element milnor_unit() { return Element::single(MilnorMonomial{}, 1, 2); }

/// Q_n (odd p); Q_0 = beta.
inline Element milnor_Q(int n) {
    return Element::single(MilnorMonomial{BSeq::unit(n), Seq{}}, 1, 2);
}

/// P((i)) for odd p, Sq((i)) for p = 2; P(0) = Sq(0) = 1.
inline Element milnor_P(int i) {
    if (i < 0) throw std::invalid_argument("milnor_P: negative index");
    return Element::single(MilnorMonomial{BSeq{}, i == 0 ? Seq{} : Seq({i})}, 1, 2);
}

inline Element milnor_sq(int i) { return milnor_P(i); }

/// Degree if all monomials agree on it (zero element reports nullopt).
inline std::optional<long long> homogeneous_degree(const Element& x, int p) {
    std::optional<long long> d;
    for (const auto& [m, c] : x.terms()) {
        long long dm = m.degree(p);
        if (!d)
            d = dm;
        else if (*d != dm)
            return std::nullopt;
    }
    return d;
}

/// Smallest monomial weight appearing in x; nullopt for 0.  This is the
/// largest i with x in F_i once the weight description of the filtration is
/// in force.
inline std::optional<long long> min_weight(const Element& x, int p) {
    std::optional<long long> w;
    for (const auto& [m, c] : x.terms()) {
        long long wm = m.weight(p);
        if (!w || wm < *w) w = wm;
    }
    return w;
}

/// Canonical Milnor basis of degree n: monomials in (E, R) lexicographic order.
inline std::vector<MilnorMonomial> milnor_basis(int n, const PrimeContext& ctx) {
    std::vector<MilnorMonomial> out;
    for (auto& [e, r] : enumerate_milnor_index(n, ctx)) out.push_back(MilnorMonomial{e, r});
    return out;
}

/// Public addition with the degree guard: mixing two distinct homogeneous
/// degrees is almost always a bug in callers, so it throws.  Internal code
/// uses LinearCombo::plus directly when heterogeneity is intended.
inline Element element_add(const Element& a, const Element& b, const PrimeContext& ctx) {
    auto da = homogeneous_degree(a, ctx.p);
    auto db = homogeneous_degree(b, ctx.p);
    if (da && db && *da != *db)
        throw std::invalid_argument("element_add: degree mismatch " + std::to_string(*da) +
                                    " vs " + std::to_string(*db));
    return a.plus(b, ctx.p);
}

inline Element element_scale(const Element& a, int c, const PrimeContext& ctx) {
    return a.scaled(c, ctx.p);
}

namespace detail {

/// All Milnor matrices for P(R).P(S): x_{ij} (i >= 1 rows from R, j >= 1
/// columns from S) with sum_j p^j x_{ij} <= r_i and sum_i x_{ij} <= s_j;
/// x_{i0}, x_{0j} are the slacks.  Emits (coefficient, T) per matrix with
/// nonzero coefficient.
inline void milnor_matrices(const Seq& r, const Seq& s, int p,
                            const std::function<void(int, Seq)>& emit) {
    int rows = r.size(), cols = s.size();
    std::vector<long long> colsum(static_cast<size_t>(cols) + 1, 0);
    std::vector<std::vector<long long>> x(static_cast<size_t>(rows) + 1,
                                          std::vector<long long>(static_cast<size_t>(cols) + 1, 0));

    std::function<void(int)> do_row;
    auto finish = [&]() {
        // slacks
        for (int j = 1; j <= cols; ++j) x[0][static_cast<size_t>(j)] = s.at(j) - colsum[static_cast<size_t>(j)];
        // anti-diagonal coefficients and the product sequence
        int coeff = 1;
        std::vector<int> t(static_cast<size_t>(rows + cols), 0);
        for (int n = 1; n <= rows + cols && coeff != 0; ++n) {
            std::vector<long long> parts;
            long long tn = 0;
            for (int i = std::max(0, n - cols); i <= std::min(n, rows); ++i) {
                long long v = x[static_cast<size_t>(i)][static_cast<size_t>(n - i)];
                parts.push_back(v);
                tn += v;
            }
            coeff = fp_mul(coeff, multinomial_mod_p(parts, p), p);
            t[static_cast<size_t>(n) - 1] = static_cast<int>(tn);
        }
        if (coeff != 0) emit(coeff, Seq(std::move(t)));
    };

    do_row = [&](int i) {
        if (i > rows) {
            finish();
            return;
        }
        // enumerate x_{i1}..x_{i,cols} with sum_j p^j x_{ij} <= r_i and column budgets
        std::function<void(int, long long)> do_col = [&](int j, long long rem) {
            if (j > cols) {
                x[static_cast<size_t>(i)][0] = rem;  // x_{i0}
                do_row(i + 1);
                return;
            }
            long long pj = 1;
            for (int k = 0; k < j; ++k) pj *= p;
            long long maxv = std::min<long long>(rem / pj, s.at(j) - colsum[static_cast<size_t>(j)]);
            for (long long v = 0; v <= maxv; ++v) {
                x[static_cast<size_t>(i)][static_cast<size_t>(j)] = v;
                colsum[static_cast<size_t>(j)] += v;
                do_col(j + 1, rem - v * pj);
                colsum[static_cast<size_t>(j)] -= v;
            }
            x[static_cast<size_t>(i)][static_cast<size_t>(j)] = 0;
        };
        do_col(1, r.at(i));
    };
    do_row(1);
}

}  // namespace detail

/// Product of two Milnor monomials.  The right factor's exterior part is
/// commuted through the left polynomial part by
///   P(R) Q_k = sum_{j>=0} Q_{k+j} P(R - p^k E_j)   (E_0 = 0),
/// the exterior parts merge with the Koszul sign (zero on a repeated Q), and
/// the polynomial parts multiply by the Milnor-matrix sum.
inline Element milnor_product_mono(const MilnorMonomial& a, const MilnorMonomial& b,
                                   const PrimeContext& ctx) {
    const int p = ctx.p;
    ctx.check_degree(a.degree(p) + b.degree(p), "milnor_product");
    if (p == 2 && (!a.e.empty() || !b.e.empty()))
        throw std::invalid_argument("milnor_product: exterior part with p = 2");

    struct State {
        std::vector<int> qs;  // emitted Q indices, in operator order
        Seq r;
    };
    std::vector<State> states{{{}, a.r}};
    for (int k : b.e.support()) {
        std::vector<State> next;
        long long pk = 1;
        for (int t = 0; t < k; ++t) pk *= p;
        for (const State& st : states) {
            for (int j = 0; j <= st.r.size(); ++j) {
                std::optional<Seq> r2 =
                    (j == 0) ? std::optional<Seq>(st.r) : st.r.minus_at(j, pk);
                if (!r2) continue;
                State ns;
                ns.qs = st.qs;
                ns.qs.push_back(k + j);
                ns.r = std::move(*r2);
                next.push_back(std::move(ns));
            }
        }
        states = std::move(next);
    }

    Element result;
    std::vector<int> left = a.e.support();
    for (const State& st : states) {
        std::vector<int> all = left;
        all.insert(all.end(), st.qs.begin(), st.qs.end());
        int sign = sort_exterior_sign(all);
        if (sign == 0) continue;
        BSeq e_total = BSeq::from_support(all);
        detail::milnor_matrices(st.r, b.r, p, [&](int coeff, Seq t) {
            result.add_term(MilnorMonomial{e_total, std::move(t)},
                            static_cast<long long>(coeff) * sign, p);
        });
    }
    return result;
}

inline Element milnor_product(const Element& a, const Element& b, const PrimeContext& ctx) {
    Element result;
    for (const auto& [ma, ca] : a.terms())
        for (const auto& [mb, cb] : b.terms()) {
            Element prod = milnor_product_mono(ma, mb, ctx);
            for (const auto& [m, c] : prod.terms())
                result.add_term(m, static_cast<long long>(c) * ca % ctx.p * cb, ctx.p);
        }
    return result;
}

/// Coproduct: all splittings E = E' disjoint-union E'' and R = S + T, with the
/// Koszul sign of the exterior interleaving.
inline TensorElement milnor_coproduct_mono(const MilnorMonomial& m, const PrimeContext& ctx) {
    const int p = ctx.p;
    ctx.check_degree(m.degree(p), "milnor_coproduct");
    std::vector<int> sup = m.e.support();
    int k = static_cast<int>(sup.size());
    TensorElement out;

    std::vector<char> pick(static_cast<size_t>(k), 0);
    std::function<void(int)> split_e = [&](int t) {
        if (t == k) {
            std::vector<int> le, re;
            for (int u = 0; u < k; ++u)
                (pick[static_cast<size_t>(u)] ? le : re).push_back(sup[static_cast<size_t>(u)]);
            int sign = split_sign(pick);
            // split R additively
            int len = m.r.size();
            std::vector<int> s(static_cast<size_t>(len), 0);
            std::function<void(int)> split_r = [&](int i) {
                if (i > len) {
                    std::vector<int> tpart(static_cast<size_t>(len), 0);
                    for (int u = 1; u <= len; ++u)
                        tpart[static_cast<size_t>(u) - 1] = m.r.at(u) - s[static_cast<size_t>(u) - 1];
                    out.add_term(TensorMono<MilnorMonomial>{
                                     MilnorMonomial{BSeq::from_support(le), Seq(s)},
                                     MilnorMonomial{BSeq::from_support(re), Seq(std::move(tpart))}},
                                 sign, p);
                    return;
                }
                for (int v = 0; v <= m.r.at(i); ++v) {
                    s[static_cast<size_t>(i) - 1] = v;
                    split_r(i + 1);
                }
                s[static_cast<size_t>(i) - 1] = 0;
            };
            split_r(1);
            return;
        }
        pick[static_cast<size_t>(t)] = 1;
        split_e(t + 1);
        pick[static_cast<size_t>(t)] = 0;
        split_e(t + 1);
    };
    split_e(0);
    return out;
}

inline TensorElement milnor_coproduct(const Element& x, const PrimeContext& ctx) {
    TensorElement out;
    for (const auto& [m, c] : x.terms()) {
        TensorElement d = milnor_coproduct_mono(m, ctx);
        for (const auto& [t, k] : d.terms()) out.add_term(t, static_cast<long long>(k) * c, ctx.p);
    }
    return out;
}

/// The p-th root map: Q(E) P(R) -> P(R/p) when E = 0 and p | R, else 0.
/// Input must be homogeneous of degree divisible by p (degree p j -> degree j).
inline Element pth_root(const Element& x, const PrimeContext& ctx) {
    if (x.is_zero()) return x;
    auto d = homogeneous_degree(x, ctx.p);
    if (!d) throw std::invalid_argument("pth_root: non-homogeneous input");
    if (*d % ctx.p != 0)
        throw std::invalid_argument("pth_root: degree " + std::to_string(*d) +
                                    " not divisible by p");
    Element out;
    for (const auto& [m, c] : x.terms()) {
        if (!m.e.empty() || !m.r.divisible_by(ctx.p)) continue;
        out.add_term(MilnorMonomial{BSeq{}, m.r.divided_by(ctx.p)}, c, ctx.p);
    }
    return out;
}

/// Evaluate a word as an iterated product of the generators beta = Q_0 and
/// P^i (Sq^i at p = 2).  The word need not be admissible.
inline Element word_to_milnor(const Word& w, const PrimeContext& ctx) {
    require_shape(w, ctx.p, "word_to_milnor");
    ctx.check_degree(word_degree(w, ctx.p), "word_to_milnor");
    Element acc = milnor_unit();
    auto mul_by = [&](const Element& g) { acc = milnor_product(acc, g, ctx); };
    if (ctx.p == 2) {
        for (int s = 1; s <= w.length(); ++s)
            if (w.op(s) > 0) mul_by(milnor_P(w.op(s)));
        return acc;
    }
    if (w.eps(0)) mul_by(milnor_Q(0));
    for (int s = 1; s <= w.length(); ++s) {
        if (w.op(s) > 0) mul_by(milnor_P(w.op(s)));
        if (w.eps(s)) mul_by(milnor_Q(0));
    }
    return acc;
}

}  // namespace steenrod

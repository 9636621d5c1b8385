#pragma once

#include <memory>
#include <random>
#include <string>

#include "steenrod/element.hpp"

namespace steenrod {

/// One generator of a finite graded-commutative test algebra.  Parity drives
/// the Koszul signs; truncation bounds the exponent (g^truncation = 0), and
/// odd-parity generators square to zero at odd p regardless.
struct TestRingGen {
    std::string name;
    int degree = 0;
    int parity = 0;
    int truncation = 2;
};

/// Monomial in a test ring: exponent vector over the generators, trailing
/// zeros trimmed so equal monomials compare equal.
struct RingMono {
    std::vector<int> exps;

    static RingMono canon(std::vector<int> v) {
        while (!v.empty() && v.back() == 0) v.pop_back();
        return RingMono{std::move(v)};
    }

    friend auto operator<=>(const RingMono&, const RingMono&) = default;
};

using RingElement = LinearCombo<RingMono>;

/// Finite-dimensional graded-commutative F_p-algebra presented by generators
/// with degrees, parities and nilpotency truncations.
class GradedTestRing {
    int p_;
    std::string name_;
    std::vector<TestRingGen> gens_;

public:
    GradedTestRing(int p, std::string name, std::vector<TestRingGen> gens)
        : p_(p), name_(std::move(name)), gens_(std::move(gens)) {
        for (auto& g : gens_) {
            if (g.truncation < 1) throw std::invalid_argument("test ring: bad truncation");
            if (p_ != 2 && g.parity == 1) g.truncation = std::min(g.truncation, 2);
        }
    }

    int prime() const { return p_; }
    const std::string& name() const { return name_; }
    const std::vector<TestRingGen>& gens() const { return gens_; }

    RingElement unit() const { return RingElement::single(RingMono{}, 1, p_); }

    RingElement gen(size_t k) const {
        std::vector<int> v(gens_.size(), 0);
        v[k] = 1;
        return RingElement::single(RingMono::canon(std::move(v)), 1, p_);
    }

    long long mono_degree(const RingMono& m) const {
        long long d = 0;
        for (size_t k = 0; k < m.exps.size(); ++k)
            d += static_cast<long long>(m.exps[k]) * gens_[k].degree;
        return d;
    }

    int mono_parity(const RingMono& m) const {
        int s = 0;
        for (size_t k = 0; k < m.exps.size(); ++k) s += m.exps[k] * gens_[k].parity;
        return s % 2;
    }

    int parity(const RingElement& x) const {
        int par = -1;
        for (const auto& [m, c] : x.terms()) {
            int pm = mono_parity(m);
            if (par < 0) par = pm;
            if (par != pm) throw std::invalid_argument("test ring: mixed parity");
        }
        return par < 0 ? 0 : par;
    }

    RingElement mul_mono(const RingMono& a, const RingMono& b) const {
        // Koszul sign: odd factors of b move left past odd factors of a
        int inversions = 0;
        RingMono m;
        m.exps.assign(gens_.size(), 0);
        for (size_t k = 0; k < gens_.size(); ++k) {
            int ae = k < a.exps.size() ? a.exps[k] : 0;
            int be = k < b.exps.size() ? b.exps[k] : 0;
            int e = ae + be;
            if (e >= gens_[k].truncation) return RingElement{};
            if (p_ != 2 && gens_[k].parity == 1 && e > 1) return RingElement{};
            m.exps[k] = e;
        }
        if (p_ != 2) {
            for (size_t kb = 0; kb < gens_.size(); ++kb) {
                int be = kb < b.exps.size() ? b.exps[kb] : 0;
                if (!(gens_[kb].parity == 1 && be % 2 == 1)) continue;
                for (size_t ka = kb + 1; ka < gens_.size(); ++ka) {
                    int ae = ka < a.exps.size() ? a.exps[ka] : 0;
                    if (gens_[ka].parity == 1 && ae % 2 == 1) ++inversions;
                }
            }
        }
        return RingElement::single(RingMono::canon(std::move(m.exps)),
                                   inversions % 2 ? p_ - 1 : 1, p_);
    }

    RingElement mul(const RingElement& a, const RingElement& b) const {
        RingElement out;
        for (const auto& [ma, ca] : a.terms())
            for (const auto& [mb, cb] : b.terms()) {
                RingElement prod = mul_mono(ma, mb);
                for (const auto& [m, c] : prod.terms())
                    out.add_term(m, static_cast<long long>(c) * ca % p_ * cb, p_);
            }
        return out;
    }

    RingElement pow(const RingElement& a, long long e) const {
        RingElement r = unit();
        for (long long t = 0; t < e; ++t) r = mul(r, a);
        return r;
    }

    /// All monomials of one degree (the ring is finite-dimensional).
    std::vector<RingMono> monomials_of_degree(long long d) const {
        std::vector<RingMono> out;
        RingMono cur;
        cur.exps.assign(gens_.size(), 0);
        std::function<void(size_t, long long)> rec = [&](size_t k, long long rem) {
            if (k == gens_.size()) {
                if (rem == 0) out.push_back(RingMono::canon(cur.exps));
                return;
            }
            int maxe = gens_[k].truncation - 1;
            if (p_ != 2 && gens_[k].parity == 1) maxe = std::min(maxe, 1);
            for (int e = 0; e <= maxe; ++e) {
                long long used = static_cast<long long>(e) * gens_[k].degree;
                // degrees may be negative in principle; only prune on positive ones
                if (gens_[k].degree > 0 && used > rem && rem >= 0 && e > 0) break;
                cur.exps[k] = e;
                rec(k + 1, rem - used);
            }
            cur.exps[k] = 0;
        };
        rec(0, d);
        std::sort(out.begin(), out.end());
        return out;
    }

    /// Deterministic random element of one degree component.
    RingElement random_element(long long degree, std::mt19937_64& rng) const {
        RingElement out;
        for (const auto& m : monomials_of_degree(degree))
            out.add_term(m, static_cast<int>(rng() % static_cast<unsigned>(p_)), p_);
        return out;
    }

    bool homogeneous_of_degree(const RingElement& x, long long d) const {
        for (const auto& [m, c] : x.terms())
            if (mono_degree(m) != d) return false;
        return true;
    }
};

/// Default test ring (a): F_p[y]/(y^4) with deg y = 1 at p = 2 and deg y = 2
/// at odd p (an odd-degree polynomial generator would not be
/// graded-commutative at odd p).
inline GradedTestRing default_ring_a(int p) {
    int deg = (p == 2) ? 1 : 2;
    return GradedTestRing(p, "poly", {{"y", deg, deg % 2, 4}});
}

/// Default test ring (b): E(z) (x) F_p[w]/(w^8) with deg z = 1, deg w = 2.
inline GradedTestRing default_ring_b(int p) {
    return GradedTestRing(p, "ext-poly", {{"z", 1, 1, 2}, {"w", 2, 0, 8}});
}

}  // namespace steenrod

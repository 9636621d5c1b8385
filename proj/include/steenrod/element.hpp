#pragma once

#include <compare>
#include <map>

#include "steenrod/fp.hpp"

namespace steenrod {

/// Sparse F_p-linear combination of monomials.  Monomials need a strict weak
/// order via <=>; coefficients are kept in 0..p-1 with zeros erased, so equal
/// combinations compare equal as maps.
template <typename Mono>
class LinearCombo {
    std::map<Mono, int> terms_;

public:
    LinearCombo() = default;

    static LinearCombo single(Mono m, int c, int p) {
        LinearCombo x;
        x.add_term(std::move(m), c, p);
        return x;
    }

    // The rvalue overload returns by value so that iterating the terms of a
    // freshly computed combination keeps the map alive for the loop.
    const std::map<Mono, int>& terms() const& { return terms_; }
    std::map<Mono, int> terms() && { return std::move(terms_); }
    bool is_zero() const { return terms_.empty(); }
    size_t term_count() const { return terms_.size(); }

    int coeff(const Mono& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? 0 : it->second;
    }

    void add_term(Mono m, long long c, int p) {
        int cc = fp_reduce(c, p);
        if (cc == 0) return;
        auto [it, inserted] = terms_.emplace(std::move(m), cc);
        if (!inserted) {
            it->second = fp_add(it->second, cc, p);
            if (it->second == 0) terms_.erase(it);
        }
    }

    LinearCombo plus(const LinearCombo& o, int p) const {
        LinearCombo r = *this;
        for (const auto& [m, c] : o.terms_) r.add_term(m, c, p);
        return r;
    }

    LinearCombo minus(const LinearCombo& o, int p) const {
        LinearCombo r = *this;
        for (const auto& [m, c] : o.terms_) r.add_term(m, p - c, p);
        return r;
    }

    LinearCombo scaled(int c, int p) const {
        LinearCombo r;
        for (const auto& [m, k] : terms_) r.add_term(m, static_cast<long long>(k) * c, p);
        return r;
    }

    friend bool operator==(const LinearCombo&, const LinearCombo&) = default;
    friend auto operator<=>(const LinearCombo&, const LinearCombo&) = default;
};

/// Monomial of a two-sided tensor; Koszul signs live in the coefficients.
template <typename M>
struct TensorMono {
    M left;
    M right;
    friend auto operator<=>(const TensorMono&, const TensorMono&) = default;
};

template <typename M>
struct Tensor3Mono {
    M a, b, c;
    friend auto operator<=>(const Tensor3Mono&, const Tensor3Mono&) = default;
};

}  // namespace steenrod

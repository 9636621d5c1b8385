#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>

#include "steenrod/linalg.hpp"
#include "steenrod/milnor.hpp"

namespace steenrod {

/// Descending order on the packed word form, so map iteration follows the
/// canonical listing order within a degree.
struct WordCanonicalLess {
    bool operator()(const Word& a, const Word& b) const { return word_canonical_before(a, b); }
};

/// Homogeneous linear combination of admissible words.
struct AdmissibleElement {
    long long degree = 0;
    std::map<Word, int, WordCanonicalLess> terms;

    bool is_zero() const { return terms.empty(); }

    void add_term(const Word& w, long long c, const PrimeContext& ctx) {
        if (!is_admissible(w, ctx.p))
            throw std::invalid_argument("AdmissibleElement: word is not admissible");
        int cc = fp_reduce(c, ctx.p);
        if (cc == 0) return;
        auto [it, inserted] = terms.emplace(w, cc);
        if (!inserted) {
            it->second = fp_add(it->second, cc, ctx.p);
            if (it->second == 0) terms.erase(it);
        }
    }

    friend bool operator==(const AdmissibleElement&, const AdmissibleElement&) = default;
};

/// Change of basis between admissible words and Milnor monomials in one
/// degree.  Columns of milnor_from_admissible are the Milnor expansions of
/// the admissible words, both sides in canonical order.
struct ChangeOfBasis {
    int degree = 0;
    std::vector<Word> words;
    std::vector<MilnorMonomial> monomials;
    std::vector<Element> word_expansions;  // word_to_milnor of each word
    FpMat milnor_from_admissible;
    FpMat admissible_from_milnor;

    int mono_index(const MilnorMonomial& m) const {
        auto it = std::lower_bound(monomials.begin(), monomials.end(), m);
        if (it == monomials.end() || !(*it == m)) return -1;
        return static_cast<int>(it - monomials.begin());
    }

    std::vector<int> coordinates(const Element& x, int p) const {
        std::vector<int> v(monomials.size(), 0);
        for (const auto& [m, c] : x.terms()) {
            int i = mono_index(m);
            if (i < 0) throw std::invalid_argument("coordinates: monomial of wrong degree");
            v[static_cast<size_t>(i)] = fp_reduce(c, p);
        }
        return v;
    }
};

namespace detail {

/// Optional disk persistence hooks for the change-of-basis cache (wired up by
/// the serialization layer so core headers stay light).
struct CacheHooks {
    std::function<std::shared_ptr<const ChangeOfBasis>(int p, int n)> load;
    std::function<void(int p, const ChangeOfBasis&)> store;
};

inline CacheHooks& cache_hooks() {
    static CacheHooks hooks;
    return hooks;
}

}  // namespace detail

inline std::shared_ptr<const ChangeOfBasis> change_of_basis(int n, const PrimeContext& ctx) {
    ctx.check_degree(n, "change_of_basis");
    static std::mutex mu;
    static std::map<std::pair<int, int>, std::shared_ptr<const ChangeOfBasis>> cache;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find({ctx.p, n});
        if (it != cache.end()) return it->second;
    }
    std::shared_ptr<const ChangeOfBasis> loaded;
    if (detail::cache_hooks().load) loaded = detail::cache_hooks().load(ctx.p, n);
    if (!loaded) {
        auto cob = std::make_shared<ChangeOfBasis>();
        cob->degree = n;
        cob->words = enumerate_admissible(n, ctx);
        cob->monomials = milnor_basis(n, ctx);
        size_t dim = cob->monomials.size();
        if (cob->words.size() != dim)
            throw std::logic_error("basis theorem violated: count mismatch in degree " +
                                   std::to_string(n));
        FpMat mat(static_cast<int>(dim), static_cast<int>(dim), ctx.p);
        for (size_t j = 0; j < cob->words.size(); ++j) {
            Element x = word_to_milnor(cob->words[j], ctx);
            cob->word_expansions.push_back(x);
            for (const auto& [m, c] : x.terms()) {
                int i = cob->mono_index(m);
                if (i < 0) throw std::logic_error("change_of_basis: expansion left the degree");
                mat.at(i, static_cast<int>(j)) = c;
            }
        }
        auto inv = mat.inverse();
        if (!inv)
            throw std::logic_error("basis theorem violated: singular matrix in degree " +
                                   std::to_string(n));
        cob->milnor_from_admissible = std::move(mat);
        cob->admissible_from_milnor = std::move(*inv);
        if (detail::cache_hooks().store) detail::cache_hooks().store(ctx.p, *cob);
        loaded = std::move(cob);
    }
    std::lock_guard<std::mutex> lock(mu);
    auto [it, ok] = cache.emplace(std::make_pair(ctx.p, n), loaded);
    return it->second;
}

/// Unique admissible expansion of a homogeneous element.
inline AdmissibleElement milnor_to_admissible(const Element& x, const PrimeContext& ctx) {
    AdmissibleElement out;
    if (x.is_zero()) return out;
    auto d = homogeneous_degree(x, ctx.p);
    if (!d) throw std::invalid_argument("milnor_to_admissible: non-homogeneous input");
    out.degree = *d;
    auto cob = change_of_basis(static_cast<int>(*d), ctx);
    std::vector<int> coords = cob->coordinates(x, ctx.p);
    std::vector<int> adm = cob->admissible_from_milnor.times(coords);
    for (size_t j = 0; j < adm.size(); ++j)
        if (adm[j]) out.add_term(cob->words[j], adm[j], ctx);
    return out;
}

inline Element admissible_to_milnor(const AdmissibleElement& a, const PrimeContext& ctx) {
    Element x;
    for (const auto& [w, c] : a.terms) {
        Element e = word_to_milnor(w, ctx);
        for (const auto& [m, k] : e.terms()) x.add_term(m, static_cast<long long>(k) * c, ctx.p);
    }
    return x;
}

/// Smallest excess among the terms; this is the largest i with a in F_i.
inline long long element_excess(const AdmissibleElement& a, const PrimeContext& ctx) {
    if (a.is_zero()) throw std::invalid_argument("element_excess: zero element");
    bool first = true;
    long long e = 0;
    for (const auto& [w, c] : a.terms) {
        long long ew = word_excess(w, ctx.p);
        if (first || ew < e) e = ew;
        first = false;
    }
    return e;
}

/// Admissible expansion of an arbitrary word.  Every output term has excess
/// at least the excess of the input; that bound is asserted here.
inline AdmissibleElement rewrite_word(const Word& w, const PrimeContext& ctx) {
    AdmissibleElement out = milnor_to_admissible(word_to_milnor(w, ctx), ctx);
    long long e = word_excess(w, ctx.p);
    for (const auto& [term, c] : out.terms)
        if (word_excess(term, ctx.p) < e)
            throw std::logic_error("rewrite_word: excess bound violated");
    return out;
}

}  // namespace steenrod

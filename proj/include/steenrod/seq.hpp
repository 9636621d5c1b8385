#pragma once

#include <algorithm>
#include <compare>
#include <functional>
#include <stdexcept>
#include <vector>

#include "steenrod/fp.hpp"

namespace steenrod {

/// Finitely supported sequence (r_1, r_2, ...) of nonnegative integers,
/// 1-indexed, trailing zeros trimmed.
class Seq {
    std::vector<int> entries_;

    void trim() {
        while (!entries_.empty() && entries_.back() == 0) entries_.pop_back();
    }

public:
    Seq() = default;
    explicit Seq(std::vector<int> v) : entries_(std::move(v)) {
        for (int e : entries_)
            if (e < 0) throw std::invalid_argument("Seq entries must be nonnegative");
        trim();
    }

    /// E_n: the sequence with a single 1 in position n (1-indexed).  E_0 = 0.
    static Seq unit(int n) {
        if (n == 0) return Seq{};
        std::vector<int> v(static_cast<size_t>(n), 0);
        v[static_cast<size_t>(n) - 1] = 1;
        return Seq(std::move(v));
    }

    const std::vector<int>& entries() const { return entries_; }
    bool empty() const { return entries_.empty(); }
    int size() const { return static_cast<int>(entries_.size()); }

    /// r_i (1-indexed); zero beyond the support.
    int at(int i) const {
        return (i >= 1 && i <= size()) ? entries_[static_cast<size_t>(i) - 1] : 0;
    }

    /// |R| = sum of entries.
    long long sum() const {
        long long s = 0;
        for (int e : entries_) s += e;
        return s;
    }

    /// s(R) = (0, r_1, r_2, ...).
    Seq shifted() const {
        if (entries_.empty()) return Seq{};
        std::vector<int> v;
        v.reserve(entries_.size() + 1);
        v.push_back(0);
        v.insert(v.end(), entries_.begin(), entries_.end());
        return Seq(std::move(v));
    }

    bool divisible_by(int p) const {
        for (int e : entries_)
            if (e % p != 0) return false;
        return true;
    }

    /// (1/p)R; requires p | R.
    Seq divided_by(int p) const {
        std::vector<int> v = entries_;
        for (int& e : v) {
            if (e % p != 0) throw std::invalid_argument("Seq::divided_by: p does not divide R");
            e /= p;
        }
        return Seq(std::move(v));
    }

    Seq plus(const Seq& o) const {
        std::vector<int> v(std::max(entries_.size(), o.entries_.size()), 0);
        for (size_t i = 0; i < v.size(); ++i) v[i] = at(static_cast<int>(i) + 1) + o.at(static_cast<int>(i) + 1);
        return Seq(std::move(v));
    }

    /// Componentwise difference, or nullopt if any entry would go negative.
    std::optional<Seq> minus(const Seq& o) const {
        std::vector<int> v(std::max(entries_.size(), o.entries_.size()), 0);
        for (size_t i = 0; i < v.size(); ++i) {
            int d = at(static_cast<int>(i) + 1) - o.at(static_cast<int>(i) + 1);
            if (d < 0) return std::nullopt;
            v[i] = d;
        }
        return Seq(std::move(v));
    }

    /// Subtract amount at position i (1-indexed); nullopt if it would go negative.
    std::optional<Seq> minus_at(int i, long long amount) const {
        if (at(i) < amount) return std::nullopt;
        std::vector<int> v = entries_;
        if (static_cast<size_t>(i) > v.size()) v.resize(static_cast<size_t>(i), 0);
        v[static_cast<size_t>(i) - 1] -= static_cast<int>(amount);
        return Seq(std::move(v));
    }

    friend auto operator<=>(const Seq&, const Seq&) = default;
};

/// Finitely supported 0/1 sequence (eps_0, eps_1, ...), 0-indexed,
/// trailing zeros trimmed.
class BSeq {
    std::vector<int> entries_;

    void trim() {
        while (!entries_.empty() && entries_.back() == 0) entries_.pop_back();
    }

public:
    BSeq() = default;
    explicit BSeq(std::vector<int> v) : entries_(std::move(v)) {
        for (int e : entries_)
            if (e != 0 && e != 1) throw std::invalid_argument("BSeq entries must be 0 or 1");
        trim();
    }

    /// The sequence with a single 1 in position n (0-indexed).
    static BSeq unit(int n) {
        std::vector<int> v(static_cast<size_t>(n) + 1, 0);
        v[static_cast<size_t>(n)] = 1;
        return BSeq(std::move(v));
    }

    static BSeq from_support(const std::vector<int>& idx) {
        std::vector<int> v;
        for (int n : idx) {
            if (n < 0) throw std::invalid_argument("BSeq index must be nonnegative");
            if (static_cast<size_t>(n) >= v.size()) v.resize(static_cast<size_t>(n) + 1, 0);
            if (v[static_cast<size_t>(n)]) throw std::invalid_argument("BSeq repeated index");
            v[static_cast<size_t>(n)] = 1;
        }
        return BSeq(std::move(v));
    }

    const std::vector<int>& entries() const { return entries_; }
    bool empty() const { return entries_.empty(); }
    int size() const { return static_cast<int>(entries_.size()); }

    /// eps_n (0-indexed); zero beyond the support.
    int at(int n) const {
        return (n >= 0 && n < size()) ? entries_[static_cast<size_t>(n)] : 0;
    }

    long long sum() const {
        long long s = 0;
        for (int e : entries_) s += e;
        return s;
    }

    /// Ascending list of indices carrying a 1.
    std::vector<int> support() const {
        std::vector<int> idx;
        for (int n = 0; n < size(); ++n)
            if (entries_[static_cast<size_t>(n)]) idx.push_back(n);
        return idx;
    }

    /// (0, eps_0, eps_1, ...).
    BSeq shifted() const {
        if (entries_.empty()) return BSeq{};
        std::vector<int> v;
        v.reserve(entries_.size() + 1);
        v.push_back(0);
        v.insert(v.end(), entries_.begin(), entries_.end());
        return BSeq(std::move(v));
    }

    friend auto operator<=>(const BSeq&, const BSeq&) = default;
};

/// Sort a list of exterior indices, tracking the Koszul sign of the permutation.
/// Returns 0 if two indices coincide (exterior square), otherwise +-1 with the
/// sorted list written back.
inline int sort_exterior_sign(std::vector<int>& idx) {
    int sign = 1;
    for (size_t i = 1; i < idx.size(); ++i) {  // insertion sort; lists are short
        int v = idx[i];
        size_t j = i;
        while (j > 0 && idx[j - 1] > v) {
            idx[j] = idx[j - 1];
            --j;
            sign = -sign;
        }
        idx[j] = v;
        if (j > 0 && idx[j - 1] == v) return 0;
    }
    return sign;
}

/// Koszul sign of splitting an ordered list of odd generators into a left part
/// (positions where pick[t] is true) and a right part: the parity of pairs
/// where a right-factor choice precedes a left-factor choice.
inline int split_sign(const std::vector<char>& pick_left) {
    int inversions = 0;
    int rights_seen = 0;
    for (char c : pick_left) {
        if (c)
            inversions += rights_seen;
        else
            ++rights_seen;
    }
    return (inversions % 2 == 0) ? 1 : -1;
}

/// A monomial index word.
///
/// For p = 2 it is a plain sequence (j_1, ..., j_n) standing for
/// Sq^{j_1}...Sq^{j_n}.  For odd p it is the alternating record
/// (eps_0, i_1, eps_1, ..., i_n, eps_n) standing for
/// beta^{eps_0} P^{i_1} beta^{eps_1} ... P^{i_n} beta^{eps_n}.
/// The empty word is the unit in both shapes.
class Word {
    std::vector<int> ops_;  // i_1..i_n (p=2: j_1..j_n)
    std::vector<int> eps_;  // eps_0..eps_n; empty for the p=2 shape

    void canonicalize() {
        if (eps_.empty()) {
            while (!ops_.empty() && ops_.back() == 0) ops_.pop_back();
            return;
        }
        while (!ops_.empty() && ops_.back() == 0 && eps_.back() == 0) {
            ops_.pop_back();
            eps_.pop_back();
        }
        if (ops_.empty() && eps_.size() == 1 && eps_[0] == 0) eps_.clear();
    }

public:
    Word() = default;

    static Word sq(std::vector<int> js) {
        Word w;
        for (int j : js)
            if (j < 0) throw std::invalid_argument("Word entries must be nonnegative");
        w.ops_ = std::move(js);
        w.canonicalize();
        return w;
    }

    static Word odd(std::vector<int> eps, std::vector<int> ops) {
        if (eps.size() != ops.size() + 1)
            throw std::invalid_argument("odd word needs eps.size() == ops.size()+1");
        for (int e : eps)
            if (e != 0 && e != 1) throw std::invalid_argument("eps entries must be 0 or 1");
        for (int i : ops)
            if (i < 0) throw std::invalid_argument("Word entries must be nonnegative");
        Word w;
        w.eps_ = std::move(eps);
        w.ops_ = std::move(ops);
        w.canonicalize();
        return w;
    }

    static Word beta() { return odd({1}, {}); }

    bool is_unit() const { return ops_.empty() && eps_.empty(); }
    bool is_sq_shape() const { return eps_.empty(); }
    int length() const { return static_cast<int>(ops_.size()); }

    /// i_s, 1-indexed; zero beyond the support.
    int op(int s) const {
        return (s >= 1 && s <= length()) ? ops_[static_cast<size_t>(s) - 1] : 0;
    }

    /// eps_s, 0-indexed; zero for the p=2 shape and beyond the support.
    int eps(int s) const {
        return (s >= 0 && static_cast<size_t>(s) < eps_.size()) ? eps_[static_cast<size_t>(s)] : 0;
    }

    const std::vector<int>& ops() const { return ops_; }
    const std::vector<int>& eps_list() const { return eps_; }

    /// The packed form used for canonical ordering and serialization:
    /// (j_1..j_n) for the p=2 shape, (eps_0, i_1, eps_1, ..., i_n, eps_n) for odd p.
    std::vector<int> flattened() const {
        if (eps_.empty()) return ops_;
        std::vector<int> flat;
        flat.reserve(2 * ops_.size() + 1);
        flat.push_back(eps_[0]);
        for (size_t s = 0; s < ops_.size(); ++s) {
            flat.push_back(ops_[s]);
            flat.push_back(eps_[s + 1]);
        }
        return flat;
    }

    /// Rebuild an odd-shape word from its packed form.
    static Word from_flattened_odd(const std::vector<int>& flat) {
        if (flat.empty()) return Word{};
        if (flat.size() % 2 == 0)
            throw std::invalid_argument("packed odd word must have odd length");
        std::vector<int> eps, ops;
        eps.push_back(flat[0]);
        for (size_t t = 1; t + 1 < flat.size(); t += 2) {
            ops.push_back(flat[t]);
            eps.push_back(flat[t + 1]);
        }
        return odd(std::move(eps), std::move(ops));
    }

    friend auto operator<=>(const Word&, const Word&) = default;
};

inline void require_shape(const Word& w, int p, const char* where) {
    if (w.is_unit()) return;
    if (p == 2 && !w.is_sq_shape())
        throw std::invalid_argument(std::string(where) + ": odd-shape word with p = 2");
    if (p != 2 && w.is_sq_shape())
        throw std::invalid_argument(std::string(where) + ": p=2-shape word with odd p");
}

/// d_p(I) = 2(p-1) sum i_s + sum eps_s; d_2(J) = sum j_s.
inline long long word_degree(const Word& w, int p) {
    require_shape(w, p, "word_degree");
    long long d = 0;
    for (int s = 1; s <= w.length(); ++s) d += w.op(s);
    if (p == 2) return d;
    d *= 2 * (p - 1);
    for (int s = 0; s <= w.length(); ++s) d += w.eps(s);
    return d;
}

/// Excess, closed form: e_p(I) = 2 p i_1 + 2 eps_0 - d_p(I); e_2(J) = 2 j_1 - d_2(J).
inline long long word_excess(const Word& w, int p) {
    require_shape(w, p, "word_excess");
    if (p == 2) return 2LL * w.op(1) - word_degree(w, p);
    return 2LL * p * w.op(1) + 2LL * w.eps(0) - word_degree(w, p);
}

/// Excess, termwise form: sum eps_s + 2 sum (i_s - p i_{s+1} - eps_s)
/// (p = 2: sum (j_s - 2 j_{s+1})).  Agrees with word_excess; kept as an
/// independent cross-check.
inline long long word_excess_termwise(const Word& w, int p) {
    require_shape(w, p, "word_excess_termwise");
    long long e = 0;
    if (p == 2) {
        for (int s = 1; s <= w.length(); ++s) e += w.op(s) - 2LL * w.op(s + 1);
        return e;
    }
    for (int s = 0; s <= w.length(); ++s) e += w.eps(s);
    for (int s = 1; s <= w.length(); ++s)
        e += 2LL * (w.op(s) - static_cast<long long>(p) * w.op(s + 1) - w.eps(s));
    return e;
}

/// i_s >= p i_{s+1} + eps_s for odd p (i_{n+1} = 0); i_s >= 2 i_{s+1} for p = 2.
inline bool is_admissible(const Word& w, int p) {
    require_shape(w, p, "is_admissible");
    for (int s = 1; s <= w.length(); ++s) {
        long long bound = static_cast<long long>(p) * w.op(s + 1) + (p == 2 ? 0 : w.eps(s));
        if (w.op(s) < bound) return false;
    }
    return true;
}

/// The admissibility bijection: i_s = sum_{k>=s} (eps_k + j_k) p^{k-s}
/// (p = 2: i_s = sum_{k>=s} j_k 2^{k-s}).  Output is always admissible and
/// keeps the eps entries in place.
inline Word varrho(const Word& j, int p) {
    require_shape(j, p, "varrho");
    int n = j.length();
    std::vector<int> is(static_cast<size_t>(n), 0);
    for (int s = n; s >= 1; --s) {
        long long v = (p == 2) ? j.op(s) : (j.op(s) + j.eps(s));
        if (s < n) v += static_cast<long long>(p) * is[static_cast<size_t>(s)];
        is[static_cast<size_t>(s) - 1] = static_cast<int>(v);
    }
    if (p == 2) return Word::sq(std::move(is));
    std::vector<int> eps;
    eps.reserve(static_cast<size_t>(n) + 1);
    for (int s = 0; s <= n; ++s) eps.push_back(j.eps(s));
    if (j.is_unit()) return Word{};
    return Word::odd(std::move(eps), std::move(is));
}

/// Inverse of varrho; requires an admissible word.
inline Word varrho_inv(const Word& i, int p) {
    require_shape(i, p, "varrho_inv");
    if (!is_admissible(i, p)) throw std::invalid_argument("varrho_inv: not admissible");
    int n = i.length();
    std::vector<int> js(static_cast<size_t>(n), 0);
    for (int s = 1; s <= n; ++s) {
        long long v;
        if (s < n)
            v = i.op(s) - static_cast<long long>(p) * i.op(s + 1) - (p == 2 ? 0 : i.eps(s));
        else
            v = i.op(n) - (p == 2 ? 0 : i.eps(n));
        js[static_cast<size_t>(s) - 1] = static_cast<int>(v);
    }
    if (p == 2) return Word::sq(std::move(js));
    std::vector<int> eps;
    eps.reserve(static_cast<size_t>(n) + 1);
    for (int s = 0; s <= n; ++s) eps.push_back(i.eps(s));
    if (i.is_unit()) return Word{};
    return Word::odd(std::move(eps), std::move(js));
}

/// J_n = (0, p^{n-1}, 0, ..., 0, 1, 0), the admissible word of degree 2p^n - 2
/// and excess 2.
inline Word word_J(int n, int p) {
    if (p == 2 || n < 1) throw std::invalid_argument("word_J needs odd p and n >= 1");
    std::vector<int> ops(static_cast<size_t>(n));
    long long q = 1;
    for (int s = n; s >= 1; --s) {
        ops[static_cast<size_t>(s) - 1] = static_cast<int>(q);
        q *= p;
    }
    return Word::odd(std::vector<int>(static_cast<size_t>(n) + 1, 0), std::move(ops));
}

/// J'_n, same as J_n but with trailing beta; degree 2p^n - 1, excess 1.
inline Word word_Jprime(int n, int p) {
    Word j = word_J(n, p);
    std::vector<int> eps = j.eps_list();
    eps.back() = 1;
    return Word::odd(std::move(eps), j.ops());
}

/// K_n = (2^{n-1}, ..., 2, 1), the 2-admissible word of degree 2^n - 1, excess 1.
inline Word word_K(int n) {
    if (n < 1) throw std::invalid_argument("word_K needs n >= 1");
    std::vector<int> js(static_cast<size_t>(n));
    for (int s = 1; s <= n; ++s) js[static_cast<size_t>(s) - 1] = 1 << (n - s);
    return Word::sq(std::move(js));
}

/// Canonical listing order inside a fixed degree: descending lexicographic on
/// the packed form, so single-letter words come first.
inline bool word_canonical_before(const Word& a, const Word& b) {
    return a.flattened() > b.flattened();
}

/// Enumerate all (E, R) with sum eps_s (2p^s - 1) + sum 2 r_t (p^t - 1) = n for
/// odd p, or sum r_t (2^t - 1) = n with E empty for p = 2.  This one index set
/// drives both the Milnor-basis enumeration and, through varrho, the
/// admissible enumeration.
inline void enumerate_weighted_indices(int n, int p,
                                       const std::function<void(const BSeq&, const Seq&)>& emit) {
    if (n < 0) return;
    struct Pos {
        bool is_eps;
        int k;
        long long w;
    };
    std::vector<Pos> positions;
    if (p != 2) {
        long long pk = 1;  // p^k
        for (int k = 0; 2 * pk - 1 <= n; ++k, pk *= p) positions.push_back({true, k, 2 * pk - 1});
    }
    {
        long long pt = p;  // p^t
        for (int t = 1;; ++t, pt *= p) {
            long long w = (p == 2) ? (pt - 1) : 2 * (pt - 1);
            if (w > n) break;
            positions.push_back({false, t, w});
        }
    }
    // heaviest first keeps the recursion shallow
    std::sort(positions.begin(), positions.end(),
              [](const Pos& a, const Pos& b) { return a.w > b.w; });

    std::vector<int> mult(positions.size(), 0);
    std::function<void(size_t, long long)> rec = [&](size_t idx, long long rem) {
        if (idx == positions.size()) {
            if (rem != 0) return;
            std::vector<int> sup, rv;
            for (size_t t = 0; t < positions.size(); ++t) {
                if (mult[t] == 0) continue;
                if (positions[t].is_eps) {
                    sup.push_back(positions[t].k);
                } else {
                    int pos = positions[t].k;
                    if (static_cast<size_t>(pos) > rv.size())
                        rv.resize(static_cast<size_t>(pos), 0);
                    rv[static_cast<size_t>(pos) - 1] = mult[t];
                }
            }
            emit(BSeq::from_support(sup), Seq(std::move(rv)));
            return;
        }
        const Pos& pos = positions[idx];
        long long maxmult = pos.is_eps ? 1 : rem / pos.w;
        for (long long m = 0; m <= maxmult; ++m) {
            mult[idx] = static_cast<int>(m);
            rec(idx + 1, rem - m * pos.w);
        }
        mult[idx] = 0;
    };
    rec(0, n);
}

/// All Milnor index pairs (E, R) of degree exactly n, sorted by (E, R)
/// lexicographically.
inline std::vector<std::pair<BSeq, Seq>> enumerate_milnor_index(int n, const PrimeContext& ctx) {
    ctx.check_degree(n, "enumerate_milnor_index");
    std::vector<std::pair<BSeq, Seq>> out;
    enumerate_weighted_indices(n, ctx.p,
                               [&](const BSeq& e, const Seq& r) { out.emplace_back(e, r); });
    std::sort(out.begin(), out.end());
    return out;
}

/// All admissible words of degree exactly n in the canonical listing order.
inline std::vector<Word> enumerate_admissible(int n, const PrimeContext& ctx) {
    ctx.check_degree(n, "enumerate_admissible");
    std::vector<Word> out;
    enumerate_weighted_indices(n, ctx.p, [&](const BSeq& e, const Seq& r) {
        // reinterpret (E, R) as the word (eps_0, j_1, eps_1, ...) and map through varrho
        Word j;
        if (ctx.p == 2) {
            j = Word::sq(r.entries());
        } else {
            int len = std::max(r.size(), e.size() - 1);
            if (len == 0 && e.empty()) {
                j = Word{};
            } else {
                std::vector<int> eps(static_cast<size_t>(len) + 1, 0), ops(static_cast<size_t>(len), 0);
                for (int s = 0; s <= len; ++s) eps[static_cast<size_t>(s)] = e.at(s);
                for (int s = 1; s <= len; ++s) ops[static_cast<size_t>(s) - 1] = r.at(s);
                j = Word::odd(std::move(eps), std::move(ops));
            }
        }
        out.push_back(varrho(j, ctx.p));
    });
    std::sort(out.begin(), out.end(),
              [](const Word& a, const Word& b) { return word_canonical_before(a, b); });
    return out;
}

}  // namespace steenrod

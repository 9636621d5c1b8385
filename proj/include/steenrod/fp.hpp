#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace steenrod {

/// Thrown when a computation would exceed the configured degree cap.
class CapExceeded : public std::runtime_error {
public:
    explicit CapExceeded(const std::string& msg) : std::runtime_error(msg) {}
};

/// Ambient prime and global truncation bound shared by all computations.
/// Degreewise operations refuse inputs above degree_cap, so a context fixes
/// once and for all how far enumerations, products and verification sweeps go.
struct PrimeContext {
    int p = 2;
    int degree_cap = 64;

    static bool is_supported_prime(int q) {
        return q == 2 || q == 3 || q == 5 || q == 7 || q == 11 || q == 13;
    }

    static int default_cap(int q) { return q == 2 ? 64 : (q == 3 ? 60 : 50); }

    static PrimeContext make(int q, std::optional<int> cap = std::nullopt) {
        if (!is_supported_prime(q))
            throw std::invalid_argument("p must be a prime with 2 <= p <= 13, got " +
                                        std::to_string(q));
        PrimeContext ctx;
        ctx.p = q;
        ctx.degree_cap = cap.value_or(default_cap(q));
        if (ctx.degree_cap < 0) throw std::invalid_argument("degree_cap must be nonnegative");
        return ctx;
    }

    void check_degree(long long n, const char* where) const {
        if (n > degree_cap)
            throw CapExceeded(std::string(where) + ": degree " + std::to_string(n) +
                              " exceeds cap " + std::to_string(degree_cap));
    }
};

/// Least nonnegative representative of x mod p.
inline int fp_reduce(long long x, int p) {
    long long r = x % p;
    return static_cast<int>(r < 0 ? r + p : r);
}

inline int fp_add(int a, int b, int p) { return (a + b) % p; }
inline int fp_sub(int a, int b, int p) { return (a - b + p) % p; }
inline int fp_mul(int a, int b, int p) { return (a * b) % p; }
inline int fp_neg(int a, int p) { return a == 0 ? 0 : p - a; }

inline int fp_pow(int a, long long e, int p) {
    int r = 1 % p;
    a %= p;
    while (e > 0) {
        if (e & 1) r = fp_mul(r, a, p);
        a = fp_mul(a, a, p);
        e >>= 1;
    }
    return r;
}

/// Inverse by Fermat; a must be nonzero mod p.
inline int fp_inv(int a, int p) {
    a %= p;
    if (a == 0) throw std::domain_error("fp_inv: zero has no inverse");
    return fp_pow(a, p - 2, p);
}

/// C(n, k) mod p, base-p digitwise (Lucas).
inline int binomial_mod_p(long long n, long long k, int p) {
    if (k < 0 || n < 0 || k > n) return 0;
    int result = 1;
    while (n > 0 || k > 0) {
        int nd = static_cast<int>(n % p);
        int kd = static_cast<int>(k % p);
        if (kd > nd) return 0;
        long long c = 1;
        for (int i = 1; i <= kd; ++i) c = c * (nd - i + 1) / i;  // digits < 13, exact
        result = fp_mul(result, static_cast<int>(c % p), p);
        n /= p;
        k /= p;
    }
    return result;
}

/// multinomial(sum parts; parts) mod p via iterated Lucas binomials.
/// Empty list gives 1 by convention.  A negative part gives 0.
inline int multinomial_mod_p(const std::vector<long long>& parts, int p) {
    long long sum = 0;
    int result = 1;
    for (long long part : parts) {
        if (part < 0) return 0;
        sum += part;
        result = fp_mul(result, binomial_mod_p(sum, part, p), p);
        if (result == 0) return 0;
    }
    return result;
}

inline int multinomial_mod_p(const std::vector<long long>& parts, const PrimeContext& ctx) {
    return multinomial_mod_p(parts, ctx.p);
}

}  // namespace steenrod

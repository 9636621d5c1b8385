#include <catch2/catch_amalgamated.hpp>

#include "steenrod/fp.hpp"

using namespace steenrod;

namespace {

// Independent oracle: exact factorial quotient in 128-bit integers.
// Valid for sum(parts) <= 33 (33! < 2^128).
unsigned __int128 factorial128(int n) {
    unsigned __int128 f = 1;
    for (int i = 2; i <= n; ++i) f *= static_cast<unsigned>(i);
    return f;
}

int multinomial_oracle(const std::vector<long long>& parts, int p) {
    long long sum = 0;
    for (long long x : parts) sum += x;
    REQUIRE(sum <= 33);
    unsigned __int128 num = factorial128(static_cast<int>(sum));
    for (long long x : parts) num /= factorial128(static_cast<int>(x));
    return static_cast<int>(num % static_cast<unsigned>(p));
}

}  // namespace

TEST_CASE("prime context validation") {
    REQUIRE(PrimeContext::make(2).degree_cap == 64);
    REQUIRE(PrimeContext::make(3).degree_cap == 60);
    REQUIRE(PrimeContext::make(5).degree_cap == 50);
    REQUIRE(PrimeContext::make(7, 20).degree_cap == 20);
    REQUIRE_THROWS_AS(PrimeContext::make(4), std::invalid_argument);
    REQUIRE_THROWS_AS(PrimeContext::make(17), std::invalid_argument);
    REQUIRE_THROWS(PrimeContext::make(3, -1));
    REQUIRE_THROWS_AS(PrimeContext::make(2, 5).check_degree(6, "test"), CapExceeded);
}

TEST_CASE("field arithmetic") {
    for (int p : {2, 3, 5, 7, 11, 13})
        for (int a = 1; a < p; ++a) REQUIRE(fp_mul(a, fp_inv(a, p), p) == 1);
    REQUIRE(fp_reduce(-1, 7) == 6);
    REQUIRE(fp_pow(2, 10, 5) == 1024 % 5);
}

TEST_CASE("multinomial mod p: pinned values") {
    REQUIRE(multinomial_mod_p({1, 1}, 2) == 0);   // 2!/1!1! = 2
    REQUIRE(multinomial_mod_p({2, 2}, 2) == 0);   // C(4,2) = 6
    REQUIRE(multinomial_mod_p({1, 2}, 3) == 0);   // 3!/1!2! = 3
    REQUIRE(multinomial_mod_p({7}, 2) == 1);      // single part
    REQUIRE(multinomial_mod_p({0, 0}, 5) == 1);
    REQUIRE(multinomial_mod_p({}, 3) == 1);       // empty product convention
    REQUIRE(multinomial_mod_p({-1, 2}, 3) == 0);  // negative part vanishes
}

TEST_CASE("multinomial mod p agrees with the factorial oracle") {
    // multinomials are symmetric in the parts, so partitions cover everything
    // with sum <= 30
    std::vector<std::vector<long long>> partitions;
    std::vector<long long> cur;
    std::function<void(long long, long long)> gen = [&](long long rem, long long maxpart) {
        partitions.push_back(cur);
        for (long long x = std::min(rem, maxpart); x >= 1; --x) {
            cur.push_back(x);
            gen(rem - x, x);
            cur.pop_back();
        }
    };
    gen(30, 30);
    for (int p : {2, 3, 5, 7, 11, 13}) {
        long long checked = 0;
        for (const auto& parts : partitions) {
            REQUIRE(multinomial_mod_p(parts, p) == multinomial_oracle(parts, p));
            ++checked;
        }
        REQUIRE(checked > 5000);  // all partitions of every n <= 30
    }
}

TEST_CASE("binomial Lucas against direct computation") {
    for (int p : {2, 3, 5})
        for (long long n = 0; n <= 25; ++n)
            for (long long k = 0; k <= n; ++k) {
                unsigned __int128 c = factorial128(static_cast<int>(n)) /
                                      factorial128(static_cast<int>(k)) /
                                      factorial128(static_cast<int>(n - k));
                REQUIRE(binomial_mod_p(n, k, p) ==
                        static_cast<int>(c % static_cast<unsigned>(p)));
            }
    REQUIRE(binomial_mod_p(5, 7, 3) == 0);
    REQUIRE(binomial_mod_p(-2, 1, 3) == 0);
}

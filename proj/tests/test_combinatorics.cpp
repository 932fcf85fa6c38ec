#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <functional>
#include <set>

#include "hetnet/combinatorics.hpp"

using namespace hetnet;

namespace {

// independent oracle: count solutions of a*1 + b*2 + ... by recursion
long count_partitions(int n, int max_part) {
    if (n == 0) return 1;
    long c = 0;
    for (int p = std::min(n, max_part); p >= 1; --p)
        c += count_partitions(n - p, p);
    return c;
}

uint128 factorial(int n) {
    uint128 f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

// exact C(n,k): every intermediate value is itself a binomial coefficient
uint128 binom(int n, int k) {
    uint128 c = 1;
    for (int i = 1; i <= k; ++i) c = c * uint128(n - k + i) / uint128(i);
    return c;
}

}  // namespace

TEST_CASE("compositions3 base cases") {
    CHECK(compositions3(0).size() == 1);
    CHECK(compositions3(0)[0] == Composition3{0, 0, 0});
    const std::set<std::tuple<int, int, int>> expect2 = {
        {0, 0, 2}, {0, 1, 1}, {0, 2, 0}, {1, 0, 1}, {1, 1, 0}, {2, 0, 0}};
    std::set<std::tuple<int, int, int>> got;
    for (const auto& c : compositions3(2)) got.insert({c.n1, c.n2, c.n3});
    CHECK(got == expect2);
}

TEST_CASE("compositions3: count, uniqueness, order, sum invariants") {
    for (int n = 0; n <= 20; ++n) {
        const auto& cs = compositions3(n);
        CHECK(cs.size() == std::size_t((n + 1) * (n + 2) / 2));
        std::set<std::tuple<int, int, int>> seen;
        for (const auto& c : cs) {
            CHECK(c.n1 + c.n2 + c.n3 == n);
            CHECK(c.n1 >= 0);
            CHECK(c.n2 >= 0);
            CHECK(c.n3 >= 0);
            seen.insert({c.n1, c.n2, c.n3});
        }
        CHECK(seen.size() == cs.size());
        CHECK(std::is_sorted(seen.begin(), seen.end()));
        // returned order is lexicographic
        for (std::size_t i = 1; i < cs.size(); ++i) {
            const auto a = std::tuple{cs[i - 1].n1, cs[i - 1].n2, cs[i - 1].n3};
            const auto b = std::tuple{cs[i].n1, cs[i].n2, cs[i].n3};
            CHECK(a < b);
        }
    }
}

TEST_CASE("compositions3(9) has 55 members, brute-force cross-check") {
    int count = 0;
    for (int a = 0; a <= 9; ++a)
        for (int b = 0; a + b <= 9; ++b) ++count;  // c determined
    CHECK(count == 55);
    CHECK(compositions3(9).size() == 55);
}

TEST_CASE("weighted_partitions base cases") {
    CHECK(weighted_partitions(0).size() == 1);
    CHECK(weighted_partitions(0)[0].empty());
    const auto& p3 = weighted_partitions(3);
    std::set<WeightedPartition> got(p3.begin(), p3.end());
    const std::set<WeightedPartition> expect = {
        {3, 0, 0}, {1, 1, 0}, {0, 0, 1}};
    CHECK(got == expect);
}

TEST_CASE("weighted_partitions: cardinality p(n) and weight invariant") {
    for (int n = 0; n <= 20; ++n) {
        const auto& ps = weighted_partitions(n);
        CHECK(long(ps.size()) == count_partitions(n, n));
        std::set<WeightedPartition> seen;
        for (const auto& m : ps) {
            REQUIRE(int(m.size()) == n);
            int w = 0;
            for (int a = 1; a <= n; ++a) {
                CHECK(m[a - 1] >= 0);
                w += a * m[a - 1];
            }
            CHECK(w == n);
            seen.insert(m);
        }
        CHECK(seen.size() == ps.size());
    }
    CHECK(weighted_partitions(9).size() == 30);  // p(9)
}

TEST_CASE("multinomial exact values") {
    CHECK(multinomial(0, 0, 0, 0) == 1);
    CHECK(multinomial(3, 1, 1, 1) == 6);
    CHECK(multinomial(9, 3, 3, 3) == 1680);
    // factorial oracle on every composition of 12
    for (const auto& c : compositions3(12)) {
        const uint128 expect = factorial(12) / (factorial(c.n1) *
                                                factorial(c.n2) *
                                                factorial(c.n3));
        CHECK(multinomial(12, c.n1, c.n2, c.n3) == expect);
    }
    // n = 64 extremes stay exact in 128-bit (64! itself would overflow,
    // so cross-check against a product of binomial coefficients)
    CHECK(multinomial(64, 64, 0, 0) == 1);
    CHECK(multinomial(64, 21, 21, 22) == binom(64, 21) * binom(43, 21));
}

TEST_CASE("multinomial argument checking") {
    CHECK_THROWS(multinomial(5, 1, 1, 1));
    CHECK_THROWS(multinomial(65, 65, 0, 0));
    CHECK_THROWS(multinomial(4, -1, 3, 2));
}

TEST_CASE("sum of multinomials over compositions equals 3^n") {
    for (int n = 0; n <= 20; ++n) {
        uint128 sum = 0;
        for (const auto& c : compositions3(n))
            sum += multinomial(n, c.n1, c.n2, c.n3);
        uint128 pow3 = 1;
        for (int i = 0; i < n; ++i) pow3 *= 3;
        CHECK(sum == pow3);
    }
}

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "kfreewalk/arith.hpp"
#include "oracles.hpp"

using namespace kfreewalk;

TEST_CASE("gcd")
{
    CHECK(gcd(4, 6) == 2);
    CHECK(gcd(0, 7) == 7);
    CHECK(gcd(7, 0) == 7);
    CHECK(gcd(2, 8) == 2);  // (a − b, d^k) with a=4, b=2, d=2, k=3
    CHECK_THROWS_AS(gcd(0, 0), DomainError);
}

TEST_CASE("iroot is exact around perfect powers")
{
    for (unsigned k = 2; k <= 6; ++k) {
        for (std::uint64_t x = 1; x <= 200; ++x) {
            const std::uint64_t xk = oracle::pow(x, k);
            if (xk > (std::uint64_t{1} << 62)) {
                break;
            }
            CHECK(iroot(xk, k) == x);
            CHECK(iroot(xk - 1, k) == x - 1);
            CHECK(iroot(xk + 1, k) == x);
        }
    }
    CHECK(iroot(0, 3) == 0);
    CHECK(iroot(1, 3) == 1);
    CHECK(iroot(std::uint64_t{1} << 62, 2) == (std::uint64_t{1} << 31));
    CHECK(iroot(std::numeric_limits<std::uint64_t>::max(), 2) == 4294967295ULL);
    CHECK(iroot(std::numeric_limits<std::uint64_t>::max(), 3) == 2642245ULL);
}

TEST_CASE("mobius_sieve small values and oracle segment")
{
    const SieveTable mu = mobius_sieve(1, 100);
    CHECK(mu.kind() == SieveKind::mobius);
    CHECK(mu.size() == 100);
    CHECK(mu[1] == 1);
    CHECK(mu[6] == 1);
    CHECK(mu[12] == 0);
    CHECK(mu[30] == -1);
    CHECK(mu[97] == -1);
    for (std::uint64_t n = 1; n <= 100; ++n) {
        CHECK(mu[n] == oracle::mobius(n));
    }

    const std::uint64_t lo = 1000000;
    const SieveTable seg = mobius_sieve(lo, lo + 1000);
    for (std::uint64_t n = lo; n <= lo + 1000; ++n) {
        REQUIRE(seg[n] == oracle::mobius(n));
    }
}

TEST_CASE("mobius_sieve rejects bad ranges")
{
    CHECK_THROWS_AS(mobius_sieve(10, 9), DomainError);
    CHECK_THROWS_AS(mobius_sieve(0, 9), DomainError);
    CHECK_THROWS_AS(mobius_sieve(1, (std::uint64_t{1} << 62) + 1), DomainError);
}

TEST_CASE("kfree_sieve examples")
{
    CHECK(kfree_sieve(24, 24, 3).at(24) == 0);
    CHECK(kfree_sieve(36, 36, 3).at(36) == 1);

    const SieveTable sq = kfree_sieve(1, 10, 2);
    std::vector<std::uint64_t> free;
    for (std::uint64_t n = 1; n <= 10; ++n) {
        if (sq[n] != 0) {
            free.push_back(n);
        }
    }
    CHECK(free == std::vector<std::uint64_t>{1, 2, 3, 5, 6, 7, 10});

    CHECK_THROWS_AS(kfree_sieve(1, 10, 1), DomainError);
    CHECK_THROWS_AS(kfree_sieve(5, 4, 2), DomainError);
    CHECK_THROWS_AS(sq.at(11), std::out_of_range);
}

TEST_CASE("kfree flags match trial division")
{
    for (unsigned k = 2; k <= 5; ++k) {
        const SieveTable t = kfree_sieve(1, 20000, k);
        for (std::uint64_t n = 1; n <= 20000; ++n) {
            REQUIRE((t[n] != 0) == oracle::is_kfree(n, k));
        }
        const std::uint64_t lo = 987654321;
        const SieveTable far = kfree_sieve(lo, lo + 5000, k);
        for (std::uint64_t n = lo; n <= lo + 5000; ++n) {
            REQUIRE((far[n] != 0) == oracle::is_kfree(n, k));
        }
    }
}

TEST_CASE("k-free indicator equals sum of mu(d) over d^k | n")
{
    const SieveTable mu = mobius_sieve(1, 10000);
    for (unsigned k = 2; k <= 4; ++k) {
        const SieveTable kf = kfree_sieve(1, 10000, k);
        for (std::uint64_t n = 1; n <= 10000; ++n) {
            int s = 0;
            for (std::uint64_t d = 1; oracle::pow(d, k) <= n; ++d) {
                if (n % oracle::pow(d, k) == 0) {
                    s += mu[d];
                }
            }
            REQUIRE(s == kf[n]);
        }
    }
}

TEST_CASE("segmented output does not depend on segment boundaries")
{
    std::mt19937_64 gen(20240611);
    std::uniform_int_distribution<std::size_t> seg_len(1, 5000);
    const std::uint64_t N = 60000;
    const SieveTable whole_kf = kfree_sieve(1, N, 3, N);
    const SieveTable whole_mu = mobius_sieve(1, N, N);
    for (int trial = 0; trial < 10; ++trial) {
        const std::size_t seg = seg_len(gen);
        CHECK(kfree_sieve(1, N, 3, seg).values() == whole_kf.values());
        CHECK(mobius_sieve(1, N, seg).values() == whole_mu.values());
    }
    // Concatenation of an arbitrary partition into separately sieved pieces.
    std::vector<std::int8_t> joined;
    for (std::uint64_t lo = 1; lo <= N;) {
        const std::uint64_t hi = std::min<std::uint64_t>(N, lo + seg_len(gen));
        const auto piece = kfree_sieve(lo, hi, 3).values();
        joined.insert(joined.end(), piece.begin(), piece.end());
        lo = hi + 1;
    }
    CHECK(joined == whole_kf.values());
}

TEST_CASE("SieveTable enforces its length invariant")
{
    CHECK_THROWS_AS(SieveTable(SieveKind::kfree, 2, 1, 5, std::vector<std::int8_t>(4, 1)), DomainError);
}

TEST_CASE("zeta_k certified intervals")
{
    const CertifiedValue z2 = zeta_k(2, 1000);
    CHECK(z2.contains(std::numbers::pi * std::numbers::pi / 6.0));

    const CertifiedValue z3 = zeta_k(3, 1000000);
    CHECK(z3.tail_bound <= 5e-13);
    CHECK(z3.contains(oracle::kZeta3));
    CHECK(z3.value == doctest::Approx(1.2020569).epsilon(1e-7));

    const CertifiedValue one = zeta_k(3, 1);
    CHECK(one.value == 1.0);
    CHECK(one.tail_bound == 0.5);
    CHECK(one.contains(oracle::kZeta3));

    CHECK(zeta_k(4, 50).contains(oracle::kZeta4));
    CHECK_THROWS_AS(zeta_k(1, 10), DomainError);
}

TEST_CASE("zeta_k intervals are nested as terms grow")
{
    for (unsigned k = 2; k <= 5; ++k) {
        CertifiedValue prev = zeta_k(k, 1);
        for (std::uint64_t terms = 2; terms <= 4096; terms *= 2) {
            const CertifiedValue cur = zeta_k(k, terms);
            CHECK(cur.lower() >= prev.lower());
            CHECK(cur.upper() <= prev.upper());
            CHECK(cur.tail_bound <= prev.tail_bound);
            prev = cur;
        }
    }
}

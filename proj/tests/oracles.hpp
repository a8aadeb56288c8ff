#pragma once

// Brute-force references shared by the unit tests. Nothing here calls into
// the library.

#include <cstdint>
#include <vector>

namespace oracle {

inline bool is_kfree(std::uint64_t n, unsigned k)
{
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        unsigned e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        if (e >= k) {
            return false;
        }
    }
    return true;  // what remains is 1 or a single prime
}

inline int mobius(std::uint64_t n)
{
    int mu = 1;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            n /= p;
            if (n % p == 0) {
                return 0;
            }
            mu = -mu;
        }
    }
    return n > 1 ? -mu : mu;
}

inline bool is_prime(std::uint64_t n)
{
    if (n < 2) {
        return false;
    }
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            return false;
        }
    }
    return true;
}

inline std::uint64_t gcd(std::uint64_t a, std::uint64_t b)
{
    while (b) {
        const auto t = a % b;
        a = b;
        b = t;
    }
    return a;
}

inline std::uint64_t pow(std::uint64_t b, unsigned e)
{
    std::uint64_t r = 1;
    while (e--) {
        r *= b;
    }
    return r;
}

// Truncated Euler product for θ_k(a, b, r) over primes <= limit, with
// primality by trial division.
inline long double theta_product(unsigned k, std::uint64_t a, std::uint64_t b, std::uint64_t r,
                                 std::uint64_t limit)
{
    long double prod = 1.0L;
    for (std::uint64_t p = 2; p <= limit; ++p) {
        if (!is_prime(p)) {
            continue;
        }
        const std::uint64_t pk = pow(p, k);
        const std::uint64_t g = gcd(gcd(a, b), pk);
        if (r % g != 0) {
            continue;
        }
        prod *= 1.0L - static_cast<long double>(g) / static_cast<long double>(pk);
    }
    return prod;
}

inline constexpr double kZeta2 = 1.6449340668482264;  // π²/6
inline constexpr double kZeta3 = 1.2020569031595942;
inline constexpr double kZeta4 = 1.0823232337111382;  // π⁴/90

}  // namespace oracle

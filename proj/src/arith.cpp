#include "kfreewalk/arith.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

namespace kfreewalk {

namespace {

// Saturating power: returns UINT64_MAX once the value exceeds it.
std::uint64_t ipow_saturating(std::uint64_t base, unsigned exp) noexcept
{
    std::uint64_t result = 1;
    for (unsigned e = 0; e < exp; ++e) {
        if (base != 0 && result > std::numeric_limits<std::uint64_t>::max() / base) {
            return std::numeric_limits<std::uint64_t>::max();
        }
        result *= base;
    }
    return result;
}

// Whether base^exp <= n, without overflow.
bool power_at_most(std::uint64_t base, unsigned exp, std::uint64_t n) noexcept
{
    std::uint64_t result = 1;
    for (unsigned e = 0; e < exp; ++e) {
        if (base != 0 && result > n / base) {
            return false;
        }
        result *= base;
    }
    return true;
}

void check_range(std::uint64_t lo, std::uint64_t hi)
{
    if (lo < 1) {
        throw DomainError("sieve lower bound must be >= 1");
    }
    if (hi < lo) {
        throw DomainError("sieve upper bound must be >= lower bound");
    }
    if (hi > kMaxInteger) {
        throw DomainError("sieve upper bound exceeds 2^62");
    }
}

std::uint64_t first_multiple_at_least(std::uint64_t step, std::uint64_t lo) noexcept
{
    return ((lo + step - 1) / step) * step;
}

}  // namespace

std::uint64_t gcd(std::uint64_t m, std::uint64_t n)
{
    if (m == 0 && n == 0) {
        throw DomainError("gcd(0, 0) is undefined");
    }
    while (n != 0) {
        const std::uint64_t t = m % n;
        m = n;
        n = t;
    }
    return m;
}

std::uint64_t iroot(std::uint64_t n, unsigned k)
{
    if (k == 0) {
        throw DomainError("iroot: k must be >= 1");
    }
    if (k == 1 || n < 2) {
        return n;
    }
    // Start from a power of two that is >= the root, then Newton decreases
    // monotonically to floor(n^(1/k)).
    const unsigned bits = 64 - static_cast<unsigned>(std::countl_zero(n));
    const unsigned shift = (bits + k - 1) / k;
    std::uint64_t x = shift >= 63 ? (std::uint64_t{1} << 62) : (std::uint64_t{1} << shift);
    while (true) {
        const std::uint64_t xk1 = ipow_saturating(x, k - 1);
        const std::uint64_t q = (xk1 == 0) ? n : n / xk1;
        const std::uint64_t y = ((k - 1) * x + q) / k;
        if (y >= x) {
            break;
        }
        x = y;
    }
    while (!power_at_most(x, k, n)) {
        --x;
    }
    while (power_at_most(x + 1, k, n)) {
        ++x;
    }
    return x;
}

std::uint64_t ipow_capped(std::uint64_t base, unsigned exp, std::uint64_t cap)
{
    const std::uint64_t v = ipow_saturating(base, exp);
    return v > cap ? 0 : v;
}

std::vector<std::uint64_t> primes_up_to(std::uint64_t limit)
{
    std::vector<std::uint64_t> primes;
    if (limit < 2) {
        return primes;
    }
    std::vector<bool> composite(limit + 1, false);
    for (std::uint64_t i = 2; i <= limit; ++i) {
        if (composite[i]) {
            continue;
        }
        primes.push_back(i);
        if (i <= limit / i) {
            for (std::uint64_t j = i * i; j <= limit; j += i) {
                composite[j] = true;
            }
        }
    }
    return primes;
}

SieveTable::SieveTable(SieveKind kind, unsigned k, std::uint64_t lo, std::uint64_t hi,
                       std::vector<std::int8_t> values)
    : kind_(kind), k_(k), lo_(lo), hi_(hi), values_(std::move(values))
{
    if (values_.size() != hi_ - lo_ + 1) {
        throw DomainError("SieveTable: length must equal hi - lo + 1");
    }
}

int SieveTable::at(std::uint64_t n) const
{
    if (!contains(n)) {
        throw std::out_of_range("SieveTable: index " + std::to_string(n) + " outside [" +
                                std::to_string(lo_) + ", " + std::to_string(hi_) + "]");
    }
    return values_[n - lo_];
}

SieveTable mobius_sieve(std::uint64_t lo, std::uint64_t hi, std::size_t segment)
{
    check_range(lo, hi);
    if (segment == 0) {
        throw DomainError("segment size must be positive");
    }
    const auto primes = primes_up_to(iroot(hi, 2));
    std::vector<std::int8_t> values(hi - lo + 1);
    std::vector<std::uint64_t> prod;

    for (std::uint64_t seg_lo = lo; seg_lo <= hi;) {
        const std::uint64_t seg_hi = std::min(hi, seg_lo + (segment - 1));
        const std::size_t len = seg_hi - seg_lo + 1;
        std::int8_t* mu = values.data() + (seg_lo - lo);
        std::fill(mu, mu + len, std::int8_t{1});
        prod.assign(len, 1);

        for (const std::uint64_t p : primes) {
            for (std::uint64_t m = first_multiple_at_least(p, seg_lo); m <= seg_hi; m += p) {
                mu[m - seg_lo] = static_cast<std::int8_t>(-mu[m - seg_lo]);
                prod[m - seg_lo] *= p;
            }
            if (p > seg_hi / p) {
                continue;
            }
            const std::uint64_t p2 = p * p;
            for (std::uint64_t m = first_multiple_at_least(p2, seg_lo); m <= seg_hi; m += p2) {
                mu[m - seg_lo] = 0;
            }
        }
        for (std::size_t i = 0; i < len; ++i) {
            // At most one prime factor above sqrt(hi) remains unaccounted for.
            if (mu[i] != 0 && prod[i] != seg_lo + i) {
                mu[i] = static_cast<std::int8_t>(-mu[i]);
            }
        }
        if (seg_hi == hi) {
            break;
        }
        seg_lo = seg_hi + 1;
    }
    return SieveTable(SieveKind::mobius, 0, lo, hi, std::move(values));
}

void kfree_segment(std::uint64_t lo, unsigned k, const std::vector<std::uint64_t>& primes,
                   std::vector<std::int8_t>& out)
{
    std::fill(out.begin(), out.end(), std::int8_t{1});
    if (out.empty()) {
        return;
    }
    const std::uint64_t hi = lo + (out.size() - 1);
    for (const std::uint64_t p : primes) {
        const std::uint64_t pk = ipow_capped(p, k, hi);
        if (pk == 0) {
            break;
        }
        for (std::uint64_t m = first_multiple_at_least(pk, lo); m <= hi; m += pk) {
            out[m - lo] = 0;
        }
    }
}

SieveTable kfree_sieve(std::uint64_t lo, std::uint64_t hi, unsigned k, std::size_t segment)
{
    if (k < 2) {
        throw DomainError("k must be at least 2");
    }
    check_range(lo, hi);
    if (segment == 0) {
        throw DomainError("segment size must be positive");
    }
    const auto primes = primes_up_to(iroot(hi, k));
    std::vector<std::int8_t> values(hi - lo + 1);
    std::vector<std::int8_t> buf;
    for (std::uint64_t seg_lo = lo; seg_lo <= hi;) {
        const std::uint64_t seg_hi = std::min(hi, seg_lo + (segment - 1));
        buf.resize(seg_hi - seg_lo + 1);
        kfree_segment(seg_lo, k, primes, buf);
        std::copy(buf.begin(), buf.end(), values.begin() + static_cast<std::ptrdiff_t>(seg_lo - lo));
        if (seg_hi == hi) {
            break;
        }
        seg_lo = seg_hi + 1;
    }
    return SieveTable(SieveKind::kfree, k, lo, hi, std::move(values));
}

CertifiedValue zeta_k(unsigned k, std::uint64_t terms)
{
    if (k < 2) {
        throw DomainError("k must be at least 2");
    }
    if (terms < 1) {
        throw DomainError("terms must be >= 1");
    }
    // Smallest terms first.
    CompensatedSum sum;
    for (std::uint64_t n = terms; n >= 1; --n) {
        sum.add(std::pow(static_cast<long double>(n), -static_cast<long double>(k)));
    }
    const double tail = std::pow(static_cast<double>(terms), 1.0 - k) / (k - 1.0);
    return CertifiedValue{static_cast<double>(sum.value()), tail};
}

}  // namespace kfreewalk

#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace kfreewalk {

/// Raised when an argument violates an operation's mathematical domain.
class DomainError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

/// Raised when a request is valid but exceeds a configured cost cap.
class RefusalError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Largest integer accepted by the sieves and walk positions (2^62).
inline constexpr std::uint64_t kMaxInteger = std::uint64_t{1} << 62;

/// Default sieve segment length (entries).
inline constexpr std::size_t kDefaultSegment = std::size_t{1} << 16;

std::uint64_t gcd(std::uint64_t m, std::uint64_t n);

/// floor(n^(1/k)) computed with integer Newton iteration; exact at perfect powers.
std::uint64_t iroot(std::uint64_t n, unsigned k);

/// base^exp, or 0 when the result would exceed `cap`.
std::uint64_t ipow_capped(std::uint64_t base, unsigned exp,
                          std::uint64_t cap = kMaxInteger);

/// Primes p <= limit, ascending (plain Eratosthenes).
std::vector<std::uint64_t> primes_up_to(std::uint64_t limit);

enum class SieveKind { mobius, kfree };

/// Immutable table of Möbius values or k-free flags over [lo, hi].
class SieveTable {
  public:
    SieveTable(SieveKind kind, unsigned k, std::uint64_t lo, std::uint64_t hi,
               std::vector<std::int8_t> values);

    SieveKind kind() const noexcept { return kind_; }
    /// Exponent for kfree tables; 0 for mobius tables.
    unsigned k() const noexcept { return k_; }
    std::uint64_t lo() const noexcept { return lo_; }
    std::uint64_t hi() const noexcept { return hi_; }
    std::size_t size() const noexcept { return values_.size(); }
    bool contains(std::uint64_t n) const noexcept { return n >= lo_ && n <= hi_; }

    /// Value at n; n must lie in [lo, hi].
    int operator[](std::uint64_t n) const noexcept { return values_[n - lo_]; }
    int at(std::uint64_t n) const;

    const std::vector<std::int8_t>& values() const noexcept { return values_; }

  private:
    SieveKind kind_;
    unsigned k_;
    std::uint64_t lo_;
    std::uint64_t hi_;
    std::vector<std::int8_t> values_;
};

/// μ(n) for n in [lo, hi], sieved segment by segment.
SieveTable mobius_sieve(std::uint64_t lo, std::uint64_t hi,
                        std::size_t segment = kDefaultSegment);

/// k-free flags for n in [lo, hi]: 1 iff no prime p has p^k | n.
SieveTable kfree_sieve(std::uint64_t lo, std::uint64_t hi, unsigned k,
                       std::size_t segment = kDefaultSegment);

/// Marks k-free flags for [lo, lo + out.size()) into `out` using the given
/// primes (which must cover every p with p^k <= lo + out.size() - 1).
void kfree_segment(std::uint64_t lo, unsigned k,
                   const std::vector<std::uint64_t>& primes,
                   std::vector<std::int8_t>& out);

/// A real number together with an absolute bound on its truncation error.
struct CertifiedValue {
    double value = 0.0;
    double tail_bound = 0.0;

    double lower() const noexcept { return value - tail_bound; }
    double upper() const noexcept { return value + tail_bound; }
    bool contains(double x) const noexcept { return x >= lower() && x <= upper(); }
};

/// Partial sum of ζ(k) over n <= terms with the integral tail bound
/// terms^(1-k)/(k-1).
CertifiedValue zeta_k(unsigned k, std::uint64_t terms);

/// Neumaier-compensated accumulator used by every finite sum in the library.
class CompensatedSum {
  public:
    void add(long double x) noexcept
    {
        const long double t = sum_ + x;
        if ((sum_ >= 0 ? sum_ : -sum_) >= (x >= 0 ? x : -x)) {
            comp_ += (sum_ - t) + x;
        } else {
            comp_ += (x - t) + sum_;
        }
        sum_ = t;
    }
    long double value() const noexcept { return sum_ + comp_; }

  private:
    long double sum_ = 0;
    long double comp_ = 0;
};

}  // namespace kfreewalk

#pragma once

#include <cstdint>
#include <vector>

#include "kfreewalk/arith.hpp"

namespace kfreewalk {

/// Parameters of an α-random walk started at r with steps a (prob. α) and
/// b (prob. 1 − α), observed through the k-free indicator.
struct WalkParams {
    unsigned k = 3;
    std::uint64_t a = 2;
    std::uint64_t b = 3;
    std::uint64_t r = 0;
    double alpha = 0.5;

    /// Throws DomainError naming the first violated invariant.
    void validate() const;

    /// Same walk with a > b; swapping the steps maps α to 1 − α.
    WalkParams normalized() const;
};

inline constexpr std::uint64_t kDefaultPrimeLimit = 100000;

enum class DensityKind { theta, beta, one_over_zeta };

/// A density in [0, 1] with a certified truncation-error bound.
struct DensityConstant {
    double value = 0.0;
    double tail_bound = 0.0;
    DensityKind kind = DensityKind::one_over_zeta;

    double lower() const noexcept { return value - tail_bound; }
    double upper() const noexcept { return value + tail_bound; }
    bool contains(double x) const noexcept { return x >= lower() && x <= upper(); }
};

/// 1/ζ(k) as the Euler product over p <= prime_limit.
DensityConstant one_over_zeta(unsigned k, std::uint64_t prime_limit = kDefaultPrimeLimit);

/// θ_k(a, b, r): product over primes p <= prime_limit with gcd(a,b,p^k) | r
/// of (1 − gcd(a,b,p^k)/p^k). The omitted primes shrink the product by at
/// most a factor 1 − gcd(a,b)·Σ_{n>L} n^(−k), which sets tail_bound. Never
/// reads alpha.
DensityConstant theta_k(const WalkParams& p, std::uint64_t prime_limit = kDefaultPrimeLimit);

/// Density of k-free numbers in the progression r mod q. Requires gcd(r, q)
/// to be k-free.
DensityConstant beta_k(unsigned k, std::uint64_t q, std::uint64_t r,
                       std::uint64_t prime_limit = kDefaultPrimeLimit);

/// Σ_{d <= (un+v)^(1/k), gcd(u,d^k) | v} μ(d)·gcd(u,d^k)/d^k.
double M_k(std::uint64_t n, std::uint64_t u, std::uint64_t v, unsigned k);

/// The arithmetic function f(i) attached to the walk (steps normalized so a > b).
double f_of_i(const WalkParams& p, std::uint64_t i);

/// f(1), ..., f(N) in one pass sharing a single Möbius table.
std::vector<double> f_values(const WalkParams& p, std::uint64_t N);

struct MeanF {
    double sum = 0.0;        ///< Σ_{i<=N} f(i)
    double predicted = 0.0;  ///< θ_k · N
    double residual = 0.0;   ///< sum − predicted
};

MeanF mean_f(const WalkParams& p, std::uint64_t N,
             std::uint64_t prime_limit = kDefaultPrimeLimit);

/// Residual of Σ f against θN at each requested N, plus the constant
/// C = max |residual| / N^(1/k) over the grid.
struct MeanFDiagnostic {
    std::vector<std::uint64_t> Ns;
    std::vector<MeanF> rows;
    double fitted_constant = 0.0;
};

MeanFDiagnostic mean_f_diagnostic(const WalkParams& p, const std::vector<std::uint64_t>& Ns,
                                  std::uint64_t prime_limit = kDefaultPrimeLimit);

}  // namespace kfreewalk

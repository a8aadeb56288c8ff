#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "kfreewalk/constants.hpp"

namespace kfreewalk {

inline constexpr std::size_t kCountSegment = std::size_t{1} << 20;

struct CountReport {
    std::uint64_t N = 0;
    unsigned k = 2;
    std::uint64_t q = 1;
    std::uint64_t r = 0;
    std::uint64_t count = 0;
    double density = 0.0;              ///< count / N
    std::optional<double> predicted;   ///< limiting density, when known
    std::optional<double> residual;    ///< density − predicted
};

struct CountOptions {
    std::size_t segment = kCountSegment;
    unsigned workers = 1;
    std::uint64_t prime_limit = kDefaultPrimeLimit;
};

/// Q_k(N): number of k-free n <= N, sieved in O(segment) memory.
CountReport count_kfree(std::uint64_t N, unsigned k, const CountOptions& opt = {});

/// Q_k(N; q, r): k-free n <= N with n ≡ r (mod q). predicted is the
/// progression density when gcd(r, q) is k-free and absent otherwise.
CountReport count_kfree_ap(std::uint64_t N, unsigned k, std::uint64_t q, std::uint64_t r,
                           const CountOptions& opt = {});

/// max over the grid of |density − 1/ζ(k)| / N^(1/k − 1).
double density_residual_constant(unsigned k, const std::vector<std::uint64_t>& Ns,
                                 const CountOptions& opt = {});

}  // namespace kfreewalk

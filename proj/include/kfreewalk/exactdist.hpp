#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "kfreewalk/constants.hpp"

namespace kfreewalk {

/// Binomial(n, α) probabilities, indexed by number of successes.
struct BinomialPMF {
    std::uint64_t n = 0;
    double alpha = 0.5;
    std::vector<double> weights;
};

/// Weights built by the multiplicative recurrence outward from the mode and
/// renormalized to sum 1; no factorials are formed.
BinomialPMF binom_pmf(std::uint64_t n, double alpha);

struct SumSplit {
    double exact = 0.0;
    double main = 0.0;
    double error = 0.0;  ///< exact − main
};

/// Binomial mass on l ≡ c (mod d) against the main term 1/d.
SumSplit binom_congruence_sum(std::uint64_t n, std::uint64_t d, std::int64_t c, double alpha);

/// Binomial mass on m with um + v k-free against M_k(n, u, v).
SumSplit kfree_binom_sum(std::uint64_t n, std::uint64_t u, std::uint64_t v, unsigned k,
                         double alpha);

/// E(X_i) = P(P_i is k-free).
double expect_Xi(const WalkParams& p, std::uint64_t i);

/// E(X_i X_j) = P(P_i and P_j both k-free), for 1 <= i < j. Cost O(i·(j − i)).
double expect_XiXj(const WalkParams& p, std::uint64_t i, std::uint64_t j);

enum class MomentMethod { binomial_sum, full_path_enumeration };

/// How the second moment is assembled by exact_moments.
enum class PairRoute {
    /// Backward recursion on the walk's Markov chain: O(N^2) in total.
    markov,
    /// Explicit Σ_{i<j} expect_XiXj: O(N^4), for cross-checking at small N.
    pairwise,
};

struct ExactMoments {
    WalkParams params;
    std::uint64_t N = 0;
    std::vector<double> e_xi;  ///< E(X_1), ..., E(X_N)
    double e_sbar = 0.0;
    std::optional<double> v_sbar;      ///< clamped at 0
    std::optional<double> v_sbar_raw;  ///< before clamping tiny negatives
    MomentMethod method = MomentMethod::binomial_sum;
};

inline constexpr std::uint64_t kDefaultPairCap = 3000;
inline constexpr std::uint64_t kPairwiseCap = 300;
inline constexpr std::uint64_t kOracleMaxN = 20;

/// E(S̄_N) from the binomial sums and, if requested, V(S̄_N) via
/// E(S̄²) − E(S̄)² with E(X_i²) = E(X_i). Refuses variance when N > pair_cap
/// (or N > kPairwiseCap for the pairwise route).
ExactMoments exact_moments(const WalkParams& p, std::uint64_t N, bool with_variance,
                           std::uint64_t pair_cap = kDefaultPairCap,
                           PairRoute route = PairRoute::markov);

/// Ground truth by enumerating all 2^N step sequences, with k-freeness
/// decided by trial division. N must be in [1, 20].
ExactMoments oracle_full_paths(const WalkParams& p, std::uint64_t N);

/// sup_{i<=N} |E(X_i) − f(i)| · sqrt(α(1−α)) · i^(1/2 − 1/k) for each
/// requested N (ascending), computed in one pass.
std::vector<double> expectation_gap_envelope(const WalkParams& p,
                                             const std::vector<std::uint64_t>& Ns);

}  // namespace kfreewalk

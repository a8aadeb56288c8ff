#pragma once

#include <atomic>
#include <cstdint>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "kfreewalk/constants.hpp"

namespace kfreewalk {

/// Lazily extended k-free table over [1, capacity], split into segments of
/// 2^16 entries. Segments are built under a mutex and published atomically,
/// so any number of threads may query while others extend it.
class KFreeCache {
  public:
    static constexpr unsigned kSegmentBits = 16;

    KFreeCache(unsigned k, std::uint64_t capacity);
    ~KFreeCache();

    KFreeCache(const KFreeCache&) = delete;
    KFreeCache& operator=(const KFreeCache&) = delete;

    unsigned k() const noexcept { return k_; }
    std::uint64_t capacity() const noexcept { return capacity_; }

    /// Builds every segment intersecting [1, hi]; hi must not exceed capacity.
    void ensure(std::uint64_t hi);

    bool is_kfree(std::uint64_t n) const
    {
        const std::int8_t* seg = segments_[n >> kSegmentBits].load(std::memory_order_acquire);
        if (seg == nullptr) {
            seg = build(n >> kSegmentBits);
        }
        return seg[n & kSegmentMask] != 0;
    }

    std::size_t built_segments() const;

  private:
    static constexpr std::uint64_t kSegmentLen = std::uint64_t{1} << kSegmentBits;
    static constexpr std::uint64_t kSegmentMask = kSegmentLen - 1;

    const std::int8_t* build(std::uint64_t index) const;

    unsigned k_;
    std::uint64_t capacity_;
    std::vector<std::uint64_t> primes_;
    std::size_t segment_count_;
    std::unique_ptr<std::atomic<const std::int8_t*>[]> segments_;
    mutable std::vector<std::unique_ptr<std::int8_t[]>> storage_;
    mutable std::mutex build_mutex_;
};

struct WalkResult {
    double sbar = 0.0;
    std::uint64_t hits = 0;
    std::uint64_t final_position = 0;
    std::uint64_t steps_a = 0;  ///< number of steps of size a
};

/// Largest position a walk of N steps can reach.
std::uint64_t max_position(const WalkParams& p, std::uint64_t N);

/// One walk of N steps. Step i (1-based) is a iff draw i−1 of
/// CounterRng(trial_seed), scaled to [0,1) with 53 bits, is < α.
WalkResult simulate_walk(const WalkParams& p, std::uint64_t N, std::uint64_t trial_seed);
WalkResult simulate_walk(const WalkParams& p, std::uint64_t N, std::uint64_t trial_seed,
                         const KFreeCache& cache);

struct TrialBatch {
    WalkParams params;
    std::uint64_t N = 0;
    std::uint64_t master_seed = 0;
    std::uint64_t trials = 0;
    std::vector<std::uint64_t> seeds;
    std::vector<std::uint64_t> hits;
    std::vector<double> sbar_values;
    double mean = 0.0;
    double sample_variance = 0.0;  ///< unbiased; 0 for a single trial
};

/// Worker count: `requested` if positive, else hardware concurrency capped by
/// KFREEWALK_THREADS when that is set.
unsigned resolve_workers(unsigned requested = 0);

/// Trial t uses trial_seed(master_seed, t). Output does not depend on the
/// worker count.
TrialBatch run_trials(const WalkParams& p, std::uint64_t N, std::uint64_t trials,
                      std::uint64_t master_seed, unsigned workers = 0);

struct DecayFit {
    std::vector<std::uint64_t> Ns;
    std::vector<double> means;
    std::vector<double> variances;
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    std::vector<std::uint64_t> dropped;  ///< grid points with zero variance
    std::vector<std::string> warnings;
};

/// Independent batch per grid point (seeded from master_seed and the grid
/// index), then a least-squares fit of log V against log N.
DecayFit variance_decay(const WalkParams& p, const std::vector<std::uint64_t>& Ns,
                        std::uint64_t trials_per_N, std::uint64_t master_seed,
                        unsigned workers = 0);

struct ConvergenceRow {
    std::uint64_t N = 0;
    double mean = 0.0;
    double abs_gap = 0.0;
    double sample_std = 0.0;
};

struct ConvergenceReport {
    DensityConstant theta;
    std::vector<ConvergenceRow> rows;
};

/// run_trials with the same master seed at every N of an ascending grid.
ConvergenceReport convergence_report(const WalkParams& p, const std::vector<std::uint64_t>& Ns,
                                     std::uint64_t trials, std::uint64_t master_seed,
                                     std::uint64_t prime_limit = kDefaultPrimeLimit,
                                     unsigned workers = 0);

}  // namespace kfreewalk

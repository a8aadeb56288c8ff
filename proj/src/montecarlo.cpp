#include "kfreewalk/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <thread>

#include "kfreewalk/fit.hpp"
#include "kfreewalk/rng.hpp"

namespace kfreewalk {

KFreeCache::KFreeCache(unsigned k, std::uint64_t capacity)
    : k_(k),
      capacity_(capacity),
      primes_(),
      segment_count_(0),
      segments_(),
      storage_()
{
    if (k < 2) {
        throw DomainError("k must be at least 2");
    }
    if (capacity < 1 || capacity > kMaxInteger) {
        throw DomainError("cache capacity must lie in [1, 2^62]");
    }
    primes_ = primes_up_to(iroot(capacity, k));
    segment_count_ = static_cast<std::size_t>((capacity >> kSegmentBits) + 1);
    segments_ = std::make_unique<std::atomic<const std::int8_t*>[]>(segment_count_);
    for (std::size_t i = 0; i < segment_count_; ++i) {
        segments_[i].store(nullptr, std::memory_order_relaxed);
    }
}

KFreeCache::~KFreeCache() = default;

void KFreeCache::ensure(std::uint64_t hi)
{
    if (hi > capacity_) {
        throw DomainError("KFreeCache::ensure beyond capacity");
    }
    for (std::uint64_t idx = 0; idx <= (hi >> kSegmentBits); ++idx) {
        if (segments_[idx].load(std::memory_order_acquire) == nullptr) {
            build(idx);
        }
    }
}

const std::int8_t* KFreeCache::build(std::uint64_t index) const
{
    std::lock_guard<std::mutex> lock(build_mutex_);
    if (const auto* seg = segments_[index].load(std::memory_order_acquire)) {
        return seg;
    }
    const std::uint64_t lo = index << kSegmentBits;
    std::vector<std::int8_t> buf(kSegmentLen);
    kfree_segment(lo, k_, primes_, buf);
    auto mem = std::make_unique<std::int8_t[]>(kSegmentLen);
    std::copy(buf.begin(), buf.end(), mem.get());
    const std::int8_t* raw = mem.get();
    storage_.push_back(std::move(mem));
    segments_[index].store(raw, std::memory_order_release);
    return raw;
}

std::size_t KFreeCache::built_segments() const
{
    std::lock_guard<std::mutex> lock(build_mutex_);
    return storage_.size();
}

std::uint64_t max_position(const WalkParams& p, std::uint64_t N)
{
    const std::uint64_t step = std::max(p.a, p.b);
    if (N != 0 && step > (kMaxInteger - p.r) / N) {
        throw DomainError("walk positions would exceed 2^62");
    }
    return p.r + step * N;
}

WalkResult simulate_walk(const WalkParams& p, std::uint64_t N, std::uint64_t trial_seed,
                         const KFreeCache& cache)
{
    p.validate();
    if (N < 1) {
        throw DomainError("N must be at least 1");
    }
    if (cache.k() != p.k) {
        throw DomainError("cache built for a different k");
    }
    if (max_position(p, N) > cache.capacity()) {
        throw DomainError("cache capacity below the walk's reach");
    }
    CounterRng rng(trial_seed);
    WalkResult out;
    std::uint64_t pos = p.r;
    for (std::uint64_t i = 0; i < N; ++i) {
        if (rng.uniform() < p.alpha) {
            pos += p.a;
            ++out.steps_a;
        } else {
            pos += p.b;
        }
        out.hits += cache.is_kfree(pos) ? 1U : 0U;
    }
    out.final_position = pos;
    out.sbar = static_cast<double>(out.hits) / static_cast<double>(N);
    return out;
}

WalkResult simulate_walk(const WalkParams& p, std::uint64_t N, std::uint64_t trial_seed)
{
    p.validate();
    KFreeCache cache(p.k, max_position(p, N));
    return simulate_walk(p, N, trial_seed, cache);
}

unsigned resolve_workers(unsigned requested)
{
    if (requested > 0) {
        return requested;
    }
    unsigned n = std::max(1U, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("KFREEWALK_THREADS")) {
        char* end = nullptr;
        const long cap = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && cap >= 1) {
            n = std::min(n, static_cast<unsigned>(cap));
        }
    }
    return n;
}

namespace {

// Runs body(t) for t in [0, count) on up to `workers` threads. Results are
// written by index, so the schedule never affects the output.
template <typename Body>
void parallel_for(std::uint64_t count, unsigned workers, Body body)
{
    workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, count));
    if (workers <= 1) {
        for (std::uint64_t t = 0; t < count; ++t) {
            body(t);
        }
        return;
    }
    std::atomic<std::uint64_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            try {
                for (std::uint64_t t = next.fetch_add(1); t < count; t = next.fetch_add(1)) {
                    body(t);
                }
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) {
                    error = std::current_exception();
                }
            }
        });
    }
    for (auto& th : pool) {
        th.join();
    }
    if (error) {
        std::rethrow_exception(error);
    }
}

void summarize(TrialBatch& batch)
{
    CompensatedSum sum;
    for (const double s : batch.sbar_values) {
        sum.add(s);
    }
    const long double mean = sum.value() / static_cast<long double>(batch.trials);
    batch.mean = static_cast<double>(mean);
    if (batch.trials < 2) {
        batch.sample_variance = 0.0;
        return;
    }
    CompensatedSum ss;
    for (const double s : batch.sbar_values) {
        const long double d = s - mean;
        ss.add(d * d);
    }
    batch.sample_variance = static_cast<double>(ss.value() / static_cast<long double>(batch.trials - 1));
}

constexpr std::uint64_t kDecayStream = 0xD1B54A32D192ED03ULL;

}  // namespace

TrialBatch run_trials(const WalkParams& p, std::uint64_t N, std::uint64_t trials,
                      std::uint64_t master_seed, unsigned workers)
{
    p.validate();
    if (N < 1) {
        throw DomainError("N must be at least 1");
    }
    if (trials < 1) {
        throw DomainError("trials must be at least 1");
    }
    KFreeCache cache(p.k, max_position(p, N));
    cache.ensure(max_position(p, N));

    TrialBatch batch;
    batch.params = p;
    batch.N = N;
    batch.master_seed = master_seed;
    batch.trials = trials;
    batch.seeds.resize(trials);
    batch.hits.resize(trials);
    batch.sbar_values.resize(trials);
    parallel_for(trials, resolve_workers(workers), [&](std::uint64_t t) {
        const std::uint64_t seed = trial_seed(master_seed, t);
        const WalkResult w = simulate_walk(p, N, seed, cache);
        batch.seeds[t] = seed;
        batch.hits[t] = w.hits;
        batch.sbar_values[t] = w.sbar;
    });
    summarize(batch);
    return batch;
}

DecayFit variance_decay(const WalkParams& p, const std::vector<std::uint64_t>& Ns,
                        std::uint64_t trials_per_N, std::uint64_t master_seed, unsigned workers)
{
    p.validate();
    if (Ns.size() < 4) {
        throw DomainError("variance_decay needs at least 4 grid points");
    }
    for (std::size_t i = 0; i < Ns.size(); ++i) {
        if (Ns[i] < 1 || (i > 0 && Ns[i] <= Ns[i - 1])) {
            throw DomainError("N grid must be strictly increasing and >= 1");
        }
    }
    if (trials_per_N < 2) {
        throw DomainError("variance_decay needs at least 2 trials per grid point");
    }
    DecayFit fit;
    fit.Ns = Ns;
    std::vector<double> xs;
    std::vector<double> ys;
    for (std::size_t g = 0; g < Ns.size(); ++g) {
        const std::uint64_t seed = trial_seed(master_seed ^ kDecayStream, g);
        const TrialBatch batch = run_trials(p, Ns[g], trials_per_N, seed, workers);
        fit.means.push_back(batch.mean);
        fit.variances.push_back(batch.sample_variance);
        if (batch.sample_variance > 0.0) {
            xs.push_back(static_cast<double>(Ns[g]));
            ys.push_back(batch.sample_variance);
        } else {
            fit.dropped.push_back(Ns[g]);
            fit.warnings.push_back("zero variance at N=" + std::to_string(Ns[g]) +
                                   "; point excluded from fit");
        }
    }
    if (xs.size() < 2) {
        throw DomainError("variance_decay: fewer than two grid points with positive variance");
    }
    const LineFit line = loglog_fit(xs, ys);
    fit.slope = line.slope;
    fit.intercept = line.intercept;
    fit.r_squared = line.r_squared;
    return fit;
}

ConvergenceReport convergence_report(const WalkParams& p, const std::vector<std::uint64_t>& Ns,
                                     std::uint64_t trials, std::uint64_t master_seed,
                                     std::uint64_t prime_limit, unsigned workers)
{
    if (Ns.empty()) {
        throw DomainError("convergence_report needs at least one N");
    }
    for (std::size_t i = 1; i < Ns.size(); ++i) {
        if (Ns[i] <= Ns[i - 1]) {
            throw DomainError("N grid must be strictly increasing");
        }
    }
    ConvergenceReport report;
    report.theta = theta_k(p, prime_limit);
    for (const std::uint64_t N : Ns) {
        const TrialBatch batch = run_trials(p, N, trials, master_seed, workers);
        ConvergenceRow row;
        row.N = N;
        row.mean = batch.mean;
        row.abs_gap = std::abs(batch.mean - report.theta.value);
        row.sample_std = std::sqrt(batch.sample_variance);
        report.rows.push_back(row);
    }
    return report;
}

}  // namespace kfreewalk

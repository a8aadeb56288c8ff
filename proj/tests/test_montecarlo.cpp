#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <thread>

#include "kfreewalk/exactdist.hpp"
#include "kfreewalk/fit.hpp"
#include "kfreewalk/montecarlo.hpp"
#include "kfreewalk/rng.hpp"
#include "oracles.hpp"

using namespace kfreewalk;

TEST_CASE("splitmix64 reference outputs")
{
    // Reference SplitMix64 seeded with 0 and with 1234567.
    CounterRng zero(0);
    CHECK(zero() == 0xE220A8397B1DCDAFULL);
    CHECK(zero() == 0x6E789E6AA1B965F4ULL);
    CHECK(zero() == 0x06C45D188009454FULL);
    CounterRng seeded(1234567);
    CHECK(seeded() == 6457827717110365317ULL);
    CHECK(seeded() == 3203168211198807973ULL);
    CHECK(seeded.at(0) == 6457827717110365317ULL);  // random access by counter
    CHECK(trial_seed(1, 0) != trial_seed(1, 1));
    CHECK(trial_seed(1, 0) != trial_seed(2, 0));
}

TEST_CASE("KFreeCache answers like the sieve and builds lazily")
{
    KFreeCache cache(3, 300000);
    CHECK(cache.built_segments() == 0);
    for (std::uint64_t n = 1; n <= 300000; n += 7) {
        REQUIRE(cache.is_kfree(n) == oracle::is_kfree(n, 3));
    }
    CHECK(cache.built_segments() == 5);  // 300000 >> 16 = 4
    cache.ensure(300000);
    CHECK(cache.built_segments() == 5);
    CHECK_THROWS_AS(cache.ensure(300001), DomainError);
    CHECK_THROWS_AS(KFreeCache(1, 10), DomainError);
}

TEST_CASE("KFreeCache tolerates concurrent readers extending it")
{
    KFreeCache cache(2, 1 << 20);
    std::vector<std::thread> pool;
    std::vector<int> mismatches(4, 0);
    for (int t = 0; t < 4; ++t) {
        pool.emplace_back([&, t] {
            for (std::uint64_t n = 1 + t; n < (1 << 20); n += 97) {
                mismatches[t] += cache.is_kfree(n) != oracle::is_kfree(n, 2) ? 1 : 0;
            }
        });
    }
    for (auto& th : pool) {
        th.join();
    }
    CHECK(mismatches == std::vector<int>(4, 0));
}

TEST_CASE("simulate_walk algebra and certain events")
{
    const WalkParams p{3, 5, 2, 7, 0.4};
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const WalkResult w = simulate_walk(p, 500, seed);
        CHECK(w.final_position == p.r + w.steps_a * p.a + (500 - w.steps_a) * p.b);
        CHECK(w.sbar == static_cast<double>(w.hits) / 500.0);
    }
    const WalkParams certain{3, 1, 2, 0, 0.5};
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        CHECK(simulate_walk(certain, 3, seed).sbar == 1.0);
    }
    CHECK_THROWS_AS(simulate_walk(p, 0, 1), DomainError);
}

TEST_CASE("simulate_walk is deterministic and replays the counter stream")
{
    const WalkParams p{3, 2, 3, 0, 0.5};
    const WalkResult a = simulate_walk(p, 10000, 42);
    const WalkResult b = simulate_walk(p, 10000, 42);
    CHECK(a.sbar == b.sbar);
    CHECK(a.hits == b.hits);

    // Re-derive the path from the documented draw rule.
    CounterRng rng(42);
    std::uint64_t pos = p.r;
    std::uint64_t hits = 0;
    for (int i = 0; i < 10000; ++i) {
        pos += rng.uniform() < p.alpha ? p.a : p.b;
        hits += oracle::is_kfree(pos, p.k) ? 1 : 0;
    }
    CHECK(hits == a.hits);
    CHECK(pos == a.final_position);
}

TEST_CASE("run_trials")
{
    const WalkParams p{3, 2, 3, 0, 0.5};
    const TrialBatch one = run_trials(p, 1000, 1, 99);
    CHECK(one.sbar_values.front() == simulate_walk(p, 1000, trial_seed(99, 0)).sbar);
    CHECK(one.sample_variance == 0.0);

    const TrialBatch serial = run_trials(p, 5000, 40, 7, 1);
    const TrialBatch threaded = run_trials(p, 5000, 40, 7, 5);
    CHECK(serial.sbar_values == threaded.sbar_values);
    CHECK(serial.mean == threaded.mean);
    CHECK(serial.sample_variance == threaded.sample_variance);

    long double mean = 0;
    for (std::size_t t = 0; t < serial.trials; ++t) {
        const double s = serial.sbar_values[t];
        CHECK(s >= 0.0);
        CHECK(s <= 1.0);
        CHECK(s * 5000 == std::round(s * 5000));
        CHECK(serial.seeds[t] == trial_seed(7, t));
        mean += s;
    }
    CHECK(serial.mean == doctest::Approx(static_cast<double>(mean / serial.trials)).epsilon(1e-14));
    CHECK_THROWS_AS(run_trials(p, 10, 0, 1), DomainError);
}

TEST_CASE("KFREEWALK_THREADS caps workers without changing output")
{
    const WalkParams p{3, 3, 6, 0, 0.25};
    ::setenv("KFREEWALK_THREADS", "1", 1);
    CHECK(resolve_workers() == 1);
    const TrialBatch capped = run_trials(p, 3000, 16, 11);
    ::setenv("KFREEWALK_THREADS", "8", 1);
    const TrialBatch wide = run_trials(p, 3000, 16, 11, 8);
    ::unsetenv("KFREEWALK_THREADS");
    CHECK(capped.sbar_values == wide.sbar_values);
    CHECK(resolve_workers(3) == 3);
}

TEST_CASE("Monte Carlo mean agrees with the exact expectation")
{
    for (const WalkParams& p : {WalkParams{3, 2, 3, 0, 0.5}, WalkParams{2, 4, 10, 1, 0.3},
                                WalkParams{3, 3, 6, 0, 0.75}}) {
        const std::uint64_t N = 2000;
        const TrialBatch batch = run_trials(p, N, 400, 2024);
        const ExactMoments exact = exact_moments(p, N, true);
        const double se = std::sqrt(batch.sample_variance / 400);
        MESSAGE("mean " << batch.mean << " exact " << exact.e_sbar << " se " << se);
        CHECK(std::abs(batch.mean - exact.e_sbar) <= 4 * se);
        // The sample variance estimates the exact V(S̄) (χ² spread at 400 trials).
        CHECK(batch.sample_variance == doctest::Approx(*exact.v_sbar).epsilon(0.35));
    }
}

TEST_CASE("variance_decay")
{
    const WalkParams p{3, 2, 3, 0, 0.5};
    CHECK_THROWS_AS(variance_decay(p, {10, 20, 40}, 8, 1), DomainError);
    CHECK_THROWS_AS(variance_decay(p, {10, 20, 20, 40}, 8, 1), DomainError);

    const DecayFit fit = variance_decay(p, {256, 512, 1024, 2048, 4096}, 128, 5);
    for (const double v : fit.variances) {
        CHECK(v >= 0.0);
    }
    CHECK(fit.r_squared >= 0.0);
    CHECK(fit.r_squared <= 1.0);
    std::vector<double> xs(fit.Ns.begin(), fit.Ns.end());
    const LineFit check = loglog_fit(xs, fit.variances);
    CHECK(fit.slope == doctest::Approx(check.slope));
    CHECK(fit.intercept == doctest::Approx(check.intercept));
    CHECK(fit.slope < 0.0);

    // All positions cube-free for tiny N: zero variance points are dropped.
    const WalkParams certain{3, 1, 2, 0, 0.5};
    const DecayFit degenerate = variance_decay(certain, {1, 2, 3, 64, 128, 256}, 64, 3);
    CHECK(degenerate.dropped == std::vector<std::uint64_t>{1, 2, 3});
    CHECK(degenerate.warnings.size() == 3);
    CHECK(degenerate.variances[0] == 0.0);
}

TEST_CASE("convergence_report")
{
    const WalkParams p{3, 4, 2, 1, 0.5};
    const ConvergenceReport one = convergence_report(p, {1}, 8, 3);
    const TrialBatch batch = run_trials(p, 1, 8, 3);
    REQUIRE(one.rows.size() == 1);
    CHECK(one.rows[0].mean == batch.mean);
    CHECK(one.rows[0].sample_std == doctest::Approx(std::sqrt(batch.sample_variance)));

    const ConvergenceReport rep = convergence_report(p, {1000, 10000, 100000}, 16, 9);
    CHECK(rep.theta.value == doctest::Approx(0.950751).epsilon(1e-6));
    CHECK(rep.rows.back().abs_gap <= 0.01);
    CHECK_THROWS_AS(convergence_report(p, {100, 10}, 4, 1), DomainError);
}

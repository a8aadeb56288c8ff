// Acceptance suite: one PASS/FAIL line per criterion, exit status = number of failures.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <tuple>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "kfreewalk/constants.hpp"
#include "kfreewalk/counting.hpp"
#include "kfreewalk/exactdist.hpp"
#include "kfreewalk/montecarlo.hpp"
#include "oracles.hpp"

using namespace kfreewalk;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void report(int id, const std::string& title, bool passed, const std::string& detail)
{
    std::cout << (passed ? "PASS" : "FAIL") << " AC" << id << " " << title << ": " << detail << std::endl;
    failures += passed ? 0 : 1;
}

double seconds_since(Clock::time_point t0)
{
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::vector<std::uint64_t> powers_of_two(unsigned lo, unsigned hi)
{
    std::vector<std::uint64_t> out;
    for (unsigned e = lo; e <= hi; ++e) {
        out.push_back(std::uint64_t{1} << e);
    }
    return out;
}

void ac1_convergence()
{
    const auto t0 = Clock::now();
    const double target = 0.767914;
    const double theta = theta_k(WalkParams{3, 3, 6, 0, 0.5}, 100000).value;
    double worst = 0.0;
    std::ostringstream os;
    for (const double alpha : {0.25, 0.5, 0.75}) {
        const TrialBatch b = run_trials(WalkParams{3, 3, 6, 0, alpha}, 1000000, 64, 20240101);
        worst = std::max(worst, std::abs(b.mean - target));
        os << "alpha=" << alpha << " mean=" << b.mean << "; ";
    }
    const double secs = seconds_since(t0);
    os << "theta=" << theta << " max gap=" << worst << " (<= 0.01), " << secs << " s (<= 120)";
    report(1, "convergence k=3 a=3 b=6 r=0", worst <= 0.01 && secs <= 120.0 &&
                                                      std::abs(theta - target) <= 5e-7,
           os.str());
}

void ac2_coprime_steps()
{
    const double target = 1.0 / oracle::kZeta3;
    const TrialBatch b = run_trials(WalkParams{3, 2, 3, 0, 0.5}, 1000000, 64, 20240102);
    const double gap = std::abs(b.mean - target);
    std::ostringstream os;
    os << "mean=" << b.mean << " 1/zeta(3)=" << target << " gap=" << gap << " (<= 0.005)";
    report(2, "coprime steps give 1/zeta(3)", gap <= 0.005, os.str());
}

void ac3_oracle()
{
    const auto t0 = Clock::now();
    double worst = 0.0;
    int cases = 0;
    for (const unsigned k : {2U, 3U}) {
        for (const auto& [a, b, r] : {std::tuple{2ULL, 3ULL, 0ULL}, std::tuple{3ULL, 6ULL, 0ULL},
                                      std::tuple{4ULL, 2ULL, 1ULL}, std::tuple{1ULL, 8ULL, 5ULL}}) {
            for (const double alpha : {0.2, 0.5, 0.7}) {
                const WalkParams p{k, a, b, r, alpha};
                for (std::uint64_t N = 1; N <= 14; ++N) {
                    const ExactMoments ex = exact_moments(p, N, true);
                    const ExactMoments orc = oracle_full_paths(p, N);
                    for (std::size_t i = 0; i < N; ++i) {
                        worst = std::max(worst, std::abs(ex.e_xi[i] - orc.e_xi[i]));
                    }
                    worst = std::max(worst, std::abs(ex.e_sbar - orc.e_sbar));
                    worst = std::max(worst, std::abs(*ex.v_sbar - *orc.v_sbar));
                    ++cases;
                }
            }
        }
    }
    const double secs = seconds_since(t0);
    std::ostringstream os;
    os << cases << " cases, max abs diff=" << worst << " (<= 1e-10), " << secs << " s (<= 30)";
    report(3, "binomial sums match path enumeration", worst <= 1e-10 && secs <= 30.0, os.str());
}

void ac4_congruence()
{
    double worst = 0.0;
    for (const auto n : powers_of_two(6, 16)) {
        for (const std::uint64_t d : {2ULL, 3ULL, 5ULL, 8ULL}) {
            for (const double alpha : {0.1, 0.5, 0.9}) {
                for (std::uint64_t c = 0; c < d; ++c) {
                    const SumSplit s = binom_congruence_sum(n, d, static_cast<std::int64_t>(c), alpha);
                    worst = std::max(worst, std::abs(s.exact - 1.0 / static_cast<double>(d)) *
                                                std::sqrt(alpha * (1 - alpha) * static_cast<double>(n)));
                }
            }
        }
    }
    std::ostringstream os;
    os << "max statistic=" << worst << " (<= 2.0)";
    report(4, "binomial mass on residue classes", worst <= 2.0, os.str());
}

void ac5_kfree_sums()
{
    double worst = 0.0;
    for (const auto n : powers_of_two(6, 16)) {
        for (const auto& [u, v] : {std::pair{1ULL, 1ULL}, std::pair{2ULL, 5ULL}, std::pair{5ULL, 3ULL}}) {
            for (const unsigned k : {3U, 4U}) {
                for (const double alpha : {0.1, 0.5, 0.9}) {
                    const SumSplit s = kfree_binom_sum(n, u, v, k, alpha);
                    const double stat = std::abs(s.exact - M_k(n, u, v, k)) *
                                        std::sqrt(alpha * (1 - alpha) * static_cast<double>(n)) /
                                        std::pow(static_cast<double>(u * n + v), 1.0 / k);
                    worst = std::max(worst, stat);
                }
            }
        }
    }
    std::ostringstream os;
    os << "max statistic=" << worst << " (<= 5.0)";
    report(5, "binomial mass on k-free values", worst <= 5.0, os.str());
}

void ac6_mean_f()
{
    double worst = 0.0;
    std::ostringstream os;
    for (const WalkParams& p : {WalkParams{3, 2, 3, 0, 0.5}, WalkParams{3, 3, 6, 0, 0.5},
                                WalkParams{3, 4, 2, 1, 0.5}}) {
        for (const std::uint64_t N : {1000ULL, 10000ULL, 100000ULL}) {
            const MeanF m = mean_f(p, N);
            const double ratio = std::abs(m.residual) / std::cbrt(static_cast<double>(N));
            worst = std::max(worst, ratio);
        }
    }
    os << "max |sum f - theta N| / N^(1/k)=" << worst << " (<= 3)";
    report(6, "mean of f", worst <= 3.0, os.str());
}

void ac7_decay()
{
    bool ok = true;
    std::ostringstream os;
    for (const WalkParams& p : {WalkParams{3, 2, 3, 0, 0.5}, WalkParams{4, 2, 3, 0, 0.5}}) {
        const DecayFit fit = variance_decay(p, powers_of_two(10, 17), 256, 20240107);
        const double bound = 1.0 / p.k - 0.5 + 0.15;
        ok = ok && fit.slope <= bound && fit.dropped.empty();
        os << "k=" << p.k << " slope=" << fit.slope << " (<= " << bound << ") r2=" << fit.r_squared
           << "; ";
    }
    report(7, "variance decay", ok, os.str());
}

void ac8_counting()
{
    bool ok = count_kfree(10, 2).count == 7 && count_kfree(8, 3).count == 7 &&
              count_kfree_ap(20, 2, 4, 2).count == 4;
    std::ostringstream os;
    os << "small counts " << (ok ? "ok" : "wrong");
    const CountReport dens = count_kfree(1000000, 3);
    const double gap = std::abs(dens.density - 1.0 / oracle::kZeta3);
    ok = ok && gap <= 1e-3;
    os << "; Q_3(10^6) density gap=" << gap << " (<= 1e-3)";
    for (const unsigned k : {2U, 3U}) {
        const std::uint64_t whole = count_kfree(100000, k).count;
        for (const std::uint64_t q : {3ULL, 4ULL, 5ULL}) {
            std::uint64_t parts = 0;
            for (std::uint64_t r = 0; r < q; ++r) {
                parts += count_kfree_ap(100000, k, q, r).count;
            }
            ok = ok && parts == whole;
        }
    }
    os << "; residue partition at N=10^5 checked for k in {2,3}";
    report(8, "counting baselines", ok, os.str());
}

std::string slurp(const std::filesystem::path& p)
{
    std::ifstream f(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

bool run_simulate(const std::string& threads, const std::filesystem::path& out)
{
    const std::string cmd = "KFREEWALK_THREADS=" + threads + " \"" + KFREEWALK_CLI_PATH +
                            "\" simulate -k 3 -a 3 -b 6 -r 0 --alpha 0.5 -N 20000 --trials 12"
                            " --seed 987654321 --out \"" + out.string() + "\" > /dev/null";
    return std::system(cmd.c_str()) == 0;
}

void ac9_determinism()
{
    const auto dir = std::filesystem::temp_directory_path();
    const auto p1 = dir / "kfreewalk_ac9_a.csv";
    const auto p2 = dir / "kfreewalk_ac9_b.csv";
    const auto p3 = dir / "kfreewalk_ac9_c.csv";
    const bool ran = run_simulate("1", p1) && run_simulate("1", p2) && run_simulate("4", p3);
    const std::string a = slurp(p1);
    const bool same = ran && !a.empty() && a == slurp(p2) && a == slurp(p3);
    std::ostringstream os;
    os << "two runs and KFREEWALK_THREADS=1 vs 4: " << (same ? "byte-identical" : "differ")
       << " (" << a.size() << " bytes)";
    for (const auto& p : {p1, p2, p3}) {
        std::filesystem::remove(p);
    }
    report(9, "simulate determinism", same, os.str());
}

}  // namespace

int main()
{
    ac1_convergence();
    ac2_coprime_steps();
    ac3_oracle();
    ac4_congruence();
    ac5_kfree_sums();
    ac6_mean_f();
    ac7_decay();
    ac8_counting();
    ac9_determinism();
    std::cout << (failures == 0 ? "all acceptance criteria pass" : std::to_string(failures) + " failing")
              << std::endl;
    return failures;
}

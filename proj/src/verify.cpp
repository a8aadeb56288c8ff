#include "kfreewalk/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "kfreewalk/arith.hpp"
#include "kfreewalk/constants.hpp"
#include "kfreewalk/counting.hpp"
#include "kfreewalk/exactdist.hpp"

namespace kfreewalk {

namespace {

bool trial_division_kfree(std::uint64_t n, unsigned k)
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
    return true;
}

int trial_division_mobius(std::uint64_t n)
{
    int mu = 1;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        if (n % p != 0) {
            continue;
        }
        n /= p;
        if (n % p == 0) {
            return 0;
        }
        mu = -mu;
    }
    return n > 1 ? -mu : mu;
}

CheckResult make(std::string name, double statistic, double threshold, std::string detail = {})
{
    CheckResult c;
    c.name = std::move(name);
    c.statistic = statistic;
    c.threshold = threshold;
    c.passed = statistic <= threshold;
    c.detail = std::move(detail);
    return c;
}

std::vector<std::uint64_t> powers_of_two(unsigned from, unsigned to)
{
    std::vector<std::uint64_t> out;
    for (unsigned e = from; e <= to; ++e) {
        out.push_back(std::uint64_t{1} << e);
    }
    return out;
}

CheckResult check_kfree_sieve(const VerifyOptions& opt)
{
    double mismatches = 0;
    for (const unsigned k : {2U, 3U, 4U}) {
        const SieveTable t = kfree_sieve(1, 10000, k);
        std::vector<std::int8_t> values = t.values();
        if (opt.inject_sieve_fault && k == 2) {
            values[3] = static_cast<std::int8_t>(1 - values[3]);  // n = 4
        }
        for (std::uint64_t n = 1; n <= 10000; ++n) {
            if ((values[n - 1] != 0) != trial_division_kfree(n, k)) {
                ++mismatches;
            }
        }
    }
    return make("kfree_sieve_vs_trial_division", mismatches, 0.0, "k in {2,3,4}, n <= 10^4");
}

CheckResult check_mobius_identity()
{
    // μ_k(n) = Σ_{d^k | n} μ(d)
    const SieveTable mu = mobius_sieve(1, 10000);
    double mismatches = 0;
    for (const unsigned k : {2U, 3U}) {
        const SieveTable kf = kfree_sieve(1, 10000, k);
        for (std::uint64_t n = 1; n <= 10000; ++n) {
            int s = 0;
            for (std::uint64_t d = 1; ipow_capped(d, k, n) != 0; ++d) {
                if (n % ipow_capped(d, k, n) == 0) {
                    s += mu[d];
                }
            }
            if (s != kf[n]) {
                ++mismatches;
            }
        }
    }
    return make("mobius_sum_identity", mismatches, 0.0, "k in {2,3}, n <= 10^4");
}

CheckResult check_mobius_segment()
{
    const std::uint64_t lo = 1000000;
    const SieveTable mu = mobius_sieve(lo, lo + 1000);
    double mismatches = 0;
    for (std::uint64_t n = lo; n <= lo + 1000; ++n) {
        if (mu[n] != trial_division_mobius(n)) {
            ++mismatches;
        }
    }
    return make("mobius_segment_vs_trial_division", mismatches, 0.0, "[10^6, 10^6+10^3]");
}

CheckResult check_segment_independence()
{
    double mismatches = 0;
    const SieveTable whole = kfree_sieve(1, 50000, 2, 50000);
    const SieveTable pieces = kfree_sieve(1, 50000, 2, 977);
    const SieveTable mu_whole = mobius_sieve(1, 50000, 50000);
    const SieveTable mu_pieces = mobius_sieve(1, 50000, 1013);
    for (std::size_t i = 0; i < whole.size(); ++i) {
        mismatches += whole.values()[i] != pieces.values()[i] ? 1 : 0;
        mismatches += mu_whole.values()[i] != mu_pieces.values()[i] ? 1 : 0;
    }
    return make("segment_boundary_independence", mismatches, 0.0, "n <= 5*10^4");
}

CheckResult check_congruence_sums(bool quick)
{
    double worst = 0.0;
    double partition_err = 0.0;
    for (const auto n : powers_of_two(6, quick ? 12 : 16)) {
        for (const double alpha : {0.1, 0.5, 0.9}) {
            for (const std::uint64_t d : {2ULL, 3ULL, 5ULL, 8ULL}) {
                double total = 0.0;
                for (std::uint64_t c = 0; c < d; ++c) {
                    const SumSplit s = binom_congruence_sum(n, d, static_cast<std::int64_t>(c), alpha);
                    total += s.exact;
                    worst = std::max(worst, std::abs(s.error) *
                                                std::sqrt(alpha * (1 - alpha) * static_cast<double>(n)));
                }
                partition_err = std::max(partition_err, std::abs(total - 1.0));
            }
        }
    }
    std::ostringstream os;
    os << "max |sum over residues - 1| = " << partition_err;
    CheckResult c = make("congruence_binomial_sum", worst, 2.0, os.str());
    c.passed = c.passed && partition_err <= 1e-12;
    return c;
}

CheckResult check_kfree_binomial_sums(bool quick)
{
    double worst = 0.0;
    for (const auto n : powers_of_two(6, quick ? 12 : 16)) {
        for (const auto& [u, v] : {std::pair{1ULL, 1ULL}, std::pair{2ULL, 5ULL}, std::pair{5ULL, 3ULL}}) {
            for (const unsigned k : {3U, 4U}) {
                for (const double alpha : {0.1, 0.5, 0.9}) {
                    const SumSplit s = kfree_binom_sum(n, u, v, k, alpha);
                    const double scale =
                        std::sqrt(alpha * (1 - alpha) * static_cast<double>(n)) /
                        std::pow(static_cast<double>(u * n + v), 1.0 / k);
                    worst = std::max(worst, std::abs(s.error) * scale);
                }
            }
        }
    }
    return make("kfree_binomial_sum", worst, 5.0, "(u,v) in {(1,1),(2,5),(5,3)}, k in {3,4}");
}

CheckResult check_mean_f(bool quick)
{
    const std::vector<WalkParams> points{
        {3, 2, 3, 0, 0.5},
        {3, 3, 6, 0, 0.5},
        {3, 4, 2, 1, 0.5},
    };
    std::vector<std::uint64_t> Ns{1000, 10000};
    if (!quick) {
        Ns.push_back(100000);
    }
    double worst = 0.0;
    for (const auto& p : points) {
        worst = std::max(worst, mean_f_diagnostic(p, Ns).fitted_constant);
    }
    return make("mean_of_f", worst, 3.0, "max |sum f - theta N| / N^(1/k)");
}

CheckResult check_oracle(bool quick)
{
    double worst = 0.0;
    const unsigned topN = quick ? 10 : 14;
    for (const unsigned k : {2U, 3U}) {
        for (const auto& [a, b, r] : {std::tuple{2ULL, 3ULL, 0ULL}, std::tuple{3ULL, 6ULL, 0ULL},
                                      std::tuple{4ULL, 2ULL, 1ULL}, std::tuple{1ULL, 8ULL, 5ULL}}) {
            for (const double alpha : {0.2, 0.5, 0.7}) {
                const WalkParams p{k, a, b, r, alpha};
                for (unsigned N = 1; N <= topN; ++N) {
                    const ExactMoments ex = exact_moments(p, N, true);
                    const ExactMoments orc = oracle_full_paths(p, N);
                    for (unsigned i = 0; i < N; ++i) {
                        worst = std::max(worst, std::abs(ex.e_xi[i] - orc.e_xi[i]));
                    }
                    worst = std::max(worst, std::abs(ex.e_sbar - orc.e_sbar));
                    worst = std::max(worst, std::abs(*ex.v_sbar - *orc.v_sbar));
                }
            }
        }
    }
    return make("exact_vs_full_path_oracle", worst, 1e-10, "24-point grid, N <= " + std::to_string(topN));
}

CheckResult check_counting(bool quick)
{
    double bad = 0;
    bad += count_kfree(10, 2).count != 7 ? 1 : 0;
    bad += count_kfree(8, 3).count != 7 ? 1 : 0;
    bad += count_kfree_ap(20, 2, 4, 2).count != 4 ? 1 : 0;
    const std::uint64_t N = quick ? 10000 : 100000;
    for (const unsigned k : {2U, 3U}) {
        const std::uint64_t whole = count_kfree(N, k).count;
        for (const std::uint64_t q : {3ULL, 4ULL, 5ULL}) {
            std::uint64_t parts = 0;
            for (std::uint64_t r = 0; r < q; ++r) {
                parts += count_kfree_ap(N, k, q, r).count;
            }
            bad += parts != whole ? 1 : 0;
        }
    }
    return make("counting_baselines", bad, 0.0, "small counts and residue partition");
}

CheckResult check_density()
{
    const CountReport rep = count_kfree(1000000, 3);
    return make("cubefree_density", std::abs(*rep.residual), 1e-3, "N = 10^6");
}

CheckResult check_zeta_nesting()
{
    double violations = 0;
    CertifiedValue prev = zeta_k(3, 1);
    for (const std::uint64_t terms : {10ULL, 100ULL, 1000ULL, 10000ULL}) {
        const CertifiedValue cur = zeta_k(3, terms);
        if (cur.lower() < prev.lower() || cur.upper() > prev.upper()) {
            ++violations;
        }
        prev = cur;
    }
    return make("zeta_interval_nesting", violations, 0.0, "k = 3");
}

}  // namespace

std::vector<CheckResult> run_verify_suite(const VerifyOptions& opt)
{
    std::vector<CheckResult> out;
    out.push_back(check_kfree_sieve(opt));
    out.push_back(check_mobius_identity());
    out.push_back(check_mobius_segment());
    out.push_back(check_segment_independence());
    out.push_back(check_zeta_nesting());
    out.push_back(check_congruence_sums(opt.quick));
    out.push_back(check_kfree_binomial_sums(opt.quick));
    out.push_back(check_mean_f(opt.quick));
    out.push_back(check_oracle(opt.quick));
    out.push_back(check_counting(opt.quick));
    if (!opt.quick) {
        out.push_back(check_density());
    }
    return out;
}

}  // namespace kfreewalk

#include "kfreewalk/counting.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

namespace kfreewalk {

namespace {

std::uint64_t sieve_count(std::uint64_t N, unsigned k, std::uint64_t q, std::uint64_t r,
                          const CountOptions& opt)
{
    if (opt.segment == 0) {
        throw DomainError("segment size must be positive");
    }
    const auto primes = primes_up_to(iroot(N, k));
    const std::uint64_t seg = opt.segment;
    const std::uint64_t segments = (N + seg - 1) / seg;
    std::vector<std::uint64_t> counts(segments, 0);

    auto run_segment = [&](std::uint64_t s, std::vector<std::int8_t>& buf) {
        const std::uint64_t lo = 1 + s * seg;
        const std::uint64_t hi = std::min(N, lo + seg - 1);
        buf.resize(hi - lo + 1);
        kfree_segment(lo, k, primes, buf);
        // first n >= lo with n ≡ r (mod q)
        std::uint64_t n = lo + ((r + q - lo % q) % q);
        std::uint64_t c = 0;
        for (; n <= hi; n += q) {
            c += static_cast<std::uint64_t>(buf[n - lo]);
        }
        counts[s] = c;
    };

    const unsigned workers =
        static_cast<unsigned>(std::min<std::uint64_t>(std::max(1U, opt.workers), segments));
    if (workers <= 1) {
        std::vector<std::int8_t> buf;
        for (std::uint64_t s = 0; s < segments; ++s) {
            run_segment(s, buf);
        }
    } else {
        std::atomic<std::uint64_t> next{0};
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                std::vector<std::int8_t> buf;
                for (std::uint64_t s = next.fetch_add(1); s < segments; s = next.fetch_add(1)) {
                    run_segment(s, buf);
                }
            });
        }
        for (auto& t : pool) {
            t.join();
        }
    }
    std::uint64_t total = 0;
    for (const auto c : counts) {
        total += c;
    }
    return total;
}

void check_args(std::uint64_t N, unsigned k)
{
    if (N < 1) {
        throw DomainError("N must be at least 1");
    }
    if (N > kMaxInteger) {
        throw DomainError("N exceeds 2^62");
    }
    if (k < 2) {
        throw DomainError("k must be at least 2");
    }
}

bool gcd_is_kfree(std::uint64_t q, std::uint64_t r, unsigned k)
{
    const std::uint64_t g = gcd(r, q);
    return kfree_sieve(g, g, k).at(g) != 0;
}

}  // namespace

CountReport count_kfree(std::uint64_t N, unsigned k, const CountOptions& opt)
{
    check_args(N, k);
    CountReport out;
    out.N = N;
    out.k = k;
    out.count = sieve_count(N, k, 1, 0, opt);
    out.density = static_cast<double>(out.count) / static_cast<double>(N);
    out.predicted = one_over_zeta(k, opt.prime_limit).value;
    out.residual = out.density - *out.predicted;
    return out;
}

CountReport count_kfree_ap(std::uint64_t N, unsigned k, std::uint64_t q, std::uint64_t r,
                           const CountOptions& opt)
{
    check_args(N, k);
    if (q < 1) {
        throw DomainError("q must be at least 1");
    }
    if (r >= q) {
        throw DomainError("r must lie in [0, q-1]");
    }
    CountReport out;
    out.N = N;
    out.k = k;
    out.q = q;
    out.r = r;
    out.count = sieve_count(N, k, q, r, opt);
    out.density = static_cast<double>(out.count) / static_cast<double>(N);
    if (gcd_is_kfree(q, r, k)) {
        out.predicted = beta_k(k, q, r, opt.prime_limit).value;
        out.residual = out.density - *out.predicted;
    }
    return out;
}

double density_residual_constant(unsigned k, const std::vector<std::uint64_t>& Ns,
                                 const CountOptions& opt)
{
    double c = 0.0;
    for (const auto N : Ns) {
        const CountReport rep = count_kfree(N, k, opt);
        const double scale = std::pow(static_cast<double>(N), 1.0 / k - 1.0);
        c = std::max(c, std::abs(*rep.residual) / scale);
    }
    return c;
}

}  // namespace kfreewalk

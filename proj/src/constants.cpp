#include "kfreewalk/constants.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace kfreewalk {

namespace {

unsigned valuation(std::uint64_t n, std::uint64_t p)
{
    unsigned v = 0;
    while (n != 0 && n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

// Prime factors of n (distinct), by trial division.
std::vector<std::uint64_t> prime_factors(std::uint64_t n)
{
    std::vector<std::uint64_t> out;
    for (std::uint64_t p = 2; p <= n / p; ++p) {
        if (n % p == 0) {
            out.push_back(p);
            while (n % p == 0) {
                n /= p;
            }
        }
    }
    if (n > 1) {
        out.push_back(n);
    }
    return out;
}

std::uint64_t totient(std::uint64_t n)
{
    std::uint64_t phi = n;
    for (const auto p : prime_factors(n)) {
        phi = phi / p * (p - 1);
    }
    return phi;
}

bool is_kfree_trial(std::uint64_t n, unsigned k)
{
    for (const auto p : prime_factors(n)) {
        if (valuation(n, p) >= k) {
            return false;
        }
    }
    return true;
}

// Euler product over p <= limit of (1 − gcd(G,p^k)/p^k), restricted to
// primes with gcd(G,p^k) | r. The true infinite product lies in
// [V·(1 − S), V] with S = G·limit^(1−k)/(k−1); we report the midpoint.
DensityConstant euler_product(unsigned k, std::uint64_t G, std::uint64_t r,
                              std::uint64_t prime_limit, DensityKind kind)
{
    if (prime_limit < 2) {
        throw DomainError("prime_limit must be at least 2");
    }
    long double product = 1.0L;
    for (const std::uint64_t p : primes_up_to(prime_limit)) {
        const unsigned v = std::min(k, valuation(G, p));
        // gcd(G, p^k) = p^v
        if (r != 0) {
            const std::uint64_t g = ipow_capped(p, v);
            if (r % g != 0) {
                continue;
            }
        }
        product *= 1.0L - std::pow(static_cast<long double>(p), -static_cast<long double>(k - v));
    }
    const double L = static_cast<double>(prime_limit);
    const double S = std::min(1.0, static_cast<double>(G) * std::pow(L, 1.0 - k) / (k - 1.0));
    const double V = static_cast<double>(product);
    return DensityConstant{V * (1.0 - S / 2.0), V * S / 2.0, kind};
}

}  // namespace

void WalkParams::validate() const
{
    if (k < 2) {
        throw DomainError("k must be at least 2");
    }
    if (a < 1) {
        throw DomainError("a must be at least 1");
    }
    if (b < 1) {
        throw DomainError("b must be at least 1");
    }
    if (a == b) {
        throw DomainError("a must differ from b");
    }
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw DomainError("alpha must lie in (0,1)");
    }
    if (a > kMaxInteger || b > kMaxInteger || r > kMaxInteger) {
        throw DomainError("a, b and r must not exceed 2^62");
    }
}

WalkParams WalkParams::normalized() const
{
    WalkParams out = *this;
    if (out.a < out.b) {
        std::swap(out.a, out.b);
        out.alpha = 1.0 - out.alpha;
    }
    return out;
}

DensityConstant one_over_zeta(unsigned k, std::uint64_t prime_limit)
{
    if (k < 2) {
        throw DomainError("k must be at least 2");
    }
    return euler_product(k, 1, 0, prime_limit, DensityKind::one_over_zeta);
}

DensityConstant theta_k(const WalkParams& p, std::uint64_t prime_limit)
{
    p.validate();
    return euler_product(p.k, gcd(p.a, p.b), p.r, prime_limit, DensityKind::theta);
}

DensityConstant beta_k(unsigned k, std::uint64_t q, std::uint64_t r, std::uint64_t prime_limit)
{
    if (k < 2) {
        throw DomainError("k must be at least 2");
    }
    if (q < 1) {
        throw DomainError("q must be at least 1");
    }
    if (r >= q) {
        throw DomainError("r must lie in [0, q-1]");
    }
    const std::uint64_t g = gcd(r, q);
    if (!is_kfree_trial(g, k)) {
        throw DomainError("gcd(r,q) = " + std::to_string(g) + " is not " + std::to_string(k) +
                          "-free");
    }
    long double c = static_cast<long double>(totient(q)) /
                    (static_cast<long double>(g) * static_cast<long double>(totient(q / g)));
    c /= static_cast<long double>(q);
    for (const auto p : prime_factors(q)) {
        c /= 1.0L - std::pow(static_cast<long double>(p), -static_cast<long double>(k));
    }
    const DensityConstant z = one_over_zeta(k, prime_limit);
    const double factor = static_cast<double>(c);
    return DensityConstant{factor * z.value, factor * z.tail_bound, DensityKind::beta};
}

double M_k(std::uint64_t n, std::uint64_t u, std::uint64_t v, unsigned k)
{
    if (k < 2) {
        throw DomainError("k must be at least 2");
    }
    if (n < 1 || u < 1 || v < 1) {
        throw DomainError("M_k requires n, u, v >= 1");
    }
    if (u > (kMaxInteger - v) / n) {
        throw DomainError("u*n + v exceeds 2^62");
    }
    const std::uint64_t top = iroot(u * n + v, k);
    const SieveTable mu = mobius_sieve(1, top);
    CompensatedSum sum;
    for (std::uint64_t d = 1; d <= top; ++d) {
        const int m = mu[d];
        if (m == 0) {
            continue;
        }
        const std::uint64_t dk = ipow_capped(d, k);
        const std::uint64_t g = gcd(u, dk);
        if (v % g != 0) {
            continue;
        }
        sum.add(static_cast<long double>(m) * static_cast<long double>(g) /
                static_cast<long double>(dk));
    }
    return static_cast<double>(sum.value());
}

double f_of_i(const WalkParams& p, std::uint64_t i)
{
    p.validate();
    if (i < 1) {
        throw DomainError("i must be at least 1");
    }
    const WalkParams q = p.normalized();
    return M_k(i, q.a - q.b, q.b * i + q.r, q.k);
}

std::vector<double> f_values(const WalkParams& p, std::uint64_t N)
{
    p.validate();
    const WalkParams q = p.normalized();
    if (N == 0) {
        return {};
    }
    if (q.a > (kMaxInteger - q.r) / N) {
        throw DomainError("a*N + r exceeds 2^62");
    }
    const std::uint64_t diff = q.a - q.b;
    const std::uint64_t top = iroot(q.a * N + q.r, q.k);
    const SieveTable mu = mobius_sieve(1, top);

    // Squarefree d with their moduli gcd(a−b, d^k) and weights μ(d)·g/d^k.
    struct Term {
        std::uint64_t dk;
        std::uint64_t modulus;
        long double weight;
    };
    std::vector<Term> terms;
    for (std::uint64_t d = 1; d <= top; ++d) {
        if (mu[d] == 0) {
            continue;
        }
        const std::uint64_t dk = ipow_capped(d, q.k);
        const std::uint64_t g = gcd(diff, dk);
        terms.push_back({dk, g,
                         static_cast<long double>(mu[d]) * static_cast<long double>(g) /
                             static_cast<long double>(dk)});
    }

    std::vector<double> out(N);
    std::size_t active = 0;
    for (std::uint64_t i = 1; i <= N; ++i) {
        const std::uint64_t bound = q.a * i + q.r;  // d^k <= ai + r
        while (active < terms.size() && terms[active].dk <= bound) {
            ++active;
        }
        const std::uint64_t rhs = q.b * i + q.r;
        CompensatedSum s;
        for (std::size_t t = 0; t < active; ++t) {
            if (rhs % terms[t].modulus == 0) {
                s.add(terms[t].weight);
            }
        }
        out[i - 1] = static_cast<double>(s.value());
    }
    return out;
}

MeanF mean_f(const WalkParams& p, std::uint64_t N, std::uint64_t prime_limit)
{
    if (N < 1) {
        throw DomainError("N must be at least 1");
    }
    const auto diag = mean_f_diagnostic(p, {N}, prime_limit);
    return diag.rows.front();
}

MeanFDiagnostic mean_f_diagnostic(const WalkParams& p, const std::vector<std::uint64_t>& Ns,
                                  std::uint64_t prime_limit)
{
    if (Ns.empty()) {
        throw DomainError("mean_f_diagnostic needs at least one N");
    }
    if (!std::is_sorted(Ns.begin(), Ns.end()) || Ns.front() < 1) {
        throw DomainError("N grid must be ascending and >= 1");
    }
    const double theta = theta_k(p, prime_limit).value;
    const auto f = f_values(p, Ns.back());

    MeanFDiagnostic out;
    out.Ns = Ns;
    CompensatedSum running;
    std::size_t next = 0;
    for (std::uint64_t i = 1; i <= Ns.back() && next < Ns.size(); ++i) {
        running.add(f[i - 1]);
        while (next < Ns.size() && Ns[next] == i) {
            MeanF row;
            row.sum = static_cast<double>(running.value());
            row.predicted = theta * static_cast<double>(i);
            row.residual = row.sum - row.predicted;
            out.rows.push_back(row);
            const double scale = std::pow(static_cast<double>(i), 1.0 / p.k);
            out.fitted_constant = std::max(out.fitted_constant, std::abs(row.residual) / scale);
            ++next;
        }
    }
    return out;
}

}  // namespace kfreewalk

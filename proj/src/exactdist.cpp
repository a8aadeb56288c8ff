#include "kfreewalk/exactdist.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace kfreewalk {

namespace {

void check_alpha(double alpha)
{
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw DomainError("alpha must lie in (0,1)");
    }
}

std::vector<long double> binomial_weights(std::uint64_t n, double alpha)
{
    check_alpha(alpha);
    std::vector<long double> w(n + 1, 0.0L);
    const long double a = alpha;
    const long double ratio = a / (1.0L - a);
    const std::uint64_t mode =
        std::min<std::uint64_t>(n, static_cast<std::uint64_t>(std::floor((n + 1) * a)));
    w[mode] = 1.0L;
    for (std::uint64_t l = mode; l < n; ++l) {
        w[l + 1] = w[l] * static_cast<long double>(n - l) / static_cast<long double>(l + 1) * ratio;
    }
    for (std::uint64_t l = mode; l > 0; --l) {
        w[l - 1] = w[l] * static_cast<long double>(l) / static_cast<long double>(n - l + 1) / ratio;
    }
    CompensatedSum total;
    for (const auto x : w) {
        total.add(x);
    }
    const long double norm = total.value();
    for (auto& x : w) {
        x /= norm;
    }
    return w;
}

// k-free flags covering every position the normalized walk can occupy at
// steps lo_step..hi_step.
SieveTable position_table(const WalkParams& q, std::uint64_t lo_step, std::uint64_t hi_step)
{
    if (q.a > (kMaxInteger - q.r) / hi_step) {
        throw DomainError("walk positions exceed 2^62");
    }
    return kfree_sieve(q.b * lo_step + q.r, q.a * hi_step + q.r, q.k);
}

// Position after i steps of which l were the larger step (a > b).
std::uint64_t position(const WalkParams& q, std::uint64_t i, std::uint64_t l)
{
    return q.r + q.b * i + (q.a - q.b) * l;
}

long double expect_xi_in(const WalkParams& q, const SieveTable& kf, std::uint64_t i,
                         const std::vector<long double>& w)
{
    CompensatedSum s;
    for (std::uint64_t l = 0; l <= i; ++l) {
        if (kf[position(q, i, l)] != 0) {
            s.add(w[l]);
        }
    }
    return s.value();
}

long double expect_xixj_in(const WalkParams& q, const SieveTable& kf, std::uint64_t i,
                           std::uint64_t j, const std::vector<long double>& wi,
                           const std::vector<long double>& wgap)
{
    const std::uint64_t gap = j - i;
    const std::uint64_t diff = q.a - q.b;
    CompensatedSum outer;
    for (std::uint64_t l = 0; l <= i; ++l) {
        const std::uint64_t xi = position(q, i, l);
        if (kf[xi] == 0) {
            continue;
        }
        CompensatedSum inner;
        const std::uint64_t base = xi + q.b * gap;
        for (std::uint64_t h = 0; h <= gap; ++h) {
            if (kf[base + diff * h] != 0) {
                inner.add(wgap[h]);
            }
        }
        outer.add(wi[l] * inner.value());
    }
    return outer.value();
}

bool brute_kfree(std::uint64_t n, unsigned k)
{
    for (std::uint64_t d = 2;; ++d) {
        const std::uint64_t dk = ipow_capped(d, k, n);
        if (dk == 0) {
            return true;
        }
        if (n % dk == 0) {
            return false;
        }
    }
}

}  // namespace

BinomialPMF binom_pmf(std::uint64_t n, double alpha)
{
    const auto w = binomial_weights(n, alpha);
    BinomialPMF out;
    out.n = n;
    out.alpha = alpha;
    out.weights.assign(w.begin(), w.end());
    return out;
}

SumSplit binom_congruence_sum(std::uint64_t n, std::uint64_t d, std::int64_t c, double alpha)
{
    if (n < 1 || d < 1) {
        throw DomainError("binom_congruence_sum requires n, d >= 1");
    }
    const auto w = binomial_weights(n, alpha);
    const auto sd = static_cast<std::int64_t>(d);
    const auto start = static_cast<std::uint64_t>(((c % sd) + sd) % sd);
    CompensatedSum s;
    for (std::uint64_t l = start; l <= n; l += d) {
        s.add(w[l]);
    }
    SumSplit out;
    out.exact = static_cast<double>(s.value());
    out.main = 1.0 / static_cast<double>(d);
    out.error = static_cast<double>(s.value() - 1.0L / static_cast<long double>(d));
    return out;
}

SumSplit kfree_binom_sum(std::uint64_t n, std::uint64_t u, std::uint64_t v, unsigned k,
                         double alpha)
{
    if (n < 1 || u < 1 || v < 1) {
        throw DomainError("kfree_binom_sum requires n, u, v >= 1");
    }
    if (k < 2) {
        throw DomainError("k must be at least 2");
    }
    if (u > (kMaxInteger - v) / n) {
        throw DomainError("u*n + v exceeds 2^62");
    }
    const auto w = binomial_weights(n, alpha);
    const SieveTable kf = kfree_sieve(v, u * n + v, k);
    CompensatedSum s;
    for (std::uint64_t m = 0; m <= n; ++m) {
        if (kf[u * m + v] != 0) {
            s.add(w[m]);
        }
    }
    SumSplit out;
    out.exact = static_cast<double>(s.value());
    out.main = M_k(n, u, v, k);
    out.error = out.exact - out.main;
    return out;
}

double expect_Xi(const WalkParams& p, std::uint64_t i)
{
    p.validate();
    if (i < 1) {
        throw DomainError("i must be at least 1");
    }
    const WalkParams q = p.normalized();
    return kfree_binom_sum(i, q.a - q.b, q.b * i + q.r, q.k, q.alpha).exact;
}

double expect_XiXj(const WalkParams& p, std::uint64_t i, std::uint64_t j)
{
    p.validate();
    if (i < 1 || j <= i) {
        throw DomainError("expect_XiXj requires 1 <= i < j");
    }
    const WalkParams q = p.normalized();
    const SieveTable kf = position_table(q, i, j);
    const auto wi = binomial_weights(i, q.alpha);
    const auto wgap = binomial_weights(j - i, q.alpha);
    return static_cast<double>(expect_xixj_in(q, kf, i, j, wi, wgap));
}

ExactMoments exact_moments(const WalkParams& p, std::uint64_t N, bool with_variance,
                           std::uint64_t pair_cap, PairRoute route)
{
    p.validate();
    if (N < 1) {
        throw DomainError("N must be at least 1");
    }
    if (with_variance) {
        if (N > pair_cap) {
            throw RefusalError("variance requested for N = " + std::to_string(N) +
                               " above pair cap " + std::to_string(pair_cap));
        }
        if (route == PairRoute::pairwise && N > kPairwiseCap) {
            throw RefusalError("pairwise variance route limited to N <= " +
                               std::to_string(kPairwiseCap));
        }
    }
    const WalkParams q = p.normalized();
    const SieveTable kf = position_table(q, 1, N);

    ExactMoments out;
    out.params = p;
    out.N = N;
    out.method = MomentMethod::binomial_sum;
    out.e_xi.resize(N);
    std::vector<std::vector<long double>> weights;  // only kept for the pairwise route
    CompensatedSum total;
    for (std::uint64_t i = 1; i <= N; ++i) {
        auto w = binomial_weights(i, q.alpha);
        const long double e = expect_xi_in(q, kf, i, w);
        out.e_xi[i - 1] = static_cast<double>(e);
        total.add(e);
        if (with_variance && route == PairRoute::pairwise) {
            weights.push_back(std::move(w));
        }
    }
    const long double sum_e = total.value();
    const long double n = static_cast<long double>(N);
    out.e_sbar = static_cast<double>(sum_e / n);
    if (!with_variance) {
        return out;
    }

    CompensatedSum cross;  // Σ_{i<j} E(X_i X_j)
    if (route == PairRoute::pairwise) {
        for (std::uint64_t i = 1; i < N; ++i) {
            for (std::uint64_t j = i + 1; j <= N; ++j) {
                cross.add(expect_xixj_in(q, kf, i, j, weights[i - 1], weights[j - i - 1]));
            }
        }
    } else {
        // hits[l] = expected number of k-free positions among steps t+1..N
        // given the walk sits at state l (l larger steps) after t steps.
        const long double a = q.alpha;
        std::vector<long double> hits(N + 1, 0.0L);
        std::vector<long double> next(N + 1, 0.0L);
        for (std::uint64_t t = N; t-- > 1;) {
            for (std::uint64_t l = 0; l <= t; ++l) {
                const long double up = (kf[position(q, t + 1, l + 1)] != 0 ? 1.0L : 0.0L) + hits[l + 1];
                const long double stay = (kf[position(q, t + 1, l)] != 0 ? 1.0L : 0.0L) + hits[l];
                next[l] = a * up + (1.0L - a) * stay;
            }
            std::swap(hits, next);
            const auto w = binomial_weights(t, q.alpha);
            CompensatedSum row;
            for (std::uint64_t l = 0; l <= t; ++l) {
                if (kf[position(q, t, l)] != 0) {
                    row.add(w[l] * hits[l]);
                }
            }
            cross.add(row.value());
        }
    }
    const long double second = (2.0L * cross.value() + sum_e) / (n * n);
    const long double mean = sum_e / n;
    const double raw = static_cast<double>(second - mean * mean);
    out.v_sbar_raw = raw;
    out.v_sbar = raw < 0.0 && raw >= -1e-10 ? 0.0 : raw;
    return out;
}

ExactMoments oracle_full_paths(const WalkParams& p, std::uint64_t N)
{
    p.validate();
    if (N < 1 || N > kOracleMaxN) {
        throw RefusalError("full-path oracle limited to 1 <= N <= " + std::to_string(kOracleMaxN));
    }
    // flag[i][n_a]: position after i steps with n_a steps of size a.
    std::vector<std::vector<char>> flag(N + 1);
    for (std::uint64_t i = 1; i <= N; ++i) {
        flag[i].resize(i + 1);
        for (std::uint64_t na = 0; na <= i; ++na) {
            const std::uint64_t pos = p.r + p.a * na + p.b * (i - na);
            flag[i][na] = brute_kfree(pos, p.k) ? 1 : 0;
        }
    }
    std::vector<long double> pa(N + 1), pb(N + 1);
    pa[0] = pb[0] = 1.0L;
    for (std::uint64_t i = 1; i <= N; ++i) {
        pa[i] = pa[i - 1] * static_cast<long double>(p.alpha);
        pb[i] = pb[i - 1] * (1.0L - static_cast<long double>(p.alpha));
    }

    std::vector<CompensatedSum> ex(N);
    CompensatedSum es, es2;
    const std::uint64_t paths = std::uint64_t{1} << N;
    std::vector<char> hit(N);
    for (std::uint64_t mask = 0; mask < paths; ++mask) {
        std::uint64_t na = 0;
        std::uint64_t hits = 0;
        for (std::uint64_t i = 1; i <= N; ++i) {
            na += (mask >> (i - 1)) & 1U;
            hit[i - 1] = flag[i][na];
            hits += static_cast<std::uint64_t>(hit[i - 1]);
        }
        const long double w = pa[na] * pb[N - na];
        for (std::uint64_t i = 0; i < N; ++i) {
            if (hit[i] != 0) {
                ex[i].add(w);
            }
        }
        const long double s = static_cast<long double>(hits) / static_cast<long double>(N);
        es.add(w * s);
        es2.add(w * s * s);
    }
    ExactMoments out;
    out.params = p;
    out.N = N;
    out.method = MomentMethod::full_path_enumeration;
    for (const auto& e : ex) {
        out.e_xi.push_back(static_cast<double>(e.value()));
    }
    const long double mean = es.value();
    out.e_sbar = static_cast<double>(mean);
    const double raw = static_cast<double>(es2.value() - mean * mean);
    out.v_sbar_raw = raw;
    out.v_sbar = raw < 0.0 && raw >= -1e-10 ? 0.0 : raw;
    return out;
}

std::vector<double> expectation_gap_envelope(const WalkParams& p,
                                             const std::vector<std::uint64_t>& Ns)
{
    p.validate();
    if (Ns.empty() || !std::is_sorted(Ns.begin(), Ns.end()) || Ns.front() < 1) {
        throw DomainError("N grid must be non-empty, ascending and >= 1");
    }
    const WalkParams q = p.normalized();
    const std::uint64_t top = Ns.back();
    const SieveTable kf = position_table(q, 1, top);
    const auto f = f_values(p, top);
    const double spread = std::sqrt(q.alpha * (1.0 - q.alpha));
    const double expo = 0.5 - 1.0 / q.k;

    std::vector<double> out;
    double sup = 0.0;
    std::size_t next = 0;
    for (std::uint64_t i = 1; i <= top; ++i) {
        const auto w = binomial_weights(i, q.alpha);
        const double e = static_cast<double>(expect_xi_in(q, kf, i, w));
        const double scaled =
            std::abs(e - f[i - 1]) * spread * std::pow(static_cast<double>(i), expo);
        sup = std::max(sup, scaled);
        while (next < Ns.size() && Ns[next] == i) {
            out.push_back(sup);
            ++next;
        }
    }
    return out;
}

}  // namespace kfreewalk

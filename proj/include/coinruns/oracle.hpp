#ifndef COINRUNS_ORACLE_HPP
#define COINRUNS_ORACLE_HPP

#include <bit>
#include <cstdint>
#include <vector>

#include "coinruns/run_distribution.hpp"

namespace coinruns::oracle {

inline constexpr int kEnumerateCap = 24;

// Exact law of R(n) by brute force over all 2^n toss strings; the ground
// truth the recursion engine is tested against.
template <class T>
portmanteau::BasicRunDistribution<T> enumerate_distribution(int n, const T& p) {
    if (n < 0) throw std::invalid_argument("enumerate: n must be >= 0");
    if (n > kEnumerateCap)
        throw ResourceError("enumerate: n=" + std::to_string(n) + " exceeds the 2^" +
                            std::to_string(kEnumerateCap) + " enumeration cap");
    check_bias(p);
    const T q = T(1) - p;
    std::vector<T> weight_by_heads(static_cast<std::size_t>(n) + 1);
    for (int k = 0; k <= n; ++k) weight_by_heads[k] = pow_int(p, k) * pow_int(q, n - k);

    portmanteau::detail::Accumulator<T> acc;
    std::vector<RunVector::Entry> runs;
    for (std::uint64_t s = 0; s < (1ull << n); ++s) {
        runs.clear();
        std::uint64_t bits = s;
        while (bits != 0) {
            const int skip = std::countr_zero(bits);
            bits >>= skip;
            const int ones = std::countr_one(bits);
            runs.emplace_back(ones, 1);
            bits = ones >= 64 ? 0 : bits >> ones;
        }
        acc[RunVector::from_counts(runs)] +=
            weight_by_heads[static_cast<std::size_t>(std::popcount(s))];
    }
    return portmanteau::BasicRunDistribution<T>(n, p,
                                                portmanteau::detail::freeze(std::move(acc)));
}

struct SimConfig {
    int n = 0;
    double p = 0.5;
    long long trials = 1;
    std::uint64_t seed = 0;
    int workers = 1;
};

struct SimResult {
    std::vector<double> mean;
    std::vector<double> std_error;
    long long trials = 0;
};

// Monte Carlo estimate of E h(R(n)) with per-coordinate standard errors.
// Per-trial substreams are derived from (seed, trial index) and partial
// sums are reduced over fixed 1024-trial chunks in chunk order, so the
// result is bit-identical for any worker count.
SimResult simulate(const SimConfig& cfg, const portmanteau::Functional& h);

// Standard functionals (these also back the CLI registry).
portmanteau::Functional indicator_longest_lt(int ell);
portmanteau::Functional head_count_functional();
portmanteau::Functional total_runs_functional();
portmanteau::Functional r_count(int ell);
portmanteau::Functional g_count(int ell);

}  // namespace coinruns::oracle

#endif

#include "coinruns/oracle.hpp"

#include <atomic>
#include <cmath>
#include <cstring>
#include <thread>

namespace coinruns::oracle {

namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ull;

inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

struct SplitMix64 {
    std::uint64_t state;
    std::uint64_t next() {
        state += kGolden;
        return mix64(state);
    }
};

inline SplitMix64 substream(std::uint64_t seed, std::uint64_t trial) {
    return SplitMix64{mix64(seed + kGolden * (trial + 1))};
}

constexpr long long kChunk = 1024;

// Per-thread scratch; counts is reset through the touched list only.
struct Workspace {
    std::vector<std::uint64_t> words;
    std::vector<long long> counts;
    std::vector<int> touched;
    std::vector<RunVector::Entry> entries;
    std::vector<double> hbuf;
};

RunVector run_vector_of_words(const std::vector<std::uint64_t>& words, int n, Workspace& ws) {
    ws.touched.clear();
    int carry = 0;
    const std::size_t nwords = words.size();
    auto record = [&ws](int len) {
        if (ws.counts[static_cast<std::size_t>(len)]++ == 0) ws.touched.push_back(len);
    };
    for (std::size_t wi = 0; wi < nwords; ++wi) {
        std::uint64_t w = words[wi];
        int valid = 64;
        if (wi + 1 == nwords && (n % 64) != 0) {
            valid = n % 64;
            w &= (1ull << valid) - 1;
        }
        int pos = 0;
        while (pos < valid) {
            if (w & 1ull) {
                int ones = std::countr_one(w);
                if (ones > valid - pos) ones = valid - pos;
                carry += ones;
                pos += ones;
                w = ones >= 64 ? 0ull : w >> ones;
            } else {
                if (carry > 0) {
                    record(carry);
                    carry = 0;
                }
                if (w == 0) break;  // rest of the word is zeros
                const int zeros = std::countr_zero(w);
                pos += zeros;
                w >>= zeros;
            }
        }
    }
    if (carry > 0) record(carry);
    std::sort(ws.touched.begin(), ws.touched.end());
    ws.entries.clear();
    for (int len : ws.touched) {
        ws.entries.emplace_back(len, ws.counts[static_cast<std::size_t>(len)]);
        ws.counts[static_cast<std::size_t>(len)] = 0;
    }
    return RunVector::from_counts(ws.entries);
}

}  // namespace

SimResult simulate(const SimConfig& cfg, const portmanteau::Functional& h) {
    if (cfg.n < 0) throw std::invalid_argument("simulate: n must be >= 0");
    if (cfg.trials < 1) throw std::invalid_argument("simulate: trials must be >= 1");
    check_bias(cfg.p);
    if (h.dim < 1 || !h.eval) throw std::invalid_argument("simulate: invalid functional");
    const int workers = std::clamp(cfg.workers, 1, 64);
    const int dim = h.dim;
    const long long nchunks = (cfg.trials + kChunk - 1) / kChunk;
    std::vector<double> chunk_sum(static_cast<std::size_t>(nchunks * dim), 0.0);
    std::vector<double> chunk_sumsq(static_cast<std::size_t>(nchunks * dim), 0.0);

    const bool fair = cfg.p == 0.5;
    // exact for p with <= 64 significant bits; p < 1 strictly so no overflow
    const std::uint64_t threshold =
        static_cast<std::uint64_t>(static_cast<long double>(cfg.p) * 18446744073709551616.0L);
    const std::size_t nwords = static_cast<std::size_t>((cfg.n + 63) / 64);

    std::atomic<long long> next_chunk{0};
    auto work = [&]() {
        Workspace ws;
        ws.words.resize(nwords);
        ws.counts.assign(static_cast<std::size_t>(cfg.n) + 1, 0);
        ws.hbuf.resize(static_cast<std::size_t>(dim));
        for (;;) {
            const long long c = next_chunk.fetch_add(1);
            if (c >= nchunks) break;
            const long long lo = c * kChunk;
            const long long hi = std::min(cfg.trials, lo + kChunk);
            double* sums = &chunk_sum[static_cast<std::size_t>(c * dim)];
            double* sumsqs = &chunk_sumsq[static_cast<std::size_t>(c * dim)];
            for (long long t = lo; t < hi; ++t) {
                SplitMix64 rng = substream(cfg.seed, static_cast<std::uint64_t>(t));
                if (fair) {
                    for (auto& w : ws.words) w = rng.next();
                } else {
                    for (auto& w : ws.words) {
                        std::uint64_t bits = 0;
                        for (int b = 0; b < 64; ++b)
                            bits |= static_cast<std::uint64_t>(rng.next() < threshold) << b;
                        w = bits;
                    }
                }
                const RunVector x = run_vector_of_words(ws.words, cfg.n, ws);
                h.eval(x, ws.hbuf.data());
                for (int k = 0; k < dim; ++k) {
                    sums[k] += ws.hbuf[static_cast<std::size_t>(k)];
                    sumsqs[k] += ws.hbuf[static_cast<std::size_t>(k)] *
                                 ws.hbuf[static_cast<std::size_t>(k)];
                }
            }
        }
    };
    if (workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int i = 0; i < workers; ++i) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }

    SimResult out;
    out.trials = cfg.trials;
    out.mean.assign(static_cast<std::size_t>(dim), 0.0);
    out.std_error.assign(static_cast<std::size_t>(dim), 0.0);
    for (int k = 0; k < dim; ++k) {
        double s = 0.0, s2 = 0.0;
        for (long long c = 0; c < nchunks; ++c) {  // fixed reduction order
            s += chunk_sum[static_cast<std::size_t>(c * dim + k)];
            s2 += chunk_sumsq[static_cast<std::size_t>(c * dim + k)];
        }
        const double mean = s / static_cast<double>(cfg.trials);
        const double var = std::max(0.0, s2 / static_cast<double>(cfg.trials) - mean * mean);
        out.mean[static_cast<std::size_t>(k)] = mean;
        out.std_error[static_cast<std::size_t>(k)] =
            std::sqrt(var / static_cast<double>(cfg.trials));
    }
    return out;
}

portmanteau::Functional indicator_longest_lt(int ell) {
    if (ell < 1) throw std::invalid_argument("indicator_longest_lt: ell must be >= 1");
    return {"longest<" + std::to_string(ell), 1,
            [ell](const RunVector& x, double* out) { out[0] = x.longest() < ell ? 1.0 : 0.0; }};
}

portmanteau::Functional head_count_functional() {
    return {"head_count", 1,
            [](const RunVector& x, double* out) { out[0] = static_cast<double>(x.head_count()); }};
}

portmanteau::Functional total_runs_functional() {
    return {"total_runs", 1,
            [](const RunVector& x, double* out) { out[0] = static_cast<double>(x.total_runs()); }};
}

portmanteau::Functional r_count(int ell) {
    if (ell < 1) throw std::invalid_argument("r_count: ell must be >= 1");
    return {"R_" + std::to_string(ell), 1,
            [ell](const RunVector& x, double* out) { out[0] = static_cast<double>(x.count(ell)); }};
}

portmanteau::Functional g_count(int ell) {
    if (ell < 1) throw std::invalid_argument("g_count: ell must be >= 1");
    return {"G_" + std::to_string(ell), 1,
            [ell](const RunVector& x, double* out) { out[0] = static_cast<double>(x.exceed(ell)); }};
}

}  // namespace coinruns::oracle

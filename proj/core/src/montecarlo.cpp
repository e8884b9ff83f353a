// Copyright 2026 the qkdlab authors
// SPDX-License-Identifier: Apache-2.0

#include "qkdlab/montecarlo.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <random>
#include <thread>
#include <vector>

namespace qkdlab {

namespace {

constexpr std::uint64_t kShardTrials = 1u << 16;

// SplitMix64; used to derive independent per-shard seeds from the master
// seed so the estimate is invariant under the worker count.
std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Per-shard stream: mt19937_64 seeded via SplitMix64, doubles taken from the
// top 53 bits (independent of any library distribution implementation).
class Stream {
public:
    explicit Stream(std::uint64_t seed) : gen_(seed) {}
    double uniform() { return (gen_() >> 11) * 0x1.0p-53; }

private:
    std::mt19937_64 gen_;
};

unsigned resolve_workers(unsigned requested) {
    if (requested > 0) {
        return requested;
    }
    if (const char* env = std::getenv("QKDLAB_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v > 0) {
            return static_cast<unsigned>(v);
        }
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

// One receiver trial for n photons. Conclusive requires all three detectors
// hit and, under a tap, every photon surviving (a monitor click makes Eve
// suppress the event).
bool conclusive_trial(unsigned n, double tap_t, Stream& rng) {
    bool correct = false, wrong_a = false, wrong_b = false;
    for (unsigned i = 0; i < n; ++i) {
        if (tap_t < 1.0 && rng.uniform() >= tap_t) {
            return false;
        }
        const double u = rng.uniform();
        if (u < 0.5) {
            correct = true;
        } else if (u < 0.75) {
            wrong_a = true;
        } else {
            wrong_b = true;
        }
    }
    return correct && wrong_a && wrong_b;
}

unsigned poisson_inversion(double mean, Stream& rng) {
    const double u = rng.uniform();
    double p = std::exp(-mean);
    double cum = p;
    unsigned n = 0;
    while (u > cum && n < 10000) {
        ++n;
        p *= mean / n;
        cum += p;
    }
    return n;
}

template <typename Trial>
McEstimate run_sharded(const McConfig& cfg, Trial&& trial) {
    const std::uint64_t shards = (cfg.trials + kShardTrials - 1) / kShardTrials;
    std::vector<std::uint64_t> hits(shards, 0);

    auto run_shard = [&](std::uint64_t s) {
        Stream rng(splitmix64(cfg.seed ^ (s + 1)));
        const std::uint64_t begin = s * kShardTrials;
        const std::uint64_t end = std::min(begin + kShardTrials, cfg.trials);
        std::uint64_t count = 0;
        for (std::uint64_t i = begin; i < end; ++i) {
            if (trial(rng)) {
                ++count;
            }
        }
        hits[s] = count;
    };

    const unsigned workers =
        static_cast<unsigned>(std::min<std::uint64_t>(resolve_workers(cfg.workers), shards));
    if (workers <= 1) {
        for (std::uint64_t s = 0; s < shards; ++s) {
            run_shard(s);
        }
    } else {
        std::atomic<std::uint64_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::uint64_t s = next.fetch_add(1); s < shards; s = next.fetch_add(1)) {
                    run_shard(s);
                }
            });
        }
        for (auto& th : pool) {
            th.join();
        }
    }

    std::uint64_t total = 0;
    for (const auto h : hits) {
        total += h;
    }
    const double p_hat = static_cast<double>(total) / static_cast<double>(cfg.trials);
    const double std_err =
        std::sqrt(p_hat * (1.0 - p_hat) / static_cast<double>(cfg.trials));
    return {p_hat, std_err, cfg.trials};
}

void check_config(const McConfig& cfg) {
    if (cfg.trials < 1) {
        throw std::invalid_argument("mc: trials must be >= 1");
    }
    if (!(cfg.tap_t > 0.0 && cfg.tap_t <= 1.0)) {
        throw std::invalid_argument("mc: tap_t must be in (0,1]");
    }
}

}  // namespace

McEstimate mc_conclusive_prob(unsigned n, const McConfig& cfg) {
    check_config(cfg);
    return run_sharded(cfg, [n, tap = cfg.tap_t](Stream& rng) {
        return conclusive_trial(n, tap, rng);
    });
}

McEstimate mc_gain(double mean_tilde, const McConfig& cfg) {
    check_config(cfg);
    if (mean_tilde < 0.0) {
        throw std::invalid_argument("mc: mean_tilde must be >= 0");
    }
    return run_sharded(cfg, [mean_tilde, tap = cfg.tap_t](Stream& rng) {
        const unsigned n = poisson_inversion(mean_tilde, rng);
        return conclusive_trial(n, tap, rng);
    });
}

}  // namespace qkdlab

#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <new>
#include <string>
#include <thread>
#include <vector>

#include "expert/belief.hpp"
#include "expert/errors.hpp"
#include "expert/model.hpp"
#include "expert/seeding.hpp"
#include "expert/stats.hpp"
#include "expert/strategy.hpp"

namespace expert {

struct PredictionRecord {
    int t;
    double reported_mean;
    GaussianBelief prior_belief;
    GaussianBelief posterior_belief;
    double realized_reward = 0.0;  // filled at settlement
};

struct EpisodeResult {
    std::vector<PredictionRecord> records;  // decreasing t
    double total_reward = 0.0;
    std::uint64_t path_seed = 0;
};

// Walks the clock from t_max down to 1. At each allowed period the strategy
// sees the market's pre-prediction belief state; every prediction moves the
// market to belief_at_prediction(t, q, reported). All predictions are scored
// against x0 at settlement. Throws ProtocolError if the strategy predicts
// outside the allowed set.
EpisodeResult run_episode(const EpisodePath& path, const Strategy& strategy,
                          const Horizon& horizon, Quality q);

// Log-likelihood change of the market belief caused by its own signal
// updates between consecutive predictions: sum over k of
// log f_{k+1,prior}(x0) - log f_{k,posterior}(x0).
double market_drift(const EpisodeResult& result, double x0);

// total_reward + market_drift - (log f_last_post(x0) - log f_first_prior(x0));
// zero up to rounding for any episode.
double telescoping_residual(const EpisodeResult& result, double x0);

struct MonteCarloSummary {
    std::uint64_t n_episodes = 0;
    double mean = 0.0;
    double std_error = 0.0;
    std::uint64_t master_seed = 0;
    std::string config_digest;
    bool near_quality_boundary = false;
};

struct PairedSummary {
    MonteCarloSummary first;
    MonteCarloSummary second;
    MonteCarloSummary difference;  // first - second, episode by episode
};

// 0 means "all hardware threads".
unsigned resolve_threads(unsigned requested) noexcept;

// Episodes are processed in fixed-size chunks; each chunk owns an
// accumulator and chunks are merged in index order, so the result is
// bit-identical for any worker count.
inline constexpr std::uint64_t kEpisodeChunk = 4096;

// Calls fn(acc, index, seed) for every episode index in [0, n) with
// seed = episode_seed(master_seed, index). Acc must be default
// constructible and provide merge(const Acc&).
template <class Acc, class EpisodeFn>
Acc reduce_episodes(std::uint64_t n, std::uint64_t master_seed, unsigned threads,
                    EpisodeFn&& fn) {
    const std::uint64_t chunks = (n + kEpisodeChunk - 1) / kEpisodeChunk;
    std::vector<Acc> partial(static_cast<std::size_t>(chunks));
    std::atomic<std::uint64_t> next{0};
    std::atomic<std::uint64_t> completed{0};
    std::atomic<bool> abort{false};
    std::exception_ptr failure;
    std::mutex failure_mutex;

    auto worker = [&] {
        try {
            for (;;) {
                if (abort.load(std::memory_order_relaxed)) return;
                const std::uint64_t c = next.fetch_add(1);
                if (c >= chunks) return;
                const std::uint64_t begin = c * kEpisodeChunk;
                const std::uint64_t end = std::min(n, begin + kEpisodeChunk);
                Acc& acc = partial[static_cast<std::size_t>(c)];
                for (std::uint64_t i = begin; i < end; ++i) {
                    fn(acc, i, episode_seed(master_seed, i));
                }
                completed.fetch_add(end - begin);
            }
        } catch (...) {
            abort = true;
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
        }
    };

    const unsigned workers = static_cast<unsigned>(
        std::min<std::uint64_t>(resolve_threads(threads), std::max<std::uint64_t>(chunks, 1)));
    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
    }

    if (failure) {
        try {
            std::rethrow_exception(failure);
        } catch (const std::bad_alloc&) {
            throw ResourceError("Monte Carlo run ran out of memory", completed.load());
        }
    }

    Acc total{};
    for (const Acc& acc : partial) total.merge(acc);
    return total;
}

// Digest of the experiment configuration, stable across runs.
std::string config_digest(const Horizon& horizon, Quality q, const std::string& strategy_name,
                          std::uint64_t n, std::uint64_t master_seed);

// Mean total reward of `strategy` over n sampled episodes (x0 = 0).
MonteCarloSummary run_monte_carlo(const Horizon& horizon, Quality q, const Strategy& strategy,
                                  std::uint64_t n, std::uint64_t master_seed,
                                  unsigned threads = 0);

// Both strategies on the same sampled paths.
PairedSummary run_paired(const Horizon& horizon, Quality q, const Strategy& first,
                         const Strategy& second, std::uint64_t n, std::uint64_t master_seed,
                         unsigned threads = 0);

}  // namespace expert

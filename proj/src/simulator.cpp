#include "expert/simulator.hpp"

#include <cstdio>
#include <sstream>

#include "expert/analytics.hpp"
#include "expert/scoring.hpp"

namespace expert {

EpisodeResult run_episode(const EpisodePath& path, const Strategy& strategy,
                          const Horizon& horizon, Quality q) {
    if (path.t_max() != horizon.t_max()) {
        throw ParameterError("path length " + std::to_string(path.t_max()) +
                             " does not match horizon " + std::to_string(horizon.t_max()));
    }
    EpisodeResult result;
    result.path_seed = path.seed();
    BeliefState state = Uninformed{};

    for (int t = horizon.t_max(); t >= 1; --t) {
        const bool allowed = horizon.allows(t);
        const StrategyContext ctx{t, allowed, path.market_signal(t), path.expert_signal(t),
                                  state, q, &horizon};
        const Action action = strategy.decide(ctx);
        if (!action.is_predict()) continue;
        if (!allowed) {
            throw ProtocolError("strategy '" + strategy.name() + "' predicted at period " +
                                std::to_string(t) + ", which is not allowed");
        }
        const double reported = action.reported_mean();
        PredictionRecord record{t, reported, pre_prediction_belief(state, t, q, ctx.x_t),
                                belief_at_prediction(t, q, reported)};
        result.records.push_back(record);
        state = PostPrediction{t, reported, ctx.x_t};
    }

    // Settlement at t = 0.
    const double x0 = path.x0();
    for (PredictionRecord& r : result.records) {
        r.realized_reward = log_score(r.prior_belief, r.posterior_belief, x0);
        result.total_reward += r.realized_reward;
    }
    return result;
}

double market_drift(const EpisodeResult& result, double x0) {
    double drift = 0.0;
    for (std::size_t k = 1; k < result.records.size(); ++k) {
        drift += log_density(result.records[k].prior_belief, x0) -
                 log_density(result.records[k - 1].posterior_belief, x0);
    }
    return drift;
}

double telescoping_residual(const EpisodeResult& result, double x0) {
    if (result.records.empty()) return result.total_reward;
    const double overall = log_density(result.records.back().posterior_belief, x0) -
                           log_density(result.records.front().prior_belief, x0);
    return result.total_reward + market_drift(result, x0) - overall;
}

unsigned resolve_threads(unsigned requested) noexcept {
    if (requested != 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

std::string config_digest(const Horizon& horizon, Quality q, const std::string& strategy_name,
                          std::uint64_t n, std::uint64_t master_seed) {
    std::ostringstream canon;
    canon.precision(17);
    canon << "t_max=" << horizon.t_max() << ";allowed=";
    for (int t : horizon.allowed()) canon << t << ',';
    canon << ";q=" << q.value() << ";strategy=" << strategy_name << ";n=" << n
          << ";seed=" << master_seed;
    // FNV-1a, 64 bit.
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : canon.str()) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

namespace {

MonteCarloSummary summarize(const Moments& m, std::uint64_t master_seed, std::string digest,
                            Quality q) {
    return {m.count(), m.mean(), m.stderr_of_mean(), master_seed, std::move(digest),
            near_quality_boundary(q)};
}

void require_episodes(std::uint64_t n) {
    if (n < 2) throw ParameterError("Monte Carlo needs at least 2 episodes");
}

struct PairAcc {
    Moments first;
    Moments second;
    Moments difference;
    void merge(const PairAcc& o) {
        first.merge(o.first);
        second.merge(o.second);
        difference.merge(o.difference);
    }
};

}  // namespace

MonteCarloSummary run_monte_carlo(const Horizon& horizon, Quality q, const Strategy& strategy,
                                  std::uint64_t n, std::uint64_t master_seed, unsigned threads) {
    require_episodes(n);
    const Moments m = reduce_episodes<Moments>(
        n, master_seed, threads, [&](Moments& acc, std::uint64_t, std::uint64_t seed) {
            const EpisodePath path = sample_episode(seed, horizon.t_max(), q);
            acc.add(run_episode(path, strategy, horizon, q).total_reward);
        });
    return summarize(m, master_seed, config_digest(horizon, q, strategy.name(), n, master_seed),
                     q);
}

PairedSummary run_paired(const Horizon& horizon, Quality q, const Strategy& first,
                         const Strategy& second, std::uint64_t n, std::uint64_t master_seed,
                         unsigned threads) {
    require_episodes(n);
    const PairAcc acc = reduce_episodes<PairAcc>(
        n, master_seed, threads, [&](PairAcc& a, std::uint64_t, std::uint64_t seed) {
            const EpisodePath path = sample_episode(seed, horizon.t_max(), q);
            const double r1 = run_episode(path, first, horizon, q).total_reward;
            const double r2 = run_episode(path, second, horizon, q).total_reward;
            a.first.add(r1);
            a.second.add(r2);
            a.difference.add(r1 - r2);
        });
    const std::string pair_name = first.name() + "-vs-" + second.name();
    return {summarize(acc.first, master_seed,
                      config_digest(horizon, q, first.name(), n, master_seed), q),
            summarize(acc.second, master_seed,
                      config_digest(horizon, q, second.name(), n, master_seed), q),
            summarize(acc.difference, master_seed,
                      config_digest(horizon, q, pair_name, n, master_seed), q)};
}

}  // namespace expert

#include <doctest.h>

#include <cmath>
#include <new>
#include <string>

#include "expert/analytics.hpp"
#include "expert/errors.hpp"
#include "expert/scoring.hpp"
#include "expert/seeding.hpp"
#include "expert/simulator.hpp"
#include "generators.hpp"

using namespace expert;

namespace {

// Ignores the allowed set entirely.
class Reckless final : public Strategy {
public:
    Action decide(const StrategyContext& ctx) const override { return Action::predict(ctx.y_t); }
    std::string name() const override { return "reckless"; }
};

bool within(const MonteCarloSummary& s, double target, double z = 4.0) {
    return std::abs(s.mean - target) <= z * s.std_error;
}

}  // namespace

TEST_CASE("silent episodes score nothing") {
    const Horizon h(12);
    const auto path = sample_episode(1, 12, Quality(0.5));
    const auto result = run_episode(path, AlwaysSilent(), h, Quality(0.5));
    CHECK(result.records.empty());
    CHECK(result.total_reward == 0.0);
    CHECK(result.path_seed == 1);
    const auto mc = run_monte_carlo(h, Quality(0.5), AlwaysSilent(), 1000, 3);
    CHECK(mc.mean == 0.0);
    CHECK(mc.std_error == 0.0);
}

TEST_CASE("hand-computed two prediction episode") {
    const Quality q(0.5);
    const Horizon h(2, {2, 1});
    const EpisodePath path(0.0, {0.5, -0.25}, {1.0, 0.5});
    const auto r = run_episode(path, TruthfulAlways(), h, q);
    REQUIRE(r.records.size() == 2);
    const double x2 = 1.75, y2 = 1.5, x1 = 1.5, y1 = 1.0;
    CHECK(r.records[0].t == 2);
    CHECK(r.records[0].prior_belief.mean == doctest::Approx(x2));
    CHECK(r.records[0].prior_belief.variance == doctest::Approx(2.0));
    CHECK(r.records[0].posterior_belief.mean == doctest::Approx(y2));
    CHECK(r.records[0].posterior_belief.variance == doctest::Approx(1.0));
    const auto pre = belief_after_prediction(1, 2, q, x1, x2, y2);
    CHECK(r.records[1].prior_belief.mean == doctest::Approx(pre.mean));
    CHECK(r.records[1].prior_belief.variance == doctest::Approx(pre.variance));
    CHECK(r.records[1].reported_mean == y1);
    const double w1 = log_score({x2, 2.0}, {y2, 1.0}, 0.0);
    const double w2 = log_score(pre, {y1, 0.5}, 0.0);
    CHECK(r.records[0].realized_reward == doctest::Approx(w1));
    CHECK(r.records[1].realized_reward == doctest::Approx(w2));
    CHECK(r.total_reward == doctest::Approx(w1 + w2));
}

TEST_CASE("episode errors") {
    const Horizon h(10, {10, 5});
    const auto path = sample_episode(2, 10, Quality(0.5));
    CHECK_THROWS_AS(run_episode(path, Reckless(), h, Quality(0.5)), ProtocolError);
    CHECK_THROWS_AS(run_episode(path, TruthfulAlways(), Horizon(9), Quality(0.5)), ParameterError);
    CHECK_THROWS_AS(run_monte_carlo(h, Quality(0.5), TruthfulAlways(), 1, 1), ParameterError);
}

TEST_CASE("records are consistent and the reward decomposition closes") {
    const auto failure = gen::for_all(71, 3000, [](gen::Source& g, int i) -> std::string {
        const int T = g.integer(1, 40);
        std::vector<int> allowed;
        for (int t = 1; t <= T; ++t) {
            if (g.integer(0, 3) > 0) allowed.push_back(t);
        }
        const Horizon h(T, allowed);
        const Quality q(g.uniform(0, 0.95));
        const auto path = sample_episode(episode_seed(71, i), T, q, g.uniform(-100, 100));
        std::unique_ptr<Strategy> s;
        const int pick = h.allowed().empty() ? 0 : g.integer(0, 3);
        const int k = pick ? h.allowed()[std::size_t(g.integer(0, int(h.allowed().size()) - 1))] : 0;
        switch (pick) {
            case 1: s = std::make_unique<DistortOnce>(h, k, g.normal(2)); break;
            case 2: s = std::make_unique<SkipOne>(h, k); break;
            case 3: s = std::make_unique<ThresholdPolicy>(g.uniform(0, 2)); break;
            default: s = std::make_unique<TruthfulAlways>();
        }
        const auto r = run_episode(path, *s, h, q);
        double sum = 0;
        int previous = T + 1;
        for (const auto& rec : r.records) {
            if (rec.t >= previous) return "periods not decreasing";
            if (!h.allows(rec.t)) return "prediction outside the allowed set";
            const auto post = belief_at_prediction(rec.t, q, rec.reported_mean);
            if (rec.posterior_belief.mean != post.mean || rec.posterior_belief.variance != post.variance) {
                return "posterior mismatch";
            }
            sum += rec.realized_reward;
            previous = rec.t;
        }
        if (std::abs(sum - r.total_reward) > 1e-12 * std::max(1.0, std::abs(sum))) return "total";
        const double scale = std::max(1.0, std::abs(r.total_reward) + std::abs(market_drift(r, path.x0())));
        if (std::abs(telescoping_residual(r, path.x0())) > 1e-10 * scale) return "telescoping";
        return {};
    });
    CHECK_MESSAGE(failure.empty(), failure);
}

TEST_CASE("single forced prediction earns the first-prediction value") {
    const double q = 0.5;
    const auto mc = run_monte_carlo(Horizon(10, {10}), Quality(q), TruthfulAlways(), 1'000'000, 5);
    CHECK(within(mc, 0.5 * std::log(1 / (1 - q))));
}

TEST_CASE("ignorant expert earns nothing") {
    const Horizon h(15);
    for (int i = 0; i < 50; ++i) {
        const auto r = run_episode(sample_episode(episode_seed(72, i), 15, Quality(0.0)), TruthfulAlways(), h,
                                   Quality(0.0));
        for (const auto& rec : r.records) {
            CHECK(std::isfinite(rec.realized_reward));
            CHECK(std::abs(rec.realized_reward) < 1e-10);
        }
    }
}

TEST_CASE("truthful mean reward matches xi") {
    const Quality q(0.5);
    const auto mc = run_monte_carlo(Horizon(20), q, TruthfulAlways(), 100'000, 7);
    CHECK(mc.n_episodes == 100'000);
    CHECK(mc.master_seed == 7);
    CHECK(within(mc, cumulative_expectation_gamma(20, q).xi));
}

TEST_CASE("monte carlo is deterministic across thread counts") {
    const Horizon h(20);
    const Quality q(0.3);
    const ThresholdPolicy s(0.5);
    const auto a = run_monte_carlo(h, q, s, 20'000, 11, 1);
    const auto b = run_monte_carlo(h, q, s, 20'000, 11, 3);
    const auto c = run_monte_carlo(h, q, s, 20'000, 11, 8);
    const auto d = run_monte_carlo(h, q, s, 20'000, 11, 0);
    for (const auto* other : {&b, &c, &d}) {
        CHECK(other->mean == a.mean);
        CHECK(other->std_error == a.std_error);
        CHECK(other->config_digest == a.config_digest);
    }
    const auto e = run_monte_carlo(h, q, s, 20'000, 12, 1);
    CHECK(e.mean != a.mean);
    CHECK(e.config_digest != a.config_digest);
    CHECK(a.config_digest.size() == 16);
}

TEST_CASE("stderr shrinks like one over root n") {
    const Horizon h(20);
    const auto small = run_monte_carlo(h, Quality(0.5), TruthfulAlways(), 50'000, 13);
    const auto large = run_monte_carlo(h, Quality(0.5), TruthfulAlways(), 100'000, 13);
    const double ratio = small.std_error / large.std_error;
    CHECK(ratio == doctest::Approx(std::sqrt(2.0)).epsilon(0.1));
}

TEST_CASE("pairing reduces the variance of differences") {
    const Horizon h(20);
    const Quality q(0.5);
    const SkipOne skip(h, 7);
    const TruthfulAlways truthful;
    const auto paired = run_paired(h, q, skip, truthful, 50'000, 17);
    const auto s1 = run_monte_carlo(h, q, skip, 50'000, 17);
    const auto s2 = run_monte_carlo(h, q, truthful, 50'000, 18);
    CHECK(paired.first.mean == s1.mean);
    CHECK(paired.difference.mean == doctest::Approx(paired.first.mean - paired.second.mean).epsilon(1e-12));
    const double unpaired = std::hypot(s1.std_error, s2.std_error);
    CHECK(paired.difference.std_error < 0.2 * unpaired);
}

TEST_CASE("truthful dominates every other built-in policy") {
    const Horizon h(20);
    const Quality q(0.5);
    const TruthfulAlways truthful;
    const std::uint64_t n = 100'000;
    struct Arm {
        std::unique_ptr<Strategy> strategy;
        bool strictly_worse;
    };
    std::vector<Arm> arms;
    arms.push_back({std::make_unique<SkipOne>(h, 7), true});
    arms.push_back({std::make_unique<AlwaysSilent>(), true});
    arms.push_back({std::make_unique<DistortOnce>(h, 12, 1.0), true});
    arms.push_back({std::make_unique<DistortOnce>(h, 12, -0.3), false});
    arms.push_back({std::make_unique<ThresholdPolicy>(1.0), true});
    arms.push_back({std::make_unique<ThresholdPolicy>(0.1), false});
    for (const auto& arm : arms) {
        CAPTURE(arm.strategy->name());
        const auto p = run_paired(h, q, *arm.strategy, truthful, n, 19);
        CHECK(p.difference.mean <= 4 * p.difference.std_error);
        if (arm.strictly_worse) CHECK(p.difference.mean < -4 * p.difference.std_error);
    }
    // skip_one sits above silence.
    const auto p = run_paired(h, q, SkipOne(h, 7), AlwaysSilent(), n, 19);
    CHECK(p.difference.mean > 4 * p.difference.std_error);
}

TEST_CASE("ignorant expert: skipping costs nothing") {
    const Horizon h(10);
    const auto p = run_paired(h, Quality(0.0), SkipOne(h, 7), TruthfulAlways(), 1000, 23);
    CHECK(std::abs(p.difference.mean) < 1e-10);
}

TEST_CASE("worker failures surface as typed errors") {
    CHECK_THROWS_AS(reduce_episodes<Moments>(10'000, 1, 2,
                                             [](Moments&, std::uint64_t i, std::uint64_t) {
                                                 if (i == 9000) throw std::bad_alloc();
                                             }),
                    ResourceError);
    bool thrown = false;
    try {
        reduce_episodes<Moments>(10'000, 1, 1, [](Moments&, std::uint64_t i, std::uint64_t) {
            if (i == 9000) throw std::bad_alloc();
        });
    } catch (const ResourceError& e) {
        // The first two chunks completed before the failing one.
        CHECK(e.completed_episodes() == 2 * kEpisodeChunk);
        thrown = true;
    }
    CHECK(thrown);
    CHECK_THROWS_AS(reduce_episodes<Moments>(100, 1, 2,
                                             [](Moments&, std::uint64_t, std::uint64_t) {
                                                 throw StateError("boom");
                                             }),
                    StateError);
}

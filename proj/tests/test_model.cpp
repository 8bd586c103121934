#include <doctest.h>

#include <cmath>

#include "expert/errors.hpp"
#include "expert/model.hpp"
#include "expert/seeding.hpp"
#include "expert/stats.hpp"
#include "generators.hpp"

using namespace expert;

TEST_CASE("quality range") {
    CHECK_NOTHROW(Quality(0.0));
    CHECK_NOTHROW(Quality(1.0));
    CHECK_THROWS_AS(Quality(-0.01), ParameterError);
    CHECK_THROWS_AS(Quality(1.01), ParameterError);
    CHECK_THROWS_AS(Quality(std::nan("")), ParameterError);
    CHECK_THROWS_AS(Quality(1.0).require_informative(), DegenerateBeliefError);
    CHECK_NOTHROW(Quality(0.999).require_informative());
}

TEST_CASE("horizon construction") {
    const Horizon all(5);
    CHECK(all.t_max() == 5);
    CHECK(std::vector<int>(all.allowed().begin(), all.allowed().end()) == std::vector<int>{5, 4, 3, 2, 1});
    CHECK_FALSE(all.allows(0));
    CHECK_FALSE(all.allows(6));

    const Horizon explicit_set(12, {3, 8, 12, 8});
    CHECK(std::vector<int>(explicit_set.allowed().begin(), explicit_set.allowed().end()) ==
          std::vector<int>{12, 8, 3});
    CHECK(explicit_set.next_allowed_below(12) == 8);
    CHECK(explicit_set.next_allowed_below(3) == 0);
    CHECK(explicit_set.previous_allowed_above(8) == 12);
    CHECK(explicit_set.previous_allowed_above(5) == 8);
    CHECK(explicit_set.previous_allowed_above(12) == 0);

    const Horizon every = Horizon::every_k(10, 3);
    for (int t = 1; t <= 10; ++t) CHECK(every.allows(t) == ((10 - t) % 3 == 0));

    CHECK_THROWS_AS(Horizon(0), ParameterError);
    CHECK_THROWS_AS(Horizon(5, {6}), ParameterError);
    CHECK_THROWS_AS(Horizon(5, {0}), ParameterError);
    CHECK_THROWS_AS(Horizon::every_k(5, 0), ParameterError);
    CHECK(Horizon(5, {}).allowed().empty());
}

TEST_CASE("episode path accessors") {
    const EpisodePath path(2.0, {0.5, -1.0, 0.25}, {1.0, 0.0, -2.0});
    CHECK(path.t_max() == 3);
    CHECK(path.market_signal(0) == 2.0);
    CHECK(path.expert_signal(0) == 2.0);
    CHECK(path.market_signal(1) == doctest::Approx(3.5));
    CHECK(path.market_signal(3) == doctest::Approx(0.75));
    CHECK(path.expert_signal(3) == doctest::Approx(1.0));
    CHECK(path.step(2) == doctest::Approx(-1.0));
    CHECK_THROWS_AS(path.market_signal(4), IndexError);
    CHECK_THROWS_AS(path.expert_signal(-1), IndexError);
    CHECK_THROWS_AS(path.knowledge_step(0), IndexError);
    CHECK_THROWS_AS(EpisodePath(0.0, {1.0}, {1.0, 2.0}), ParameterError);

    const SignalView view = signals_at(path, 2);
    CHECK(view.t == 2);
    CHECK(view.x_t == path.market_signal(2));
    CHECK(view.y_t == path.expert_signal(2));
}

TEST_CASE("zero steps leave both signals at the outcome") {
    const EpisodePath path(7.5, std::vector<double>(6, 0.0), std::vector<double>(6, 0.0));
    for (int t = 0; t <= 6; ++t) {
        CHECK(market_signal(path, t) == 7.5);
        CHECK(expert_signal(path, t) == 7.5);
    }
}

TEST_CASE("degenerate qualities sample exact zeros") {
    const EpisodePath ignorant = sample_episode(11, 15, Quality(0.0), 1.0);
    const EpisodePath oracle = sample_episode(12, 15, Quality(1.0), -3.0);
    for (int i = 1; i <= 15; ++i) {
        CHECK(ignorant.knowledge_step(i) == 0.0);
        CHECK(oracle.uncertainty_step(i) == 0.0);
    }
    for (int t = 0; t <= 15; ++t) {
        CHECK(ignorant.market_signal(t) == ignorant.expert_signal(t));
        CHECK(oracle.expert_signal(t) == -3.0);
    }
}

TEST_CASE("sampling is a pure function of the seed") {
    const auto p1 = sample_episode(99, 20, Quality(0.4));
    const auto p2 = sample_episode(99, 20, Quality(0.4));
    const auto p3 = sample_episode(100, 20, Quality(0.4));
    bool differs = false;
    for (int i = 1; i <= 20; ++i) {
        CHECK(p1.knowledge_step(i) == p2.knowledge_step(i));
        CHECK(p1.uncertainty_step(i) == p2.uncertainty_step(i));
        differs = differs || p1.knowledge_step(i) != p3.knowledge_step(i);
    }
    CHECK(differs);
    CHECK_THROWS_AS(sample_episode(1, 0, Quality(0.5)), ParameterError);
}

TEST_CASE("market and expert signals match the path sums") {
    const auto failure = gen::for_all(5, 200, [](gen::Source& g, int i) -> std::string {
        const int T = g.integer(1, 30);
        const double x0 = g.uniform(-50, 50);
        const auto path = sample_episode(episode_seed(5, i), T, Quality(g.uniform(0, 1)), x0);
        double x = x0, y = x0;
        for (int t = 1; t <= T; ++t) {
            x += path.knowledge_step(t) + path.uncertainty_step(t);
            y += path.uncertainty_step(t);
            if (std::abs(path.market_signal(t) - x) > 1e-12 * (1 + std::abs(x))) return "x mismatch";
            if (std::abs(path.expert_signal(t) - y) > 1e-12 * (1 + std::abs(y))) return "y mismatch";
        }
        return {};
    });
    CHECK_MESSAGE(failure.empty(), failure);
}

TEST_CASE("step variance is one") {
    const Quality q(0.6);
    Moments z2;
    for (std::uint64_t e = 0; e < 1'000'000; ++e) {
        const auto path = sample_episode(episode_seed(21, e), 20, q);
        for (int i = 1; i <= 20; ++i) z2.add(path.step(i) * path.step(i));
    }
    // Steps within an episode are independent, so the per-step stderr holds.
    CHECK(std::abs(z2.mean() - 1.0) <= 3.0 * z2.stderr_of_mean());
}

TEST_CASE("expert signal variance is (1-q) t") {
    const Quality q(0.6);
    Moments d2;
    for (std::uint64_t e = 0; e < 1'000'000; ++e) {
        const double d = sample_episode(episode_seed(22, e), 10, q).expert_signal(10);
        d2.add(d * d);
    }
    CHECK(std::abs(d2.mean() - 4.0) <= 3.0 * d2.stderr_of_mean());
}

TEST_CASE("signal covariances") {
    const double qv = 0.35;
    const Quality q(qv);
    const int i = 4, j = 9;
    Moments xx, xy, yx, yy, gap;
    for (std::uint64_t e = 0; e < 200'000; ++e) {
        const auto p = sample_episode(episode_seed(23, e), 12, q);
        xx.add(p.market_signal(i) * p.market_signal(j));
        xy.add(p.market_signal(i) * p.expert_signal(j));
        yx.add(p.expert_signal(i) * p.market_signal(j));
        yy.add(p.expert_signal(i) * p.expert_signal(j));
        const double g = p.market_signal(j) - p.expert_signal(j);
        gap.add(g * g);
    }
    const auto within = [](const Moments& m, double target) {
        return std::abs(m.mean() - target) <= 4.0 * m.stderr_of_mean();
    };
    CHECK(within(xx, i));
    CHECK(within(xy, (1 - qv) * i));
    CHECK(within(yx, (1 - qv) * i));
    CHECK(within(yy, (1 - qv) * i));
    CHECK(within(gap, qv * j));
}

TEST_CASE("knowledge bridge hits its total") {
    const auto a = sample_knowledge_bridge(3, 20, Quality(0.5), 2.5);
    REQUIRE(a.size() == 20);
    double sum = 0;
    for (double v : a) sum += v;
    CHECK(sum == doctest::Approx(2.5).epsilon(1e-12));
}

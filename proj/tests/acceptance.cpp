// Acceptance run: one PASS/FAIL line per criterion. Exit status is nonzero
// if any criterion fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "expert/analytics.hpp"
#include "expert/belief.hpp"
#include "expert/cli.hpp"
#include "expert/scoring.hpp"
#include "expert/seeding.hpp"
#include "expert/simulator.hpp"
#include "expert/stats.hpp"
#include "expert/verify.hpp"
#include "generators.hpp"
#include "oracles.hpp"

using namespace expert;

namespace {

struct Outcome {
    bool passed = true;
    std::vector<std::string> details;

    void require(bool ok, std::string detail) {
        passed = passed && ok;
        details.push_back(std::string(ok ? "ok   " : "FAIL ") + detail);
    }
};

std::string format(const char* fmt, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, fmt, args...);
    return buf;
}

double rel_err(double got, double want) { return std::abs(got - want) / std::max(1.0, std::abs(want)); }

void absorb(Outcome& o, const VerifyReport& report) {
    for (const CheckResult& c : report.checks) {
        if (c.kind == CheckKind::Stochastic) {
            o.require(c.passed, format("%s: %.6g vs %.6g, z=%+.2f", c.name.c_str(), c.estimate, c.target, c.z));
        } else {
            o.require(c.passed, format("%s: %.6g (target/bound %.6g)", c.name.c_str(), c.estimate,
                                       c.kind == CheckKind::Analytic ? c.target : c.tolerance));
        }
    }
}

Outcome posterior_oracle() {
    Outcome o;
    gen::Source g(2024);
    double worst_mean = 0, worst_var = 0;
    for (int i = 0; i < 1000; ++i) {
        const int T = g.integer(1, 100);
        const int t = g.integer(1, T);
        const double q = g.quality();
        const double x_t = g.uniform(-50, 50), x_T = g.uniform(-50, 50), y_T = g.uniform(-50, 50);
        const auto b = belief_after_prediction(t, T, Quality(q), x_t, x_T, y_T);
        std::vector<oracle::Observation> obs{{false, T, x_T}, {true, T, y_T}};
        if (t < T) obs.push_back({false, t, x_t});
        const auto ref = oracle::condition_on(obs, q);
        worst_mean = std::max(worst_mean, std::abs(b.mean - ref.mean) / std::max(1e-300, std::abs(ref.mean)));
        worst_var = std::max(worst_var, rel_err(b.variance, ref.variance));
    }
    o.require(worst_mean <= 1e-10, format("max relative mean error %.3g <= 1e-10", worst_mean));
    o.require(worst_var <= 1e-10, format("max relative variance error %.3g <= 1e-10", worst_var));
    return o;
}

Outcome closed_forms() {
    Outcome o;
    double worst = 0;
    for (int i = 1; i <= 9; ++i) {
        for (int T : {1, 10, 1000, 1000000}) {
            const Quality q(i / 10.0);
            worst = std::max(worst, rel_err(cumulative_expectation_sum(T, q).xi, cumulative_expectation_gamma(T, q).xi));
        }
    }
    o.require(worst <= 1e-10, format("max relative sum/gamma disagreement %.3g <= 1e-10", worst));
    const double ratio = asymptotic_ratio(1000000, Quality(0.5));
    o.require(std::abs(ratio - 0.5) <= 1e-4, format("asymptotic ratio at T=1e6, q=0.5: %.8f", ratio));
    return o;
}

Outcome theorem_average() {
    Outcome o;
    const Horizon h(20);
    for (double qv : {0.3, 0.5, 0.8}) {
        const Quality q(qv);
        const auto mc = run_monte_carlo(h, q, TruthfulAlways(), 100000, 31);
        const double xi = cumulative_expectation_gamma(20, q).xi;
        const double z = (mc.mean - xi) / mc.std_error;
        o.require(std::abs(z) <= 4, format("q=%.1f: mean %.6f vs xi %.6f, z=%+.2f", qv, mc.mean, xi, z));
        o.require(mc.std_error < 0.01 * mc.mean, format("q=%.1f: stderr/mean %.4f < 0.01", qv, mc.std_error / mc.mean));
    }
    return o;
}

Outcome consecutive() {
    Outcome o;
    const Horizon h(10, {10, 5});
    const Quality q(0.5);
    const TruthfulAlways truthful;
    const Moments m = reduce_episodes<Moments>(1000000, 41, 0, [&](Moments& acc, std::uint64_t, std::uint64_t seed) {
        const auto r = run_episode(sample_episode(seed, 10, q), truthful, h, q);
        acc.add(r.records[1].realized_reward);
    });
    const double target = -0.5 * std::log(0.75);
    const double z = (m.mean() - target) / m.stderr_of_mean();
    o.require(std::abs(z) <= 4, format("second prediction mean %.6f vs %.6f, z=%+.2f", m.mean(), target, z));
    return o;
}

Outcome truthfulness() {
    Outcome o;
    const Horizon h(10, {10, 5});
    const TruthfulAlways truthful;
    std::uint64_t seed = 51;
    for (double qv : {0.3, 0.7}) {
        for (double c : {0.5, 1.0, 2.0}) {
            const Quality q(qv);
            const DistortOnce distort(h, 10, c);
            const auto p = run_paired(h, q, distort, truthful, 1000000, seed++);
            const double target = distortion_delta(10, 5, q, c);
            const double z = (p.difference.mean - target) / p.difference.std_error;
            o.require(p.difference.mean < 0 && std::abs(z) <= 4,
                      format("q=%.1f c=%.1f: dW %.6f vs %.6f, z=%+.2f", qv, c, p.difference.mean, target, z));
        }
    }
    return o;
}

Outcome predict_always() {
    Outcome o;
    absorb(o, verify_suite("predict-always", {}));
    return o;
}

Outcome martingale() {
    Outcome o;
    absorb(o, verify_suite("at-t", {}));
    VerifyParams p;
    p.n = 1000000;
    absorb(o, verify_suite("gap-moments", p));
    return o;
}

Outcome calibration() {
    Outcome o;
    VerifyParams p;
    p.n = 100000;
    absorb(o, verify_suite("calibration", p));
    return o;
}

Outcome determinism() {
    Outcome o;
    const unsigned max_threads = std::max(2u, std::thread::hardware_concurrency());
    const auto simulate = [](unsigned threads) {
        std::ostringstream out, err;
        const int code = cli::run({"simulate", "--q", "0.5", "--t-max", "20", "--strategy",
                                   "truthful,skip:7,distort:20:1,threshold:0.5", "--n", "50000", "--seed", "7",
                                   "--threads", std::to_string(threads)},
                                  out, err);
        return code == 0 ? out.str() : std::string("error: ") + err.str();
    };
    const std::string a = simulate(1), b = simulate(1);
    const std::string c = simulate(max_threads), d = simulate(max_threads);
    o.require(a == b, "two runs at 1 thread are byte-identical");
    o.require(c == d, format("two runs at %u threads are byte-identical", max_threads));
    o.require(a == c, "1 thread and max threads agree byte for byte");
    return o;
}

Outcome r_equals_s() {
    Outcome o;
    gen::Source g(61);
    double worst = 0;
    for (int i = 0; i < 10000; ++i) {
        const auto [T, t1, t2] = g.descending_triple(1000);
        const double q = g.quality();
        worst = std::max(worst, std::abs(oracle::R(t1, t2, T, q) - oracle::S(t1, t2, T, q)));
    }
    o.require(worst <= 1e-10, format("max |R - S| = %.3g <= 1e-10", worst));
    return o;
}

struct Criterion {
    int id;
    const char* title;
    double time_limit_s;  // 0: no limit
    std::function<Outcome()> run;
};

}  // namespace

int main() {
    const std::vector<Criterion> criteria{
        {1, "posterior matches joint-Gaussian conditioning", 1.0, posterior_oracle},
        {2, "sum and gamma forms of xi agree; asymptotic ratio", 1.0, closed_forms},
        {3, "truthful mean total reward matches xi(20, q)", 30.0, theorem_average},
        {4, "second consecutive prediction earns -ln(0.75)/2", 60.0, consecutive},
        {5, "distortion loses exactly distortion_delta", 120.0, truthfulness},
        {6, "speaking is never worse; skipping costs the gap", 120.0, predict_always},
        {7, "conditional gap moments and tower rule", 0.0, martingale},
        {8, "standardized residuals are standard normal", 0.0, calibration},
        {9, "simulate output is byte-identical across runs and threads", 0.0, determinism},
        {10, "R = S identity", 0.0, r_equals_s},
    };
    int failures = 0;
    for (const Criterion& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome outcome;
        try {
            outcome = c.run();
        } catch (const std::exception& e) {
            outcome.require(false, std::string("exception: ") + e.what());
        }
        const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (c.time_limit_s > 0) {
            outcome.require(elapsed < c.time_limit_s, format("runtime %.2f s < %.0f s", elapsed, c.time_limit_s));
        }
        std::printf("[%s] criterion %2d: %s (%.2f s)\n", outcome.passed ? "PASS" : "FAIL", c.id, c.title, elapsed);
        for (const auto& d : outcome.details) std::printf("        %s\n", d.c_str());
        std::fflush(stdout);
        if (!outcome.passed) ++failures;
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}

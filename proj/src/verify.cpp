#include "expert/verify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <random>
#include <sstream>

#include "expert/analytics.hpp"
#include "expert/belief.hpp"
#include "expert/errors.hpp"
#include "expert/model.hpp"
#include "expert/scoring.hpp"
#include "expert/seeding.hpp"
#include "expert/simulator.hpp"
#include "expert/stats.hpp"
#include "expert/strategy.hpp"

namespace expert {

bool VerifyReport::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

CheckResult stochastic_check(std::string name, double estimate, double target,
                             double std_error) {
    double z = 0.0;
    if (std_error > 0.0) {
        z = (estimate - target) / std_error;
    } else if (estimate != target) {
        z = std::numeric_limits<double>::infinity();
    }
    return {std::move(name), CheckKind::Stochastic, estimate, target, std_error, z,
            kZThreshold, std::abs(z) <= kZThreshold};
}

CheckResult analytic_check(std::string name, double estimate, double target, double tolerance) {
    return {std::move(name), CheckKind::Analytic, estimate, target, 0.0, 0.0, tolerance,
            std::abs(estimate - target) <= tolerance};
}

CheckResult upper_bound_check(std::string name, double estimate, double bound) {
    return {std::move(name), CheckKind::UpperBound, estimate, bound, 0.0, 0.0, bound,
            estimate <= bound};
}

CheckResult lower_bound_check(std::string name, double estimate, double bound) {
    return {std::move(name), CheckKind::LowerBound, estimate, bound, 0.0, 0.0, bound,
            estimate >= bound};
}

namespace {

struct Samples {
    std::vector<double> values;
    void merge(const Samples& o) { values.insert(values.end(), o.values.begin(), o.values.end()); }
};

template <std::size_t N>
struct MomentSet {
    std::array<Moments, N> m;
    void merge(const MomentSet& o) {
        for (std::size_t i = 0; i < N; ++i) m[i].merge(o.m[i]);
    }
};

std::uint64_t sub_seed(std::uint64_t seed, std::uint64_t k) { return splitmix64(seed + 0x9E37 * k); }

std::string fmt(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

int horizon_or(const VerifyParams& p, int fallback, int minimum) {
    const int T = p.t_max.value_or(fallback);
    if (T < minimum) {
        throw ConfigError("suite needs t_max >= " + std::to_string(minimum) + ", got " +
                          std::to_string(T));
    }
    return T;
}

Quality quality_or(const VerifyParams& p, double fallback) {
    const Quality q(p.q.value_or(fallback));
    q.require_informative();
    return q;
}

std::uint64_t episodes_or(const VerifyParams& p, std::uint64_t fallback) {
    const std::uint64_t n = p.n.value_or(fallback);
    if (n < 2) throw ConfigError("suite needs n >= 2");
    return n;
}

CheckResult mean_check(std::string name, const Moments& m, double target) {
    return stochastic_check(std::move(name), m.mean(), target, m.stderr_of_mean());
}

// Market beliefs are standardized against x0 in each information regime.
VerifyReport calibration(const VerifyParams& p) {
    const Quality q = quality_or(p, 0.6);
    const int T = horizon_or(p, 10, 2);
    const int t = std::max(1, (2 * T) / 5);
    const std::uint64_t n = episodes_or(p, 100000);

    struct Acc {
        Samples uninformed, at, after;
        void merge(const Acc& o) {
            uninformed.merge(o.uninformed);
            at.merge(o.at);
            after.merge(o.after);
        }
    };
    const Acc acc = reduce_episodes<Acc>(n, p.seed, p.threads,
                                         [&](Acc& a, std::uint64_t, std::uint64_t seed) {
        const EpisodePath path = sample_episode(seed, T, q);
        const double x0 = path.x0();
        const auto standardize = [x0](const GaussianBelief& b) {
            return (x0 - b.mean) / std::sqrt(b.variance);
        };
        a.uninformed.values.push_back(standardize(uninformed_belief(t, path.market_signal(t))));
        a.at.values.push_back(standardize(belief_at_prediction(T, q, path.expert_signal(T))));
        a.after.values.push_back(standardize(belief_after_prediction(
            t, T, q, path.market_signal(t), path.market_signal(T), path.expert_signal(T))));
    });

    const double critical = ks_critical_value(n, 0.01);
    VerifyReport report{"calibration", {}};
    const auto add = [&](const std::string& label, const Samples& s) {
        Moments m;
        for (double v : s.values) m.add(v);
        report.checks.push_back(upper_bound_check(
            "KS distance, " + label, ks_statistic_standard_normal(s.values), critical));
        report.checks.push_back(mean_check("mean residual, " + label, m, 0.0));
    };
    add("uninformed at t=" + std::to_string(t), acc.uninformed);
    add("at prediction T=" + std::to_string(T), acc.at);
    add("after prediction, t=" + std::to_string(t) + " T=" + std::to_string(T), acc.after);
    return report;
}

VerifyReport kl_expectation(const VerifyParams& p) {
    const Quality q = quality_or(p, 0.5);
    const int T = horizon_or(p, 20, 1);
    const std::uint64_t n = episodes_or(p, 100000);
    VerifyReport report{"kl-expectation", {}};

    const GaussianBelief prior{0.3, 2.0};
    const GaussianBelief posterior{1.1, 0.8};
    const Moments sampled = reduce_episodes<Moments>(
        n, sub_seed(p.seed, 1), p.threads, [&](Moments& m, std::uint64_t, std::uint64_t seed) {
            Engine engine(seed);
            std::normal_distribution<double> normal(posterior.mean, std::sqrt(posterior.variance));
            m.add(log_score(prior, posterior, normal(engine)));
        });
    report.checks.push_back(mean_check("log score under posterior = KL(post || prior)", sampled,
                                       expected_truthful_reward(prior, posterior)));

    // First prediction at T inside the model.
    const MomentSet<2> first = reduce_episodes<MomentSet<2>>(
        n, sub_seed(p.seed, 2), p.threads,
        [&](MomentSet<2>& a, std::uint64_t, std::uint64_t seed) {
            const EpisodePath path = sample_episode(seed, T, q);
            const double x = path.market_signal(T);
            const double y = path.expert_signal(T);
            const double realized =
                log_score(uninformed_belief(T, x), belief_at_prediction(T, q, y), path.x0());
            a.m[0].add(realized);
            a.m[1].add(realized - first_prediction_expectation(T, q, x, y));
        });
    report.checks.push_back(mean_check("first prediction, a priori -log(1-q)/2", first.m[0],
                                       -0.5 * std::log1p(-q.value())));
    report.checks.push_back(
        mean_check("first prediction, realized minus conditional expectation", first.m[1], 0.0));
    return report;
}

VerifyReport consecutive(const VerifyParams& p) {
    const Quality q = quality_or(p, 0.5);
    const int T = horizon_or(p, 10, 2);
    const int t = T / 2;
    const std::uint64_t n = episodes_or(p, 1000000);
    const Horizon horizon(T, {T, t});
    const TruthfulAlways truthful;

    const MomentSet<3> acc = reduce_episodes<MomentSet<3>>(
        n, p.seed, p.threads, [&](MomentSet<3>& a, std::uint64_t, std::uint64_t seed) {
            const EpisodeResult r = run_episode(sample_episode(seed, T, q), truthful, horizon, q);
            a.m[0].add(r.records[0].realized_reward);
            a.m[1].add(r.records[1].realized_reward);
            a.m[2].add(r.total_reward);
        });
    VerifyReport report{"consecutive", {}};
    const std::string pair = "T=" + std::to_string(T) + ", t=" + std::to_string(t);
    report.checks.push_back(mean_check("first prediction at T, -log(1-q)/2", acc.m[0],
                                       -0.5 * std::log1p(-q.value())));
    report.checks.push_back(mean_check("second prediction, " + pair, acc.m[1],
                                       consecutive_expectation(T, t, q)));
    report.checks.push_back(
        mean_check("total reward", acc.m[2], schedule_expectation(horizon.allowed(), q)));
    return report;
}

VerifyReport gain_loss(const VerifyParams& p) {
    const Quality q = quality_or(p, 0.5);
    const int T = horizon_or(p, 10, 2);
    const int t = T / 2;
    const double c = p.c.value_or(1.0);
    const std::uint64_t n = episodes_or(p, 1000000);
    const Horizon horizon(T, {T, t});
    const TruthfulAlways truthful;
    const DistortOnce distort(horizon, T, c);

    struct Acc {
        Moments difference;
        double max_abs = 0.0;
        double max_shift_error = 0.0;
        void merge(const Acc& o) {
            difference.merge(o.difference);
            max_abs = std::max(max_abs, o.max_abs);
            max_shift_error = std::max(max_shift_error, o.max_shift_error);
        }
    };
    const double c_t = induced_distortion(T, t, q, c);
    const Acc acc = reduce_episodes<Acc>(n, p.seed, p.threads,
                                         [&](Acc& a, std::uint64_t, std::uint64_t seed) {
        const EpisodePath path = sample_episode(seed, T, q);
        const EpisodeResult honest = run_episode(path, truthful, horizon, q);
        const EpisodeResult lying = run_episode(path, distort, horizon, q);
        const double d = lying.total_reward - honest.total_reward;
        a.difference.add(d);
        a.max_abs = std::max(a.max_abs, std::abs(d));
        const double shift =
            lying.records[1].prior_belief.mean - honest.records[1].prior_belief.mean;
        a.max_shift_error = std::max(a.max_shift_error, std::abs(shift - c_t));
    });

    VerifyReport report{"gain-loss", {}};
    const std::string label = "c=" + fmt(c) + ", T=" + std::to_string(T) + ", t=" +
                              std::to_string(t);
    if (c == 0.0) {
        report.checks.push_back(
            analytic_check("max |reward difference| with c=0", acc.max_abs, 0.0, 0.0));
    } else {
        report.checks.push_back(mean_check("distorting minus truthful, " + label, acc.difference,
                                           distortion_delta(T, t, q, c)));
        report.checks.push_back(upper_bound_check("mean reward difference is negative",
                                                  acc.difference.mean(), 0.0));
    }
    report.checks.push_back(analytic_check("induced shift c_t of market mean at t",
                                           acc.max_shift_error, 0.0,
                                           1e-9 * std::max(1.0, std::abs(c))));
    return report;
}

VerifyReport at_t(const VerifyParams& p) {
    const Quality q = quality_or(p, 0.5);
    const int T = horizon_or(p, 20, 2);
    const int t = std::max(1, (2 * T) / 5);
    const std::uint64_t n = episodes_or(p, 100000);
    const double qv = q.value();
    VerifyReport report{"at-t", {}};

    // Tower rule: averaging over x_T - y_T ~ N(0, qT) must give q t.
    const double ratio = static_cast<double>(t) / T;
    const double towered = ratio * ratio * qv * T + qv * t * static_cast<double>(T - t) / T;
    report.checks.push_back(analytic_check("tower rule E[E_T[(x_t-y_t)^2]] = q t", towered,
                                           qv * t, 1e-12 * std::max(1.0, qv * t)));

    const std::array<double, 2> gaps = {0.0, 1.5 * std::sqrt(qv * T)};
    for (std::size_t k = 0; k < gaps.size(); ++k) {
        const double d = gaps[k];
        const Moments m = reduce_episodes<Moments>(
            n, sub_seed(p.seed, k), p.threads, [&](Moments& acc, std::uint64_t, std::uint64_t seed) {
                const std::vector<double> a = sample_knowledge_bridge(seed, T, q, d);
                double partial = 0.0;
                for (int i = 0; i < t; ++i) partial += a[static_cast<std::size_t>(i)];
                acc.add(partial * partial);
            });
        report.checks.push_back(mean_check("bridge estimate, x_T-y_T=" + fmt(d), m,
                                           first_case_gap_moment(t, T, q, d, 0.0)));
    }

    const Moments full = reduce_episodes<Moments>(
        n, sub_seed(p.seed, 7), p.threads, [&](Moments& acc, std::uint64_t, std::uint64_t seed) {
            const EpisodePath path = sample_episode(seed, T, q);
            const double g = path.market_signal(t) - path.expert_signal(t);
            acc.add(g * g - first_case_gap_moment(t, T, q, path.market_signal(T),
                                                  path.expert_signal(T)));
        });
    report.checks.push_back(mean_check("full paths, realized minus conditional", full, 0.0));
    return report;
}

VerifyReport gap_moments(const VerifyParams& p) {
    const Quality q = quality_or(p, 0.5);
    const int T = horizon_or(p, 10, 3);
    const int t = std::max(2, (4 * T) / 5);
    const int tau = std::max(1, (2 * T) / 5);
    const std::uint64_t n = episodes_or(p, 1000000);
    const GapMoments law = conditional_gap_moments(tau, t, T, q);
    const double var_t = pre_prediction_variance(t, T, q);
    const double var_tau = pre_prediction_variance(tau, T, q);

    struct Acc {
        Regression gap;
        Regression scaled;
        void merge(const Acc& o) {
            gap.merge(o.gap);
            scaled.merge(o.scaled);
        }
    };
    const Acc acc = reduce_episodes<Acc>(n, p.seed, p.threads,
                                         [&](Acc& a, std::uint64_t, std::uint64_t seed) {
        const EpisodePath path = sample_episode(seed, T, q);
        const double x_T = path.market_signal(T);
        const double y_T = path.expert_signal(T);
        const auto gap_at = [&](int s) {
            return belief_after_prediction(s, T, q, path.market_signal(s), x_T, y_T).mean -
                   path.expert_signal(s);
        };
        const double g_t = gap_at(t);
        const double g_tau = gap_at(tau);
        a.gap.add(g_t, g_tau);
        a.scaled.add(g_t / var_t, g_tau / var_tau);
    });

    VerifyReport report{"gap-moments", {}};
    const std::string label =
        "tau=" + std::to_string(tau) + ", t=" + std::to_string(t) + ", T=" + std::to_string(T);
    report.checks.push_back(stochastic_check("regression slope = mean_coeff, " + label,
                                             acc.gap.slope(), law.mean_coeff,
                                             acc.gap.slope_stderr()));
    report.checks.push_back(stochastic_check("regression intercept = 0", acc.gap.intercept(), 0.0,
                                             acc.gap.intercept_stderr()));
    report.checks.push_back(stochastic_check("residual variance = variance",
                                             acc.gap.residual_variance(), law.variance,
                                             acc.gap.residual_variance_stderr()));
    report.checks.push_back(stochastic_check("martingale slope = 1", acc.scaled.slope(), 1.0,
                                             acc.scaled.slope_stderr()));
    report.checks.push_back(stochastic_check("martingale intercept = 0", acc.scaled.intercept(),
                                             0.0, acc.scaled.intercept_stderr()));
    return report;
}

struct SkipConfig {
    Horizon horizon;
    double q;
    int skip;
};

// Per-episode speak_gap given the truthful run's signals at the skipped period.
double conditional_speak_gap(const EpisodePath& path, const EpisodeResult& truthful,
                             const Horizon& horizon, Quality q, int t1) {
    const int t2 = horizon.next_allowed_below(t1);
    const int T = horizon.previous_allowed_above(t1);
    const double y = path.expert_signal(t1);
    if (T == 0) {
        return speak_gap({t1, t2, q, FirstPrediction{path.market_signal(t1), y}});
    }
    for (const PredictionRecord& r : truthful.records) {
        if (r.t == t1) return speak_gap({t1, t2, q, AfterPrediction{T, r.prior_belief.mean, y}});
    }
    throw StateError("truthful run has no prediction at the skipped period");
}

VerifyReport predict_always(const VerifyParams& p) {
    VerifyReport report{"predict-always", {}};

    // Property: the gap is never negative.
    const std::uint64_t property_n = 100000;
    struct PropAcc {
        double min_gap = std::numeric_limits<double>::infinity();
        double min_after_gap = std::numeric_limits<double>::infinity();
        void merge(const PropAcc& o) {
            min_gap = std::min(min_gap, o.min_gap);
            min_after_gap = std::min(min_after_gap, o.min_after_gap);
        }
    };
    const PropAcc prop = reduce_episodes<PropAcc>(
        property_n, sub_seed(p.seed, 11), p.threads,
        [&](PropAcc& a, std::uint64_t index, std::uint64_t seed) {
            Engine engine(seed);
            std::uniform_real_distribution<double> unit(0.0, 1.0);
            std::normal_distribution<double> normal(0.0, 1.0);
            const auto pick = [&](int lo, int hi) {
                return std::uniform_int_distribution<int>(lo, hi)(engine);
            };
            const Quality q(0.001 + 0.998 * unit(engine));
            const int T = pick(3, 200);
            const int t1 = pick(2, T - 1);
            const int t2 = pick(1, t1 - 1);
            const double spread = std::sqrt(static_cast<double>(T)) * 3.0 * unit(engine);
            const double y = 10.0 * normal(engine);
            const double x = y + spread * normal(engine);
            if (index % 2 == 0) {
                a.min_gap = std::min(a.min_gap, speak_gap({t1, t2, q, FirstPrediction{x, y}}));
            } else {
                const double g = speak_gap({t1, t2, q, AfterPrediction{T, x, y}});
                a.min_gap = std::min(a.min_gap, g);
                a.min_after_gap = std::min(a.min_after_gap, g);
            }
        });
    report.checks.push_back(
        lower_bound_check("min speak_gap over 1e5 random inputs", prop.min_gap, 0.0));
    report.checks.push_back(lower_bound_check("min speak_gap after a prediction is positive",
                                              prop.min_after_gap,
                                              std::numeric_limits<double>::min()));

    // Paired simulation: skipping one allowed period costs exactly the gap.
    std::vector<SkipConfig> configs;
    configs.push_back({Horizon(12, {12, 8, 3}), 0.5, 8});
    configs.push_back({Horizon(20), 0.5, 7});
    configs.push_back({Horizon(10, {10, 6, 2}), 0.7, 10});
    const std::uint64_t n = episodes_or(p, 200000);

    for (std::size_t k = 0; k < configs.size(); ++k) {
        const SkipConfig& cfg = configs[k];
        const Quality q = quality_or(p, cfg.q);
        const TruthfulAlways truthful;
        const SkipOne skip(cfg.horizon, cfg.skip);

        std::vector<int> reduced;
        for (int s : cfg.horizon.allowed()) {
            if (s != cfg.skip) reduced.push_back(s);
        }
        const double expected_loss =
            schedule_expectation(cfg.horizon.allowed(), q) - schedule_expectation(reduced, q);

        const MomentSet<2> acc = reduce_episodes<MomentSet<2>>(
            n, sub_seed(p.seed, 20 + k), p.threads,
            [&](MomentSet<2>& a, std::uint64_t, std::uint64_t seed) {
                const EpisodePath path = sample_episode(seed, cfg.horizon.t_max(), q);
                const EpisodeResult speak = run_episode(path, truthful, cfg.horizon, q);
                const EpisodeResult wait = run_episode(path, skip, cfg.horizon, q);
                const double loss = speak.total_reward - wait.total_reward;
                a.m[0].add(loss);
                a.m[1].add(loss - conditional_speak_gap(path, speak, cfg.horizon, q, cfg.skip));
            });
        std::string label = "skip " + std::to_string(cfg.skip) + " of ";
        if (cfg.horizon.allowed().size() == static_cast<std::size_t>(cfg.horizon.t_max())) {
            label += "all " + std::to_string(cfg.horizon.t_max());
        } else {
            label += "{";
            for (int s : cfg.horizon.allowed()) {
                label += std::to_string(s) + (s == cfg.horizon.allowed().back() ? "" : ",");
            }
            label += "}";
        }
        label += ", q=" + fmt(q.value());
        report.checks.push_back(mean_check("loss = expected gap, " + label, acc.m[0], expected_loss));
        report.checks.push_back(
            mean_check("loss minus conditional speak_gap = 0, " + label, acc.m[1], 0.0));
        report.checks.push_back(lower_bound_check(
            "loss positive at 4 stderr, " + label,
            acc.m[0].mean() / acc.m[0].stderr_of_mean(), kZThreshold));
    }
    return report;
}

VerifyReport theorem_average(const VerifyParams& p) {
    const Quality q = quality_or(p, 0.5);
    const int T = horizon_or(p, 20, 1);
    const std::uint64_t n = episodes_or(p, 100000);
    const double xi = cumulative_expectation_gamma(T, q).xi;
    const double xi_sum = cumulative_expectation_sum(T, q).xi;

    const MonteCarloSummary s = run_monte_carlo(Horizon(T), q, TruthfulAlways{}, n, p.seed, p.threads);
    VerifyReport report{"theorem-average", {}};
    report.checks.push_back(analytic_check("sum form = gamma form (relative)",
                                           xi == 0.0 ? 0.0 : (xi_sum - xi) / xi, 0.0,
                                           closed_form_tolerance(q)));
    report.checks.push_back(stochastic_check(
        "mean total reward = Xi(" + std::to_string(T) + ", " + fmt(q.value()) + ")", s.mean, xi,
        s.std_error));
    if (q.value() > 0.0) {
        report.checks.push_back(
            upper_bound_check("stderr / mean", s.std_error / s.mean, 0.01));
    }
    return report;
}

using SuiteFn = std::function<VerifyReport(const VerifyParams&)>;

const std::map<std::string, SuiteFn>& registry() {
    static const std::map<std::string, SuiteFn> suites = {
        {"calibration", calibration},       {"kl-expectation", kl_expectation},
        {"consecutive", consecutive},       {"gain-loss", gain_loss},
        {"at-t", at_t},                     {"gap-moments", gap_moments},
        {"predict-always", predict_always}, {"theorem-average", theorem_average},
    };
    return suites;
}

}  // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = {
        "calibration", "kl-expectation", "consecutive",    "gain-loss",
        "at-t",        "gap-moments",    "predict-always", "theorem-average",
    };
    return names;
}

VerifyReport verify_suite(const std::string& name, const VerifyParams& params) {
    const auto& suites = registry();
    const auto it = suites.find(name);
    if (it == suites.end()) {
        throw ConfigError("unknown verification suite '" + name + "'");
    }
    return it->second(params);
}

}  // namespace expert

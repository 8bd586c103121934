#include "expert/model.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <string>

#include "expert/errors.hpp"
#include "expert/seeding.hpp"

namespace expert {

Quality::Quality(double q) : q_(q) {
    if (!(q >= 0.0 && q <= 1.0)) {
        throw ParameterError("quality must lie in [0, 1], got " + std::to_string(q));
    }
}

const Quality& Quality::require_informative() const {
    if (q_ >= 1.0) {
        throw DegenerateBeliefError("quality 1 yields a zero-variance expert belief");
    }
    return *this;
}

namespace {

std::vector<int> all_periods(int t_max) {
    std::vector<int> periods;
    for (int t = t_max; t >= 1; --t) periods.push_back(t);
    return periods;
}

}  // namespace

Horizon::Horizon(int t_max) : Horizon(t_max, all_periods(t_max)) {}

Horizon::Horizon(int t_max, std::vector<int> allowed)
    : t_max_(t_max), allowed_(std::move(allowed)) {
    if (t_max < 1) {
        throw ParameterError("t_max must be at least 1, got " + std::to_string(t_max));
    }
    mask_.assign(static_cast<std::size_t>(t_max) + 1, false);
    for (int t : allowed_) {
        if (t < 1 || t > t_max) {
            throw ParameterError("allowed period " + std::to_string(t) +
                                 " outside [1, " + std::to_string(t_max) + "]");
        }
        mask_[static_cast<std::size_t>(t)] = true;
    }
    std::sort(allowed_.begin(), allowed_.end(), std::greater<>());
    allowed_.erase(std::unique(allowed_.begin(), allowed_.end()), allowed_.end());
}

Horizon Horizon::every_k(int t_max, int k) {
    if (k < 1) {
        throw ParameterError("every-k stride must be at least 1");
    }
    std::vector<int> allowed;
    for (int t = t_max; t >= 1; t -= k) {
        allowed.push_back(t);
    }
    return Horizon(t_max, std::move(allowed));
}

bool Horizon::allows(int t) const noexcept {
    return t >= 1 && t <= t_max_ && mask_[static_cast<std::size_t>(t)];
}

int Horizon::next_allowed_below(int t) const noexcept {
    for (int s : allowed_) {
        if (s < t) return s;
    }
    return 0;
}

int Horizon::previous_allowed_above(int t) const noexcept {
    int found = 0;
    for (int s : allowed_) {
        if (s > t) found = s;
    }
    return found;
}

EpisodePath::EpisodePath(double x0, std::vector<double> a, std::vector<double> b,
                         std::uint64_t seed)
    : x0_(x0), a_(std::move(a)), b_(std::move(b)), seed_(seed) {
    if (a_.size() != b_.size()) {
        throw ParameterError("knowledge and uncertainty step arrays differ in length");
    }
    if (a_.empty()) {
        throw ParameterError("episode path needs at least one period");
    }
    cum_z_.assign(a_.size() + 1, 0.0);
    cum_b_.assign(a_.size() + 1, 0.0);
    for (std::size_t i = 0; i < a_.size(); ++i) {
        cum_z_[i + 1] = cum_z_[i] + (a_[i] + b_[i]);
        cum_b_[i + 1] = cum_b_[i] + b_[i];
    }
}

void EpisodePath::check_period(int t) const {
    if (t < 0 || t > t_max()) {
        throw IndexError("period " + std::to_string(t) + " outside [0, " +
                         std::to_string(t_max()) + "]");
    }
}

double EpisodePath::knowledge_step(int i) const {
    if (i < 1 || i > t_max()) throw IndexError("step index out of range");
    return a_[static_cast<std::size_t>(i - 1)];
}

double EpisodePath::uncertainty_step(int i) const {
    if (i < 1 || i > t_max()) throw IndexError("step index out of range");
    return b_[static_cast<std::size_t>(i - 1)];
}

double EpisodePath::market_signal(int t) const {
    check_period(t);
    return x0_ + cum_z_[static_cast<std::size_t>(t)];
}

double EpisodePath::expert_signal(int t) const {
    check_period(t);
    return x0_ + cum_b_[static_cast<std::size_t>(t)];
}

EpisodePath sample_episode(std::uint64_t seed, int t_max, Quality q, double x0) {
    if (t_max < 1) {
        throw ParameterError("t_max must be at least 1, got " + std::to_string(t_max));
    }
    Engine engine(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    const double sd_a = std::sqrt(q.value());
    const double sd_b = std::sqrt(1.0 - q.value());

    std::vector<double> a(static_cast<std::size_t>(t_max));
    std::vector<double> b(static_cast<std::size_t>(t_max));
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double za = normal(engine);
        const double zb = normal(engine);
        a[i] = sd_a == 0.0 ? 0.0 : sd_a * za;
        b[i] = sd_b == 0.0 ? 0.0 : sd_b * zb;
    }
    return EpisodePath(x0, std::move(a), std::move(b), seed);
}

double market_signal(const EpisodePath& path, int t) { return path.market_signal(t); }

double expert_signal(const EpisodePath& path, int t) { return path.expert_signal(t); }

SignalView signals_at(const EpisodePath& path, int t) {
    return {t, path.market_signal(t), path.expert_signal(t)};
}


std::vector<double> sample_knowledge_bridge(std::uint64_t seed, int T, Quality q, double total) {
    if (T < 1) throw ParameterError("bridge length must be at least 1");
    Engine engine(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    const double sd = std::sqrt(q.value());
    std::vector<double> a(static_cast<std::size_t>(T));
    double sum = 0.0;
    for (double& v : a) {
        v = sd * normal(engine);
        sum += v;
    }
    const double shift = (total - sum) / T;
    for (double& v : a) v += shift;
    return a;
}

}  // namespace expert

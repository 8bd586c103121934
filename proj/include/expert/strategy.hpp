#pragma once

#include <memory>
#include <optional>
#include <string>

#include "expert/belief.hpp"
#include "expert/model.hpp"

namespace expert {

/// Silent, or a prediction with the given reported mean.
class Action {
public:
    static Action silent() { return Action(std::nullopt); }
    static Action predict(double reported_mean) { return Action(reported_mean); }

    bool is_predict() const noexcept { return reported_.has_value(); }
    double reported_mean() const { return reported_.value(); }

    friend bool operator==(const Action&, const Action&) = default;

private:
    explicit Action(std::optional<double> reported) : reported_(reported) {}
    std::optional<double> reported_;
};

/// Everything the expert knows when deciding at period t.
struct StrategyContext {
    int t;
    bool in_allowed_set;
    double x_t;
    double y_t;
    BeliefState belief_state;
    Quality q;
    const Horizon* horizon;
};

// Built-in policies as free functions of the context.
Action truthful_always(const StrategyContext& ctx);
Action distort_once(const StrategyContext& ctx, int T_star, double c);
Action skip_one(const StrategyContext& ctx, int t_skip);
Action threshold_policy(const StrategyContext& ctx, double theta);

/// Policy interface. Implementations must be pure functions of the context
/// and their own configuration; the simulator rejects illegal actions.
class Strategy {
public:
    virtual ~Strategy() = default;
    virtual Action decide(const StrategyContext& ctx) const = 0;
    virtual std::string name() const = 0;
};

class TruthfulAlways final : public Strategy {
public:
    Action decide(const StrategyContext& ctx) const override { return truthful_always(ctx); }
    std::string name() const override { return "truthful"; }
};

class AlwaysSilent final : public Strategy {
public:
    Action decide(const StrategyContext&) const override { return Action::silent(); }
    std::string name() const override { return "silent"; }
};

class DistortOnce final : public Strategy {
public:
    // Throws ConfigError unless T_star is an allowed period of `horizon`.
    DistortOnce(const Horizon& horizon, int T_star, double c);
    Action decide(const StrategyContext& ctx) const override {
        return distort_once(ctx, T_star_, c_);
    }
    std::string name() const override;

private:
    int T_star_;
    double c_;
};

class SkipOne final : public Strategy {
public:
    SkipOne(const Horizon& horizon, int t_skip);
    Action decide(const StrategyContext& ctx) const override { return skip_one(ctx, t_skip_); }
    std::string name() const override;

private:
    int t_skip_;
};

class ThresholdPolicy final : public Strategy {
public:
    explicit ThresholdPolicy(double theta);
    Action decide(const StrategyContext& ctx) const override {
        return threshold_policy(ctx, theta_);
    }
    std::string name() const override;

private:
    double theta_;
};

// Parses "truthful", "silent", "distort:<T>:<c>", "skip:<t>",
// "threshold:<theta>". Throws ConfigError on anything else.
std::unique_ptr<Strategy> make_strategy(const std::string& spec, const Horizon& horizon);

}  // namespace expert

#include "expert/strategy.hpp"

#include <charconv>
#include <cmath>
#include <sstream>
#include <vector>

#include "expert/errors.hpp"

namespace expert {

namespace {

// Shortest text that round-trips to the same double.
std::string format_number(double v) {
    char buf[32];
    const auto result = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, result.ptr);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string part;
    std::istringstream is(s);
    while (std::getline(is, part, sep)) parts.push_back(part);
    return parts;
}

double parse_real(const std::string& text, const std::string& spec) {
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used == text.size()) return v;
    } catch (const std::exception&) {
    }
    throw ConfigError("bad number '" + text + "' in strategy '" + spec + "'");
}

int parse_period(const std::string& text, const std::string& spec) {
    try {
        std::size_t used = 0;
        const int v = std::stoi(text, &used);
        if (used == text.size()) return v;
    } catch (const std::exception&) {
    }
    throw ConfigError("bad period '" + text + "' in strategy '" + spec + "'");
}

}  // namespace

Action truthful_always(const StrategyContext& ctx) {
    return ctx.in_allowed_set ? Action::predict(ctx.y_t) : Action::silent();
}

Action distort_once(const StrategyContext& ctx, int T_star, double c) {
    if (!ctx.in_allowed_set) return Action::silent();
    return Action::predict(ctx.t == T_star ? ctx.y_t + c : ctx.y_t);
}

Action skip_one(const StrategyContext& ctx, int t_skip) {
    if (!ctx.in_allowed_set || ctx.t == t_skip) return Action::silent();
    return Action::predict(ctx.y_t);
}

Action threshold_policy(const StrategyContext& ctx, double theta) {
    if (!ctx.in_allowed_set) return Action::silent();
    const double market_mean = pre_prediction_belief(ctx.belief_state, ctx.t, ctx.q, ctx.x_t).mean;
    return std::abs(market_mean - ctx.y_t) >= theta ? Action::predict(ctx.y_t)
                                                    : Action::silent();
}

DistortOnce::DistortOnce(const Horizon& horizon, int T_star, double c) : T_star_(T_star), c_(c) {
    if (!horizon.allows(T_star)) {
        throw ConfigError("distortion period " + std::to_string(T_star) +
                          " is not an allowed period");
    }
    if (!std::isfinite(c)) throw ConfigError("distortion amount must be finite");
}

std::string DistortOnce::name() const {
    return "distort:" + std::to_string(T_star_) + ":" + format_number(c_);
}

SkipOne::SkipOne(const Horizon& horizon, int t_skip) : t_skip_(t_skip) {
    if (!horizon.allows(t_skip)) {
        throw ConfigError("skipped period " + std::to_string(t_skip) +
                          " is not an allowed period");
    }
}

std::string SkipOne::name() const { return "skip:" + std::to_string(t_skip_); }

ThresholdPolicy::ThresholdPolicy(double theta) : theta_(theta) {
    if (!(theta >= 0.0)) throw ConfigError("threshold must be non-negative");
}

std::string ThresholdPolicy::name() const { return "threshold:" + format_number(theta_); }

std::unique_ptr<Strategy> make_strategy(const std::string& spec, const Horizon& horizon) {
    const auto parts = split(spec, ':');
    if (parts.empty()) throw ConfigError("empty strategy");
    const std::string& kind = parts[0];
    if (kind == "truthful" && parts.size() == 1) return std::make_unique<TruthfulAlways>();
    if (kind == "silent" && parts.size() == 1) return std::make_unique<AlwaysSilent>();
    if (kind == "distort" && parts.size() == 3) {
        return std::make_unique<DistortOnce>(horizon, parse_period(parts[1], spec),
                                             parse_real(parts[2], spec));
    }
    if (kind == "skip" && parts.size() == 2) {
        return std::make_unique<SkipOne>(horizon, parse_period(parts[1], spec));
    }
    if (kind == "threshold" && parts.size() == 2) {
        return std::make_unique<ThresholdPolicy>(parse_real(parts[1], spec));
    }
    throw ConfigError("unknown strategy '" + spec +
                      "' (expected truthful, silent, distort:T:c, skip:t, threshold:theta)");
}

}  // namespace expert

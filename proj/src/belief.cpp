#include "expert/belief.hpp"

#include <string>

#include "expert/errors.hpp"

namespace expert {

namespace {

void require_period(int t) {
    if (t < 1) {
        throw ParameterError("period must be at least 1, got " + std::to_string(t));
    }
}

}  // namespace

GaussianBelief uninformed_belief(int t, double x_t) {
    require_period(t);
    return {x_t, static_cast<double>(t)};
}

GaussianBelief belief_at_prediction(int t, Quality q, double reported_mean) {
    require_period(t);
    q.require_informative();
    return {reported_mean, (1.0 - q.value()) * t};
}

GaussianBelief belief_after_prediction(int t, int T, Quality q, double x_t, double x_T,
                                       double y_T) {
    require_period(t);
    if (t > T) {
        throw StateError("belief_after_prediction needs t <= T (t=" + std::to_string(t) +
                         ", T=" + std::to_string(T) + ")");
    }
    q.require_informative();
    if (t == T) {
        return belief_at_prediction(T, q, y_T);
    }
    const double qv = q.value();
    const double expert_precision = 1.0 / ((1.0 - qv) * T);
    const double variance = 1.0 / (1.0 / t + qv * expert_precision);
    const double weighted = x_t / t + y_T * expert_precision - x_T / T;
    return {variance * weighted, variance};
}

GaussianBelief expert_belief(int t, Quality q, double y_t) {
    return belief_at_prediction(t, q, y_t);
}

GaussianBelief pre_prediction_belief(const BeliefState& state, int t, Quality q, double x_t) {
    if (const auto* post = std::get_if<PostPrediction>(&state)) {
        if (t >= post->period) {
            throw StateError("current period " + std::to_string(t) +
                             " is not after the latest prediction at " +
                             std::to_string(post->period));
        }
        return belief_after_prediction(t, post->period, q, x_t, post->market_signal,
                                       post->reported_mean);
    }
    return uninformed_belief(t, x_t);
}

}  // namespace expert

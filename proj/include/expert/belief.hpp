#pragma once

#include <variant>

#include "expert/model.hpp"

namespace expert {

struct GaussianBelief {
    double mean = 0.0;
    double variance = 0.0;

    friend bool operator==(const GaussianBelief&, const GaussianBelief&) = default;
};

// Market has not yet heard from the expert.
struct Uninformed {};

// Market conditioned on the expert's latest prediction, made at `period`.
// Only the latest prediction matters: earlier ones are screened off by it.
struct PostPrediction {
    int period;
    double reported_mean;
    double market_signal;  // x_T at the time of the prediction
};

using BeliefState = std::variant<Uninformed, PostPrediction>;

// N(x_t, t): the diffuse-prior posterior of an uninformed market.
GaussianBelief uninformed_belief(int t, double x_t);

// N(y, (1-q) t): market posterior immediately after a prediction y at t.
// Independent of x_t and of all earlier history.
GaussianBelief belief_at_prediction(int t, Quality q, double reported_mean);

// Market belief at t <= T when the latest prediction (y_T, with market
// signal x_T) was made at T:
//
//   var  = 1 / (1/t + q / ((1-q) T))
//   mean = var * (x_t/t + y_T/((1-q) T) - x_T/T)
//
// Reduces to belief_at_prediction(T, q, y_T) at t == T.
GaussianBelief belief_after_prediction(int t, int T, Quality q, double x_t, double x_T,
                                       double y_T);

// The expert's own belief, N(y_t, (1-q) t).
GaussianBelief expert_belief(int t, Quality q, double y_t);

// Market belief just before a possible prediction at t.
GaussianBelief pre_prediction_belief(const BeliefState& state, int t, Quality q, double x_t);

}  // namespace expert

#pragma once

#include <span>
#include <variant>

#include "expert/model.hpp"

namespace expert {

// ln Gamma(x) for x > 0. Stirling series above x = 10, upward recurrence
// below. Accurate to ~1e-15 absolute for moderate x, 1e-15 relative for
// large x.
double log_gamma(double x);

// ln Gamma(x + a) - ln Gamma(x) without forming either term, so the result
// keeps full relative precision when x is large and a is O(1).
double log_gamma_difference(double x, double a);

struct CumulativeReward {
    double xi;  // nats
    int horizon;
    double q;
};

// Xi(T) = 1/2 sum_{t=1..T} log(t / (t - q)): expected total reward of the
// truthful, predict-every-period expert with T periods to go.
CumulativeReward cumulative_expectation_sum(int T, Quality q);

// Same quantity as 1/2 log(Gamma(1-q) Gamma(T+1) / Gamma(T+1-q)).
CumulativeReward cumulative_expectation_gamma(int T, Quality q);

// Xi(T) / (q log T + ln Gamma(1-q)); tends to 1/2 as T grows.
double asymptotic_ratio(int T, Quality q);

// Expected total truthful reward of predicting at every period of
// `schedule` (decreasing): first prediction worth -log(1-q)/2, each later
// one worth consecutive_expectation of its pair.
double schedule_expectation(std::span<const int> schedule, Quality q);

// q this close to 1 amplifies rounding through 1/(1-q); tolerances in
// oracle comparisons are relaxed from 1e-10 to 1e-8 for such inputs.
bool near_quality_boundary(Quality q) noexcept;
double closed_form_tolerance(Quality q) noexcept;

// Market pre-prediction variance at s given the latest prediction at T:
// 1 / (1/s + q/((1-q) T)).
double pre_prediction_variance(int s, int T, Quality q);

struct GapMoments {
    double mean_coeff;  // E[Z_tau | ...] = mean_coeff * (x*_t - y_t)
    double variance;    // Var[Z_tau | ...]
};

// Conditional law of Z_tau = x*_tau - y_tau given the signals at t and T,
// for tau <= t < T (tau == t is the degenerate limit: coefficient 1,
// variance 0).
GapMoments conditional_gap_moments(int tau, int t, int T, Quality q);

// E_T[(x_t - y_t)^2] = (t/T)^2 (x_T - y_T)^2 + q t (T-t) / T, for 1 <= t <= T.
double first_case_gap_moment(int t, int T, Quality q, double x_T, double y_T);

struct FirstPrediction {
    double x_t1;
    double y_t1;
};

struct AfterPrediction {
    int T;             // period of the expert's latest prediction
    double x_star_t1;  // market's pre-prediction mean at t1
    double y_t1;
};

struct SpeakGapInputs {
    int t1;  // current allowed period
    int t2;  // next allowed period, t2 < t1
    Quality q;
    std::variant<FirstPrediction, AfterPrediction> regime;
};

// Expected advantage, as of t1, of predicting at t1 over staying silent
// until t2 (both followed by truthful predictions at every later allowed
// period). The schedule tail beyond t2 is common to both and omitted.
double speak_gap(const SpeakGapInputs& inputs);

}  // namespace expert

#pragma once

#include "expert/belief.hpp"

namespace expert {

// All rewards are in nats.

// Log density of a normal belief at x.
double log_density(const GaussianBelief& belief, double x);

// Realized log score of moving the market from `prior` to `posterior` when
// the outcome is x0:
//   log(sd_prior / sd_post) + (x0 - mu_prior)^2 / (2 var_prior)
//                           - (x0 - mu_post)^2 / (2 var_post)
double log_score(const GaussianBelief& prior, const GaussianBelief& posterior, double x0);

// KL(posterior || prior): the expected log score of a truthful prediction.
double expected_truthful_reward(const GaussianBelief& prior, const GaussianBelief& posterior);

// Expected reward of the expert's first prediction at t:
//   (x_t - y_t)^2 / (2t) - (q + log(1-q)) / 2
double first_prediction_expectation(int t, Quality q, double x_t, double y_t);

// Expected reward of the later of two consecutive truthful predictions at
// T and t <= T, as seen at or before T: -log(1 - q (T-t)/T) / 2.
double consecutive_expectation(int T, int t, Quality q);

// Expected net effect of shifting the reported mean at T by c_T when the
// next prediction is at t < T (deterministic t):
//   c_T^2 / (2 var_post_T^2) * (var_pre_t - var_post_T)   <= 0
double distortion_delta(int T, int t, Quality q, double c_T);

// Shift c_t induced in the market's pre-prediction mean at t by a shift c_T
// at T: c_t = (var_pre_t / var_post_T) c_T.
double induced_distortion(int T, int t, Quality q, double c_T);

}  // namespace expert

#include "expert/scoring.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "expert/errors.hpp"

namespace expert {

namespace {

void require_positive_variance(const GaussianBelief& b) {
    if (!(b.variance > 0.0)) {
        throw DegenerateBeliefError("belief variance must be positive, got " +
                                    std::to_string(b.variance));
    }
}

void require_order(int T, int t) {
    if (t < 1 || t > T) {
        throw ParameterError("need 1 <= t <= T, got t=" + std::to_string(t) +
                             ", T=" + std::to_string(T));
    }
}

// Variance of the market just before a prediction at t, given the previous
// one at T.
double pre_variance(int T, int t, double q) {
    return 1.0 / (1.0 / t + q / ((1.0 - q) * T));
}

}  // namespace

double log_density(const GaussianBelief& belief, double x) {
    require_positive_variance(belief);
    const double d = x - belief.mean;
    return -0.5 * std::log(2.0 * std::numbers::pi * belief.variance) -
           d * d / (2.0 * belief.variance);
}

double log_score(const GaussianBelief& prior, const GaussianBelief& posterior, double x0) {
    require_positive_variance(prior);
    require_positive_variance(posterior);
    const double dm = x0 - prior.mean;
    const double dp = x0 - posterior.mean;
    return 0.5 * std::log(prior.variance / posterior.variance) +
           dm * dm / (2.0 * prior.variance) - dp * dp / (2.0 * posterior.variance);
}

double expected_truthful_reward(const GaussianBelief& prior, const GaussianBelief& posterior) {
    require_positive_variance(prior);
    require_positive_variance(posterior);
    const double shift = posterior.mean - prior.mean;
    const double ratio = posterior.variance / prior.variance;
    // ratio - 1 - log(ratio) loses everything to cancellation near ratio = 1.
    const double shape = (ratio - 1.0) - std::log1p(ratio - 1.0);
    return shift * shift / (2.0 * prior.variance) + 0.5 * shape;
}

double first_prediction_expectation(int t, Quality q, double x_t, double y_t) {
    if (t < 1) {
        throw ParameterError("period must be at least 1, got " + std::to_string(t));
    }
    q.require_informative();
    const double d = x_t - y_t;
    const double qv = q.value();
    return d * d / (2.0 * t) - 0.5 * (qv + std::log1p(-qv));
}

double consecutive_expectation(int T, int t, Quality q) {
    require_order(T, t);
    q.require_informative();
    return -0.5 * std::log1p(-q.value() * static_cast<double>(T - t) / T);
}

double induced_distortion(int T, int t, Quality q, double c_T) {
    require_order(T, t);
    q.require_informative();
    const double qv = q.value();
    return pre_variance(T, t, qv) / ((1.0 - qv) * T) * c_T;
}

double distortion_delta(int T, int t, Quality q, double c_T) {
    if (t < 1 || t >= T) {
        throw ParameterError("distortion needs 1 <= t < T, got t=" + std::to_string(t) +
                             ", T=" + std::to_string(T));
    }
    q.require_informative();
    const double qv = q.value();
    const double post_T = (1.0 - qv) * T;
    const double pre_t = pre_variance(T, t, qv);
    return c_T * c_T / (2.0 * post_T * post_T) * (pre_t - post_T);
}

}  // namespace expert

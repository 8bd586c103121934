#include "expert/analytics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "expert/belief.hpp"
#include "expert/errors.hpp"
#include "expert/scoring.hpp"

namespace expert {

namespace {

constexpr double kStirlingThreshold = 10.0;

// B_{2k} / (2k (2k-1)), k = 1..8.
constexpr std::array<double, 8> kStirlingCoeffs = {
    1.0 / 12.0,          -1.0 / 360.0,       1.0 / 1260.0,  -1.0 / 1680.0,
    1.0 / 1188.0,        -691.0 / 360360.0,  1.0 / 156.0,   -3617.0 / 122400.0,
};

// sum_k c_k x^{1-2k}
double stirling_tail(double x) {
    const double inv = 1.0 / x;
    const double inv2 = inv * inv;
    double sum = 0.0;
    for (auto it = kStirlingCoeffs.rbegin(); it != kStirlingCoeffs.rend(); ++it) {
        sum = sum * inv2 + *it;
    }
    return sum * inv;
}

// Neumaier-compensated running sum.
class CompensatedSum {
public:
    void add(double v) {
        const double t = sum_ + v;
        if (std::abs(sum_) >= std::abs(v)) {
            comp_ += (sum_ - t) + v;
        } else {
            comp_ += (v - t) + sum_;
        }
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

void require_horizon(int T) {
    if (T < 1) {
        throw ParameterError("horizon must be at least 1, got " + std::to_string(T));
    }
}

}  // namespace

double log_gamma(double x) {
    if (!(x > 0.0) || !std::isfinite(x)) {
        throw DomainError("log_gamma requires a finite x > 0");
    }
    if (x == 1.0 || x == 2.0) return 0.0;
    if (x < kStirlingThreshold) {
        double product = 1.0;
        double shifted = x;
        while (shifted < kStirlingThreshold) {
            product *= shifted;
            shifted += 1.0;
        }
        return log_gamma(shifted) - std::log(product);
    }
    return (x - 0.5) * std::log(x) - x + 0.5 * std::log(2.0 * std::numbers::pi) +
           stirling_tail(x);
}

double log_gamma_difference(double x, double a) {
    if (!(x > 0.0) || !(x + a > 0.0) || !std::isfinite(x) || !std::isfinite(a)) {
        throw DomainError("log_gamma_difference requires x > 0 and x + a > 0");
    }
    if (a == 0.0) return 0.0;
    const double lo = std::min(x, x + a);
    if (lo < kStirlingThreshold) {
        // Gamma(z + 1) = z Gamma(z) applied to both arguments.
        CompensatedSum correction;
        double shifted = x;
        while (std::min(shifted, shifted + a) < kStirlingThreshold) {
            correction.add(std::log1p(a / shifted));
            shifted += 1.0;
        }
        return log_gamma_difference(shifted, a) - correction.value();
    }
    // (x+a-1/2) ln(x+a) - (x-1/2) ln x - a, rearranged to avoid cancellation.
    const double main = a * std::log(x) + (x + a - 0.5) * std::log1p(a / x) - a;
    return main + (stirling_tail(x + a) - stirling_tail(x));
}

CumulativeReward cumulative_expectation_sum(int T, Quality q) {
    require_horizon(T);
    q.require_informative();
    const double qv = q.value();
    CompensatedSum sum;
    for (int t = 1; t <= T; ++t) {
        // log(t / (t - q)) = -log(1 - q/t)
        sum.add(-std::log1p(-qv / t));
    }
    return {0.5 * sum.value(), T, qv};
}

CumulativeReward cumulative_expectation_gamma(int T, Quality q) {
    require_horizon(T);
    q.require_informative();
    const double qv = q.value();
    if (qv == 0.0) return {0.0, T, qv};
    // ln Gamma(1-q) + ln Gamma(T+1) - ln Gamma(T+1-q)
    const double xi =
        0.5 * (log_gamma(1.0 - qv) - log_gamma_difference(static_cast<double>(T) + 1.0, -qv));
    return {xi, T, qv};
}

double asymptotic_ratio(int T, Quality q) {
    require_horizon(T);
    const double qv = q.value();
    if (!(qv > 0.0 && qv < 1.0)) {
        throw DomainError("asymptotic_ratio requires 0 < q < 1");
    }
    const double denominator = qv * std::log(static_cast<double>(T)) + log_gamma(1.0 - qv);
    if (!(denominator > 0.0)) {
        throw DomainError("q log T + ln Gamma(1-q) must be positive; T=" + std::to_string(T) +
                          " is too small");
    }
    return cumulative_expectation_gamma(T, q).xi / denominator;
}

double schedule_expectation(std::span<const int> schedule, Quality q) {
    if (schedule.empty()) return 0.0;
    q.require_informative();
    double total = -0.5 * std::log1p(-q.value());
    for (std::size_t i = 1; i < schedule.size(); ++i) {
        if (schedule[i] >= schedule[i - 1]) {
            throw ParameterError("schedule must be strictly decreasing");
        }
        total += consecutive_expectation(schedule[i - 1], schedule[i], q);
    }
    return total;
}

bool near_quality_boundary(Quality q) noexcept { return q.value() > 0.999; }

double closed_form_tolerance(Quality q) noexcept {
    return near_quality_boundary(q) ? 1e-8 : 1e-10;
}

double pre_prediction_variance(int s, int T, Quality q) {
    if (s < 1 || s > T) {
        throw ParameterError("need 1 <= s <= T");
    }
    q.require_informative();
    const double qv = q.value();
    return 1.0 / (1.0 / s + qv / ((1.0 - qv) * T));
}

GapMoments conditional_gap_moments(int tau, int t, int T, Quality q) {
    if (tau < 1 || tau > t || t >= T) {
        throw ParameterError("need 1 <= tau <= t < T, got tau=" + std::to_string(tau) +
                             ", t=" + std::to_string(t) + ", T=" + std::to_string(T));
    }
    q.require_informative();
    const double qv = q.value();
    const double var_tau = pre_prediction_variance(tau, T, q);
    const double var_t = pre_prediction_variance(t, T, q);
    const double spread = 1.0 / (static_cast<double>(t) * tau) +
                          qv / ((1.0 - qv) * static_cast<double>(T) * T);
    return {var_tau / var_t, qv * (t - tau) * spread * var_tau * var_tau};
}

double first_case_gap_moment(int t, int T, Quality q, double x_T, double y_T) {
    if (t < 1 || t > T) {
        throw ParameterError("need 1 <= t <= T, got t=" + std::to_string(t) +
                             ", T=" + std::to_string(T));
    }
    const double ratio = static_cast<double>(t) / T;
    const double d = x_T - y_T;
    return ratio * ratio * d * d + q.value() * t * static_cast<double>(T - t) / T;
}

double speak_gap(const SpeakGapInputs& in) {
    if (in.t2 < 1 || in.t2 >= in.t1) {
        throw ParameterError("speak_gap needs t1 > t2 >= 1");
    }
    const Quality q = in.q;
    q.require_informative();
    const double qv = q.value();

    if (const auto* first = std::get_if<FirstPrediction>(&in.regime)) {
        const double speak = first_prediction_expectation(in.t1, q, first->x_t1, first->y_t1) +
                             consecutive_expectation(in.t1, in.t2, q);
        // First prediction deferred to t2; its gap is only known in law.
        const double second_moment =
            first_case_gap_moment(in.t2, in.t1, q, first->x_t1, first->y_t1);
        const double wait = second_moment / (2.0 * in.t2) - 0.5 * (qv + std::log1p(-qv));
        return speak - wait;
    }

    const auto& after = std::get<AfterPrediction>(in.regime);
    if (in.t1 >= after.T) {
        throw ParameterError("speak_gap after a prediction needs t1 < T");
    }
    const double var_t1 = pre_prediction_variance(in.t1, after.T, q);
    const double var_t2 = pre_prediction_variance(in.t2, after.T, q);
    const GaussianBelief market_t1{after.x_star_t1, var_t1};
    const double speak =
        expected_truthful_reward(market_t1, belief_at_prediction(in.t1, q, after.y_t1)) +
        consecutive_expectation(in.t1, in.t2, q);

    const GapMoments law = conditional_gap_moments(in.t2, in.t1, after.T, q);
    const double mean = law.mean_coeff * (after.x_star_t1 - after.y_t1);
    const double ratio = (1.0 - qv) * in.t2 / var_t2;
    const double wait =
        (mean * mean + law.variance) / (2.0 * var_t2) + 0.5 * ((ratio - 1.0) - std::log(ratio));
    return speak - wait;
}

}  // namespace expert

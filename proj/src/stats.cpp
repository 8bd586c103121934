#include "expert/stats.hpp"

#include <algorithm>
#include <cmath>

namespace expert {

void Moments::add(double x) noexcept {
    ++n_;
    const double delta = x - mean_;
    mean_ += delta / static_cast<double>(n_);
    m2_ += delta * (x - mean_);
}

void Moments::merge(const Moments& other) noexcept {
    if (other.n_ == 0) return;
    if (n_ == 0) {
        *this = other;
        return;
    }
    const double na = static_cast<double>(n_);
    const double nb = static_cast<double>(other.n_);
    const double n = na + nb;
    const double delta = other.mean_ - mean_;
    mean_ += delta * nb / n;
    m2_ += other.m2_ + delta * delta * na * nb / n;
    n_ += other.n_;
}

double Moments::variance() const noexcept {
    return n_ < 2 ? 0.0 : m2_ / static_cast<double>(n_ - 1);
}

double Moments::stddev() const noexcept { return std::sqrt(variance()); }

double Moments::stderr_of_mean() const noexcept {
    return n_ == 0 ? 0.0 : stddev() / std::sqrt(static_cast<double>(n_));
}

void Regression::add(double x, double y) noexcept {
    ++n_;
    const double n = static_cast<double>(n_);
    const double dx = x - mean_x_;
    const double dy = y - mean_y_;
    mean_x_ += dx / n;
    mean_y_ += dy / n;
    sxx_ += dx * (x - mean_x_);
    syy_ += dy * (y - mean_y_);
    sxy_ += dx * (y - mean_y_);
}

void Regression::merge(const Regression& other) noexcept {
    if (other.n_ == 0) return;
    if (n_ == 0) {
        *this = other;
        return;
    }
    const double na = static_cast<double>(n_);
    const double nb = static_cast<double>(other.n_);
    const double n = na + nb;
    const double dx = other.mean_x_ - mean_x_;
    const double dy = other.mean_y_ - mean_y_;
    const double w = na * nb / n;
    sxx_ += other.sxx_ + dx * dx * w;
    syy_ += other.syy_ + dy * dy * w;
    sxy_ += other.sxy_ + dx * dy * w;
    mean_x_ += dx * nb / n;
    mean_y_ += dy * nb / n;
    n_ += other.n_;
}

double Regression::slope() const noexcept { return sxy_ / sxx_; }

double Regression::intercept() const noexcept { return mean_y_ - slope() * mean_x_; }

double Regression::residual_variance() const noexcept {
    if (n_ < 3) return 0.0;
    const double rss = std::max(0.0, syy_ - sxy_ * sxy_ / sxx_);
    return rss / static_cast<double>(n_ - 2);
}

double Regression::slope_stderr() const noexcept {
    return std::sqrt(residual_variance() / sxx_);
}

double Regression::intercept_stderr() const noexcept {
    const double n = static_cast<double>(n_);
    return std::sqrt(residual_variance() * (1.0 / n + mean_x_ * mean_x_ / sxx_));
}

double Regression::residual_variance_stderr() const noexcept {
    return residual_variance() * std::sqrt(2.0 / static_cast<double>(n_ - 2));
}

double standard_normal_cdf(double z) noexcept {
    return 0.5 * std::erfc(-z / std::sqrt(2.0));
}

double ks_statistic_standard_normal(std::vector<double> samples) {
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double d = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double f = standard_normal_cdf(samples[i]);
        d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
    }
    return d;
}

double ks_critical_value(std::uint64_t n, double alpha) {
    return std::sqrt(-0.5 * std::log(alpha / 2.0)) / std::sqrt(static_cast<double>(n));
}

}  // namespace expert

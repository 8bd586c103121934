#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace expert {

/// Single-pass mean/variance (Welford), mergeable (Chan et al.) so that
/// chunked parallel reductions combine exactly.
class Moments {
public:
    void add(double x) noexcept;
    void merge(const Moments& other) noexcept;

    std::uint64_t count() const noexcept { return n_; }
    double mean() const noexcept { return mean_; }
    // Sample variance (n - 1 denominator); 0 for n < 2.
    double variance() const noexcept;
    double stddev() const noexcept;
    // stddev / sqrt(n)
    double stderr_of_mean() const noexcept;

private:
    std::uint64_t n_ = 0;
    double mean_ = 0.0;
    double m2_ = 0.0;
};

/// Bivariate moments for ordinary least squares of y on x.
class Regression {
public:
    void add(double x, double y) noexcept;
    void merge(const Regression& other) noexcept;

    std::uint64_t count() const noexcept { return n_; }
    double slope() const noexcept;
    double intercept() const noexcept;
    // Residual variance with n - 2 denominator.
    double residual_variance() const noexcept;
    double slope_stderr() const noexcept;
    double intercept_stderr() const noexcept;
    // Large-sample stderr of residual_variance() under Gaussian residuals.
    double residual_variance_stderr() const noexcept;

private:
    std::uint64_t n_ = 0;
    double mean_x_ = 0.0;
    double mean_y_ = 0.0;
    double sxx_ = 0.0;
    double syy_ = 0.0;
    double sxy_ = 0.0;
};

double standard_normal_cdf(double z) noexcept;

// Kolmogorov-Smirnov distance between the empirical distribution of
// `samples` and N(0, 1).
double ks_statistic_standard_normal(std::vector<double> samples);

// Asymptotic one-sample critical value sqrt(-ln(alpha/2) / 2) / sqrt(n).
double ks_critical_value(std::uint64_t n, double alpha);

}  // namespace expert

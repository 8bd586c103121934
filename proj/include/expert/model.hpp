#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace expert {

/// Expert quality q in [0, 1]: the fraction of each market step's variance
/// the expert observes. Construction validates the range; scoring code calls
/// require_informative() to additionally exclude q = 1.
class Quality {
public:
    explicit Quality(double q);

    double value() const noexcept { return q_; }

    // Throws DegenerateBeliefError when q == 1 (expert belief has zero
    // variance, so log scores are undefined).
    const Quality& require_informative() const;

    friend bool operator==(const Quality&, const Quality&) = default;

private:
    double q_;
};

/// Number of periods before settlement plus the periods in which the expert
/// is allowed to predict. Periods count down: t_max, ..., 1, then
/// settlement at 0.
class Horizon {
public:
    // Every period 1..t_max allowed.
    explicit Horizon(int t_max);
    // Explicit allowed set; duplicates are folded, each entry must lie in
    // [1, t_max]. An empty set is legal here (silence experiments).
    Horizon(int t_max, std::vector<int> allowed);

    // t_max, t_max - k, t_max - 2k, ... down to 1.
    static Horizon every_k(int t_max, int k);

    int t_max() const noexcept { return t_max_; }
    bool allows(int t) const noexcept;
    // Allowed periods in decreasing order (the order they are visited).
    std::span<const int> allowed() const noexcept { return allowed_; }

    // Next allowed period strictly below t, or 0 if none.
    int next_allowed_below(int t) const noexcept;
    // Latest allowed period strictly above t, or 0 if none.
    int previous_allowed_above(int t) const noexcept;

private:
    int t_max_;
    std::vector<int> allowed_;
    std::vector<bool> mask_;
};

/// One sampled world. Steps are indexed by period i = 1..t_max; step i is
/// the increment that is revealed when the clock moves from i to i-1.
///
///   x_t = x0 + sum_{i<=t} (a_i + b_i)      market signal
///   y_t = x0 + sum_{i<=t} b_i              expert signal
class EpisodePath {
public:
    EpisodePath(double x0, std::vector<double> a, std::vector<double> b,
                std::uint64_t seed = 0);

    int t_max() const noexcept { return static_cast<int>(a_.size()); }
    double x0() const noexcept { return x0_; }
    std::uint64_t seed() const noexcept { return seed_; }

    // Step accessors, 1-based.
    double knowledge_step(int i) const;
    double uncertainty_step(int i) const;
    double step(int i) const { return knowledge_step(i) + uncertainty_step(i); }

    std::span<const double> knowledge_steps() const noexcept { return a_; }
    std::span<const double> uncertainty_steps() const noexcept { return b_; }

    double market_signal(int t) const;
    double expert_signal(int t) const;

private:
    void check_period(int t) const;

    double x0_;
    std::vector<double> a_;
    std::vector<double> b_;
    // cum_z_[t] = sum_{i<=t} (a_i + b_i), cum_b_[t] = sum_{i<=t} b_i; index 0 is 0.
    std::vector<double> cum_z_;
    std::vector<double> cum_b_;
    std::uint64_t seed_;
};

struct SignalView {
    int t;
    double x_t;
    double y_t;
};

// a_i ~ N(0, q), b_i ~ N(0, 1-q), all independent, drawn from a stream
// seeded with `seed`. q = 0 and q = 1 give exactly-zero a resp. b steps.
EpisodePath sample_episode(std::uint64_t seed, int t_max, Quality q, double x0 = 0.0);

double market_signal(const EpisodePath& path, int t);
double expert_signal(const EpisodePath& path, int t);
SignalView signals_at(const EpisodePath& path, int t);


// Knowledge steps a_1..a_T (each N(0, q)) conditioned on sum_i a_i = total,
// i.e. on x_T - y_T = total. Exact Gaussian bridge: draw unconditionally,
// then spread the residual evenly.
std::vector<double> sample_knowledge_bridge(std::uint64_t seed, int T, Quality q, double total);

}  // namespace expert

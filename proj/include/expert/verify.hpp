#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace expert {

// Parameters shared by all suites. Unset fields take the suite's defaults.
struct VerifyParams {
    std::optional<double> q;
    std::optional<int> t_max;
    std::optional<std::uint64_t> n;
    std::optional<double> c;  // distortion amount (gain-loss)
    std::uint64_t seed = 1;
    unsigned threads = 0;
};

enum class CheckKind {
    Stochastic,  // pass iff |z| <= 4
    Analytic,    // pass iff |estimate - target| <= tolerance
    UpperBound,  // pass iff estimate <= tolerance
    LowerBound,  // pass iff estimate >= tolerance
};

struct CheckResult {
    std::string name;
    CheckKind kind;
    double estimate;
    double target;
    double std_error;  // 0 for non-stochastic checks
    double z;          // (estimate - target) / std_error, 0 when std_error is 0
    double tolerance;  // analytic tolerance or bound; 4 for stochastic checks
    bool passed;
};

struct VerifyReport {
    std::string suite;
    std::vector<CheckResult> checks;

    bool passed() const;
};

inline constexpr double kZThreshold = 4.0;

const std::vector<std::string>& suite_names();

// Runs one named suite. Throws ConfigError for an unknown name.
VerifyReport verify_suite(const std::string& name, const VerifyParams& params);

CheckResult stochastic_check(std::string name, double estimate, double target,
                             double std_error);
CheckResult analytic_check(std::string name, double estimate, double target, double tolerance);
CheckResult upper_bound_check(std::string name, double estimate, double bound);
CheckResult lower_bound_check(std::string name, double estimate, double bound);

}  // namespace expert

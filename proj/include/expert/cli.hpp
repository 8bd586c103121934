#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "expert/model.hpp"
#include "expert/simulator.hpp"

namespace expert::cli {

enum ExitCode : int {
    kSuccess = 0,
    kRuntimeFailure = 1,
    kUsageError = 2,
};

enum class OutputFormat { Csv, Json };

struct ExperimentConfig {
    int t_max = 20;
    double q = 0.5;
    std::string allowed = "all";
    std::vector<std::string> strategies = {"truthful"};
    std::uint64_t n = 100000;
    std::uint64_t seed = 1;
    unsigned threads = 0;
    bool paired = false;
    OutputFormat format = OutputFormat::Csv;
    std::string out;             // empty or "-" means standard output
    std::string gnuplot_script;  // optional companion plot script
};

// "all", "every-K" (also "every:K"), or an explicit list "10,5,3".
Horizon parse_allowed(const std::string& spec, int t_max);

// "0.1:0.9:0.1" (inclusive range) or "0.1,0.5,0.9".
std::vector<double> parse_real_grid(const std::string& spec);
std::vector<int> parse_int_grid(const std::string& spec);

std::vector<std::string> split_list(const std::string& spec);

// %.17g: round-trips every double.
std::string format_real(double v);

// One output row of `simulate` / `sweep`.
struct SimulationRow {
    int t_max;
    double q;
    std::string allowed;
    std::string strategy;
    MonteCarloSummary summary;
};

// Runs every strategy of `config`. With `paired`, strategies share sampled
// paths and each non-first strategy adds a "<s> - <first>" difference row.
std::vector<SimulationRow> simulate_rows(const ExperimentConfig& config);

void write_simulation(std::ostream& os, const std::vector<SimulationRow>& rows,
                      OutputFormat format);

// Whole command line, excluding the program name. Never throws; returns the
// process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace expert::cli

#include "expert/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "expert/analytics.hpp"
#include "expert/errors.hpp"
#include "expert/scoring.hpp"
#include "expert/strategy.hpp"
#include "expert/verify.hpp"

namespace expert::cli {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return {};
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

int parse_int(const std::string& text) {
    std::size_t used = 0;
    int v = 0;
    try {
        v = std::stoi(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != text.size()) throw ConfigError("not an integer: '" + text + "'");
    return v;
}

double parse_double(const std::string& text) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != text.size()) throw ConfigError("not a number: '" + text + "'");
    return v;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string quoted = "\"";
    for (char c : s) {
        if (c == '"') quoted += '"';
        quoted += c;
    }
    return quoted + "\"";
}

// Reads a flat "key = value" document and turns it into "--key value"
// tokens. '#' starts a comment.
std::vector<std::string> read_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file '" + path + "'");
    std::vector<std::string> tokens;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(path + ":" + std::to_string(line_no) + ": expected key = value");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty()) {
            throw ConfigError(path + ":" + std::to_string(line_no) + ": empty key or value");
        }
        if (key == "paired") {
            if (value == "true" || value == "1") tokens.push_back("--paired");
            continue;
        }
        tokens.push_back("--" + key);
        tokens.push_back(value);
    }
    return tokens;
}

// Splices config-file tokens in right after the subcommand so that explicit
// flags, which come later, win under the take-last policy.
std::vector<std::string> expand_config(const std::vector<std::string>& args) {
    std::vector<std::string> rest;
    std::string config_path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config") {
            if (i + 1 >= args.size()) throw ConfigError("--config needs a path");
            config_path = args[++i];
        } else if (args[i].rfind("--config=", 0) == 0) {
            config_path = args[i].substr(9);
        } else {
            rest.push_back(args[i]);
        }
    }
    if (config_path.empty() || rest.empty()) return rest;
    std::vector<std::string> expanded{rest.front()};
    const auto file_tokens = read_config_file(config_path);
    expanded.insert(expanded.end(), file_tokens.begin(), file_tokens.end());
    expanded.insert(expanded.end(), rest.begin() + 1, rest.end());
    return expanded;
}

OutputFormat parse_format(const std::string& s) {
    if (s == "csv") return OutputFormat::Csv;
    if (s == "json") return OutputFormat::Json;
    throw ConfigError("unknown format '" + s + "' (expected csv or json)");
}

// Output sink: a file when a path is given, otherwise `fallback`.
class Sink {
public:
    Sink(const std::string& path, std::ostream& fallback) : os_(&fallback) {
        if (!path.empty() && path != "-") {
            file_.open(path, std::ios::binary);
            if (!file_) throw std::runtime_error("cannot open output file '" + path + "'");
            os_ = &file_;
        }
    }
    std::ostream& stream() { return *os_; }
    void finish() {
        os_->flush();
        if (!*os_) throw std::runtime_error("failed writing output");
    }

private:
    std::ofstream file_;
    std::ostream* os_;
};

void write_gnuplot(const std::string& script_path, const std::string& data_path,
                   const std::string& body) {
    if (script_path.empty()) return;
    std::ofstream script(script_path);
    if (!script) throw std::runtime_error("cannot open gnuplot script '" + script_path + "'");
    script << "# generated by expert-oracle\n"
           << "set datafile separator ','\n"
           << "set datafile commentschars '#'\n"
           << "set key autotitle columnhead\n"
           << "data = '" << data_path << "'\n"
           << body;
}

// Numeric table with named columns.
struct Table {
    std::vector<std::string> comments;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

void write_table(std::ostream& os, const Table& table, OutputFormat format) {
    if (format == OutputFormat::Json) {
        nlohmann::ordered_json array = nlohmann::ordered_json::array();
        for (const auto& row : table.rows) {
            nlohmann::ordered_json obj;
            for (std::size_t i = 0; i < table.columns.size(); ++i) obj[table.columns[i]] = row[i];
            array.push_back(obj);
        }
        os << array.dump(2) << '\n';
        return;
    }
    for (const auto& c : table.comments) os << "# " << c << '\n';
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
        os << (i ? "," : "") << table.columns[i];
    }
    os << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << format_real(row[i]);
        os << '\n';
    }
}

Table xi_table(const std::vector<double>& qs, const std::vector<int>& horizons) {
    Table table{{"expected total reward of the truthful, predict-every-period expert",
                 "columns: q = expert quality; T = periods remaining; xi = "
                 "1/2 log(Gamma(1-q) Gamma(T+1) / Gamma(T+1-q)) in nats"},
                {"q", "T", "xi"},
                {}};
    for (double q : qs) {
        for (int T : horizons) {
            table.rows.push_back(
                {q, static_cast<double>(T), cumulative_expectation_gamma(T, Quality(q)).xi});
        }
    }
    return table;
}

Table consecutive_table(const std::vector<double>& qs, const std::vector<int>& periods) {
    Table table{{"expected reward of the later of two consecutive truthful predictions",
                 "columns: q = expert quality; T = earlier prediction period; t = later "
                 "prediction period (t < T); expected_reward = -1/2 log(1 - q (T-t)/T) in nats"},
                {"q", "T", "t", "expected_reward"},
                {}};
    for (double q : qs) {
        for (int T : periods) {
            for (int t : periods) {
                if (t >= T) continue;
                table.rows.push_back({q, static_cast<double>(T), static_cast<double>(t),
                                      consecutive_expectation(T, t, Quality(q))});
            }
        }
    }
    return table;
}

Table speak_gap_table(const std::vector<double>& qs, const std::vector<int>& periods,
                      const std::vector<int>& previous) {
    Table table{{"advantage of predicting at t1 over waiting until t2",
                 "columns: q = expert quality; prev_T = period of the latest earlier prediction "
                 "(0: none yet); t1 > t2 = candidate periods; gap_zero_discrepancy = gap when "
                 "the market mean equals the expert signal at t1; expected_gap = gap averaged "
                 "over signals; values in nats, schedule tail after t2 omitted"},
                {"q", "prev_T", "t1", "t2", "gap_zero_discrepancy", "expected_gap"},
                {}};
    std::vector<int> prevs{0};
    prevs.insert(prevs.end(), previous.begin(), previous.end());
    for (double qv : qs) {
        const Quality q(qv);
        for (int T : prevs) {
            for (int t1 : periods) {
                for (int t2 : periods) {
                    if (t2 < 1 || t2 >= t1 || (T != 0 && t1 >= T)) continue;
                    double gap = 0.0;
                    double expected = 0.0;
                    if (T == 0) {
                        gap = speak_gap({t1, t2, q, FirstPrediction{0.0, 0.0}});
                        expected = consecutive_expectation(t1, t2, q);
                    } else {
                        gap = speak_gap({t1, t2, q, AfterPrediction{T, 0.0, 0.0}});
                        expected = consecutive_expectation(T, t1, q) +
                                   consecutive_expectation(t1, t2, q) -
                                   consecutive_expectation(T, t2, q);
                    }
                    table.rows.push_back({qv, static_cast<double>(T), static_cast<double>(t1),
                                          static_cast<double>(t2), gap, expected});
                }
            }
        }
    }
    return table;
}

const char* kind_label(CheckKind k) {
    switch (k) {
        case CheckKind::Stochastic: return "z";
        case CheckKind::Analytic: return "exact";
        case CheckKind::UpperBound: return "<=";
        case CheckKind::LowerBound: return ">=";
    }
    return "?";
}

void print_report(std::ostream& os, const VerifyReport& report) {
    os << "suite " << report.suite << ": " << (report.passed() ? "PASS" : "FAIL") << '\n';
    for (const CheckResult& c : report.checks) {
        char line[512];
        if (c.kind == CheckKind::Stochastic) {
            std::snprintf(line, sizeof line,
                          "  [%s] %-62s estimate=%.8g target=%.8g stderr=%.3g z=%+.2f\n",
                          c.passed ? "PASS" : "FAIL", c.name.c_str(), c.estimate, c.target,
                          c.std_error, c.z);
        } else {
            std::snprintf(line, sizeof line, "  [%s] %-62s estimate=%.8g %s %.3g\n",
                          c.passed ? "PASS" : "FAIL", c.name.c_str(), c.estimate,
                          kind_label(c.kind), c.kind == CheckKind::Analytic ? c.target : c.tolerance);
            if (c.kind == CheckKind::Analytic) {
                std::snprintf(line, sizeof line,
                              "  [%s] %-62s estimate=%.12g target=%.12g tol=%.1e\n",
                              c.passed ? "PASS" : "FAIL", c.name.c_str(), c.estimate, c.target,
                              c.tolerance);
            }
        }
        os << line;
    }
}

struct SweepOptions {
    std::string q_grid = "0.5";
    std::string t_grid = "20";
};

struct VerifyOptions {
    std::string suite;
    std::optional<double> q;
    std::optional<int> t_max;
    std::optional<std::uint64_t> n;
    std::optional<double> c;
    std::uint64_t seed = 1;
    unsigned threads = 0;
};

struct TableOptions {
    std::string kind;
    std::string q_grid = "0.1:0.9:0.1";
    std::string t_grid = "1,10,100";
    std::string prev_grid;
    std::string out;
    std::string format = "csv";
    std::string gnuplot_script;
};

void add_experiment_options(CLI::App* cmd, ExperimentConfig& cfg, std::string& strategies,
                            std::string& format) {
    cmd->add_option("--allowed", cfg.allowed, "Allowed periods: all | every-K | list (10,5,3)");
    cmd->add_option("--strategy", strategies,
                    "Comma-separated strategies: truthful, silent, distort:T:c, skip:t, "
                    "threshold:theta");
    cmd->add_option("--n", cfg.n, "Episodes per strategy");
    cmd->add_option("--seed", cfg.seed, "Master seed")->envname("EXPERT_ORACLE_SEED");
    cmd->add_option("--threads", cfg.threads, "Worker threads (0: all cores)");
    cmd->add_flag("--paired", cfg.paired, "Run all strategies on common sampled paths");
    cmd->add_option("--out", cfg.out, "Output path (default: stdout)");
    cmd->add_option("--format", format, "csv | json");
    cmd->add_option("--gnuplot-script", cfg.gnuplot_script, "Also write a gnuplot script here");
}

void validate_experiment(const ExperimentConfig& cfg) {
    Quality(cfg.q).require_informative();
    const Horizon horizon = parse_allowed(cfg.allowed, cfg.t_max);
    if (cfg.strategies.empty()) throw ConfigError("no strategy given");
    for (const auto& s : cfg.strategies) make_strategy(s, horizon);
    if (cfg.n < 2) throw ConfigError("--n must be at least 2");
    if (!cfg.gnuplot_script.empty() && (cfg.out.empty() || cfg.out == "-")) {
        throw ConfigError("--gnuplot-script needs --out to name the data file");
    }
}

void emit_simulation(const ExperimentConfig& cfg, const std::vector<SimulationRow>& rows,
                     std::ostream& out, std::ostream& err) {
    for (const auto& r : rows) {
        if (r.summary.near_quality_boundary) {
            err << "warning: q > 0.999; closed-form comparisons lose precision\n";
            break;
        }
    }
    Sink sink(cfg.out, out);
    write_simulation(sink.stream(), rows, cfg.format);
    sink.finish();
    write_gnuplot(cfg.gnuplot_script, cfg.out,
                  "set ylabel 'mean total reward (nats)'\n"
                  "set xtics rotate by -30\n"
                  "plot data using 0:'mean':'stderr':xtic(stringcolumn('strategy')) "
                  "with yerrorbars title 'mean +/- stderr'\n");
}

}  // namespace

Horizon parse_allowed(const std::string& spec, int t_max) {
    const std::string s = trim(spec);
    if (s == "all") return Horizon(t_max);
    if (s.rfind("every-", 0) == 0 || s.rfind("every:", 0) == 0) {
        return Horizon::every_k(t_max, parse_int(s.substr(6)));
    }
    std::vector<int> periods;
    for (const auto& item : split_list(s)) periods.push_back(parse_int(item));
    if (periods.empty()) throw ConfigError("empty allowed-period list");
    return Horizon(t_max, std::move(periods));
}

std::vector<std::string> split_list(const std::string& spec) {
    std::vector<std::string> items;
    std::string item;
    std::istringstream is(spec);
    while (std::getline(is, item, ',')) {
        item = trim(item);
        if (!item.empty()) items.push_back(item);
    }
    return items;
}

std::vector<double> parse_real_grid(const std::string& spec) {
    const std::string s = trim(spec);
    if (std::count(s.begin(), s.end(), ':') == 2) {
        const auto a = s.find(':');
        const auto b = s.find(':', a + 1);
        const double start = parse_double(s.substr(0, a));
        const double stop = parse_double(s.substr(a + 1, b - a - 1));
        const double step = parse_double(s.substr(b + 1));
        if (!(step > 0.0)) throw ConfigError("grid step must be positive");
        std::vector<double> values;
        const auto count = static_cast<long>(std::floor((stop - start) / step + 1e-9));
        for (long i = 0; i <= count; ++i) {
            // Round to the step's decimal grid so 0.1:0.9:0.1 yields 0.3, not 0.30000000000000004.
            const double v = start + static_cast<double>(i) * step;
            values.push_back(std::round(v * 1e12) / 1e12);
        }
        return values;
    }
    std::vector<double> values;
    for (const auto& item : split_list(s)) values.push_back(parse_double(item));
    return values;
}

std::vector<int> parse_int_grid(const std::string& spec) {
    const std::string s = trim(spec);
    if (std::count(s.begin(), s.end(), ':') == 2) {
        const auto a = s.find(':');
        const auto b = s.find(':', a + 1);
        const int start = parse_int(s.substr(0, a));
        const int stop = parse_int(s.substr(a + 1, b - a - 1));
        const int step = parse_int(s.substr(b + 1));
        if (step <= 0) throw ConfigError("grid step must be positive");
        std::vector<int> values;
        for (int v = start; v <= stop; v += step) values.push_back(v);
        return values;
    }
    std::vector<int> values;
    for (const auto& item : split_list(s)) values.push_back(parse_int(item));
    return values;
}

std::string format_real(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::vector<SimulationRow> simulate_rows(const ExperimentConfig& config) {
    const Quality q(config.q);
    q.require_informative();
    const Horizon horizon = parse_allowed(config.allowed, config.t_max);
    std::vector<std::unique_ptr<Strategy>> strategies;
    for (const auto& s : config.strategies) strategies.push_back(make_strategy(s, horizon));

    std::vector<SimulationRow> rows;
    const auto row = [&](std::string name, MonteCarloSummary summary) {
        rows.push_back({config.t_max, config.q, config.allowed, std::move(name), std::move(summary)});
    };
    if (!config.paired || strategies.size() == 1) {
        for (const auto& s : strategies) {
            row(s->name(), run_monte_carlo(horizon, q, *s, config.n, config.seed, config.threads));
        }
        return rows;
    }
    const Strategy& base = *strategies.front();
    for (std::size_t i = 1; i < strategies.size(); ++i) {
        const PairedSummary p =
            run_paired(horizon, q, *strategies[i], base, config.n, config.seed, config.threads);
        if (i == 1) row(base.name(), p.second);
        row(strategies[i]->name(), p.first);
        row(strategies[i]->name() + " - " + base.name(), p.difference);
    }
    return rows;
}

void write_simulation(std::ostream& os, const std::vector<SimulationRow>& rows,
                      OutputFormat format) {
    if (format == OutputFormat::Json) {
        nlohmann::ordered_json array = nlohmann::ordered_json::array();
        for (const auto& r : rows) {
            array.push_back({{"t_max", r.t_max},
                             {"q", r.q},
                             {"allowed", r.allowed},
                             {"strategy", r.strategy},
                             {"config_digest", r.summary.config_digest},
                             {"mean", r.summary.mean},
                             {"stderr", r.summary.std_error},
                             {"n", r.summary.n_episodes},
                             {"seed", r.summary.master_seed}});
        }
        os << array.dump(2) << '\n';
        return;
    }
    os << "# expert-oracle simulation summary; rewards in nats; stderr = sample sd / sqrt(n)\n";
    if (std::any_of(rows.begin(), rows.end(),
                    [](const SimulationRow& r) { return r.summary.near_quality_boundary; })) {
        os << "# warning: q > 0.999, closed-form tolerances degrade to 1e-8\n";
    }
    os << "t_max,q,allowed,strategy,config_digest,mean,stderr,n,seed\n";
    for (const auto& r : rows) {
        os << r.t_max << ',' << format_real(r.q) << ',' << csv_field(r.allowed) << ','
           << csv_field(r.strategy) << ',' << r.summary.config_digest << ','
           << format_real(r.summary.mean) << ',' << format_real(r.summary.std_error) << ','
           << r.summary.n_episodes << ',' << r.summary.master_seed << '\n';
    }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    std::vector<std::string> argv;
    try {
        argv = expand_config(args);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    }

    CLI::App app{"Repeated-prediction expert simulator and closed-form verifier", "expert-oracle"};
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    app.require_subcommand(1);
    app.add_option("--config", "Flat key = value file; explicit flags override it");

    ExperimentConfig sim;
    std::string sim_strategies = "truthful";
    std::string sim_format = "csv";
    auto* simulate = app.add_subcommand("simulate", "Monte Carlo mean total reward per strategy");
    simulate->add_option("--q", sim.q, "Expert quality in [0, 1)");
    simulate->add_option("--t-max", sim.t_max, "Periods before settlement");
    add_experiment_options(simulate, sim, sim_strategies, sim_format);

    ExperimentConfig sweep_base;
    SweepOptions sweep_opts;
    std::string sweep_strategies = "truthful";
    std::string sweep_format = "csv";
    auto* sweep = app.add_subcommand("sweep", "Cartesian grid of simulate runs");
    sweep->add_option("--q", sweep_opts.q_grid, "Quality grid: list or start:stop:step");
    sweep->add_option("--t-max", sweep_opts.t_grid, "Horizon grid: list or start:stop:step");
    add_experiment_options(sweep, sweep_base, sweep_strategies, sweep_format);

    VerifyOptions vopt;
    auto* verify = app.add_subcommand("verify", "Run a verification suite (or 'all')");
    verify->add_option("suite", vopt.suite, "Suite name or 'all'")->required();
    verify->add_option("--q", vopt.q, "Expert quality");
    verify->add_option("--t-max", vopt.t_max, "Horizon");
    verify->add_option("--n", vopt.n, "Episodes");
    verify->add_option("--c", vopt.c, "Distortion amount (gain-loss)");
    verify->add_option("--seed", vopt.seed, "Master seed")->envname("EXPERT_ORACLE_SEED");
    verify->add_option("--threads", vopt.threads, "Worker threads (0: all cores)");

    TableOptions topt;
    auto* table = app.add_subcommand("table", "Tabulate closed forms: xi | consecutive | speak-gap");
    table->add_option("kind", topt.kind, "xi | consecutive | speak-gap")->required();
    table->add_option("--q-grid", topt.q_grid, "Quality grid");
    table->add_option("--t-grid", topt.t_grid, "Period grid");
    table->add_option("--prev-grid", topt.prev_grid,
                      "speak-gap: periods of an earlier prediction (adds after-prediction rows)");
    table->add_option("--out", topt.out, "Output path (default: stdout)");
    table->add_option("--format", topt.format, "csv | json");
    table->add_option("--gnuplot-script", topt.gnuplot_script, "Also write a gnuplot script");

    try {
        std::vector<std::string> reversed(argv.rbegin(), argv.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kSuccess;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    }

    try {
        if (simulate->parsed()) {
            sim.strategies = split_list(sim_strategies);
            sim.format = parse_format(sim_format);
            validate_experiment(sim);
            emit_simulation(sim, simulate_rows(sim), out, err);
            return kSuccess;
        }
        if (sweep->parsed()) {
            sweep_base.strategies = split_list(sweep_strategies);
            sweep_base.format = parse_format(sweep_format);
            const auto qs = parse_real_grid(sweep_opts.q_grid);
            const auto ts = parse_int_grid(sweep_opts.t_grid);
            if (qs.empty() || ts.empty()) throw ConfigError("empty sweep grid");
            std::vector<ExperimentConfig> configs;
            for (int T : ts) {
                for (double q : qs) {
                    ExperimentConfig c = sweep_base;
                    c.t_max = T;
                    c.q = q;
                    validate_experiment(c);
                    configs.push_back(c);
                }
            }
            std::vector<SimulationRow> rows;
            for (const auto& c : configs) {
                auto part = simulate_rows(c);
                rows.insert(rows.end(), part.begin(), part.end());
            }
            emit_simulation(sweep_base, rows, out, err);
            return kSuccess;
        }
        if (verify->parsed()) {
            VerifyParams params{vopt.q, vopt.t_max, vopt.n, vopt.c, vopt.seed, vopt.threads};
            std::vector<std::string> suites;
            if (vopt.suite == "all") {
                suites = suite_names();
            } else {
                const auto& known = suite_names();
                if (std::find(known.begin(), known.end(), vopt.suite) == known.end()) {
                    throw ConfigError("unknown suite '" + vopt.suite + "'");
                }
                suites = {vopt.suite};
            }
            bool all_passed = true;
            for (const auto& s : suites) {
                const VerifyReport report = verify_suite(s, params);
                print_report(out, report);
                all_passed = all_passed && report.passed();
            }
            return all_passed ? kSuccess : kRuntimeFailure;
        }
        if (table->parsed()) {
            const OutputFormat format = parse_format(topt.format);
            const auto qs = parse_real_grid(topt.q_grid);
            const auto ts = parse_int_grid(topt.t_grid);
            const auto prevs = topt.prev_grid.empty() ? std::vector<int>{}
                                                      : parse_int_grid(topt.prev_grid);
            Table t;
            if (topt.kind == "xi") {
                t = xi_table(qs, ts);
            } else if (topt.kind == "consecutive") {
                t = consecutive_table(qs, ts);
            } else if (topt.kind == "speak-gap") {
                t = speak_gap_table(qs, ts, prevs);
            } else {
                throw ConfigError("unknown table '" + topt.kind +
                                  "' (expected xi, consecutive or speak-gap)");
            }
            if (t.rows.empty()) throw ConfigError("table grid is empty");
            if (!topt.gnuplot_script.empty() && (topt.out.empty() || topt.out == "-")) {
                throw ConfigError("--gnuplot-script needs --out to name the data file");
            }
            Sink sink(topt.out, out);
            write_table(sink.stream(), t, format);
            sink.finish();
            const std::string x = t.columns[1];
            const std::string y = t.columns[t.columns.size() - 1];
            write_gnuplot(topt.gnuplot_script, topt.out,
                          "set xlabel '" + x + "'\nset ylabel '" + y + " (nats)'\n" +
                              "plot data using '" + x + "':'" + y + "' with points\n");
            return kSuccess;
        }
    } catch (const ResourceError& e) {
        err << "error: " << e.what() << " after " << e.completed_episodes() << " episodes\n";
        return kRuntimeFailure;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kRuntimeFailure;
    }
    return kUsageError;
}

}  // namespace expert::cli

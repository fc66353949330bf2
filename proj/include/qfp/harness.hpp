#pragma once

// Experiment driver: one function per CLI subcommand. Each returns a report
// holding echoed configuration, data rows and a summary with the outcome of
// every in-run assertion.

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "qfp/arith.hpp"

namespace qfp {

struct ExperimentConfig {
    i64 d = -1;
    std::vector<i64> ds;                 // class-number / field-info lists
    std::array<i64, 3> form{1, 0, 1};
    double x = 0;                        // 0: command default
    std::vector<double> xs;              // sweeps
    double y = 0;                        // 0: x^theta1
    double theta1 = 0.765, theta2 = 0.235;
    double phi = 0;                      // 0: x^-theta2 (or command default)
    double phi0 = 0;                     // also omega for F windows
    bool phi0_set = false;
    double y1 = 0;                       // 0: x/2
    double eta = 0.05;
    double delta = 0.1;
    int trials = 100;
    u64 seed = 1;
    i64 m = 1;
    std::vector<double> target;          // (s, t), empty: random targets
    double rmin = 1e2, rmax = 1e6;
    long long M = -1;                    // -1: floor(x^eta / D2) + 1
    double T1 = 0;                       // 0: x^(1+eta) / D1
    std::string model = "one";
    u64 limit = 1000;
    u64 cap = u64{1} << 26;
    double max_dev = 0.15;
    bool assert_truncation = false;
};

struct ExperimentReport {
    std::string command;
    std::vector<std::pair<std::string, std::string>> header;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
    nlohmann::ordered_json summary = nlohmann::ordered_json::object();
    std::vector<std::string> failures;

    bool passed() const { return failures.empty(); }
    void echo(const std::string& key, const std::string& value);
    void echo(const std::string& key, double value);
    void echo(const std::string& key, long long value);
    void check(bool ok, const std::string& what);
    void add_row(std::vector<std::string> row);

    // '# key=value' header lines, then the column line and the rows
    std::string csv() const;
    std::string json() const;
};

// round-trip decimal text for a double
std::string fmt_num(long double v);
std::string csv_field(const std::string& s);

// one independent stream per (seed, trial)
class TrialRng {
public:
    TrialRng(u64 seed, u64 trial);
    u64 next();
    double uniform();  // [0, 1), 53 bits

private:
    u64 state_;
};

ExperimentReport cmd_field_info(const ExperimentConfig& cfg);
ExperimentReport cmd_fundamental_unit(const ExperimentConfig& cfg);
ExperimentReport cmd_class_number(const ExperimentConfig& cfg);
ExperimentReport cmd_char_eval(const ExperimentConfig& cfg);
ExperimentReport cmd_region_count(const ExperimentConfig& cfg);
ExperimentReport cmd_density_scan(const ExperimentConfig& cfg);
ExperimentReport cmd_prime_near(const ExperimentConfig& cfg);
ExperimentReport cmd_search_audit(const ExperimentConfig& cfg);
ExperimentReport cmd_ratio_check(const ExperimentConfig& cfg);
ExperimentReport cmd_smoothing_check(const ExperimentConfig& cfg);
ExperimentReport cmd_dirichlet_sweep(const ExperimentConfig& cfg);

// dispatch by subcommand name; throws std::invalid_argument for unknown names
ExperimentReport run_command(const std::string& name, const ExperimentConfig& cfg);
const std::vector<std::string>& command_names();

}  // namespace qfp

#pragma once

// The seven batch experiments behind the `specop` subcommands: each one
// validates its hypotheses, runs a deterministic pipeline seeded from the
// config, and emits a spectrum CSV, a plot-data CSV, and a JSON summary.

#include <map>
#include <string>
#include <vector>

#include "config.hpp"
#include "json.hpp"

namespace specop::cli {

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Verdict {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct ReportRow {
    int k = 0;
    double abs_lambda = 0.0;
    double singular_value = 0.0;
    double predicted_shape = 0.0;
    bool pass = false;
};

struct ExperimentResult {
    std::string experiment;
    std::string name;  // output base name
    unsigned long long seed = 0;
    std::vector<ReportRow> rows;  // spectrum experiments only
    std::string plot_header;
    std::vector<std::string> plot_rows;
    std::vector<Verdict> verdicts;
    nlohmann::ordered_json results;  // experiment-specific summary block
    std::map<std::string, double> runtimes_ms;

    bool all_pass() const;
};

const std::vector<std::string>& experiment_names();

// Runs one experiment.  Throws ConfigError / std::invalid_argument when a
// parameter combination violates the hypotheses of the statement it
// references (the message names the failed inequality).
ExperimentResult run_experiment(const Config& cfg, const std::string& experiment,
                                unsigned long long seed);

// Writes <out>/<name>.report.csv, <name>.plot.csv, <name>.summary.json,
// each atomically (temp file + rename).  Throws IoError with the path on
// failure.
void write_outputs(const ExperimentResult& r, const std::string& out_dir,
                   const Config& cfg);

// Prints the fixed-format verdict table for one run.
void print_verdicts(const ExperimentResult& r);

// `specop report <dir>`: scans for *.summary.json and prints the combined
// verdict table.  Returns the process exit code: 0 all pass, 1 a verdict
// failed, 2 nothing ran, 3 a summary was unreadable.
int report_directory(const std::string& dir);

}  // namespace specop::cli

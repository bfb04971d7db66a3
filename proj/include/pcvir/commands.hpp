#pragma once

#include <cstdint>
#include <string>

namespace pcvir {

// Everything the command line can set, with the same defaults the flags
// advertise. The CLI front end fills this in; the run_* functions do the work
// and print a short human summary to stdout.
struct CliOptions {
    std::string input;
    std::string output;
    std::string model;      // predict: results JSON from an earlier fit
    std::string spec_file;  // simulate: generator spec JSON

    std::string label_column = "label";
    std::string group_column;
    std::string reference_label;

    std::string retention = "kaiser";  // or "parallel"
    int pa_iterations = 100;
    double pa_percentile = 0.95;

    bool adjust = false;
    double moderate = 0.98;
    double strong = 1.372;

    double train_fraction = 0.8;
    int repeats = 20;
    std::uint64_t seed = 1;
    bool seed_given = false;

    bool plot = false;
    bool drop_missing = false;
    bool no_timestamp = false;
    bool compare_adjust = false;
};

int run_fit(const CliOptions& options);
int run_predict(const CliOptions& options);
int run_validate(const CliOptions& options);
int run_simulate(const CliOptions& options);

}  // namespace pcvir

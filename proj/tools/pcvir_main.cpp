#include <exception>
#include <iostream>

#include "CLI11.hpp"
#include "pcvir/commands.hpp"

namespace {

void add_csv_flags(CLI::App* cmd, pcvir::CliOptions& o) {
    cmd->add_option("--label", o.label_column, "Name of the outcome column")
        ->capture_default_str();
    cmd->add_option("--group", o.group_column,
                    "Name of the group column (omit to fit one pooled model)");
    cmd->add_option("--reference", o.reference_label,
                    "Label value coded 0 (default: the lexicographically smaller one)");
    cmd->add_flag("--drop-missing", o.drop_missing,
                  "Drop rows with missing or non-numeric cells instead of failing");
}

void add_model_flags(CLI::App* cmd, pcvir::CliOptions& o) {
    cmd->add_option("--retention", o.retention, "Component retention rule: kaiser or parallel")
        ->check(CLI::IsMember({"kaiser", "parallel"}))
        ->capture_default_str();
    cmd->add_option("--pa-iterations", o.pa_iterations,
                    "Simulated tables for parallel analysis")
        ->capture_default_str();
    cmd->add_option("--pa-percentile", o.pa_percentile,
                    "Percentile of simulated eigenvalues used as the retention bar")
        ->capture_default_str();
    cmd->add_flag("--adjust", o.adjust,
                  "Adjust component z statistics for the number of retained components");
    cmd->add_option("--moderate", o.moderate, "Moderate importance threshold on |z'|")
        ->capture_default_str();
    cmd->add_option("--strong", o.strong, "Strong importance threshold on |z'|")
        ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
    pcvir::CliOptions o;
    CLI::App app{"Per-variable importance from principal-component logistic regression"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "pcvir 1.0.0");

    CLI::App* fit = app.add_subcommand("fit", "Fit per-group models and reconstruct importance");
    fit->add_option("--input", o.input, "Feature CSV")->required();
    fit->add_option("--output", o.output, "Results JSON path")->required();
    add_csv_flags(fit, o);
    add_model_flags(fit, o);
    fit->add_option("--seed", o.seed, "Seed for parallel analysis")->capture_default_str();
    fit->add_flag("--plot", o.plot, "Also write a box plot SVG next to the results");
    fit->add_flag("--no-timestamp", o.no_timestamp, "Omit the generated_at field");

    CLI::App* predict = app.add_subcommand("predict", "Score new rows with a fitted model");
    predict->add_option("--model", o.model, "Results JSON from an earlier fit")->required();
    predict->add_option("--input", o.input, "Feature CSV to score")->required();
    predict->add_option("--output", o.output, "Predictions CSV path")->required();
    add_csv_flags(predict, o);

    CLI::App* validate = app.add_subcommand(
        "validate", "Split/refit validation: calibration and held-out accuracy");
    validate->add_option("--input", o.input, "Feature CSV")->required();
    validate->add_option("--output", o.output, "Report JSON path")->required();
    add_csv_flags(validate, o);
    add_model_flags(validate, o);
    validate->add_option("--train-fraction", o.train_fraction, "Training share of each group")
        ->capture_default_str();
    validate->add_option("--repeats", o.repeats, "Number of random splits")
        ->capture_default_str();
    validate->add_option("--seed", o.seed, "Seed for the splits")->capture_default_str();
    validate->add_flag("--compare-adjust", o.compare_adjust,
                       "Also run with the opposite --adjust setting and compare accuracies");
    validate->add_flag("--no-timestamp", o.no_timestamp, "Omit the generated_at field");

    CLI::App* simulate = app.add_subcommand("simulate", "Generate synthetic benchmark data");
    simulate->add_option("--output", o.output, "Feature CSV path")->required();
    simulate->add_option("--spec", o.spec_file, "Generator spec JSON (omit for the default)");
    simulate->add_option("--seed", o.seed, "Generator seed (overrides the spec)");
    simulate->add_flag("--no-timestamp", o.no_timestamp, "Omit the generated_at field");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help / --version
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    o.seed_given = fit->count("--seed") > 0 || validate->count("--seed") > 0 ||
                   simulate->count("--seed") > 0;

    try {
        if (app.got_subcommand(fit)) return pcvir::run_fit(o);
        if (app.got_subcommand(predict)) return pcvir::run_predict(o);
        if (app.got_subcommand(validate)) return pcvir::run_validate(o);
        if (app.got_subcommand(simulate)) return pcvir::run_simulate(o);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    std::cerr << "error: no command given\n";
    return 1;
}

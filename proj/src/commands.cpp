#include "pcvir/commands.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "pcvir/io.hpp"
#include "pcvir/pcvir.hpp"
#include "pcvir/plot.hpp"
#include "pcvir/synthdata.hpp"
#include "pcvir/validation.hpp"

namespace pcvir {

namespace {

// "out/results.json" + "_coefficients.csv" -> "out/results_coefficients.csv"
std::string derived_path(const std::string& path, const std::string& suffix) {
    std::size_t slash = path.find_last_of('/');
    std::size_t dot = path.find_last_of('.');
    if (dot == std::string::npos || (slash != std::string::npos && dot < slash))
        return path + suffix;
    return path.substr(0, dot) + suffix;
}

RetentionStrategy retention_from_options(const CliOptions& o) {
    RetentionStrategy r;
    if (o.retention == "kaiser") {
        r.kind = RetentionKind::kaiser;
    } else if (o.retention == "parallel") {
        r.kind = RetentionKind::parallel_analysis;
    } else {
        throw std::runtime_error("unknown retention rule '" + o.retention +
                                 "' (expected 'kaiser' or 'parallel')");
    }
    r.iterations = o.pa_iterations;
    r.percentile = o.pa_percentile;
    r.seed = o.seed;
    return r;
}

ImportanceThresholds thresholds_from_options(const CliOptions& o) {
    if (!(o.moderate > 0.0) || !(o.strong >= o.moderate))
        throw std::runtime_error("thresholds must satisfy 0 < moderate <= strong");
    return {o.moderate, o.strong};
}

CsvReadOptions csv_options(const CliOptions& o, bool require_label) {
    CsvReadOptions c;
    c.label_column = o.label_column;
    c.group_column = o.group_column;
    c.reference_label = o.reference_label;
    c.drop_missing = o.drop_missing;
    c.require_label = require_label;
    return c;
}

FeatureTable read_input(const CliOptions& o, bool require_label = true) {
    CsvReadReport report;
    FeatureTable table = read_feature_csv(o.input, csv_options(o, require_label), &report);
    if (report.rows_dropped > 0)
        std::cout << "note: dropped " << report.rows_dropped << " rows with missing values\n";
    return table;
}

void print_aggregate(const GroupedResult& result) {
    std::size_t name_width = 8;
    for (const auto& v : result.variables) name_width = std::max(name_width, v.size());
    std::cout << "aggregate importance (mean z' across groups):\n";
    for (std::size_t idx : result.display_order) {
        std::ostringstream value;
        value << std::fixed << std::setprecision(3) << std::showpos
              << result.mean_coefficients[idx];
        std::cout << "  " << std::left << std::setw(static_cast<int>(name_width + 2))
                  << result.variables[idx] << std::right << std::setw(9) << value.str() << "  "
                  << band_name(result.bands[idx]) << "\n";
    }
}

void print_warnings(const GroupedResult& result) {
    for (const CancellationWarning& w : result.warnings) {
        std::cout << "warning: group " << w.group << ", variable " << w.variable
                  << ": components " << w.component_positive + 1 << " and "
                  << w.component_negative + 1 << " cancel "
                  << std::fixed << std::setprecision(2) << w.cancelled
                  << " against a net coefficient of " << std::setprecision(2) << w.coefficient
                  << "\n";
    }
    std::cout.unsetf(std::ios::floatfield);
}

void print_summary_line(const char* heading, const ValidationSummary& s, int repeats) {
    std::cout << heading << ": accuracy mean " << std::fixed << std::setprecision(3)
              << s.accuracy_mean << ", sd " << s.accuracy_sd << "; averaged HL p > 0.05 in "
              << std::setprecision(0) << s.calibration_pass_fraction * repeats << " of " << repeats
              << " repeats (mean chi-squared " << std::setprecision(2) << s.mean_chi_squared
              << ")\n";
    std::cout.unsetf(std::ios::floatfield);
}

}  // namespace

int run_fit(const CliOptions& options) {
    FeatureTable table = read_input(options);
    RetentionStrategy retention = retention_from_options(options);
    ImportanceThresholds thresholds = thresholds_from_options(options);

    GroupedResult result = fit_grouped(table, retention, options.adjust, thresholds);

    FitDocument doc;
    doc.retention = retention;
    doc.adjust = options.adjust;
    doc.thresholds = thresholds;
    doc.coding = table.coding;
    doc.result = result;
    write_fit_json(options.output, doc, !options.no_timestamp);
    std::string coeffs_path = derived_path(options.output, "_coefficients.csv");
    write_coefficient_csv(coeffs_path, result);

    std::cout << "fit: " << result.groups.size() << " groups, " << table.n_features()
              << " variables, " << table.n_rows() << " rows (label '" << table.coding.comparison
              << "' vs reference '" << table.coding.reference << "')\n";
    for (const GroupFit& g : result.groups) {
        std::cout << "group " << g.id << ": " << g.n_rows << " rows, retained "
                  << g.pca.n_retained << " of " << g.pca.eigenvalues.size()
                  << " components, logistic converged in " << g.logistic.iterations
                  << " iterations";
        if (g.logistic.separation_warning) std::cout << " [separation warning]";
        std::cout << "\n";
    }
    print_aggregate(result);
    print_warnings(result);

    std::cout << "wrote " << options.output << ", " << coeffs_path;
    if (options.plot) {
        std::string plot_path = derived_path(options.output, "_plot.svg");
        write_box_plot_svg(plot_path, result);
        std::cout << ", " << plot_path;
    }
    std::cout << "\n";
    return 0;
}

int run_predict(const CliOptions& options) {
    FitDocument doc = read_fit_json(options.model);
    bool grouped = doc.result.groups.size() > 1 ||
                   (doc.result.groups.size() == 1 && doc.result.groups[0].id != "all");

    CliOptions read_opts = options;
    if (!grouped) read_opts.group_column.clear();
    else if (read_opts.group_column.empty()) read_opts.group_column = "group";
    FeatureTable input = read_feature_csv(read_opts.input, csv_options(read_opts, false), nullptr);

    // Match variables by name; order in the file is free, the set is not.
    std::vector<std::size_t> mapping;
    std::string missing, extra;
    for (const auto& v : doc.result.variables) {
        auto it = std::find(input.feature_names.begin(), input.feature_names.end(), v);
        if (it == input.feature_names.end()) missing += (missing.empty() ? "" : ", ") + v;
        else mapping.push_back(static_cast<std::size_t>(it - input.feature_names.begin()));
    }
    for (const auto& v : input.feature_names)
        if (std::find(doc.result.variables.begin(), doc.result.variables.end(), v) ==
            doc.result.variables.end())
            extra += (extra.empty() ? "" : ", ") + v;
    if (!missing.empty() || !extra.empty()) {
        std::string msg = "input columns do not match the model";
        if (!missing.empty()) msg += "; missing: " + missing;
        if (!extra.empty()) msg += "; unexpected: " + extra;
        throw std::runtime_error(msg);
    }
    FeatureTable aligned = input.subset_columns(mapping);

    std::vector<PredictionRow> rows(aligned.n_rows());
    for (const std::string& id : aligned.group_ids()) {
        const GroupFit* model = nullptr;
        for (const GroupFit& g : doc.result.groups)
            if (g.id == id) model = &g;
        if (model == nullptr)
            throw std::runtime_error("input group '" + id + "' has no model in " + options.model);

        std::vector<std::size_t> idx = aligned.rows_in_group(id);
        FeatureTable part = aligned.subset_rows(idx);
        Matrix scores = project(model->pca, part.features, model->pca.n_retained);
        std::vector<double> probs = predict_probability(model->logistic, scores);
        for (std::size_t i = 0; i < idx.size(); ++i) {
            rows[idx[i]].group = id;
            rows[idx[i]].probability = probs[i];
            rows[idx[i]].label =
                probs[i] >= 0.5 ? doc.coding.comparison : doc.coding.reference;
        }
    }
    write_predictions_csv(options.output, rows, grouped);

    std::size_t positive = 0;
    for (const PredictionRow& r : rows)
        if (r.label == doc.coding.comparison) ++positive;
    std::cout << "predicted " << rows.size() << " rows; " << positive << " classified as '"
              << doc.coding.comparison << "'\n";
    std::cout << "wrote " << options.output << "\n";
    return 0;
}

int run_validate(const CliOptions& options) {
    FeatureTable table = read_input(options);

    ValidationConfig config;
    config.retention = retention_from_options(options);
    config.adjust = options.adjust;
    config.thresholds = thresholds_from_options(options);
    config.split.train_fraction = options.train_fraction;
    config.split.repeats = options.repeats;
    config.split.seed = options.seed;

    ValidationReport report = run_validation(table, config);
    std::cout << "validation: " << config.split.repeats << " repeats, train fraction "
              << config.split.train_fraction << ", adjust "
              << (config.adjust ? "on" : "off") << "\n";
    print_summary_line("result", report.summary, config.split.repeats);

    if (options.compare_adjust) {
        ValidationConfig other_config = config;
        other_config.adjust = !config.adjust;
        ValidationReport other = run_validation(table, other_config);
        WelchResult welch = compare_configurations(report, other);
        print_summary_line(other_config.adjust ? "with adjustment" : "without adjustment",
                           other.summary, config.split.repeats);
        std::cout << "accuracy difference: Welch t = " << std::fixed << std::setprecision(2)
                  << welch.t << ", df = " << std::setprecision(1) << welch.df
                  << ", p = " << std::setprecision(4) << welch.p_value << "\n";
        std::cout.unsetf(std::ios::floatfield);
        write_validation_json(options.output, report, &other, &welch, !options.no_timestamp);
    } else {
        write_validation_json(options.output, report, nullptr, nullptr, !options.no_timestamp);
    }
    std::cout << "wrote " << options.output << "\n";
    return 0;
}

int run_simulate(const CliOptions& options) {
    GeneratorSpec spec =
        options.spec_file.empty() ? default_generator_spec() : read_generator_spec_json(options.spec_file);
    if (options.seed_given) spec.seed = options.seed;

    GeneratedData data = generate(spec);
    write_feature_csv(options.output, data.table);
    std::string truth_path = derived_path(options.output, "_truth.json");
    write_truth_json(truth_path, data, spec, !options.no_timestamp);

    std::size_t positive = 0;
    for (int y : data.table.labels) positive += static_cast<std::size_t>(y);
    std::cout << "simulated " << data.table.n_rows() << " rows x " << data.table.n_features()
              << " features in " << spec.n_groups << " groups (seed " << spec.seed << ", "
              << positive << " labeled '" << data.table.coding.comparison << "')\n";
    std::cout << "wrote " << options.output << ", " << truth_path << "\n";
    return 0;
}

}  // namespace pcvir

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pcvir/distributions.hpp"
#include "pcvir/glm.hpp"
#include "pcvir/pca.hpp"
#include "pcvir/pcvir.hpp"
#include "pcvir/table.hpp"

namespace pcvir {

struct SplitSpec {
    double train_fraction = 0.8;
    int repeats = 20;
    std::uint64_t seed = 1;
};

struct SplitResult {
    FeatureTable train;
    FeatureTable test;
};

// Stratified-by-group random split. Each group is shuffled with its own
// stream keyed on (seed + repeat_index, group ordinal) and cut at
// floor(train_fraction * group size). A training side that ends up
// single-class is redrawn, at most ten times.
SplitResult split_table(const FeatureTable& table, const SplitSpec& spec, int repeat_index);

// Variables whose group-mean |coefficient| reaches the moderate threshold.
// Returned in table column order; throws if nothing qualifies.
std::vector<std::string> select_variables(const FeatureTable& table,
                                          const RetentionStrategy& retention, bool adjust,
                                          const ImportanceThresholds& thresholds);

struct GroupModel {
    std::string id;
    PcaModel pca;
    LogisticFit logistic;
};

// Per-group PCA + logistic refit on the named variables, keeping every
// principal component (the model is then equivalent to a standardized
// logistic regression on those variables).
std::vector<GroupModel> refit_all_components(const FeatureTable& table,
                                             const std::vector<std::string>& variables);

struct HLResult {
    double chi_squared = 0.0;
    double df = 0.0;
    double p_value = 1.0;
    int bins = 0;        // bins actually used after merging
    bool merged = false; // true when degenerate bins had to be merged
};

// Hosmer-Lemeshow goodness-of-fit: observations are cut into `bins`
// probability deciles (quantile boundaries, ties going to the lower bin) and
// observed versus expected counts compared with df = bins - 2.
HLResult hosmer_lemeshow(const std::vector<double>& probabilities,
                         const std::vector<int>& labels, int bins = 10);

struct ValidationConfig {
    RetentionStrategy retention;
    bool adjust = false;
    ImportanceThresholds thresholds;
    SplitSpec split;
};

struct RepeatGroupRecord {
    std::string id;
    HLResult hl;         // on the full data under the refit model
    double accuracy = 0.0;  // held-out hit rate
    std::size_t n_train = 0;
    std::size_t n_test = 0;
};

struct RepeatRecord {
    int repeat = 0;
    std::vector<std::string> selected;
    std::vector<RepeatGroupRecord> groups;
    double mean_chi_squared = 0.0;  // arithmetic mean of the group HL statistics
    double p_value = 1.0;           // mean chi-squared against chi2(df = bins - 2)
    double overall_accuracy = 0.0;  // mean of the group hit rates
};

struct ValidationSummary {
    double accuracy_mean = 0.0;
    double accuracy_sd = 0.0;
    double mean_chi_squared = 0.0;          // across repeats
    double calibration_pass_fraction = 0.0; // repeats with averaged-HL p > 0.05
};

struct ValidationReport {
    ValidationConfig config;
    std::vector<RepeatRecord> repeats;
    ValidationSummary summary;
};

// The full protocol, repeated `split.repeats` times: split, select variables
// on the training side, refit the selected variables with all components,
// check calibration on the complete data and accuracy on the held-out side.
ValidationReport run_validation(const FeatureTable& table, const ValidationConfig& config);

// Welch t test between the per-repeat overall accuracies of two reports.
WelchResult compare_configurations(const ValidationReport& a, const ValidationReport& b);

}  // namespace pcvir

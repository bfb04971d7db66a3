#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "pcvir/glm.hpp"
#include "pcvir/pca.hpp"
#include "pcvir/table.hpp"

namespace pcvir {

// Classification cutoffs for reconstructed |z'|. The defaults scale the
// two-tailed 5% critical value 1.96 by loadings of 0.5 and 0.7.
struct ImportanceThresholds {
    double moderate = 0.98;
    double strong = 1.372;
};

enum class ImportanceBand { none, moderate, strong };

const char* band_name(ImportanceBand band);
ImportanceBand band_from_name(const std::string& name);

// Bonferroni-style shrinkage of a z statistic: its two-tailed p-value is
// multiplied by the number of retained components n, and the result mapped
// back to the z scale. Once the inflated p reaches 1 the adjusted z is 0.
// n of 1 returns z unchanged.
double adjust_z(double z, std::size_t n_comparisons);

// Per-variable importance reconstructed from one group's model.
struct VariableImportance {
    std::vector<std::string> variables;
    std::vector<double> coefficients;  // z' per variable
    std::vector<double> component_z;   // the z per retained component that was summed
    std::size_t n_components = 0;
    bool adjusted = false;
};

// z'_j = sum over retained components i of z_i * loading(j, i), with the
// component z optionally adjusted for the number of retained components.
VariableImportance reconstruct(const PcaModel& pca, const LogisticFit& fit, bool adjust,
                               const std::vector<std::string>& names);

std::vector<ImportanceBand> classify(const std::vector<double>& coefficients,
                                     const ImportanceThresholds& thresholds);

// Raised when opposite-signed component contributions to one variable mostly
// cancel, leaving a small z' that hides large component effects.
struct CancellationWarning {
    std::string group;
    std::string variable;
    std::size_t component_positive = 0;  // retained-component index, 0-based
    std::size_t component_negative = 0;
    double cancelled = 0.0;  // magnitude that cancelled
    double coefficient = 0.0;
};

struct GroupFit {
    std::string id;
    std::size_t n_rows = 0;
    PcaModel pca;
    LogisticFit logistic;
    VariableImportance importance;
    std::vector<ImportanceBand> bands;  // from this group's coefficients alone
};

struct GroupedResult {
    std::vector<std::string> variables;
    std::vector<GroupFit> groups;
    std::vector<double> mean_coefficients;      // per variable, across groups
    std::vector<double> mean_abs_coefficients;  // mean of |coefficient|
    std::vector<std::size_t> display_order;     // indices by descending mean |coefficient|
    std::vector<ImportanceBand> bands;          // classification of the group means
    std::vector<CancellationWarning> warnings;
    bool adjusted = false;
    ImportanceThresholds thresholds;
};

// The full pipeline: per group, PCA on the correlation matrix, logistic
// regression on the retained scores, and importance reconstruction; then
// variable-level aggregation across groups.
GroupedResult fit_grouped(const FeatureTable& table, const RetentionStrategy& retention = {},
                          bool adjust = false, const ImportanceThresholds& thresholds = {});

}  // namespace pcvir

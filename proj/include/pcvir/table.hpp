#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "pcvir/linalg.hpp"

namespace pcvir {

// How raw label strings map onto the 0/1 coding used by the logistic model.
struct LabelCoding {
    std::string reference;   // coded 0
    std::string comparison;  // coded 1
};

// Feature matrix plus labels and optional group assignment, as ingested from
// CSV or produced by the generator.
struct FeatureTable {
    std::vector<std::string> feature_names;
    Matrix features;  // one row per observation
    std::vector<int> labels;
    LabelCoding coding;
    std::vector<std::string> groups;  // empty when there is no group column
    std::string label_column = "label";
    std::string group_column;  // empty when there is no group column

    std::size_t n_rows() const { return features.rows(); }
    std::size_t n_features() const { return features.cols(); }
    bool has_groups() const { return !groups.empty(); }

    // Distinct group ids in first-appearance order; {"all"} when ungrouped.
    std::vector<std::string> group_ids() const;
    std::vector<std::size_t> rows_in_group(const std::string& id) const;

    FeatureTable subset_rows(const std::vector<std::size_t>& rows) const;
    FeatureTable subset_columns(const std::vector<std::size_t>& cols) const;

    std::size_t column_index(const std::string& name) const;  // throws if unknown
};

}  // namespace pcvir

#include "pcvir/table.hpp"

#include <algorithm>
#include <stdexcept>

namespace pcvir {

std::vector<std::string> FeatureTable::group_ids() const {
    if (!has_groups()) return {"all"};
    std::vector<std::string> ids;
    for (const auto& g : groups)
        if (std::find(ids.begin(), ids.end(), g) == ids.end()) ids.push_back(g);
    return ids;
}

std::vector<std::size_t> FeatureTable::rows_in_group(const std::string& id) const {
    std::vector<std::size_t> rows;
    if (!has_groups()) {
        if (id != "all") throw std::invalid_argument("unknown group '" + id + "'");
        rows.resize(n_rows());
        for (std::size_t i = 0; i < rows.size(); ++i) rows[i] = i;
        return rows;
    }
    for (std::size_t i = 0; i < groups.size(); ++i)
        if (groups[i] == id) rows.push_back(i);
    return rows;
}

FeatureTable FeatureTable::subset_rows(const std::vector<std::size_t>& rows) const {
    FeatureTable out;
    out.feature_names = feature_names;
    out.coding = coding;
    out.label_column = label_column;
    out.group_column = group_column;
    out.features = Matrix(rows.size(), n_features());
    out.labels.reserve(rows.size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        std::size_t i = rows[r];
        if (i >= n_rows()) throw std::out_of_range("subset_rows: row index out of range");
        for (std::size_t j = 0; j < n_features(); ++j) out.features(r, j) = features(i, j);
        out.labels.push_back(labels[i]);
        if (has_groups()) out.groups.push_back(groups[i]);
    }
    return out;
}

FeatureTable FeatureTable::subset_columns(const std::vector<std::size_t>& cols) const {
    FeatureTable out;
    out.labels = labels;
    out.coding = coding;
    out.groups = groups;
    out.label_column = label_column;
    out.group_column = group_column;
    out.features = Matrix(n_rows(), cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c) {
        std::size_t j = cols[c];
        if (j >= n_features()) throw std::out_of_range("subset_columns: column index out of range");
        out.feature_names.push_back(feature_names[j]);
        for (std::size_t i = 0; i < n_rows(); ++i) out.features(i, c) = features(i, j);
    }
    return out;
}

std::size_t FeatureTable::column_index(const std::string& name) const {
    auto it = std::find(feature_names.begin(), feature_names.end(), name);
    if (it == feature_names.end())
        throw std::invalid_argument("unknown feature column '" + name + "'");
    return static_cast<std::size_t>(it - feature_names.begin());
}

}  // namespace pcvir

#pragma once

#include <string>
#include <vector>

#include "pcvir/distributions.hpp"
#include "pcvir/pcvir.hpp"
#include "pcvir/synthdata.hpp"
#include "pcvir/table.hpp"
#include "pcvir/validation.hpp"

namespace pcvir {

// The CSV dialect is deliberately narrow: comma separated, one header row,
// UTF-8, '.' decimal point, no quoting. Numbers round-trip exactly (written
// with shortest-representation formatting, up to 17 significant digits).

struct CsvReadOptions {
    std::string label_column = "label";
    std::string group_column;     // empty: no group column expected
    std::string reference_label;  // empty: the lexicographically smaller value
    bool drop_missing = false;    // drop rows with empty/unparseable cells instead of failing
    bool require_label = true;    // false for prediction inputs without outcomes
};

struct CsvReadReport {
    std::size_t rows_dropped = 0;
};

FeatureTable read_feature_csv(const std::string& path, const CsvReadOptions& options = {},
                              CsvReadReport* report = nullptr);

void write_feature_csv(const std::string& path, const FeatureTable& table);

// Everything a fit run produced, as stored in the results JSON. The model
// parameters inside are complete enough to score new data later.
struct FitDocument {
    RetentionStrategy retention;
    bool adjust = false;
    ImportanceThresholds thresholds;
    LabelCoding coding;
    GroupedResult result;
};

void write_fit_json(const std::string& path, const FitDocument& doc, bool with_timestamp);
FitDocument read_fit_json(const std::string& path);

// One row per (group, variable) plus the aggregate rows, in display order.
void write_coefficient_csv(const std::string& path, const GroupedResult& result);

// `other` and `welch` add the comparison section; pass nullptr to omit it.
void write_validation_json(const std::string& path, const ValidationReport& report,
                           const ValidationReport* other, const WelchResult* welch,
                           bool with_timestamp);

GeneratorSpec read_generator_spec_json(const std::string& path);
void write_truth_json(const std::string& path, const GeneratedData& data,
                      const GeneratorSpec& spec, bool with_timestamp);

struct PredictionRow {
    std::string group;
    double probability = 0.0;
    std::string label;  // predicted, in the original label vocabulary
};
void write_predictions_csv(const std::string& path, const std::vector<PredictionRow>& rows,
                           bool with_group);

std::string format_double(double v);  // shortest representation that round-trips

}  // namespace pcvir

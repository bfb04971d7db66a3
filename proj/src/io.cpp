#include "pcvir/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstring>
#include <ctime>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace pcvir {

using ordered_json = nlohmann::ordered_json;

std::string format_double(double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

namespace {

constexpr int kSchemaVersion = 1;

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> cells;
    std::size_t start = 0;
    while (true) {
        std::size_t comma = line.find(',', start);
        if (comma == std::string::npos) {
            cells.push_back(trim(line.substr(start)));
            break;
        }
        cells.push_back(trim(line.substr(start, comma - start)));
        start = comma + 1;
    }
    return cells;
}

bool parse_double(const std::string& cell, double& out) {
    const char* first = cell.data();
    const char* last = first + cell.size();
    auto res = std::from_chars(first, last, out);
    return res.ec == std::errc() && res.ptr == last && std::isfinite(out);
}

std::string iso_utc_now() {
    std::time_t t = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::ofstream open_for_write(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    return out;
}

double number_or_nan(const ordered_json& v) {
    if (v.is_null()) return std::numeric_limits<double>::quiet_NaN();
    return v.get<double>();
}

ordered_json nan_to_null(double v) {
    if (std::isnan(v)) return nullptr;
    return v;
}

const char* retention_kind_name(RetentionKind kind) {
    switch (kind) {
        case RetentionKind::kaiser: return "kaiser";
        case RetentionKind::parallel_analysis: return "parallel_analysis";
        case RetentionKind::all_components: return "all_components";
    }
    return "kaiser";
}

RetentionKind retention_kind_from(const std::string& name) {
    if (name == "kaiser") return RetentionKind::kaiser;
    if (name == "parallel_analysis") return RetentionKind::parallel_analysis;
    if (name == "all_components") return RetentionKind::all_components;
    throw std::runtime_error("unknown retention kind '" + name + "'");
}

ordered_json retention_to_json(const RetentionStrategy& r) {
    return {{"kind", retention_kind_name(r.kind)},
            {"iterations", r.iterations},
            {"percentile", r.percentile},
            {"seed", r.seed}};
}

RetentionStrategy retention_from_json(const ordered_json& j) {
    RetentionStrategy r;
    r.kind = retention_kind_from(j.at("kind").get<std::string>());
    r.iterations = j.at("iterations").get<int>();
    r.percentile = j.at("percentile").get<double>();
    r.seed = j.at("seed").get<std::uint64_t>();
    return r;
}

ordered_json thresholds_to_json(const ImportanceThresholds& t) {
    return {{"moderate", t.moderate}, {"strong", t.strong}};
}

ImportanceThresholds thresholds_from_json(const ordered_json& j) {
    return {j.at("moderate").get<double>(), j.at("strong").get<double>()};
}

ordered_json doubles_to_json(const std::vector<double>& v) {
    ordered_json arr = ordered_json::array();
    for (double x : v) arr.push_back(nan_to_null(x));
    return arr;
}

std::vector<double> doubles_from_json(const ordered_json& arr) {
    std::vector<double> v;
    for (const auto& x : arr) v.push_back(number_or_nan(x));
    return v;
}

ordered_json parse_json_file(const std::string& path, const char* what) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "' for reading");
    try {
        return ordered_json::parse(in);
    } catch (const std::exception& e) {
        throw std::runtime_error(std::string(what) + " '" + path + "': " + e.what());
    }
}

void check_schema_version(const ordered_json& j, const std::string& path) {
    if (!j.contains("schema_version") || !j["schema_version"].is_number_integer() ||
        j["schema_version"].get<int>() != kSchemaVersion)
        throw std::runtime_error("'" + path + "': unsupported or missing schema_version "
                                 "(expected " + std::to_string(kSchemaVersion) + ")");
}

}  // namespace

FeatureTable read_feature_csv(const std::string& path, const CsvReadOptions& options,
                              CsvReadReport* report) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "' for reading");

    std::string line;
    if (!std::getline(in, line))
        throw std::runtime_error("'" + path + "': empty file, expected a header row");
    std::vector<std::string> header = split_line(line);

    long label_at = -1, group_at = -1;
    std::vector<std::size_t> feature_cols;
    FeatureTable table;
    for (std::size_t c = 0; c < header.size(); ++c) {
        if (!options.label_column.empty() && header[c] == options.label_column) {
            if (label_at >= 0)
                throw std::runtime_error("'" + path + "': duplicate label column '" +
                                         options.label_column + "'");
            label_at = static_cast<long>(c);
        } else if (!options.group_column.empty() && header[c] == options.group_column) {
            if (group_at >= 0)
                throw std::runtime_error("'" + path + "': duplicate group column '" +
                                         options.group_column + "'");
            group_at = static_cast<long>(c);
        } else {
            if (header[c].empty())
                throw std::runtime_error("'" + path + "': empty column name in header");
            feature_cols.push_back(c);
            table.feature_names.push_back(header[c]);
        }
    }
    for (std::size_t a = 0; a < table.feature_names.size(); ++a)
        for (std::size_t b = a + 1; b < table.feature_names.size(); ++b)
            if (table.feature_names[a] == table.feature_names[b])
                throw std::runtime_error("'" + path + "': duplicate column '" +
                                         table.feature_names[a] + "' in header");
    if (options.require_label && label_at < 0)
        throw std::runtime_error("'" + path + "': label column '" + options.label_column +
                                 "' not found");
    if (!options.group_column.empty() && group_at < 0)
        throw std::runtime_error("'" + path + "': group column '" + options.group_column +
                                 "' not found");
    if (feature_cols.empty())
        throw std::runtime_error("'" + path + "': no feature columns besides label/group");

    table.label_column = label_at >= 0 ? options.label_column : "";
    table.group_column = group_at >= 0 ? options.group_column : "";

    std::vector<double> values;          // row-major feature buffer
    std::vector<std::string> raw_labels;
    std::size_t kept = 0;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;  // ignore blank lines (e.g. trailing newline)
        std::vector<std::string> cells = split_line(line);
        if (cells.size() != header.size())
            throw std::runtime_error("'" + path + "' line " + std::to_string(line_no) + ": has " +
                                     std::to_string(cells.size()) + " cells, header has " +
                                     std::to_string(header.size()));

        std::vector<double> row(feature_cols.size());
        std::string bad_cell;
        for (std::size_t f = 0; f < feature_cols.size(); ++f) {
            const std::string& cell = cells[feature_cols[f]];
            if (!parse_double(cell, row[f])) {
                bad_cell = table.feature_names[f];
                break;
            }
        }
        if (bad_cell.empty() && label_at >= 0 && cells[static_cast<std::size_t>(label_at)].empty())
            bad_cell = options.label_column;
        if (bad_cell.empty() && group_at >= 0 && cells[static_cast<std::size_t>(group_at)].empty())
            bad_cell = options.group_column;

        if (!bad_cell.empty()) {
            if (options.drop_missing) {
                if (report) ++report->rows_dropped;
                continue;
            }
            throw std::runtime_error("'" + path + "' line " + std::to_string(line_no) +
                                     ": missing or non-numeric value in column '" + bad_cell +
                                     "' (use --drop-missing to skip such rows)");
        }

        values.insert(values.end(), row.begin(), row.end());
        if (label_at >= 0) raw_labels.push_back(cells[static_cast<std::size_t>(label_at)]);
        if (group_at >= 0) table.groups.push_back(cells[static_cast<std::size_t>(group_at)]);
        ++kept;
    }
    if (kept == 0) throw std::runtime_error("'" + path + "': no data rows");

    table.features = Matrix(kept, feature_cols.size());
    table.features.data() = std::move(values);

    if (label_at >= 0) {
        std::vector<std::string> distinct;
        for (const auto& v : raw_labels)
            if (std::find(distinct.begin(), distinct.end(), v) == distinct.end())
                distinct.push_back(v);
        if (distinct.size() != 2) {
            std::string listing;
            for (const auto& v : distinct) listing += (listing.empty() ? "'" : ", '") + v + "'";
            throw std::runtime_error("'" + path + "': label column '" + options.label_column +
                                     "' must have exactly two distinct values, found " +
                                     std::to_string(distinct.size()) + " (" + listing + ")");
        }
        std::string reference, comparison;
        if (!options.reference_label.empty()) {
            if (options.reference_label != distinct[0] && options.reference_label != distinct[1])
                throw std::runtime_error("'" + path + "': reference label '" +
                                         options.reference_label + "' does not occur; labels are '" +
                                         distinct[0] + "' and '" + distinct[1] + "'");
            reference = options.reference_label;
        } else {
            reference = std::min(distinct[0], distinct[1]);
        }
        comparison = distinct[0] == reference ? distinct[1] : distinct[0];
        table.coding = {reference, comparison};
        table.labels.reserve(raw_labels.size());
        for (const auto& v : raw_labels) table.labels.push_back(v == reference ? 0 : 1);
    }
    return table;
}

void write_feature_csv(const std::string& path, const FeatureTable& table) {
    std::ofstream out = open_for_write(path);
    for (std::size_t j = 0; j < table.feature_names.size(); ++j) {
        if (j) out << ',';
        out << table.feature_names[j];
    }
    bool with_label = !table.label_column.empty() && table.labels.size() == table.n_rows();
    if (with_label) out << ',' << table.label_column;
    if (table.has_groups()) out << ',' << table.group_column;
    out << '\n';
    for (std::size_t i = 0; i < table.n_rows(); ++i) {
        for (std::size_t j = 0; j < table.n_features(); ++j) {
            if (j) out << ',';
            out << format_double(table.features(i, j));
        }
        if (with_label)
            out << ',' << (table.labels[i] ? table.coding.comparison : table.coding.reference);
        if (table.has_groups()) out << ',' << table.groups[i];
        out << '\n';
    }
    if (!out) throw std::runtime_error("failed while writing '" + path + "'");
}

namespace {

ordered_json group_to_json(const GroupFit& g) {
    ordered_json coeffs = ordered_json::array();
    for (std::size_t j = 0; j < g.importance.variables.size(); ++j) {
        coeffs.push_back({{"variable", g.importance.variables[j]},
                          {"z_prime", nan_to_null(g.importance.coefficients[j])},
                          {"band", band_name(g.bands[j])}});
    }
    ordered_json logistic = {{"coefficients", doubles_to_json(g.logistic.coefficients)},
                             {"standard_errors", doubles_to_json(g.logistic.standard_errors)},
                             {"z", doubles_to_json(g.logistic.z_statistics)},
                             {"deviance", g.logistic.deviance},
                             {"iterations", g.logistic.iterations},
                             {"converged", g.logistic.converged},
                             {"separation_warning", g.logistic.separation_warning}};
    ordered_json components = ordered_json::array();
    for (std::size_t j = 0; j < g.pca.components.rows(); ++j) {
        ordered_json row = ordered_json::array();
        for (std::size_t k = 0; k < g.pca.n_retained; ++k) row.push_back(g.pca.components(j, k));
        components.push_back(row);
    }
    ordered_json out = {{"id", g.id},
                        {"n_rows", g.n_rows},
                        {"n_retained", g.pca.n_retained},
                        {"eigenvalues", doubles_to_json(g.pca.eigenvalues)},
                        {"coefficients", coeffs},
                        {"logistic", logistic},
                        {"model",
                         {{"means", doubles_to_json(g.pca.standardization.means)},
                          {"sds", doubles_to_json(g.pca.standardization.sds)},
                          {"components", components}}}};
    if (!g.pca.retention_thresholds.empty())
        out["retention_thresholds"] = doubles_to_json(g.pca.retention_thresholds);
    return out;
}

GroupFit group_from_json(const ordered_json& j, bool adjust) {
    GroupFit g;
    g.id = j.at("id").get<std::string>();
    g.n_rows = j.at("n_rows").get<std::size_t>();
    g.pca.n_retained = j.at("n_retained").get<std::size_t>();
    g.pca.eigenvalues = doubles_from_json(j.at("eigenvalues"));
    if (j.contains("retention_thresholds"))
        g.pca.retention_thresholds = doubles_from_json(j["retention_thresholds"]);

    const ordered_json& model = j.at("model");
    g.pca.standardization.means = doubles_from_json(model.at("means"));
    g.pca.standardization.sds = doubles_from_json(model.at("sds"));
    const ordered_json& comp = model.at("components");
    std::size_t p = comp.size();
    std::size_t k = g.pca.n_retained;
    g.pca.components = Matrix(p, k);
    g.pca.loadings = Matrix(p, k);
    for (std::size_t row = 0; row < p; ++row) {
        if (comp[row].size() != k)
            throw std::runtime_error("components row " + std::to_string(row) +
                                     " does not have n_retained entries");
        for (std::size_t c = 0; c < k; ++c) {
            g.pca.components(row, c) = comp[row][c].get<double>();
            g.pca.loadings(row, c) = g.pca.components(row, c) * std::sqrt(g.pca.eigenvalues[c]);
        }
    }

    const ordered_json& logistic = j.at("logistic");
    g.logistic.coefficients = doubles_from_json(logistic.at("coefficients"));
    g.logistic.standard_errors = doubles_from_json(logistic.at("standard_errors"));
    g.logistic.z_statistics = doubles_from_json(logistic.at("z"));
    g.logistic.deviance = logistic.at("deviance").get<double>();
    g.logistic.iterations = logistic.at("iterations").get<int>();
    g.logistic.converged = logistic.at("converged").get<bool>();
    g.logistic.separation_warning = logistic.at("separation_warning").get<bool>();

    g.importance.adjusted = adjust;
    g.importance.n_components = k;
    for (const auto& c : j.at("coefficients")) {
        g.importance.variables.push_back(c.at("variable").get<std::string>());
        g.importance.coefficients.push_back(number_or_nan(c.at("z_prime")));
        g.bands.push_back(band_from_name(c.at("band").get<std::string>()));
    }
    g.importance.component_z.resize(k);
    for (std::size_t i = 0; i < k; ++i) {
        double z = g.logistic.z_statistics[i + 1];
        g.importance.component_z[i] = adjust ? adjust_z(z, k) : z;
    }
    return g;
}

}  // namespace

void write_fit_json(const std::string& path, const FitDocument& doc, bool with_timestamp) {
    const GroupedResult& r = doc.result;
    ordered_json j;
    j["schema_version"] = kSchemaVersion;
    if (with_timestamp) j["generated_at"] = iso_utc_now();
    j["config"] = {{"retention", retention_to_json(doc.retention)},
                   {"adjust", doc.adjust},
                   {"thresholds", thresholds_to_json(doc.thresholds)}};
    j["label_coding"] = {{"reference", doc.coding.reference},
                         {"comparison", doc.coding.comparison}};
    j["variables"] = r.variables;

    ordered_json groups = ordered_json::array();
    for (const GroupFit& g : r.groups) groups.push_back(group_to_json(g));
    j["groups"] = groups;

    ordered_json order = ordered_json::array();
    ordered_json bands = ordered_json::array();
    for (std::size_t idx : r.display_order) order.push_back(r.variables[idx]);
    for (ImportanceBand b : r.bands) bands.push_back(band_name(b));
    j["aggregate"] = {{"mean", doubles_to_json(r.mean_coefficients)},
                      {"mean_abs", doubles_to_json(r.mean_abs_coefficients)},
                      {"order", order},
                      {"bands", bands}};

    ordered_json warnings = ordered_json::array();
    for (const CancellationWarning& w : r.warnings) {
        warnings.push_back({{"group", w.group},
                            {"variable", w.variable},
                            {"component_positive", w.component_positive},
                            {"component_negative", w.component_negative},
                            {"cancelled", w.cancelled},
                            {"coefficient", w.coefficient}});
    }
    j["diagnostics"] = {{"cancellation_warnings", warnings}};

    std::ofstream out = open_for_write(path);
    out << j.dump(2) << '\n';
    if (!out) throw std::runtime_error("failed while writing '" + path + "'");
}

FitDocument read_fit_json(const std::string& path) {
    ordered_json j = parse_json_file(path, "results file");
    check_schema_version(j, path);

    FitDocument doc;
    const ordered_json& config = j.at("config");
    doc.retention = retention_from_json(config.at("retention"));
    doc.adjust = config.at("adjust").get<bool>();
    doc.thresholds = thresholds_from_json(config.at("thresholds"));
    doc.coding = {j.at("label_coding").at("reference").get<std::string>(),
                  j.at("label_coding").at("comparison").get<std::string>()};

    GroupedResult& r = doc.result;
    r.adjusted = doc.adjust;
    r.thresholds = doc.thresholds;
    r.variables = j.at("variables").get<std::vector<std::string>>();
    for (const auto& g : j.at("groups")) r.groups.push_back(group_from_json(g, doc.adjust));

    const ordered_json& agg = j.at("aggregate");
    r.mean_coefficients = doubles_from_json(agg.at("mean"));
    r.mean_abs_coefficients = doubles_from_json(agg.at("mean_abs"));
    for (const auto& name : agg.at("order")) {
        auto it = std::find(r.variables.begin(), r.variables.end(), name.get<std::string>());
        if (it == r.variables.end())
            throw std::runtime_error("'" + path + "': aggregate order mentions unknown variable '" +
                                     name.get<std::string>() + "'");
        r.display_order.push_back(static_cast<std::size_t>(it - r.variables.begin()));
    }
    for (const auto& b : agg.at("bands"))
        r.bands.push_back(band_from_name(b.get<std::string>()));

    for (const auto& w : j.at("diagnostics").at("cancellation_warnings")) {
        CancellationWarning cw;
        cw.group = w.at("group").get<std::string>();
        cw.variable = w.at("variable").get<std::string>();
        cw.component_positive = w.at("component_positive").get<std::size_t>();
        cw.component_negative = w.at("component_negative").get<std::size_t>();
        cw.cancelled = w.at("cancelled").get<double>();
        cw.coefficient = w.at("coefficient").get<double>();
        r.warnings.push_back(cw);
    }
    return doc;
}

void write_coefficient_csv(const std::string& path, const GroupedResult& result) {
    std::ofstream out = open_for_write(path);
    out << "scope,variable,coefficient,band\n";
    for (std::size_t pos = 0; pos < result.display_order.size(); ++pos) {
        std::size_t j = result.display_order[pos];
        out << "mean," << result.variables[j] << ',' << format_double(result.mean_coefficients[j])
            << ',' << band_name(result.bands[j]) << '\n';
    }
    for (const GroupFit& g : result.groups) {
        for (std::size_t pos = 0; pos < result.display_order.size(); ++pos) {
            std::size_t j = result.display_order[pos];
            out << g.id << ',' << result.variables[j] << ','
                << format_double(g.importance.coefficients[j]) << ',' << band_name(g.bands[j])
                << '\n';
        }
    }
    if (!out) throw std::runtime_error("failed while writing '" + path + "'");
}

namespace {

ordered_json summary_to_json(const ValidationSummary& s) {
    return {{"accuracy_mean", s.accuracy_mean},
            {"accuracy_sd", s.accuracy_sd},
            {"mean_chi_squared", s.mean_chi_squared},
            {"calibration_pass_fraction", s.calibration_pass_fraction}};
}

}  // namespace

void write_validation_json(const std::string& path, const ValidationReport& report,
                           const ValidationReport* other, const WelchResult* welch,
                           bool with_timestamp) {
    ordered_json j;
    j["schema_version"] = kSchemaVersion;
    if (with_timestamp) j["generated_at"] = iso_utc_now();
    j["config"] = {{"retention", retention_to_json(report.config.retention)},
                   {"adjust", report.config.adjust},
                   {"thresholds", thresholds_to_json(report.config.thresholds)},
                   {"split",
                    {{"train_fraction", report.config.split.train_fraction},
                     {"repeats", report.config.split.repeats},
                     {"seed", report.config.split.seed}}}};

    ordered_json repeats = ordered_json::array();
    for (const RepeatRecord& r : report.repeats) {
        ordered_json groups = ordered_json::array();
        for (const RepeatGroupRecord& g : r.groups) {
            groups.push_back({{"id", g.id},
                              {"hl",
                               {{"chi_squared", g.hl.chi_squared},
                                {"df", g.hl.df},
                                {"p_value", g.hl.p_value},
                                {"bins", g.hl.bins},
                                {"merged", g.hl.merged}}},
                              {"accuracy", g.accuracy},
                              {"n_train", g.n_train},
                              {"n_test", g.n_test}});
        }
        repeats.push_back({{"repeat", r.repeat},
                           {"selected", r.selected},
                           {"groups", groups},
                           {"mean_chi_squared", r.mean_chi_squared},
                           {"p_value", r.p_value},
                           {"overall_accuracy", r.overall_accuracy}});
    }
    j["repeats"] = repeats;
    j["summary"] = summary_to_json(report.summary);

    if (other != nullptr && welch != nullptr) {
        j["comparison"] = {{"adjust", other->config.adjust},
                           {"summary", summary_to_json(other->summary)},
                           {"welch",
                            {{"t", welch->t}, {"df", welch->df}, {"p_value", welch->p_value}}}};
    }

    std::ofstream out = open_for_write(path);
    out << j.dump(2) << '\n';
    if (!out) throw std::runtime_error("failed while writing '" + path + "'");
}

GeneratorSpec read_generator_spec_json(const std::string& path) {
    ordered_json j = parse_json_file(path, "generator spec");
    GeneratorSpec spec = default_generator_spec();
    if (j.contains("n_groups")) spec.n_groups = j["n_groups"].get<std::size_t>();
    if (j.contains("n_rows")) spec.n_rows = j["n_rows"].get<std::size_t>();
    if (j.contains("noise_sd")) spec.noise_sd = j["noise_sd"].get<double>();
    if (j.contains("seed")) spec.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("effects")) spec.effects = j["effects"].get<std::vector<double>>();

    if (j.contains("loading_pattern")) {
        const ordered_json& rows = j["loading_pattern"];
        if (rows.empty() || rows[0].empty())
            throw std::runtime_error("'" + path + "': loading_pattern must be a nonempty matrix");
        Matrix pattern(rows.size(), rows[0].size());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != pattern.cols())
                throw std::runtime_error("'" + path + "': ragged loading_pattern");
            for (std::size_t k = 0; k < pattern.cols(); ++k)
                pattern(i, k) = rows[i][k].get<double>();
        }
        spec.loading_pattern = pattern;
    } else if (j.contains("blocks")) {
        auto blocks = j["blocks"].get<std::vector<std::size_t>>();
        std::size_t n_features = 0;
        for (std::size_t b : blocks) n_features += b;
        if (j.contains("n_features")) n_features = j["n_features"].get<std::size_t>();
        spec.loading_pattern = block_loading_pattern(n_features, blocks);
    }
    if (spec.effects.size() != spec.loading_pattern.cols())
        throw std::runtime_error("'" + path + "': effects count (" +
                                 std::to_string(spec.effects.size()) +
                                 ") does not match latent count (" +
                                 std::to_string(spec.loading_pattern.cols()) + ")");
    return spec;
}

void write_truth_json(const std::string& path, const GeneratedData& data,
                      const GeneratorSpec& spec, bool with_timestamp) {
    ordered_json pattern = ordered_json::array();
    for (std::size_t i = 0; i < spec.loading_pattern.rows(); ++i) {
        ordered_json row = ordered_json::array();
        for (std::size_t k = 0; k < spec.loading_pattern.cols(); ++k)
            row.push_back(spec.loading_pattern(i, k));
        pattern.push_back(row);
    }
    ordered_json j;
    j["schema_version"] = kSchemaVersion;
    if (with_timestamp) j["generated_at"] = iso_utc_now();
    j["config"] = {{"n_groups", spec.n_groups}, {"n_rows", spec.n_rows},
                   {"noise_sd", spec.noise_sd}, {"seed", spec.seed},
                   {"effects", spec.effects},   {"loading_pattern", pattern}};
    j["variables"] = data.table.feature_names;
    j["weight"] = doubles_to_json(data.truth.weight);
    j["sign"] = data.truth.sign;

    std::ofstream out = open_for_write(path);
    out << j.dump(2) << '\n';
    if (!out) throw std::runtime_error("failed while writing '" + path + "'");
}

void write_predictions_csv(const std::string& path, const std::vector<PredictionRow>& rows,
                           bool with_group) {
    std::ofstream out = open_for_write(path);
    if (with_group) out << "group,";
    out << "probability,label\n";
    for (const PredictionRow& r : rows) {
        if (with_group) out << r.group << ',';
        out << format_double(r.probability) << ',' << r.label << '\n';
    }
    if (!out) throw std::runtime_error("failed while writing '" + path + "'");
}

}  // namespace pcvir

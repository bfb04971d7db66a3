#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "pcvir/io.hpp"
#include "pcvir/pcvir.hpp"
#include "pcvir/synthdata.hpp"

using namespace pcvir;

namespace {

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& name) {
        path = std::string(std::getenv("TMPDIR") ? std::getenv("TMPDIR") : "/tmp") + "/" + name;
    }
    ~TempFile() { std::remove(path.c_str()); }
};

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    out << text;
}

std::string read_text(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("format_double round-trips exactly and stays short") {
    CHECK(format_double(0.1) == "0.1");
    CHECK(format_double(-3.0) == "-3");
    CHECK(format_double(1e300) == "1e+300");
    double v = 0.1 + 0.2;  // 0.30000000000000004
    double back = std::stod(format_double(v));
    CHECK(back == v);
}

TEST_CASE("feature csv round-trips bitwise") {
    GeneratorSpec spec = default_generator_spec();
    spec.n_groups = 2;
    spec.n_rows = 40;
    FeatureTable table = generate(spec).table;

    TempFile f("pcvir_io_roundtrip.csv");
    write_feature_csv(f.path, table);

    CsvReadOptions opts;
    opts.group_column = "group";
    FeatureTable back = read_feature_csv(f.path, opts);
    REQUIRE(back.n_rows() == table.n_rows());
    REQUIRE(back.feature_names == table.feature_names);
    CHECK(back.labels == table.labels);
    CHECK(back.groups == table.groups);
    CHECK(back.coding.reference == "0");
    CHECK(back.coding.comparison == "1");
    for (std::size_t i = 0; i < table.n_rows(); ++i)
        for (std::size_t j = 0; j < table.n_features(); ++j)
            CHECK(back.features(i, j) == table.features(i, j));
}

TEST_CASE("label coding defaults to the lexicographically smaller value") {
    TempFile f("pcvir_io_coding.csv");
    write_text(f.path, "x,label\n1.5,case\n2.5,control\n0.5,case\n");
    FeatureTable t = read_feature_csv(f.path);
    CHECK(t.coding.reference == "case");
    CHECK(t.coding.comparison == "control");
    CHECK(t.labels == std::vector<int>{0, 1, 0});

    CsvReadOptions opts;
    opts.reference_label = "control";
    FeatureTable flipped = read_feature_csv(f.path, opts);
    CHECK(flipped.coding.reference == "control");
    CHECK(flipped.labels == std::vector<int>{1, 0, 1});

    CsvReadOptions wrong;
    wrong.reference_label = "treated";
    CHECK_THROWS_WITH_AS(read_feature_csv(f.path, wrong),
                         doctest::Contains("reference label 'treated' does not occur"),
                         std::runtime_error);
}

TEST_CASE("csv errors carry line numbers and column names") {
    TempFile f("pcvir_io_errors.csv");

    write_text(f.path, "a,b,label\n1,2,0\n1,oops,1\n3,4,0\n5,6,1\n");
    CHECK_THROWS_WITH_AS(read_feature_csv(f.path),
                         doctest::Contains("line 3: missing or non-numeric value in column 'b'"),
                         std::runtime_error);
    CsvReadOptions drop;
    drop.drop_missing = true;
    CsvReadReport report;
    FeatureTable t = read_feature_csv(f.path, drop, &report);
    CHECK(t.n_rows() == 3);
    CHECK(report.rows_dropped == 1);

    write_text(f.path, "a,b,label\n1,2\n");
    CHECK_THROWS_WITH_AS(read_feature_csv(f.path), doctest::Contains("line 2"), std::runtime_error);

    write_text(f.path, "a,b,label\n1,2,0\n3,4,1\n5,6,2\n");
    CHECK_THROWS_WITH_AS(read_feature_csv(f.path),
                         doctest::Contains("exactly two distinct values"), std::runtime_error);
    CHECK_THROWS_WITH_AS(read_feature_csv(f.path), doctest::Contains("'0', '1', '2'"),
                         std::runtime_error);

    write_text(f.path, "a,a,label\n1,2,0\n3,4,1\n");
    CHECK_THROWS_WITH_AS(read_feature_csv(f.path), doctest::Contains("duplicate column 'a'"),
                         std::runtime_error);

    write_text(f.path, "a,b\n1,2\n");
    CHECK_THROWS_WITH_AS(read_feature_csv(f.path), doctest::Contains("label column 'label' not found"),
                         std::runtime_error);

    write_text(f.path, "label\n0\n1\n");
    CHECK_THROWS_WITH_AS(read_feature_csv(f.path), doctest::Contains("no feature columns"),
                         std::runtime_error);

    write_text(f.path, "a,b,label\n1,1e999,0\n2,3,1\n");
    CHECK_THROWS_WITH_AS(read_feature_csv(f.path), doctest::Contains("column 'b'"),
                         std::runtime_error);
}

TEST_CASE("blank lines are ignored, labels optional for prediction input") {
    TempFile f("pcvir_io_blank.csv");
    write_text(f.path, "a,b\n1,2\n\n3,4\n\n");
    CsvReadOptions opts;
    opts.require_label = false;
    FeatureTable t = read_feature_csv(f.path, opts);
    CHECK(t.n_rows() == 2);
    CHECK(t.labels.empty());
    CHECK(t.feature_names == std::vector<std::string>{"a", "b"});

    // a label column present anyway is consumed, not treated as a feature
    write_text(f.path, "a,label,b\n1,0,2\n3,1,4\n");
    FeatureTable t2 = read_feature_csv(f.path, opts);
    CHECK(t2.feature_names == std::vector<std::string>{"a", "b"});
    CHECK(t2.labels.size() == 2);
}

TEST_CASE("fit document round-trips through json") {
    GeneratorSpec spec = default_generator_spec();
    spec.n_groups = 2;
    spec.n_rows = 150;
    FeatureTable table = generate(spec).table;

    FitDocument doc;
    doc.retention = {RetentionKind::kaiser};
    doc.adjust = true;
    doc.coding = table.coding;
    doc.result = fit_grouped(table, doc.retention, doc.adjust, doc.thresholds);

    TempFile f("pcvir_io_fit.json");
    write_fit_json(f.path, doc, false);
    FitDocument back = read_fit_json(f.path);

    CHECK(back.adjust == doc.adjust);
    CHECK(back.retention.kind == doc.retention.kind);
    CHECK(back.thresholds.moderate == doc.thresholds.moderate);
    CHECK(back.thresholds.strong == doc.thresholds.strong);
    CHECK(back.coding.reference == "0");
    CHECK(back.coding.comparison == "1");
    CHECK(back.result.variables == doc.result.variables);
    CHECK(back.result.display_order == doc.result.display_order);
    CHECK(back.result.bands == doc.result.bands);
    REQUIRE(back.result.groups.size() == 2);
    for (std::size_t g = 0; g < 2; ++g) {
        const GroupFit& a = doc.result.groups[g];
        const GroupFit& b = back.result.groups[g];
        CHECK(b.id == a.id);
        CHECK(b.n_rows == a.n_rows);
        CHECK(b.pca.n_retained == a.pca.n_retained);
        // numbers survive exactly thanks to shortest-round-trip formatting
        for (std::size_t j = 0; j < 20; ++j) {
            CHECK(b.importance.coefficients[j] == a.importance.coefficients[j]);
            CHECK(b.pca.standardization.means[j] == a.pca.standardization.means[j]);
            CHECK(b.pca.standardization.sds[j] == a.pca.standardization.sds[j]);
            for (std::size_t k = 0; k < a.pca.n_retained; ++k)
                CHECK(b.pca.components(j, k) == a.pca.components(j, k));
        }
        for (std::size_t k = 0; k <= a.pca.n_retained; ++k) {
            CHECK(b.logistic.coefficients[k] == a.logistic.coefficients[k]);
            CHECK(b.logistic.z_statistics[k] == a.logistic.z_statistics[k]);
        }
        CHECK(b.importance.component_z == a.importance.component_z);
        CHECK(b.bands == a.bands);
    }
    CHECK(back.result.mean_coefficients == doc.result.mean_coefficients);

    // timestamps are the only nondeterminism: without them reruns are identical
    TempFile f2("pcvir_io_fit2.json");
    write_fit_json(f2.path, doc, false);
    CHECK(read_text(f.path) == read_text(f2.path));
    CHECK(read_text(f.path).find("generated_at") == std::string::npos);
    write_fit_json(f2.path, doc, true);
    CHECK(read_text(f2.path).find("generated_at") != std::string::npos);
}

TEST_CASE("fit json rejects the wrong schema version") {
    TempFile f("pcvir_io_schema.json");
    write_text(f.path, "{\"schema_version\": 2}\n");
    CHECK_THROWS_WITH_AS(read_fit_json(f.path), doctest::Contains("schema_version"),
                         std::runtime_error);
    write_text(f.path, "{\"groups\": []}\n");
    CHECK_THROWS_AS(read_fit_json(f.path), std::runtime_error);
    write_text(f.path, "not json");
    CHECK_THROWS_AS(read_fit_json(f.path), std::runtime_error);
}

TEST_CASE("coefficient csv lists means first, in display order") {
    GroupedResult r;
    r.variables = {"a", "b"};
    r.mean_coefficients = {0.5, -2.0};
    r.mean_abs_coefficients = {0.5, 2.0};
    r.display_order = {1, 0};
    r.bands = {ImportanceBand::none, ImportanceBand::strong};
    GroupFit g;
    g.id = "g1";
    g.importance.variables = r.variables;
    g.importance.coefficients = {0.5, -2.0};
    g.bands = r.bands;
    r.groups.push_back(g);

    TempFile f("pcvir_io_coef.csv");
    write_coefficient_csv(f.path, r);
    CHECK(read_text(f.path) ==
          "scope,variable,coefficient,band\n"
          "mean,b,-2,strong\n"
          "mean,a,0.5,none\n"
          "g1,b,-2,strong\n"
          "g1,a,0.5,none\n");
}

TEST_CASE("validation json includes the comparison section only when present") {
    ValidationReport report;
    report.config.split.repeats = 2;
    RepeatRecord rec;
    rec.repeat = 0;
    rec.selected = {"a"};
    RepeatGroupRecord gr;
    gr.id = "g1";
    gr.hl.chi_squared = 4.2;
    gr.hl.df = 8;
    gr.hl.p_value = 0.83;
    gr.hl.bins = 10;
    gr.accuracy = 0.7;
    gr.n_train = 80;
    gr.n_test = 20;
    rec.groups.push_back(gr);
    rec.mean_chi_squared = 4.2;
    rec.p_value = 0.83;
    rec.overall_accuracy = 0.7;
    report.repeats.push_back(rec);
    report.summary.accuracy_mean = 0.7;
    report.summary.calibration_pass_fraction = 1.0;

    TempFile f("pcvir_io_val.json");
    write_validation_json(f.path, report, nullptr, nullptr, false);
    std::string text = read_text(f.path);
    CHECK(text.find("\"comparison\"") == std::string::npos);
    CHECK(text.find("\"overall_accuracy\": 0.7") != std::string::npos);
    CHECK(text.find("\"selected\"") != std::string::npos);

    ValidationReport other = report;
    other.config.adjust = true;
    WelchResult welch;
    welch.t = 1.2;
    welch.df = 30.5;
    welch.p_value = 0.24;
    write_validation_json(f.path, report, &other, &welch, false);
    text = read_text(f.path);
    CHECK(text.find("\"comparison\"") != std::string::npos);
    CHECK(text.find("\"welch\"") != std::string::npos);
    CHECK(text.find("\"p_value\": 0.24") != std::string::npos);
}

TEST_CASE("generator spec json: blocks shorthand and explicit matrix") {
    TempFile f("pcvir_io_spec.json");

    write_text(f.path, R"({"n_groups": 3, "n_rows": 100, "blocks": [2, 2],
                           "effects": [1.0, -0.5], "noise_sd": 0.4, "seed": 9})");
    GeneratorSpec spec = read_generator_spec_json(f.path);
    CHECK(spec.n_groups == 3);
    CHECK(spec.n_rows == 100);
    CHECK(spec.noise_sd == 0.4);
    CHECK(spec.seed == 9);
    REQUIRE(spec.loading_pattern.rows() == 4);
    REQUIRE(spec.loading_pattern.cols() == 2);
    CHECK(spec.loading_pattern(0, 0) == 1.0);
    CHECK(spec.loading_pattern(3, 1) == 1.0);
    CHECK(spec.loading_pattern(3, 0) == 0.0);

    // extra pure-noise features via n_features
    write_text(f.path, R"({"blocks": [2], "n_features": 4, "effects": [1.0]})");
    GeneratorSpec padded = read_generator_spec_json(f.path);
    REQUIRE(padded.loading_pattern.rows() == 4);
    CHECK(padded.loading_pattern(2, 0) == 0.0);
    CHECK(padded.loading_pattern(3, 0) == 0.0);

    // an explicit matrix wins over blocks
    write_text(f.path, R"({"loading_pattern": [[1.0], [0.25]], "blocks": [7],
                           "effects": [2.0]})");
    GeneratorSpec explicit_spec = read_generator_spec_json(f.path);
    REQUIRE(explicit_spec.loading_pattern.rows() == 2);
    CHECK(explicit_spec.loading_pattern(1, 0) == 0.25);

    // defaults fill everything that is not given
    write_text(f.path, "{}");
    GeneratorSpec defaults = read_generator_spec_json(f.path);
    CHECK(defaults.n_groups == 6);
    CHECK(defaults.loading_pattern.rows() == 20);
    CHECK(defaults.effects == std::vector<double>{2.0, 1.0, 0.0});

    write_text(f.path, R"({"blocks": [2, 2], "effects": [1.0]})");
    CHECK_THROWS_WITH_AS(read_generator_spec_json(f.path), doctest::Contains("effects count"),
                         std::runtime_error);

    write_text(f.path, R"({"loading_pattern": [[1.0], [1.0, 2.0]], "effects": [1.0]})");
    CHECK_THROWS_WITH_AS(read_generator_spec_json(f.path), doctest::Contains("ragged"),
                         std::runtime_error);
}

TEST_CASE("truth json records the planted weights") {
    GeneratorSpec spec = default_generator_spec();
    spec.n_groups = 1;
    spec.n_rows = 5;
    GeneratedData data = generate(spec);
    TempFile f("pcvir_io_truth.json");
    write_truth_json(f.path, data, spec, false);
    std::string text = read_text(f.path);
    CHECK(text.find("\"schema_version\": 1") != std::string::npos);
    CHECK(text.find("\"f01\"") != std::string::npos);
    CHECK(text.find("\"weight\"") != std::string::npos);
    CHECK(text.find("\"sign\"") != std::string::npos);
    CHECK(text.find("\"noise_sd\": 0.7") != std::string::npos);
}

TEST_CASE("prediction csv format") {
    TempFile f("pcvir_io_pred.csv");
    std::vector<PredictionRow> rows = {{"g1", 0.25, "no"}, {"g2", 0.75, "yes"}};
    write_predictions_csv(f.path, rows, true);
    CHECK(read_text(f.path) == "group,probability,label\ng1,0.25,no\ng2,0.75,yes\n");
    write_predictions_csv(f.path, rows, false);
    CHECK(read_text(f.path) == "probability,label\n0.25,no\n0.75,yes\n");
}

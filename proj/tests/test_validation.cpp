#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <set>

#include "pcvir/rng.hpp"
#include "pcvir/stats.hpp"
#include "pcvir/synthdata.hpp"
#include "pcvir/validation.hpp"

using namespace pcvir;

namespace {

FeatureTable small_table(std::size_t groups, std::size_t rows, std::uint64_t seed = 1) {
    GeneratorSpec spec = default_generator_spec();
    spec.n_groups = groups;
    spec.n_rows = rows;
    spec.seed = seed;
    return generate(spec).table;
}

// Standardize columns and fit the plain logistic model, the long way around.
LogisticFit direct_standardized_fit(const FeatureTable& t) {
    Matrix z(t.n_rows(), t.n_features());
    for (std::size_t j = 0; j < t.n_features(); ++j) {
        std::vector<double> col = t.features.column(j);
        double m = mean(col), s = std_dev(col);
        for (std::size_t i = 0; i < t.n_rows(); ++i) z(i, j) = (t.features(i, j) - m) / s;
    }
    return fit_logistic(z, t.labels);
}

std::vector<double> direct_probs(const FeatureTable& t, const LogisticFit& fit) {
    Matrix z(t.n_rows(), t.n_features());
    for (std::size_t j = 0; j < t.n_features(); ++j) {
        std::vector<double> col = t.features.column(j);
        double m = mean(col), s = std_dev(col);
        for (std::size_t i = 0; i < t.n_rows(); ++i) z(i, j) = (t.features(i, j) - m) / s;
    }
    return predict_probability(fit, z);
}

}  // namespace

TEST_CASE("split is a deterministic partition with floor-sized training sides") {
    FeatureTable t = small_table(2, 100);
    SplitSpec spec;  // 0.8 / 20 repeats / seed 1
    SplitResult a = split_table(t, spec, 0);
    SplitResult b = split_table(t, spec, 0);

    CHECK(a.train.n_rows() == 160);
    CHECK(a.test.n_rows() == 40);
    CHECK(a.train.rows_in_group("g1").size() == 80);
    CHECK(a.test.rows_in_group("g2").size() == 20);

    // bitwise identical across calls
    for (std::size_t i = 0; i < a.train.n_rows(); ++i)
        for (std::size_t j = 0; j < 20; ++j)
            CHECK(a.train.features(i, j) == b.train.features(i, j));
    CHECK(a.train.labels == b.train.labels);

    // different repeat index, different draw
    SplitResult c = split_table(t, spec, 1);
    bool any_diff = false;
    for (std::size_t i = 0; i < c.train.n_rows() && !any_diff; ++i)
        if (c.train.features(i, 0) != a.train.features(i, 0)) any_diff = true;
    CHECK(any_diff);

    // train and test together hold each feature value exactly once
    std::multiset<double> seen;
    for (std::size_t i = 0; i < a.train.n_rows(); ++i) seen.insert(a.train.features(i, 0));
    for (std::size_t i = 0; i < a.test.n_rows(); ++i) seen.insert(a.test.features(i, 0));
    std::multiset<double> original;
    for (std::size_t i = 0; i < t.n_rows(); ++i) original.insert(t.features(i, 0));
    CHECK(seen == original);
}

TEST_CASE("split sizes use the floor of the train fraction") {
    FeatureTable t99 = small_table(1, 99);
    SplitResult r = split_table(t99, {}, 0);
    CHECK(r.train.n_rows() == 79);  // floor(0.8 * 99)
    CHECK(r.test.n_rows() == 20);

    FeatureTable t5 = small_table(1, 5);
    SplitResult r5 = split_table(t5, {0.5, 20, 1}, 0);
    CHECK(r5.train.n_rows() == 2);
    CHECK(r5.test.n_rows() == 3);
}

TEST_CASE("split rejects degenerate setups") {
    FeatureTable t = small_table(1, 40);
    CHECK_THROWS_AS(split_table(t, {0.0, 20, 1}, 0), std::invalid_argument);
    CHECK_THROWS_AS(split_table(t, {1.0, 20, 1}, 0), std::invalid_argument);
    CHECK_THROWS_AS(split_table(t, {}, -1), std::invalid_argument);

    FeatureTable tiny = small_table(1, 1);
    CHECK_THROWS_WITH_AS(split_table(tiny, {}, 0), doctest::Contains("too small to split"),
                         std::runtime_error);

    // a single-class group can never produce a two-class training side
    FeatureTable flat = small_table(1, 50);
    for (auto& v : flat.labels) v = 1;
    CHECK_THROWS_WITH_AS(split_table(flat, {}, 0), doctest::Contains("after 10 redraws"),
                         std::runtime_error);
}

TEST_CASE("split redraws until the training side has both classes") {
    // one positive in the whole group: any usable split must put it in train
    FeatureTable t = small_table(1, 50);
    for (auto& v : t.labels) v = 0;
    t.labels[17] = 1;
    for (int rep = 0; rep < 20; ++rep) {
        SplitResult r = split_table(t, {}, rep);
        int train_pos = 0;
        for (int v : r.train.labels) train_pos += v;
        CHECK(train_pos == 1);
    }
}

TEST_CASE("variable selection applies the moderate threshold to group means") {
    FeatureTable t = small_table(2, 250);

    ImportanceThresholds tiny{1e-9, 1e-9};
    std::vector<std::string> all = select_variables(t, {}, false, tiny);
    CHECK(all == t.feature_names);  // everything clears a vanishing threshold, in table order

    ImportanceThresholds huge{1e9, 1e9};
    CHECK_THROWS_WITH_AS(select_variables(t, {}, false, huge),
                         doctest::Contains("no variable reached the moderate importance threshold"),
                         std::runtime_error);

    std::vector<std::string> usual = select_variables(t, {}, false, {});
    CHECK(!usual.empty());
    // results come back in table order
    std::size_t last = 0;
    for (const auto& name : usual) {
        std::size_t idx = t.column_index(name);
        if (&name != &usual.front()) CHECK(idx > last);
        last = idx;
    }
    // the strong block dominates: its first feature must be selected
    CHECK(std::find(usual.begin(), usual.end(), "f01") != usual.end());
}

TEST_CASE("single-variable refit equals a plain standardized logistic fit") {
    FeatureTable t = small_table(1, 200);
    std::vector<GroupModel> models = refit_all_components(t, {"f03"});
    REQUIRE(models.size() == 1);
    CHECK(models[0].pca.n_retained == 1);

    FeatureTable sub = t.subset_columns({2});
    LogisticFit direct = direct_standardized_fit(sub);
    std::vector<double> expect = direct_probs(sub, direct);

    Matrix scores = project(models[0].pca, sub.features, 1);
    std::vector<double> got = predict_probability(models[0].logistic, scores);
    for (std::size_t i = 0; i < got.size(); ++i)
        CHECK(got[i] == doctest::Approx(expect[i]).scale(1.0).epsilon(1e-8));
}

TEST_CASE("all-components refit is a reparameterized standardized logistic model") {
    GeneratorSpec spec;
    spec.loading_pattern = block_loading_pattern(5, {3, 2});
    spec.effects = {1.5, 0.5};
    spec.n_groups = 1;
    spec.n_rows = 300;
    FeatureTable t = generate(spec).table;

    std::vector<GroupModel> models = refit_all_components(t, t.feature_names);
    REQUIRE(models.size() == 1);
    CHECK(models[0].pca.n_retained == 5);

    LogisticFit direct = direct_standardized_fit(t);
    std::vector<double> expect = direct_probs(t, direct);
    Matrix scores = project(models[0].pca, t.features, 5);
    std::vector<double> got = predict_probability(models[0].logistic, scores);
    for (std::size_t i = 0; i < got.size(); ++i)
        CHECK(got[i] == doctest::Approx(expect[i]).scale(1.0).epsilon(1e-6));
    CHECK(models[0].logistic.deviance == doctest::Approx(direct.deviance).epsilon(1e-8));
}

TEST_CASE("refit validates its inputs") {
    FeatureTable t = small_table(1, 50);
    CHECK_THROWS_AS(refit_all_components(t, {}), std::invalid_argument);
    CHECK_THROWS_AS(refit_all_components(t, {"nope"}), std::invalid_argument);
}

TEST_CASE("hosmer-lemeshow is zero for exactly matching counts") {
    // ten probability levels, twenty observations each, observed positives
    // equal to the expected count at every level
    std::vector<double> probs;
    std::vector<int> labels;
    for (int level = 0; level < 10; ++level) {
        double p = 0.05 + 0.1 * level;
        int positives = static_cast<int>(std::lround(20 * p));
        for (int c = 0; c < 20; ++c) {
            probs.push_back(p);
            labels.push_back(c < positives ? 1 : 0);
        }
    }
    HLResult r = hosmer_lemeshow(probs, labels);
    CHECK(r.bins == 10);
    CHECK(r.df == 8.0);
    CHECK(!r.merged);
    CHECK(r.chi_squared < 1e-20);
    CHECK(r.p_value == 1.0);
}

TEST_CASE("hosmer-lemeshow hand-computed value with boundary ties") {
    // three levels; the quantile boundaries land exactly on 0.2 and 0.5, and
    // equal probabilities stay in the lower bin, so no bin ends up empty
    std::vector<double> probs = {0.2, 0.2, 0.2, 0.2, 0.5, 0.5, 0.5, 0.8, 0.8, 0.8};
    std::vector<int> labels = {1, 0, 0, 0, 1, 1, 0, 1, 1, 0};
    HLResult r = hosmer_lemeshow(probs, labels, 3);
    CHECK(r.bins == 3);
    CHECK(r.df == 1.0);
    CHECK(!r.merged);
    // (1-0.8)^2/0.8 + (3-3.2)^2/3.2 + (2-1.5)^2/1.5 + (1-1.5)^2/1.5
    //   + (2-2.4)^2/2.4 + (1-0.6)^2/0.6
    CHECK(r.chi_squared == doctest::Approx(0.7291666666666666).epsilon(1e-9));
}

TEST_CASE("hosmer-lemeshow flags merged degenerate bins") {
    std::vector<double> probs;
    std::vector<int> labels;
    for (int c = 0; c < 4; ++c) { probs.push_back(0.0); labels.push_back(0); }
    for (int c = 0; c < 4; ++c) { probs.push_back(0.3); labels.push_back(c < 1 ? 1 : 0); }
    for (int c = 0; c < 4; ++c) { probs.push_back(0.6); labels.push_back(c < 3 ? 1 : 0); }
    for (int c = 0; c < 4; ++c) { probs.push_back(0.9); labels.push_back(1); }
    HLResult r = hosmer_lemeshow(probs, labels, 4);
    CHECK(r.merged);
    CHECK(r.bins == 3);
    CHECK(r.df == 1.0);
    CHECK(r.chi_squared >= 0.0);
    CHECK(r.p_value <= 1.0);
}

TEST_CASE("hosmer-lemeshow rejects unusable input") {
    std::vector<double> p(20, 0.5);
    std::vector<int> y(20, 0);
    for (int i = 0; i < 10; ++i) y[i] = 1;
    CHECK_THROWS_WITH_AS(hosmer_lemeshow(p, y), doctest::Contains("fewer than 3 usable"),
                         std::runtime_error);

    CHECK_THROWS_AS(hosmer_lemeshow({0.5}, {0, 1}), std::invalid_argument);
    CHECK_THROWS_AS(hosmer_lemeshow({0.5, 0.5}, {0, 1}, 2), std::invalid_argument);
    CHECK_THROWS_AS(hosmer_lemeshow({0.5, 0.5}, {0, 1}, 10), std::invalid_argument);
}

TEST_CASE("hosmer-lemeshow accepts a well calibrated model") {
    Rng rng(99);
    std::vector<double> probs;
    std::vector<int> labels;
    for (int i = 0; i < 2000; ++i) {
        double p = 0.05 + 0.9 * rng.uniform01();
        probs.push_back(p);
        labels.push_back(rng.uniform01() < p ? 1 : 0);
    }
    HLResult good = hosmer_lemeshow(probs, labels);
    CHECK(good.p_value > 0.01);

    // systematically miscalibrated probabilities fail loudly
    std::vector<double> skewed;
    for (double p : probs) skewed.push_back(p * p);  // too pessimistic
    HLResult bad = hosmer_lemeshow(skewed, labels);
    CHECK(bad.p_value < 1e-6);
    CHECK(bad.chi_squared > good.chi_squared);
}

TEST_CASE("run_validation produces consistent records") {
    FeatureTable t = small_table(2, 300, 3);
    ValidationConfig config;
    config.split.repeats = 3;
    ValidationReport report = run_validation(t, config);

    REQUIRE(report.repeats.size() == 3);
    std::vector<double> accs, chis;
    std::size_t passed = 0;
    for (const RepeatRecord& rec : report.repeats) {
        CHECK(!rec.selected.empty());
        REQUIRE(rec.groups.size() == 2);
        double chi_sum = 0.0, acc_sum = 0.0;
        for (const RepeatGroupRecord& g : rec.groups) {
            CHECK(g.n_train == 240);
            CHECK(g.n_test == 60);
            CHECK(g.accuracy >= 0.0);
            CHECK(g.accuracy <= 1.0);
            CHECK(g.hl.bins >= 3);
            chi_sum += g.hl.chi_squared;
            acc_sum += g.accuracy;
        }
        CHECK(rec.mean_chi_squared == doctest::Approx(chi_sum / 2.0).epsilon(1e-12));
        CHECK(rec.overall_accuracy == doctest::Approx(acc_sum / 2.0).epsilon(1e-12));
        CHECK(rec.p_value == doctest::Approx(chi_squared_sf(rec.mean_chi_squared, 8.0).value()));
        accs.push_back(rec.overall_accuracy);
        chis.push_back(rec.mean_chi_squared);
        if (rec.p_value > 0.05) ++passed;
    }
    CHECK(report.summary.accuracy_mean == doctest::Approx(mean(accs)).epsilon(1e-12));
    CHECK(report.summary.accuracy_sd == doctest::Approx(std_dev(accs)).epsilon(1e-12));
    CHECK(report.summary.mean_chi_squared == doctest::Approx(mean(chis)).epsilon(1e-12));
    CHECK(report.summary.calibration_pass_fraction == doctest::Approx(passed / 3.0));

    // the learned model actually predicts: held-out accuracy beats coin flips
    CHECK(report.summary.accuracy_mean > 0.55);

    // rerunning reproduces the report exactly
    ValidationReport again = run_validation(t, config);
    CHECK(again.summary.accuracy_mean == report.summary.accuracy_mean);
    CHECK(again.summary.mean_chi_squared == report.summary.mean_chi_squared);
    for (std::size_t r = 0; r < 3; ++r)
        CHECK(again.repeats[r].selected == report.repeats[r].selected);
}

TEST_CASE("comparing a report with itself gives a null result") {
    ValidationReport a;
    for (int r = 0; r < 5; ++r) {
        RepeatRecord rec;
        rec.overall_accuracy = 0.7 + 0.01 * r;
        a.repeats.push_back(rec);
    }
    WelchResult w = compare_configurations(a, a);
    CHECK(w.t == 0.0);
    CHECK(w.p_value == 1.0);
}

TEST_CASE("clearly separated accuracies give a small p-value") {
    ValidationReport a, b;
    double va[5] = {0.90, 0.91, 0.89, 0.90, 0.905};
    double vb[5] = {0.60, 0.61, 0.59, 0.60, 0.595};
    for (int r = 0; r < 5; ++r) {
        RepeatRecord ra, rb;
        ra.overall_accuracy = va[r];
        rb.overall_accuracy = vb[r];
        a.repeats.push_back(ra);
        b.repeats.push_back(rb);
    }
    WelchResult w = compare_configurations(a, b);
    CHECK(w.t > 10.0);
    CHECK(w.p_value < 1e-4);
    WelchResult back = compare_configurations(b, a);
    CHECK(back.t == doctest::Approx(-w.t));
}

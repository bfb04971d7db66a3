#include "pcvir/validation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "pcvir/rng.hpp"
#include "pcvir/stats.hpp"

namespace pcvir {

SplitResult split_table(const FeatureTable& table, const SplitSpec& spec, int repeat_index) {
    if (!(spec.train_fraction > 0.0 && spec.train_fraction < 1.0))
        throw std::invalid_argument("train fraction must be inside (0, 1)");
    if (repeat_index < 0) throw std::invalid_argument("repeat index must be nonnegative");

    std::vector<std::size_t> train_rows, test_rows;
    std::vector<std::string> ids = table.group_ids();
    for (std::size_t g = 0; g < ids.size(); ++g) {
        std::vector<std::size_t> rows = table.rows_in_group(ids[g]);
        std::size_t n_train = static_cast<std::size_t>(
            std::floor(spec.train_fraction * static_cast<double>(rows.size())));
        if (n_train == 0 || n_train == rows.size())
            throw std::runtime_error("group '" + ids[g] +
                                     "' is too small to split at this train fraction");

        Rng rng = Rng::stream(spec.seed + static_cast<std::uint64_t>(repeat_index), g);
        std::vector<std::size_t> shuffled = rows;
        bool ok = false;
        for (int attempt = 0; attempt < 10 && !ok; ++attempt) {
            rng.shuffle(shuffled);
            bool any0 = false, any1 = false;
            for (std::size_t i = 0; i < n_train; ++i)
                (table.labels[shuffled[i]] ? any1 : any0) = true;
            ok = any0 && any1;
        }
        if (!ok)
            throw std::runtime_error("group '" + ids[g] +
                                     "': training side kept one label class after 10 redraws; "
                                     "adjust the train fraction");

        std::vector<std::size_t> tr(shuffled.begin(), shuffled.begin() + n_train);
        std::vector<std::size_t> te(shuffled.begin() + n_train, shuffled.end());
        std::sort(tr.begin(), tr.end());
        std::sort(te.begin(), te.end());
        train_rows.insert(train_rows.end(), tr.begin(), tr.end());
        test_rows.insert(test_rows.end(), te.begin(), te.end());
    }
    return {table.subset_rows(train_rows), table.subset_rows(test_rows)};
}

std::vector<std::string> select_variables(const FeatureTable& table,
                                          const RetentionStrategy& retention, bool adjust,
                                          const ImportanceThresholds& thresholds) {
    GroupedResult fit = fit_grouped(table, retention, adjust, thresholds);
    std::vector<std::string> selected;
    for (std::size_t j = 0; j < fit.variables.size(); ++j)
        if (std::abs(fit.mean_coefficients[j]) >= thresholds.moderate)
            selected.push_back(fit.variables[j]);
    if (selected.empty())
        throw std::runtime_error("no variable reached the moderate importance threshold; "
                                 "nothing to validate");
    return selected;
}

std::vector<GroupModel> refit_all_components(const FeatureTable& table,
                                             const std::vector<std::string>& variables) {
    if (variables.empty()) throw std::invalid_argument("refit: no variables given");
    std::vector<std::size_t> cols;
    for (const auto& v : variables) cols.push_back(table.column_index(v));
    FeatureTable sub = table.subset_columns(cols);

    RetentionStrategy keep_all;
    keep_all.kind = RetentionKind::all_components;

    std::vector<GroupModel> models;
    for (const std::string& id : sub.group_ids()) {
        FeatureTable part = sub.subset_rows(sub.rows_in_group(id));
        GroupModel gm;
        gm.id = id;
        try {
            gm.pca = fit_pca(part.features, keep_all, sub.feature_names);
            Matrix scores = project(gm.pca, part.features, gm.pca.n_retained);
            gm.logistic = fit_logistic(scores, part.labels);
            if (!gm.logistic.converged)
                throw std::runtime_error("logistic regression did not converge");
        } catch (const std::exception& e) {
            throw std::runtime_error("group '" + id + "': " + e.what());
        }
        models.push_back(std::move(gm));
    }
    return models;
}

HLResult hosmer_lemeshow(const std::vector<double>& probabilities,
                         const std::vector<int>& labels, int bins) {
    if (probabilities.size() != labels.size())
        throw std::invalid_argument("hosmer_lemeshow: size mismatch");
    if (bins < 3) throw std::invalid_argument("hosmer_lemeshow: need at least 3 bins");
    const std::size_t n = probabilities.size();
    if (n < static_cast<std::size_t>(bins))
        throw std::invalid_argument("hosmer_lemeshow: fewer observations than bins");

    std::vector<double> sorted = probabilities;
    std::sort(sorted.begin(), sorted.end());
    std::vector<double> boundary(static_cast<std::size_t>(bins) - 1);
    for (int b = 0; b + 1 < bins; ++b)
        boundary[static_cast<std::size_t>(b)] =
            quantile_sorted(sorted, static_cast<double>(b + 1) / bins);

    struct Bin {
        double count = 0.0, obs1 = 0.0, exp1 = 0.0;
    };
    std::vector<Bin> raw(static_cast<std::size_t>(bins));
    for (std::size_t i = 0; i < n; ++i) {
        double p = probabilities[i];
        std::size_t b = 0;
        while (b < boundary.size() && p > boundary[b]) ++b;  // ties fall to the lower bin
        raw[b].count += 1.0;
        raw[b].obs1 += labels[i];
        raw[b].exp1 += p;
    }

    // Drop empty bins; merge bins with a zero expected count (possible only
    // when probabilities of exactly 0 or 1 are fed in) into their neighbour.
    HLResult out;
    std::vector<Bin> final_bins;
    Bin carry;
    bool carrying = false;
    for (const Bin& bin : raw) {
        if (bin.count == 0.0) continue;
        Bin merged = bin;
        if (carrying) {
            merged.count += carry.count;
            merged.obs1 += carry.obs1;
            merged.exp1 += carry.exp1;
            carrying = false;
            out.merged = true;
        }
        double exp0 = merged.count - merged.exp1;
        if (merged.exp1 <= 0.0 || exp0 <= 0.0) {
            if (!final_bins.empty()) {
                final_bins.back().count += merged.count;
                final_bins.back().obs1 += merged.obs1;
                final_bins.back().exp1 += merged.exp1;
                out.merged = true;
            } else {
                carry = merged;
                carrying = true;
            }
            continue;
        }
        final_bins.push_back(merged);
    }
    if (carrying && !final_bins.empty()) {
        final_bins.front().count += carry.count;
        final_bins.front().obs1 += carry.obs1;
        final_bins.front().exp1 += carry.exp1;
        out.merged = true;
    }
    if (static_cast<int>(final_bins.size()) != bins) out.merged = true;

    if (final_bins.size() < 3)
        throw std::runtime_error("hosmer_lemeshow: fewer than 3 usable probability bins; "
                                 "probabilities are too concentrated");

    double chi = 0.0;
    for (const Bin& bin : final_bins) {
        double exp0 = bin.count - bin.exp1;
        if (bin.exp1 <= 0.0 || exp0 <= 0.0)
            throw std::runtime_error("hosmer_lemeshow: degenerate probability bin after merging");
        double obs0 = bin.count - bin.obs1;
        chi += (bin.obs1 - bin.exp1) * (bin.obs1 - bin.exp1) / bin.exp1 +
               (obs0 - exp0) * (obs0 - exp0) / exp0;
    }
    out.chi_squared = chi;
    out.bins = static_cast<int>(final_bins.size());
    out.df = static_cast<double>(out.bins - 2);
    out.p_value = chi_squared_sf(chi, out.df).value();
    return out;
}

namespace {

double hit_rate(const std::vector<double>& probs, const std::vector<int>& labels) {
    std::size_t hits = 0;
    for (std::size_t i = 0; i < probs.size(); ++i) {
        int predicted = probs[i] >= 0.5 ? 1 : 0;  // exact 0.5 predicts the comparison class
        if (predicted == labels[i]) ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(probs.size());
}

const GroupModel& model_for(const std::vector<GroupModel>& models, const std::string& id) {
    for (const GroupModel& m : models)
        if (m.id == id) return m;
    throw std::runtime_error("no model for group '" + id + "'");
}

}  // namespace

ValidationReport run_validation(const FeatureTable& table, const ValidationConfig& config) {
    if (config.split.repeats < 1)
        throw std::invalid_argument("run_validation: need at least one repeat");

    ValidationReport report;
    report.config = config;

    std::vector<double> accuracies;
    std::vector<double> mean_chis;
    std::size_t calibrated = 0;

    for (int r = 0; r < config.split.repeats; ++r) {
        SplitResult split = split_table(table, config.split, r);

        RepeatRecord rec;
        rec.repeat = r;
        rec.selected = select_variables(split.train, config.retention, config.adjust,
                                        config.thresholds);

        // Calibration: refit on the complete data, Hosmer-Lemeshow per group.
        std::vector<GroupModel> full_models = refit_all_components(table, rec.selected);
        // Held-out accuracy: refit on the training side only.
        std::vector<GroupModel> train_models = refit_all_components(split.train, rec.selected);

        std::vector<std::size_t> cols;
        for (const auto& v : rec.selected) cols.push_back(table.column_index(v));
        FeatureTable full_sub = table.subset_columns(cols);
        FeatureTable test_sub = split.test.subset_columns(cols);

        double chi_sum = 0.0;
        double acc_sum = 0.0;
        std::size_t acc_groups = 0;
        for (const std::string& id : table.group_ids()) {
            RepeatGroupRecord g;
            g.id = id;

            const GroupModel& fm = model_for(full_models, id);
            FeatureTable full_part = full_sub.subset_rows(full_sub.rows_in_group(id));
            Matrix scores = project(fm.pca, full_part.features, fm.pca.n_retained);
            g.hl = hosmer_lemeshow(predict_probability(fm.logistic, scores), full_part.labels);
            chi_sum += g.hl.chi_squared;

            const GroupModel& tm = model_for(train_models, id);
            FeatureTable test_part = test_sub.subset_rows(test_sub.rows_in_group(id));
            g.n_test = test_part.n_rows();
            g.n_train = table.rows_in_group(id).size() - g.n_test;
            if (test_part.n_rows() > 0) {
                Matrix test_scores = project(tm.pca, test_part.features, tm.pca.n_retained);
                g.accuracy = hit_rate(predict_probability(tm.logistic, test_scores),
                                      test_part.labels);
                acc_sum += g.accuracy;
                ++acc_groups;
            }
            rec.groups.push_back(std::move(g));
        }

        rec.mean_chi_squared = chi_sum / static_cast<double>(rec.groups.size());
        // The averaged statistic is referred to the nominal df for a
        // ten-decile test, bins - 2.
        rec.p_value = chi_squared_sf(rec.mean_chi_squared, 8.0).value();
        if (acc_groups == 0) throw std::runtime_error("run_validation: every test side is empty");
        rec.overall_accuracy = acc_sum / static_cast<double>(acc_groups);

        accuracies.push_back(rec.overall_accuracy);
        mean_chis.push_back(rec.mean_chi_squared);
        if (rec.p_value > 0.05) ++calibrated;
        report.repeats.push_back(std::move(rec));
    }

    report.summary.accuracy_mean = mean(accuracies);
    report.summary.accuracy_sd = accuracies.size() > 1 ? std_dev(accuracies) : 0.0;
    report.summary.mean_chi_squared = mean(mean_chis);
    report.summary.calibration_pass_fraction =
        static_cast<double>(calibrated) / static_cast<double>(report.repeats.size());
    return report;
}

WelchResult compare_configurations(const ValidationReport& a, const ValidationReport& b) {
    std::vector<double> acc_a, acc_b;
    for (const auto& r : a.repeats) acc_a.push_back(r.overall_accuracy);
    for (const auto& r : b.repeats) acc_b.push_back(r.overall_accuracy);
    return welch_t_test(acc_a, acc_b);
}

}  // namespace pcvir

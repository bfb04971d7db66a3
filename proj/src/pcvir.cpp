#include "pcvir/pcvir.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "pcvir/distributions.hpp"

namespace pcvir {

const char* band_name(ImportanceBand band) {
    switch (band) {
        case ImportanceBand::strong: return "strong";
        case ImportanceBand::moderate: return "moderate";
        case ImportanceBand::none: return "none";
    }
    return "none";
}

ImportanceBand band_from_name(const std::string& name) {
    if (name == "strong") return ImportanceBand::strong;
    if (name == "moderate") return ImportanceBand::moderate;
    if (name == "none") return ImportanceBand::none;
    throw std::invalid_argument("unknown importance band '" + name + "'");
}

double adjust_z(double z, std::size_t n_comparisons) {
    if (n_comparisons == 0)
        throw std::invalid_argument("adjust_z: comparison count must be at least 1");
    if (n_comparisons == 1 || z == 0.0) return z;

    // Work with the upper-tail probability q = n * P(Z > |z|); the adjusted
    // two-tailed p-value is 2q. Mapping q back through the quantile keeps
    // full precision where 1 - p would round to 1.
    double q = static_cast<double>(n_comparisons) * normal_cdf(-std::abs(z)).value();
    if (q >= 0.5) return 0.0;  // adjusted p-value saturates at 1
    double magnitude;
    if (q == 0.0) {
        // Tail probability underflowed; first-order expansion of the quantile.
        magnitude = std::sqrt(z * z - 2.0 * std::log(static_cast<double>(n_comparisons)));
    } else {
        magnitude = -normal_quantile(q);
    }
    return std::copysign(magnitude, z);
}

VariableImportance reconstruct(const PcaModel& pca, const LogisticFit& fit, bool adjust,
                               const std::vector<std::string>& names) {
    const std::size_t p = pca.components.rows();
    const std::size_t k = pca.n_retained;
    if (fit.z_statistics.size() != k + 1)
        throw std::invalid_argument("reconstruct: fit has " +
                                    std::to_string(fit.z_statistics.size() ? fit.z_statistics.size() - 1 : 0) +
                                    " predictors, model retained " + std::to_string(k));
    if (!fit.converged)
        throw std::runtime_error("reconstruct: logistic fit did not converge");
    if (!names.empty() && names.size() != p)
        throw std::invalid_argument("reconstruct: name count does not match feature count");

    VariableImportance out;
    out.adjusted = adjust;
    out.n_components = k;
    out.variables = names;
    if (out.variables.empty()) {
        out.variables.resize(p);
        for (std::size_t j = 0; j < p; ++j) out.variables[j] = "column " + std::to_string(j);
    }

    out.component_z.resize(k);
    for (std::size_t i = 0; i < k; ++i) {
        double z = fit.z_statistics[i + 1];  // skip the intercept
        out.component_z[i] = adjust ? adjust_z(z, k) : z;
    }

    out.coefficients.assign(p, 0.0);
    for (std::size_t j = 0; j < p; ++j) {
        double sum = 0.0;
        for (std::size_t i = 0; i < k; ++i) sum += out.component_z[i] * pca.loadings(j, i);
        out.coefficients[j] = sum;
    }
    return out;
}

std::vector<ImportanceBand> classify(const std::vector<double>& coefficients,
                                     const ImportanceThresholds& thresholds) {
    if (!(thresholds.moderate > 0.0) || !(thresholds.strong >= thresholds.moderate))
        throw std::invalid_argument("classify: thresholds must satisfy 0 < moderate <= strong");
    std::vector<ImportanceBand> bands(coefficients.size(), ImportanceBand::none);
    for (std::size_t j = 0; j < coefficients.size(); ++j) {
        double a = std::abs(coefficients[j]);
        if (a >= thresholds.strong) bands[j] = ImportanceBand::strong;
        else if (a >= thresholds.moderate) bands[j] = ImportanceBand::moderate;
    }
    return bands;
}

namespace {

// Opposite-signed component contributions that mostly cancel make the
// reconstructed coefficient misleadingly small; flag them.
void collect_cancellation(const std::string& group, const PcaModel& pca,
                          const VariableImportance& imp,
                          std::vector<CancellationWarning>& sink) {
    const std::size_t k = imp.component_z.size();
    for (std::size_t j = 0; j < imp.variables.size(); ++j) {
        double pos = 0.0, neg = 0.0;
        std::size_t pos_at = 0, neg_at = 0;
        for (std::size_t i = 0; i < k; ++i) {
            double term = imp.component_z[i] * pca.loadings(j, i);
            if (term > pos) {
                pos = term;
                pos_at = i;
            }
            if (term < neg) {
                neg = term;
                neg_at = i;
            }
        }
        if (pos == 0.0 || neg == 0.0) continue;
        double cancelled = std::min(pos, -neg);
        if (cancelled > 0.5 * std::abs(imp.coefficients[j])) {
            CancellationWarning w;
            w.group = group;
            w.variable = imp.variables[j];
            w.component_positive = pos_at;
            w.component_negative = neg_at;
            w.cancelled = cancelled;
            w.coefficient = imp.coefficients[j];
            sink.push_back(w);
        }
    }
}

}  // namespace

GroupedResult fit_grouped(const FeatureTable& table, const RetentionStrategy& retention,
                          bool adjust, const ImportanceThresholds& thresholds) {
    if (table.n_rows() == 0) throw std::invalid_argument("fit_grouped: table is empty");
    const std::size_t p = table.n_features();

    GroupedResult result;
    result.variables = table.feature_names;
    result.adjusted = adjust;
    result.thresholds = thresholds;

    for (const std::string& id : table.group_ids()) {
        FeatureTable sub = table.subset_rows(table.rows_in_group(id));
        bool any0 = false, any1 = false;
        for (int v : sub.labels) (v ? any1 : any0) = true;
        if (!any0 || !any1)
            throw std::runtime_error("group '" + id + "' has only one label class");

        GroupFit gf;
        gf.id = id;
        gf.n_rows = sub.n_rows();
        try {
            gf.pca = fit_pca(sub.features, retention, table.feature_names);
            Matrix scores = project(gf.pca, sub.features, gf.pca.n_retained);
            gf.logistic = fit_logistic(scores, sub.labels);
            if (!gf.logistic.converged)
                throw std::runtime_error("logistic regression did not converge within 100 iterations");
            gf.importance = reconstruct(gf.pca, gf.logistic, adjust, table.feature_names);
        } catch (const std::exception& e) {
            throw std::runtime_error("group '" + id + "': " + e.what());
        }
        gf.bands = classify(gf.importance.coefficients, thresholds);
        collect_cancellation(id, gf.pca, gf.importance, result.warnings);
        result.groups.push_back(std::move(gf));
    }

    const double n_groups = static_cast<double>(result.groups.size());
    result.mean_coefficients.assign(p, 0.0);
    result.mean_abs_coefficients.assign(p, 0.0);
    for (const GroupFit& gf : result.groups) {
        for (std::size_t j = 0; j < p; ++j) {
            result.mean_coefficients[j] += gf.importance.coefficients[j] / n_groups;
            result.mean_abs_coefficients[j] += std::abs(gf.importance.coefficients[j]) / n_groups;
        }
    }
    result.display_order.resize(p);
    std::iota(result.display_order.begin(), result.display_order.end(), std::size_t{0});
    std::stable_sort(result.display_order.begin(), result.display_order.end(),
                     [&](std::size_t a, std::size_t b) {
                         return result.mean_abs_coefficients[a] > result.mean_abs_coefficients[b];
                     });
    result.bands = classify(result.mean_coefficients, thresholds);
    return result;
}

}  // namespace pcvir

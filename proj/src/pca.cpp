#include "pcvir/pca.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "pcvir/rng.hpp"
#include "pcvir/stats.hpp"

namespace pcvir {

namespace {

std::string column_label(const std::vector<std::string>& names, std::size_t j) {
    if (j < names.size()) return "feature '" + names[j] + "'";
    return "column " + std::to_string(j);
}

}  // namespace

Standardization standardization_params(const Matrix& data, const std::vector<std::string>& names) {
    const std::size_t n = data.rows();
    const std::size_t p = data.cols();
    if (n < 2) throw std::invalid_argument("standardization needs at least two rows");
    Standardization s;
    s.means.resize(p);
    s.sds.resize(p);
    for (std::size_t j = 0; j < p; ++j) {
        double sum = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double v = data(i, j);
            if (!std::isfinite(v))
                throw std::runtime_error(column_label(names, j) + " has a non-finite value");
            sum += v;
        }
        double m = sum / static_cast<double>(n);
        double ss = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double d = data(i, j) - m;
            ss += d * d;
        }
        double sd = std::sqrt(ss / static_cast<double>(n - 1));
        if (sd == 0.0)
            throw std::runtime_error(column_label(names, j) +
                                     " has zero variance; drop it before fitting");
        s.means[j] = m;
        s.sds[j] = sd;
    }
    return s;
}

Matrix correlation_matrix(const Matrix& data, const Standardization& s) {
    const std::size_t n = data.rows();
    const std::size_t p = data.cols();
    Matrix r(p, p);
    for (std::size_t a = 0; a < p; ++a) {
        r(a, a) = 1.0;
        for (std::size_t b = a + 1; b < p; ++b) {
            double sum = 0.0;
            for (std::size_t i = 0; i < n; ++i)
                sum += (data(i, a) - s.means[a]) * (data(i, b) - s.means[b]);
            double val = sum / (static_cast<double>(n - 1) * s.sds[a] * s.sds[b]);
            r(a, b) = val;
            r(b, a) = val;
        }
    }
    return r;
}

namespace {

// Fix eigenvector signs deterministically: the entry with the largest
// magnitude (lowest index on ties) is made positive.
void canonicalize_signs(Matrix& vectors) {
    for (std::size_t k = 0; k < vectors.cols(); ++k) {
        std::size_t arg = 0;
        double best = std::abs(vectors(0, k));
        for (std::size_t i = 1; i < vectors.rows(); ++i) {
            double m = std::abs(vectors(i, k));
            if (m > best) {
                best = m;
                arg = i;
            }
        }
        if (vectors(arg, k) < 0.0)
            for (std::size_t i = 0; i < vectors.rows(); ++i) vectors(i, k) = -vectors(i, k);
    }
}

std::vector<double> correlation_eigenvalues(const Matrix& data) {
    Standardization s = standardization_params(data);
    EigenDecomposition eig = eigen_symmetric(correlation_matrix(data, s));
    for (double& v : eig.values)
        if (v < 0.0) v = 0.0;
    return eig.values;
}

}  // namespace

std::vector<double> parallel_analysis_thresholds(std::size_t n_rows, std::size_t n_features,
                                                 int iterations, double percentile,
                                                 std::uint64_t seed) {
    if (n_rows < 2 || n_features == 0)
        throw std::invalid_argument("parallel analysis needs at least 2 rows and 1 feature");
    if (iterations < 1) throw std::invalid_argument("parallel analysis needs at least 1 iteration");
    if (!(percentile > 0.0 && percentile < 1.0))
        throw std::invalid_argument("parallel analysis percentile must be inside (0, 1)");

    // per_rank[r] collects the rank-r eigenvalue from every simulated table
    std::vector<std::vector<double>> per_rank(n_features,
                                              std::vector<double>(static_cast<std::size_t>(iterations)));
    for (int it = 0; it < iterations; ++it) {
        Rng rng = Rng::stream(seed, static_cast<std::uint64_t>(it));
        Matrix noise(n_rows, n_features);
        for (std::size_t i = 0; i < n_rows; ++i)
            for (std::size_t j = 0; j < n_features; ++j) noise(i, j) = rng.normal();
        std::vector<double> values = correlation_eigenvalues(noise);
        for (std::size_t r = 0; r < n_features; ++r)
            per_rank[r][static_cast<std::size_t>(it)] = values[r];
    }
    std::vector<double> thresholds(n_features);
    for (std::size_t r = 0; r < n_features; ++r)
        thresholds[r] = quantile(per_rank[r], percentile);
    return thresholds;
}

PcaModel fit_pca(const Matrix& data, const RetentionStrategy& retention,
                 const std::vector<std::string>& names) {
    const std::size_t p = data.cols();
    if (p == 0) throw std::invalid_argument("fit_pca: no feature columns");

    PcaModel model;
    model.standardization = standardization_params(data, names);
    EigenDecomposition eig = eigen_symmetric(correlation_matrix(data, model.standardization));
    // Correlation matrices are positive semidefinite; tiny negative
    // eigenvalues are rounding noise.
    for (double& v : eig.values)
        if (v < 0.0) v = 0.0;
    canonicalize_signs(eig.vectors);

    model.eigenvalues = eig.values;
    model.components = eig.vectors;
    model.loadings = Matrix(p, p);
    for (std::size_t j = 0; j < p; ++j)
        for (std::size_t k = 0; k < p; ++k)
            model.loadings(j, k) = eig.vectors(j, k) * std::sqrt(eig.values[k]);

    std::size_t kept = 0;
    switch (retention.kind) {
        case RetentionKind::kaiser:
            while (kept < p && model.eigenvalues[kept] >= 1.0) ++kept;
            break;
        case RetentionKind::parallel_analysis: {
            model.retention_thresholds =
                parallel_analysis_thresholds(data.rows(), p, retention.iterations,
                                             retention.percentile, retention.seed);
            while (kept < p && model.eigenvalues[kept] > model.retention_thresholds[kept]) ++kept;
            break;
        }
        case RetentionKind::all_components:
            kept = p;
            break;
    }
    if (kept == 0)
        throw std::runtime_error("no principal component met the retention rule; "
                                 "nothing to regress on");
    model.n_retained = kept;
    return model;
}

Matrix project(const PcaModel& model, const Matrix& data, std::size_t k) {
    const std::size_t p = model.components.rows();
    if (k == 0 || k > p)
        throw std::invalid_argument("project: component count out of range");
    if (data.cols() != p)
        throw std::invalid_argument("project: data has " + std::to_string(data.cols()) +
                                    " columns, model expects " + std::to_string(p));
    Matrix scores(data.rows(), k);
    for (std::size_t i = 0; i < data.rows(); ++i) {
        for (std::size_t c = 0; c < k; ++c) {
            double sum = 0.0;
            for (std::size_t j = 0; j < p; ++j) {
                double z = (data(i, j) - model.standardization.means[j]) /
                           model.standardization.sds[j];
                sum += z * model.components(j, c);
            }
            scores(i, c) = sum;
        }
    }
    return scores;
}

}  // namespace pcvir

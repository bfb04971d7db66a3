#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pcvir/linalg.hpp"

namespace pcvir {

enum class RetentionKind {
    kaiser,             // eigenvalue >= 1
    parallel_analysis,  // eigenvalue > simulated percentile at the same rank
    all_components,     // keep everything (used when refitting on selected variables)
};

struct RetentionStrategy {
    RetentionKind kind = RetentionKind::kaiser;
    int iterations = 100;      // parallel analysis only
    double percentile = 0.95;  // parallel analysis only
    std::uint64_t seed = 1;    // parallel analysis only
};

struct Standardization {
    std::vector<double> means;
    std::vector<double> sds;
};

// PCA of the correlation matrix. Columns of `components` are unit
// eigenvectors; loadings scale them by sqrt(eigenvalue), so loadings(j, k) is
// the correlation between feature j and component k.
struct PcaModel {
    std::vector<double> eigenvalues;  // all of them, descending
    Matrix components;                // p x p
    Matrix loadings;                  // p x p
    std::size_t n_retained = 0;
    Standardization standardization;
    std::vector<double> retention_thresholds;  // parallel analysis only, else empty
};

// Per-rank eigenvalue thresholds from PCA of random normal data of the same
// shape: the `percentile` quantile over `iterations` simulated tables.
std::vector<double> parallel_analysis_thresholds(std::size_t n_rows, std::size_t n_features,
                                                 int iterations, double percentile,
                                                 std::uint64_t seed);

// Column means and standard deviations (n - 1 denominator). Throws a named
// error for zero-variance or non-finite columns; `names` (when provided)
// makes those messages refer to the offending feature by name.
Standardization standardization_params(const Matrix& data,
                                       const std::vector<std::string>& names = {});

Matrix correlation_matrix(const Matrix& data, const Standardization& s);

PcaModel fit_pca(const Matrix& data, const RetentionStrategy& retention = {},
                 const std::vector<std::string>& names = {});

// Scores on the first k components. k must be between 1 and the total
// component count; data must have the same feature count the model was fit on.
Matrix project(const PcaModel& model, const Matrix& data, std::size_t k);

}  // namespace pcvir

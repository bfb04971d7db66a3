#pragma once

#include <string>
#include <vector>

#include "pcvir/linalg.hpp"

namespace pcvir {

struct LogisticFit {
    std::vector<double> coefficients;  // [0] is the intercept
    std::vector<double> standard_errors;
    std::vector<double> z_statistics;  // coefficient / standard error
    double deviance = 0.0;
    int iterations = 0;
    bool converged = false;
    bool separation_warning = false;
    std::vector<double> deviance_history;  // accepted deviance after each iteration
};

// Binary logistic regression by iteratively reweighted least squares with
// step halving. Converges when the deviance changes by less than 1e-8;
// gives up after 100 iterations. An intercept is always included, so an
// empty predictor matrix (zero columns) fits the intercept-only model.
LogisticFit fit_logistic(const Matrix& predictors, const std::vector<int>& labels);

// Fitted probabilities, clamped to [1e-15, 1 - 1e-15] so downstream
// log-likelihoods stay finite.
std::vector<double> predict_probability(const LogisticFit& fit, const Matrix& predictors);

struct PerVariableZ {
    std::vector<double> z;                 // NaN where the fit failed
    std::vector<std::string> messages;     // empty string where the fit was clean
};

// Wald z of each feature alone (standardized, own intercept). Failures are
// reported per feature instead of aborting the batch.
PerVariableZ per_variable_z(const Matrix& features, const std::vector<int>& labels,
                            const std::vector<std::string>& names = {});

}  // namespace pcvir

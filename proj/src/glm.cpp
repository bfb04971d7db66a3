#include "pcvir/glm.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "pcvir/stats.hpp"

namespace pcvir {

namespace {

constexpr double kProbClamp = 1e-15;
constexpr double kDevianceTol = 1e-8;
constexpr int kMaxIterations = 100;
constexpr int kMaxHalvings = 30;
constexpr double kSeparationCoef = 15.0;

double clamp_probability(double p) {
    if (p < kProbClamp) return kProbClamp;
    if (p > 1.0 - kProbClamp) return 1.0 - kProbClamp;
    return p;
}

double logistic(double eta) { return 1.0 / (1.0 + std::exp(-eta)); }

// eta_i = beta0 + x_i . beta
std::vector<double> linear_predictor(const Matrix& x, const std::vector<double>& beta) {
    std::vector<double> eta(x.rows(), beta[0]);
    for (std::size_t i = 0; i < x.rows(); ++i)
        for (std::size_t j = 0; j < x.cols(); ++j) eta[i] += x(i, j) * beta[j + 1];
    return eta;
}

double deviance_of(const std::vector<double>& eta, const std::vector<int>& y) {
    double ll = 0.0;
    for (std::size_t i = 0; i < eta.size(); ++i) {
        double p = clamp_probability(logistic(eta[i]));
        ll += y[i] ? std::log(p) : std::log(1.0 - p);
    }
    return -2.0 * ll;
}

}  // namespace

LogisticFit fit_logistic(const Matrix& predictors, const std::vector<int>& y) {
    const std::size_t n = predictors.rows() > 0 ? predictors.rows() : y.size();
    const std::size_t k = predictors.cols();
    if (predictors.rows() > 0 && predictors.rows() != y.size())
        throw std::invalid_argument("fit_logistic: row count does not match label count");
    if (n == 0) throw std::invalid_argument("fit_logistic: no observations");
    // An all-default matrix stands for the intercept-only model.
    Matrix x = predictors.rows() == n ? predictors : Matrix(n, k);

    bool any0 = false, any1 = false;
    for (int v : y) {
        if (v == 0) any0 = true;
        else if (v == 1) any1 = true;
        else throw std::invalid_argument("fit_logistic: labels must be 0 or 1");
    }
    if (!any0 || !any1)
        throw std::runtime_error("fit_logistic: labels are all one class; nothing to model");

    // Work with an explicit intercept column appended in front.
    Matrix design(n, k + 1);
    for (std::size_t i = 0; i < n; ++i) {
        design(i, 0) = 1.0;
        for (std::size_t j = 0; j < k; ++j) design(i, j + 1) = x(i, j);
    }

    LogisticFit fit;
    fit.coefficients.assign(k + 1, 0.0);
    std::vector<double> eta = linear_predictor(x, fit.coefficients);
    double dev = deviance_of(eta, y);

    for (int iter = 1; iter <= kMaxIterations; ++iter) {
        // Fisher information A = X' W X and score g = X' (y - p)
        std::vector<double> p(n), w(n);
        for (std::size_t i = 0; i < n; ++i) {
            p[i] = clamp_probability(logistic(eta[i]));
            w[i] = p[i] * (1.0 - p[i]);
        }
        Matrix info(k + 1, k + 1);
        std::vector<double> score(k + 1, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            double resid = static_cast<double>(y[i]) - p[i];
            for (std::size_t a = 0; a <= k; ++a) {
                double xa = design(i, a);
                score[a] += xa * resid;
                double wxa = w[i] * xa;
                for (std::size_t b = a; b <= k; ++b) info(a, b) += wxa * design(i, b);
            }
        }
        for (std::size_t a = 0; a <= k; ++a)
            for (std::size_t b = 0; b < a; ++b) info(a, b) = info(b, a);

        Matrix inv;
        try {
            inv = invert_spd(info);
        } catch (const std::exception&) {
            throw std::runtime_error(
                "fit_logistic: information matrix is singular at iteration " +
                std::to_string(iter) + "; predictors are collinear or degenerate");
        }

        std::vector<double> step(k + 1, 0.0);
        for (std::size_t a = 0; a <= k; ++a)
            for (std::size_t b = 0; b <= k; ++b) step[a] += inv(a, b) * score[b];

        // Step-halve until the deviance stops increasing.
        std::vector<double> candidate(k + 1);
        double new_dev = 0.0;
        double scale = 1.0;
        for (int h = 0; h <= kMaxHalvings; ++h) {
            for (std::size_t a = 0; a <= k; ++a)
                candidate[a] = fit.coefficients[a] + scale * step[a];
            eta = linear_predictor(x, candidate);
            new_dev = deviance_of(eta, y);
            if (new_dev <= dev || h == kMaxHalvings) break;
            scale *= 0.5;
        }

        fit.coefficients = candidate;
        fit.iterations = iter;
        fit.deviance_history.push_back(new_dev);
        double change = std::abs(dev - new_dev);
        dev = new_dev;
        if (change < kDevianceTol) {
            fit.converged = true;
            break;
        }
    }
    fit.deviance = dev;

    // Wald standard errors from the inverse information at the final estimate.
    std::vector<double> pfinal(n), wfinal(n);
    for (std::size_t i = 0; i < n; ++i) {
        pfinal[i] = clamp_probability(logistic(eta[i]));
        wfinal[i] = pfinal[i] * (1.0 - pfinal[i]);
    }
    Matrix info(k + 1, k + 1);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t a = 0; a <= k; ++a) {
            double wxa = wfinal[i] * design(i, a);
            for (std::size_t b = a; b <= k; ++b) info(a, b) += wxa * design(i, b);
        }
    }
    for (std::size_t a = 0; a <= k; ++a)
        for (std::size_t b = 0; b < a; ++b) info(a, b) = info(b, a);

    fit.standard_errors.assign(k + 1, std::numeric_limits<double>::quiet_NaN());
    fit.z_statistics.assign(k + 1, std::numeric_limits<double>::quiet_NaN());
    try {
        Matrix cov = invert_spd(info);
        for (std::size_t a = 0; a <= k; ++a) {
            fit.standard_errors[a] = std::sqrt(cov(a, a));
            fit.z_statistics[a] = fit.coefficients[a] / fit.standard_errors[a];
        }
    } catch (const std::exception&) {
        // Degenerate curvature at the optimum: keep the coefficients but flag it.
        fit.separation_warning = true;
    }

    for (double c : fit.coefficients)
        if (std::abs(c) > kSeparationCoef) fit.separation_warning = true;
    return fit;
}

std::vector<double> predict_probability(const LogisticFit& fit, const Matrix& x) {
    if (x.cols() + 1 != fit.coefficients.size())
        throw std::invalid_argument("predict_probability: predictor count does not match fit");
    std::vector<double> eta = linear_predictor(x, fit.coefficients);
    std::vector<double> out(eta.size());
    for (std::size_t i = 0; i < eta.size(); ++i) out[i] = clamp_probability(logistic(eta[i]));
    return out;
}

PerVariableZ per_variable_z(const Matrix& features, const std::vector<int>& labels,
                            const std::vector<std::string>& names) {
    const std::size_t p = features.cols();
    PerVariableZ out;
    out.z.assign(p, std::numeric_limits<double>::quiet_NaN());
    out.messages.assign(p, "");
    for (std::size_t j = 0; j < p; ++j) {
        std::string label = j < names.size() ? names[j] : ("column " + std::to_string(j));
        std::vector<double> col = features.column(j);
        double m = mean(col);
        double sd = std::sqrt(variance(col));
        if (sd == 0.0) {
            out.messages[j] = label + " is constant";
            continue;
        }
        Matrix single(features.rows(), 1);
        for (std::size_t i = 0; i < features.rows(); ++i) single(i, 0) = (col[i] - m) / sd;
        try {
            LogisticFit fit = fit_logistic(single, labels);
            if (!fit.converged) {
                out.messages[j] = label + ": logistic fit did not converge";
                continue;
            }
            if (fit.separation_warning)
                out.messages[j] = label + ": separation suspected; z is unreliable";
            out.z[j] = fit.z_statistics[1];
        } catch (const std::exception& e) {
            out.messages[j] = label + ": " + e.what();
        }
    }
    return out;
}

}  // namespace pcvir

#pragma once

#include <vector>

namespace pcvir {

// A probability. Construction clamps tiny floating-point excursions back into
// [0, 1] and rejects anything further out, so downstream code can rely on the
// range without re-checking.
class Probability {
public:
    Probability(double v);  // implicit by design: behaves like a checked double
    operator double() const { return value_; }
    double value() const { return value_; }

private:
    double value_;
};

double normal_pdf(double z);

// Standard normal CDF, evaluated through a rational approximation of erfc
// (Cody). Absolute error is far below 1e-12 everywhere.
Probability normal_cdf(double z);

// Inverse of normal_cdf: rational initial guess (Acklam) polished with one
// Newton step. Throws for p outside (0, 1); p of exactly 0 or 1 has no
// finite quantile.
double normal_quantile(double p);

// Upper tail of the chi-squared distribution with df > 0 degrees of freedom,
// through the regularized incomplete gamma function.
Probability chi_squared_sf(double x, double df);

// Upper tail of Student's t distribution with df > 0 (not necessarily
// integer), through the regularized incomplete beta function.
Probability student_t_sf(double t, double df);

struct WelchResult {
    double t = 0.0;
    double df = 0.0;
    double p_value = 1.0;  // two-sided
};

// Welch's unequal-variance t test. Needs at least two values per sample.
WelchResult welch_t_test(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace pcvir

#include "pcvir/distributions.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "pcvir/stats.hpp"

namespace pcvir {

Probability::Probability(double v) : value_(v) {
    if (!(v >= -1e-12 && v <= 1.0 + 1e-12))
        throw std::domain_error("probability out of range: " + std::to_string(v));
    if (value_ < 0.0) value_ = 0.0;
    if (value_ > 1.0) value_ = 1.0;
}

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kSqrt1_2 = 0.70710678118654752440;   // 1/sqrt(2)
constexpr double kInvSqrt2Pi = 0.39894228040143267794; // 1/sqrt(2*pi)

// erfc by rational approximation (W. J. Cody, 1969). Three ranges; relative
// error around 1e-16 in each.
double cody_erfc(double x) {
    static const double A[5] = {3.16112374387056560e+00, 1.13864154151050156e+02,
                                3.77485237685302021e+02, 3.20937758913846947e+03,
                                1.85777706184603153e-01};
    static const double B[4] = {2.36012909523441209e+01, 2.44024637934444173e+02,
                                1.28261652607737228e+03, 2.84423683343917062e+03};
    static const double C[9] = {5.64188496988670089e-01, 8.88314979438837594e+00,
                                6.61191906371416295e+01, 2.98635138197400131e+02,
                                8.81952221241769090e+02, 1.71204761263407058e+03,
                                2.05107837782607147e+03, 1.23033935479799725e+03,
                                2.15311535474403846e-08};
    static const double D[8] = {1.57449261107098347e+01, 1.17693950891312499e+02,
                                5.37181101862009858e+02, 1.62138957456669019e+03,
                                3.29079923573345963e+03, 4.36261909014324716e+03,
                                3.43936767414372164e+03, 1.23033935480374942e+03};
    static const double P[6] = {3.05326634961232344e-01, 3.60344899949804439e-01,
                                1.25781726111229246e-01, 1.60837851487422766e-02,
                                6.58749161529837803e-04, 1.63153871373020978e-02};
    static const double Q[5] = {2.56852019228982242e+00, 1.87295284992346047e+00,
                                5.27905102951428412e-01, 6.05183413124413191e-02,
                                2.33520497626869185e-03};

    double y = std::abs(x);
    double result;
    if (y <= 0.46875) {
        // erfc(x) = 1 - erf(x); erf via the central rational approximation
        double ysq = y * y;
        double xnum = A[4] * ysq;
        double xden = ysq;
        for (int i = 0; i < 3; ++i) {
            xnum = (xnum + A[i]) * ysq;
            xden = (xden + B[i]) * ysq;
        }
        return 1.0 - x * (xnum + A[3]) / (xden + B[3]);
    } else if (y <= 4.0) {
        double xnum = C[8] * y;
        double xden = y;
        for (int i = 0; i < 7; ++i) {
            xnum = (xnum + C[i]) * y;
            xden = (xden + D[i]) * y;
        }
        result = (xnum + C[7]) / (xden + D[7]);
    } else {
        double ysq = 1.0 / (y * y);
        double xnum = P[5] * ysq;
        double xden = ysq;
        for (int i = 0; i < 4; ++i) {
            xnum = (xnum + P[i]) * ysq;
            xden = (xden + Q[i]) * ysq;
        }
        result = ysq * (xnum + P[4]) / (xden + Q[4]);
        result = (5.6418958354775628695e-01 - result) / y;
    }
    // Split exp(-y*y) for accuracy: exp(-hi*hi) * exp(-(y-hi)(y+hi))
    double hi = std::trunc(y * 16.0) / 16.0;
    double del = (y - hi) * (y + hi);
    result *= std::exp(-hi * hi) * std::exp(-del);
    if (x < 0.0) result = 2.0 - result;
    return result;
}

// Lanczos approximation, g = 7, 9 coefficients. Relative error ~1e-14.
double log_gamma(double x) {
    static const double coef[9] = {0.99999999999980993,     676.5203681218851,
                                   -1259.1392167224028,     771.32342877765313,
                                   -176.61502916214059,     12.507343278686905,
                                   -0.13857109526572012,    9.9843695780195716e-6,
                                   1.5056327351493116e-7};
    if (x <= 0.0) throw std::domain_error("log_gamma: argument must be positive");
    if (x < 0.5) {
        // reflection: Gamma(x) Gamma(1-x) = pi / sin(pi x)
        return std::log(kPi / std::sin(kPi * x)) - log_gamma(1.0 - x);
    }
    double z = x - 1.0;
    double sum = coef[0];
    for (int i = 1; i < 9; ++i) sum += coef[i] / (z + i);
    double t = z + 7.5;
    return 0.5 * std::log(2.0 * kPi) + (z + 0.5) * std::log(t) - t + std::log(sum);
}

constexpr int kItMax = 500;
constexpr double kEps = 1e-15;
constexpr double kFpMin = 1e-300;

// Regularized lower incomplete gamma P(a, x) by power series (x < a + 1).
double gamma_p_series(double a, double x) {
    double gln = log_gamma(a);
    double ap = a;
    double sum = 1.0 / a;
    double del = sum;
    for (int i = 0; i < kItMax; ++i) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::abs(del) < std::abs(sum) * kEps)
            return sum * std::exp(-x + a * std::log(x) - gln);
    }
    throw std::runtime_error("incomplete gamma series did not converge");
}

// Regularized upper incomplete gamma Q(a, x) by continued fraction
// (modified Lentz), for x >= a + 1.
double gamma_q_cf(double a, double x) {
    double gln = log_gamma(a);
    double b = x + 1.0 - a;
    double c = 1.0 / kFpMin;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= kItMax; ++i) {
        double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < kFpMin) d = kFpMin;
        c = b + an / c;
        if (std::abs(c) < kFpMin) c = kFpMin;
        d = 1.0 / d;
        double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < kEps)
            return std::exp(-x + a * std::log(x) - gln) * h;
    }
    throw std::runtime_error("incomplete gamma continued fraction did not converge");
}

// Continued fraction for the regularized incomplete beta (modified Lentz).
double beta_cf(double a, double b, double x) {
    double qab = a + b;
    double qap = a + 1.0;
    double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::abs(d) < kFpMin) d = kFpMin;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kItMax; ++m) {
        int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kFpMin) d = kFpMin;
        c = 1.0 + aa / c;
        if (std::abs(c) < kFpMin) c = kFpMin;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kFpMin) d = kFpMin;
        c = 1.0 + aa / c;
        if (std::abs(c) < kFpMin) c = kFpMin;
        d = 1.0 / d;
        double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < kEps) return h;
    }
    throw std::runtime_error("incomplete beta continued fraction did not converge");
}

// Regularized incomplete beta I_x(a, b).
double beta_i(double a, double b, double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    double bt = std::exp(log_gamma(a + b) - log_gamma(a) - log_gamma(b) + a * std::log(x) +
                         b * std::log(1.0 - x));
    if (x < (a + 1.0) / (a + b + 2.0)) return bt * beta_cf(a, b, x) / a;
    return 1.0 - bt * beta_cf(b, a, 1.0 - x) / b;
}

}  // namespace

double normal_pdf(double z) { return kInvSqrt2Pi * std::exp(-0.5 * z * z); }

Probability normal_cdf(double z) { return Probability(0.5 * cody_erfc(-z * kSqrt1_2)); }

double normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) {
        if (p == 0.0 || p == 1.0)
            throw std::domain_error("normal_quantile: quantile of 0 or 1 is infinite");
        throw std::domain_error("normal_quantile: p outside [0, 1]");
    }

    // Acklam's rational approximation, relative error below 1.2e-9.
    static const double a[6] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                -2.759285104469687e+02, 1.383577518672690e+02,
                                -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[5] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                -1.556989798598866e+02, 6.680131188771972e+01,
                                -1.328068155288572e+01};
    static const double c[6] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                -2.400758277161838e+00, -2.549732539343734e+00,
                                4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[4] = {7.784695709041462e-03, 3.224671290700398e-01,
                                2.445134137142996e+00, 3.754408661907416e+00};
    constexpr double p_low = 0.02425;

    double x;
    if (p < p_low) {
        double q = std::sqrt(-2.0 * std::log(p));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    } else if (p <= 1.0 - p_low) {
        double q = p - 0.5;
        double r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    } else {
        double q = std::sqrt(-2.0 * std::log(1.0 - p));
        x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }

    // One Newton step against the full-precision CDF.
    double err = normal_cdf(x).value() - p;
    double pdf = normal_pdf(x);
    if (err != 0.0 && pdf > 0.0) x -= err / pdf;
    return x;
}

Probability chi_squared_sf(double x, double df) {
    if (df <= 0.0) throw std::domain_error("chi_squared_sf: df must be positive");
    if (x < 0.0) throw std::domain_error("chi_squared_sf: x must be nonnegative");
    if (x == 0.0) return Probability(1.0);
    double a = 0.5 * df;
    double xx = 0.5 * x;
    if (xx < a + 1.0) return Probability(1.0 - gamma_p_series(a, xx));
    return Probability(gamma_q_cf(a, xx));
}

Probability student_t_sf(double t, double df) {
    if (df <= 0.0) throw std::domain_error("student_t_sf: df must be positive");
    double ib = beta_i(0.5 * df, 0.5, df / (df + t * t));
    return Probability(t >= 0.0 ? 0.5 * ib : 1.0 - 0.5 * ib);
}

WelchResult welch_t_test(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() < 2 || b.size() < 2)
        throw std::invalid_argument("welch_t_test: each sample needs at least two values");
    double na = static_cast<double>(a.size());
    double nb = static_cast<double>(b.size());
    double ma = mean(a);
    double mb = mean(b);
    double va = variance(a);
    double vb = variance(b);
    double sa = va / na;
    double sb = vb / nb;
    double se2 = sa + sb;

    WelchResult r;
    if (se2 == 0.0) {
        if (ma != mb)
            throw std::domain_error("welch_t_test: zero variance in both samples with unequal means");
        r.t = 0.0;
        r.df = na + nb - 2.0;
        r.p_value = 1.0;
        return r;
    }
    r.t = (ma - mb) / std::sqrt(se2);
    r.df = se2 * se2 / (sa * sa / (na - 1.0) + sb * sb / (nb - 1.0));
    r.p_value = 2.0 * student_t_sf(std::abs(r.t), r.df).value();
    if (r.p_value > 1.0) r.p_value = 1.0;
    return r;
}

}  // namespace pcvir

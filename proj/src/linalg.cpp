#include "pcvir/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace pcvir {

std::vector<double> Matrix::row(std::size_t i) const {
    std::vector<double> out(cols_);
    for (std::size_t j = 0; j < cols_; ++j) out[j] = (*this)(i, j);
    return out;
}

std::vector<double> Matrix::column(std::size_t j) const {
    std::vector<double> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
    return out;
}

Matrix transpose(const Matrix& a) {
    Matrix t(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
    return t;
}

Matrix matmul(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("matmul: dimension mismatch");
    Matrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            double aik = a(i, k);
            if (aik == 0.0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
        }
    }
    return c;
}

namespace {

double offdiag_norm(const Matrix& a) {
    double sum = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = i + 1; j < a.cols(); ++j) sum += a(i, j) * a(i, j);
    return std::sqrt(2.0 * sum);
}

}  // namespace

EigenDecomposition eigen_symmetric(Matrix a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("eigen_symmetric: matrix not square");
    const std::size_t n = a.rows();
    constexpr double tol = 1e-12;
    constexpr int max_sweeps = 100;

    Matrix v(n, n);
    for (std::size_t i = 0; i < n; ++i) v(i, i) = 1.0;

    EigenDecomposition out;
    if (n == 1) {
        out.values = {a(0, 0)};
        out.vectors = v;
        return out;
    }

    int sweep = 0;
    for (; sweep < max_sweeps && offdiag_norm(a) >= tol; ++sweep) {
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                double apq = a(p, q);
                if (apq == 0.0) continue;
                double theta = 0.5 * (a(q, q) - a(p, p)) / apq;
                double t;
                if (std::abs(theta) > 1e154) {
                    t = 0.5 / theta;  // avoid overflow in theta * theta
                } else {
                    t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                    if (theta < 0.0) t = -t;
                }
                double c = 1.0 / std::sqrt(t * t + 1.0);
                double s = t * c;
                double tau = s / (1.0 + c);
                double h = t * apq;

                a(p, p) -= h;
                a(q, q) += h;
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                for (std::size_t i = 0; i < n; ++i) {
                    if (i == p || i == q) continue;
                    double aip = a(i, p);
                    double aiq = a(i, q);
                    a(i, p) = aip - s * (aiq + tau * aip);
                    a(p, i) = a(i, p);
                    a(i, q) = aiq + s * (aip - tau * aiq);
                    a(q, i) = a(i, q);
                }
                for (std::size_t i = 0; i < n; ++i) {
                    double vip = v(i, p);
                    double viq = v(i, q);
                    v(i, p) = vip - s * (viq + tau * vip);
                    v(i, q) = viq + s * (vip - tau * viq);
                }
            }
        }
    }
    if (offdiag_norm(a) >= tol)
        throw std::runtime_error("eigen_symmetric: Jacobi iteration did not converge");

    // Sort descending by eigenvalue; stable so equal values keep their order.
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return a(x, x) > a(y, y); });

    out.values.resize(n);
    out.vectors = Matrix(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        out.values[k] = a(order[k], order[k]);
        for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
    }
    out.sweeps = sweep;
    return out;
}

Matrix invert_spd(const Matrix& a) {
    EigenDecomposition eig = eigen_symmetric(a);
    const std::size_t n = a.rows();
    double lmax = eig.values.front();
    double lmin = eig.values.back();
    if (lmin <= 0.0 || lmin < 1e-12 * lmax)
        throw std::runtime_error("invert_spd: matrix is singular or not positive definite");
    Matrix inv(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            double sum = 0.0;
            for (std::size_t k = 0; k < n; ++k)
                sum += eig.vectors(i, k) * eig.vectors(j, k) / eig.values[k];
            inv(i, j) = sum;
            inv(j, i) = sum;
        }
    }
    return inv;
}

}  // namespace pcvir

#pragma once

#include <cstddef>
#include <vector>

namespace pcvir {

// Dense row-major matrix. Not a general linear algebra library -- just what
// correlation matrices, PCA projections and IRLS need.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    const std::vector<double>& data() const { return data_; }
    std::vector<double>& data() { return data_; }

    std::vector<double> row(std::size_t i) const;
    std::vector<double> column(std::size_t j) const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

Matrix transpose(const Matrix& a);
Matrix matmul(const Matrix& a, const Matrix& b);

struct EigenDecomposition {
    std::vector<double> values;  // descending
    Matrix vectors;              // column k is the unit eigenvector for values[k]
    int sweeps = 0;
};

// Eigendecomposition of a symmetric matrix by cyclic Jacobi rotations.
// Sweeps until the off-diagonal Frobenius norm drops below 1e-12.
EigenDecomposition eigen_symmetric(Matrix a);

// Inverse of a symmetric positive definite matrix via its eigendecomposition.
// Throws if the matrix is singular or indefinite.
Matrix invert_spd(const Matrix& a);

}  // namespace pcvir

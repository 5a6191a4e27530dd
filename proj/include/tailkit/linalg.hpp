#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "tailkit/core.hpp"

namespace tailkit::linalg {

/// Small dense row-major matrix. Sized for regression designs and
/// covariance factors, not large-scale work.
struct Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c, double fill = 0.0)
        : rows(r), cols(c), data(r * c, fill) {}

    double& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }
};

inline Matrix matmul(const Matrix& a, const Matrix& b) {
    require(a.cols == b.rows, "matmul: shape mismatch");
    Matrix c(a.rows, b.cols);
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t k = 0; k < a.cols; ++k) {
            const double aik = a(i, k);
            if (aik == 0.0) continue;
            for (std::size_t j = 0; j < b.cols; ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

inline Matrix transpose(const Matrix& a) {
    Matrix t(a.cols, a.rows);
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t j = 0; j < a.cols; ++j) t(j, i) = a(i, j);
    return t;
}

/// Cholesky factor L with L L^T = A for symmetric positive-definite A.
/// Asymmetry beyond 1e-10 * max|a_ij| and nonpositive pivots
/// (pivot <= 1e-12 * max diagonal) are errors.
inline Matrix cholesky(const Matrix& a) {
    require(a.rows == a.cols, "cholesky: matrix must be square");
    const std::size_t n = a.rows;
    double scale = 0.0, max_diag = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        max_diag = std::max(max_diag, std::abs(a(i, i)));
        for (std::size_t j = 0; j < n; ++j) scale = std::max(scale, std::abs(a(i, j)));
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            require(std::abs(a(i, j) - a(j, i)) <= 1e-10 * std::max(scale, 1.0),
                    "cholesky: matrix not symmetric");

    Matrix l(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        double d = a(j, j);
        for (std::size_t k = 0; k < j; ++k) d -= l(j, k) * l(j, k);
        require(d > 1e-12 * std::max(max_diag, 1.0),
                "cholesky: matrix not positive-definite");
        l(j, j) = std::sqrt(d);
        for (std::size_t i = j + 1; i < n; ++i) {
            double s = a(i, j);
            for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
            l(i, j) = s / l(j, j);
        }
    }
    return l;
}

/// Solve A x = b for symmetric positive-definite A via Cholesky.
inline std::vector<double> solve_spd(const Matrix& a, const std::vector<double>& b) {
    require(a.rows == b.size(), "solve_spd: size mismatch");
    const Matrix l = cholesky(a);
    const std::size_t n = a.rows;
    std::vector<double> y(n), x(n);
    for (std::size_t i = 0; i < n; ++i) {
        double s = b[i];
        for (std::size_t k = 0; k < i; ++k) s -= l(i, k) * y[k];
        y[i] = s / l(i, i);
    }
    for (std::size_t ii = n; ii-- > 0;) {
        double s = y[ii];
        for (std::size_t k = ii + 1; k < n; ++k) s -= l(k, ii) * x[k];
        x[ii] = s / l(ii, ii);
    }
    return x;
}

/// Inverse of a symmetric positive-definite matrix.
inline Matrix inverse_spd(const Matrix& a) {
    const std::size_t n = a.rows;
    Matrix inv(n, n);
    std::vector<double> e(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        e.assign(n, 0.0);
        e[j] = 1.0;
        const auto col = solve_spd(a, e);
        for (std::size_t i = 0; i < n; ++i) inv(i, j) = col[i];
    }
    return inv;
}

}  // namespace tailkit::linalg

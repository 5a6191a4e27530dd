#pragma once

#include <vector>

#include "tailkit/linalg.hpp"

namespace tailkit::stats {

/// Least-squares fit. std_errors use sigma^2 (X'X)^{-1} with
/// sigma^2 = SSR / (T - k). r_squared is centered when an intercept is
/// present, uncentered otherwise.
struct OlsFit {
    std::vector<double> coefficients;
    std::vector<double> std_errors;
    std::vector<double> residuals;
    std::vector<double> fitted;
    double r_squared = 0.0;
    double ssr = 0.0;
    double sigma2 = 0.0;
    std::size_t n_obs = 0;
    std::size_t n_params = 0;
};

/// OLS of y on X. When intercept is true a leading column of ones is
/// added. Rank deficiency (up to the Cholesky pivot tolerance) is an
/// error.
inline OlsFit ols_fit(const std::vector<double>& y, const linalg::Matrix& x_in,
                      bool intercept) {
    require(x_in.rows == y.size(), "ols_fit: rows(X) != len(y)");
    linalg::Matrix x = x_in;
    if (intercept) {
        linalg::Matrix xi(x_in.rows, x_in.cols + 1);
        for (std::size_t i = 0; i < x_in.rows; ++i) {
            xi(i, 0) = 1.0;
            for (std::size_t j = 0; j < x_in.cols; ++j) xi(i, j + 1) = x_in(i, j);
        }
        x = std::move(xi);
    }
    const std::size_t t = x.rows, k = x.cols;
    require(t > k, "ols_fit: need more observations than parameters");

    linalg::Matrix xtx(k, k);
    std::vector<double> xty(k, 0.0);
    for (std::size_t i = 0; i < t; ++i)
        for (std::size_t a = 0; a < k; ++a) {
            xty[a] += x(i, a) * y[i];
            for (std::size_t b = a; b < k; ++b) xtx(a, b) += x(i, a) * x(i, b);
        }
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = 0; b < a; ++b) xtx(a, b) = xtx(b, a);

    OlsFit fit;
    try {
        fit.coefficients = linalg::solve_spd(xtx, xty);
    } catch (const Error&) {
        fail("ols_fit: design matrix is rank deficient");
    }

    fit.n_obs = t;
    fit.n_params = k;
    fit.residuals.resize(t);
    fit.fitted.resize(t);
    double ssr = 0.0;
    for (std::size_t i = 0; i < t; ++i) {
        double yh = 0.0;
        for (std::size_t a = 0; a < k; ++a) yh += x(i, a) * fit.coefficients[a];
        fit.fitted[i] = yh;
        fit.residuals[i] = y[i] - yh;
        ssr += fit.residuals[i] * fit.residuals[i];
    }
    fit.ssr = ssr;
    fit.sigma2 = ssr / static_cast<double>(t - k);

    const auto xtx_inv = linalg::inverse_spd(xtx);
    fit.std_errors.resize(k);
    for (std::size_t a = 0; a < k; ++a)
        fit.std_errors[a] = std::sqrt(fit.sigma2 * xtx_inv(a, a));

    double tss = 0.0;
    if (intercept) {
        double ybar = 0.0;
        for (double v : y) ybar += v;
        ybar /= static_cast<double>(t);
        for (double v : y) tss += (v - ybar) * (v - ybar);
    } else {
        for (double v : y) tss += v * v;
    }
    fit.r_squared = tss > 0.0 ? 1.0 - ssr / tss : 0.0;
    return fit;
}

}  // namespace tailkit::stats

#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include "tailkit/linalg.hpp"

namespace tailkit::optim {

using Objective = std::function<double(const std::vector<double>&)>;

struct MinimizeResult {
    std::vector<double> x;
    double fx = std::numeric_limits<double>::infinity();
    bool converged = false;
    std::size_t evals = 0;
};

/// Derivative-free Nelder-Mead simplex minimization. The objective may
/// return +inf outside its feasible region.
inline MinimizeResult nelder_mead(const Objective& f, std::vector<double> x0,
                                  double step = 0.1, double ftol = 1e-10,
                                  std::size_t max_iter = 4000) {
    const std::size_t n = x0.size();
    MinimizeResult res;
    std::vector<std::vector<double>> simplex(n + 1, x0);
    std::vector<double> fv(n + 1);
    for (std::size_t i = 0; i < n; ++i)
        simplex[i + 1][i] += (x0[i] != 0.0 ? step * std::abs(x0[i]) : step);
    for (std::size_t i = 0; i <= n; ++i) {
        fv[i] = f(simplex[i]);
        ++res.evals;
    }

    const double alpha = 1.0, gamma = 2.0, rho = 0.5, sigma = 0.5;
    for (std::size_t iter = 0; iter < max_iter; ++iter) {
        // order
        std::vector<std::size_t> ord(n + 1);
        for (std::size_t i = 0; i <= n; ++i) ord[i] = i;
        std::sort(ord.begin(), ord.end(),
                  [&fv](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
        {
            std::vector<std::vector<double>> s2(n + 1);
            std::vector<double> f2(n + 1);
            for (std::size_t i = 0; i <= n; ++i) {
                s2[i] = simplex[ord[i]];
                f2[i] = fv[ord[i]];
            }
            simplex.swap(s2);
            fv.swap(f2);
        }
        const double spread = std::abs(fv[n] - fv[0]);
        if (spread <= ftol * (std::abs(fv[0]) + ftol)) {
            res.converged = true;
            break;
        }

        std::vector<double> centroid(n, 0.0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t d = 0; d < n; ++d) centroid[d] += simplex[i][d] / n;

        auto blend = [&centroid, n](const std::vector<double>& far, double coef) {
            std::vector<double> p(n);
            for (std::size_t d = 0; d < n; ++d)
                p[d] = centroid[d] + coef * (centroid[d] - far[d]);
            return p;
        };

        const auto xr = blend(simplex[n], alpha);
        const double fr = f(xr);
        ++res.evals;
        if (fr < fv[0]) {
            const auto xe = blend(simplex[n], gamma);
            const double fe = f(xe);
            ++res.evals;
            if (fe < fr) {
                simplex[n] = xe;
                fv[n] = fe;
            } else {
                simplex[n] = xr;
                fv[n] = fr;
            }
        } else if (fr < fv[n - 1]) {
            simplex[n] = xr;
            fv[n] = fr;
        } else {
            const auto xc = blend(simplex[n], -rho);
            const double fc = f(xc);
            ++res.evals;
            if (fc < fv[n]) {
                simplex[n] = xc;
                fv[n] = fc;
            } else {
                for (std::size_t i = 1; i <= n; ++i) {
                    for (std::size_t d = 0; d < n; ++d)
                        simplex[i][d] = simplex[0][d] + sigma * (simplex[i][d] - simplex[0][d]);
                    fv[i] = f(simplex[i]);
                    ++res.evals;
                }
            }
        }
    }

    std::size_t best = 0;
    for (std::size_t i = 1; i <= n; ++i)
        if (fv[i] < fv[best]) best = i;
    res.x = simplex[best];
    res.fx = fv[best];
    return res;
}

/// Golden-section / parabolic 1D minimization on [a, b] (Brent).
inline double brent_minimize(const std::function<double(double)>& f, double a, double b,
                             double tol = 1e-10, std::size_t max_iter = 200) {
    const double gold = 0.3819660112501051;
    double x = a + gold * (b - a), w = x, v = x;
    double fx = f(x), fw = fx, fv = fx;
    double d = 0.0, e = 0.0;
    for (std::size_t iter = 0; iter < max_iter; ++iter) {
        const double m = 0.5 * (a + b);
        const double tol1 = tol * std::abs(x) + 1e-12;
        const double tol2 = 2.0 * tol1;
        if (std::abs(x - m) <= tol2 - 0.5 * (b - a)) break;
        bool parabolic = false;
        if (std::abs(e) > tol1) {
            const double r = (x - w) * (fx - fv);
            double q = (x - v) * (fx - fw);
            double p = (x - v) * q - (x - w) * r;
            q = 2.0 * (q - r);
            if (q > 0.0) p = -p;
            q = std::abs(q);
            const double etmp = e;
            e = d;
            if (std::abs(p) < std::abs(0.5 * q * etmp) && p > q * (a - x) &&
                p < q * (b - x)) {
                parabolic = true;
                d = p / q;
                const double u = x + d;
                if (u - a < tol2 || b - u < tol2) d = (m > x) ? tol1 : -tol1;
            }
        }
        if (!parabolic) {
            e = (x < m) ? b - x : a - x;
            d = gold * e;
        }
        const double u = (std::abs(d) >= tol1) ? x + d : x + (d > 0.0 ? tol1 : -tol1);
        const double fu = f(u);
        if (fu <= fx) {
            if (u < x)
                b = x;
            else
                a = x;
            v = w; fv = fw;
            w = x; fw = fx;
            x = u; fx = fu;
        } else {
            if (u < x)
                a = u;
            else
                b = u;
            if (fu <= fw || w == x) {
                v = w; fv = fw;
                w = u; fw = fu;
            } else if (fu <= fv || v == x || v == w) {
                v = u; fv = fu;
            }
        }
    }
    return x;
}

/// Central-difference Hessian of f at x. Steps scale with |x_i|.
inline linalg::Matrix numerical_hessian(const Objective& f, const std::vector<double>& x,
                                        double rel_step = 1e-4) {
    const std::size_t n = x.size();
    std::vector<double> h(n);
    for (std::size_t i = 0; i < n; ++i)
        h[i] = rel_step * std::max(std::abs(x[i]), 1e-3);

    linalg::Matrix hess(n, n);
    const double f0 = f(x);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            std::vector<double> p = x;
            if (i == j) {
                p[i] = x[i] + h[i];
                const double fp = f(p);
                p[i] = x[i] - h[i];
                const double fm = f(p);
                hess(i, i) = (fp - 2.0 * f0 + fm) / (h[i] * h[i]);
            } else {
                p[i] = x[i] + h[i]; p[j] = x[j] + h[j];
                const double fpp = f(p);
                p[j] = x[j] - h[j];
                const double fpm = f(p);
                p[i] = x[i] - h[i]; p[j] = x[j] + h[j];
                const double fmp = f(p);
                p[j] = x[j] - h[j];
                const double fmm = f(p);
                hess(i, j) = hess(j, i) = (fpp - fpm - fmp + fmm) / (4.0 * h[i] * h[j]);
            }
        }
    }
    return hess;
}

/// Standard errors as sqrt of the diagonal of the inverse Hessian of the
/// negative log-likelihood. Returns NaNs when the Hessian is not PD.
inline std::vector<double> mle_std_errors(const Objective& negloglik,
                                          const std::vector<double>& x) {
    const auto hess = numerical_hessian(negloglik, x);
    std::vector<double> se(x.size(), std::numeric_limits<double>::quiet_NaN());
    try {
        const auto cov = linalg::inverse_spd(hess);
        for (std::size_t i = 0; i < x.size(); ++i)
            se[i] = cov(i, i) > 0.0 ? std::sqrt(cov(i, i))
                                    : std::numeric_limits<double>::quiet_NaN();
    } catch (const Error&) {
        // leave NaNs: boundary or flat likelihood
    }
    return se;
}

}  // namespace tailkit::optim

#pragma once

#include <algorithm>
#include <vector>

#include "tailkit/core.hpp"
#include "tailkit/dist.hpp"
#include "tailkit/optim.hpp"

namespace tailkit::evt {

/// Shape switch point: |xi| below this uses the Gumbel/exponential limit.
constexpr double kXiZero = 1e-6;

/// GEV CDF H_{xi,mu,sigma}(x).
inline double gev_cdf(double x, double xi, double mu, double sigma) {
    require(sigma > 0.0, "gev_cdf: sigma > 0 required");
    const double y = (x - mu) / sigma;
    if (std::abs(xi) < kXiZero) return std::exp(-std::exp(-y));
    const double t = 1.0 + xi * y;
    if (t <= 0.0) return xi > 0.0 ? 0.0 : 1.0;
    return std::exp(-std::pow(t, -1.0 / xi));
}

/// GPD CDF G_{xi,beta}(x) for excesses x >= 0.
inline double gpd_cdf(double x, double xi, double beta) {
    require(beta > 0.0, "gpd_cdf: beta > 0 required");
    if (x <= 0.0) return 0.0;
    if (std::abs(xi) < kXiZero) return 1.0 - std::exp(-x / beta);
    const double t = 1.0 + xi * x / beta;
    if (t <= 0.0) return 1.0;  // xi < 0 beyond right endpoint
    return 1.0 - std::pow(t, -1.0 / xi);
}

struct GevFit {
    double xi = 0.0;
    double mu = 0.0;
    double sigma = 1.0;
    double loglik = 0.0;
    std::vector<double> std_errors;  // xi, mu, sigma
    std::size_t block_size = 0;
    std::size_t block_count = 0;
    bool se_valid = true;
};

struct GpdFit {
    double xi = 0.0;
    double beta = 1.0;
    double threshold = 0.0;
    std::size_t n_exceed = 0;
    std::size_t n_total = 0;
    double loglik = 0.0;
    std::vector<double> std_errors;  // xi, beta
    bool se_valid = true;            // false when xi <= -0.5 (no regular MLE theory)
};

struct HillFit {
    double alpha_hat = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    double threshold = 0.0;
    std::size_t n_tail = 0;
};

/// One maximum per full block of size block_size; a trailing partial
/// block is dropped.
inline std::vector<double> block_maxima(const std::vector<double>& x,
                                        std::size_t block_size) {
    require(block_size >= 2, "block_maxima: block size >= 2 required");
    require(x.size() >= 2 * block_size, "block_maxima: need at least two full blocks");
    const std::size_t k = x.size() / block_size;
    std::vector<double> maxima(k);
    for (std::size_t b = 0; b < k; ++b) {
        double m = x[b * block_size];
        for (std::size_t j = 1; j < block_size; ++j)
            m = std::max(m, x[b * block_size + j]);
        maxima[b] = m;
    }
    return maxima;
}

namespace detail {

/// Negative GEV log-likelihood; +inf outside the support constraints.
inline double gev_negloglik(const std::vector<double>& m, double xi, double mu,
                            double sigma) {
    if (sigma <= 0.0) return std::numeric_limits<double>::infinity();
    double nll = 0.0;
    if (std::abs(xi) < kXiZero) {
        for (double v : m) {
            const double y = (v - mu) / sigma;
            nll += std::log(sigma) + y + std::exp(-y);
        }
        return nll;
    }
    for (double v : m) {
        const double t = 1.0 + xi * (v - mu) / sigma;
        if (t <= 0.0) return std::numeric_limits<double>::infinity();
        nll += std::log(sigma) + (1.0 + 1.0 / xi) * std::log(t) + std::pow(t, -1.0 / xi);
    }
    return nll;
}

/// GPD log-likelihood on excesses for a given (xi, beta).
inline double gpd_loglik(const std::vector<double>& e, double xi, double beta) {
    if (beta <= 0.0) return -std::numeric_limits<double>::infinity();
    const double n = static_cast<double>(e.size());
    if (std::abs(xi) < kXiZero) {
        double s = 0.0;
        for (double v : e) s += v;
        return -n * std::log(beta) - s / beta;
    }
    double s = 0.0;
    for (double v : e) {
        const double t = 1.0 + xi * v / beta;
        if (t <= 0.0) return -std::numeric_limits<double>::infinity();
        s += std::log(t);
    }
    return -n * std::log(beta) - (1.0 + 1.0 / xi) * s;
}

}  // namespace detail

/// ML fit of the GEV to block maxima. Nelder-Mead over (mu, log sigma,
/// xi) from moment-based Gumbel starts; standard errors via the
/// numerical Fisher information.
inline GevFit fit_gev(const std::vector<double>& maxima) {
    require(maxima.size() >= 20, "fit_gev: need at least 20 maxima");
    const double sd = sample_std(maxima);
    require(sd > 0.0, "fit_gev: degenerate (constant) maxima");
    const double mean = sample_mean(maxima);
    const double sigma0 = sd * 0.7796968012336761;  // sqrt(6)/pi
    const double mu0 = mean - 0.5772156649015329 * sigma0;

    optim::Objective nll = [&maxima](const std::vector<double>& p) {
        return detail::gev_negloglik(maxima, p[2], p[0], std::exp(p[1]));
    };

    optim::MinimizeResult best;
    for (double xi0 : {-0.2, 0.0, 0.1, 0.3}) {
        auto res = optim::nelder_mead(nll, {mu0, std::log(sigma0), xi0}, 0.2, 1e-12, 4000);
        res = optim::nelder_mead(nll, res.x, 0.02, 1e-13, 2000);
        if (res.fx < best.fx) best = res;
    }
    require(std::isfinite(best.fx), "fit_gev: optimizer failed to converge");

    GevFit fit;
    fit.mu = best.x[0];
    fit.sigma = std::exp(best.x[1]);
    fit.xi = best.x[2];
    fit.loglik = -best.fx;
    fit.block_count = maxima.size();

    optim::Objective nll_nat = [&maxima](const std::vector<double>& p) {
        return detail::gev_negloglik(maxima, p[0], p[1], p[2]);
    };
    const auto se = optim::mle_std_errors(nll_nat, {fit.xi, fit.mu, fit.sigma});
    fit.std_errors = se;
    fit.se_valid = std::isfinite(se[0]) && std::isfinite(se[1]) && std::isfinite(se[2]);
    return fit;
}

/// ML fit of the GPD to the excesses over u, via the 1D profile
/// likelihood in eta = xi/beta. The exponential boundary (xi -> 0) is
/// handled by the analytic limit. Standard errors come from the
/// numerical Fisher information and are refused for xi <= -0.5.
inline GpdFit fit_gpd(const std::vector<double>& losses, double u) {
    std::vector<double> e;
    for (double v : losses)
        if (v > u) e.push_back(v - u);
    require(e.size() >= 30, "fit_gpd: need at least 30 exceedances");
    double emax = 0.0, esum = 0.0;
    for (double v : e) {
        emax = std::max(emax, v);
        esum += v;
    }
    const double emean = esum / static_cast<double>(e.size());
    const double n = static_cast<double>(e.size());

    // profile log-likelihood over eta = xi/beta
    auto xi_of = [&e](double eta) {
        double s = 0.0;
        for (double v : e) s += std::log1p(eta * v);
        return s / static_cast<double>(e.size());
    };
    auto profile_ll = [&](double eta) {
        if (std::abs(eta) < 1e-12) return -n * std::log(emean) - n;
        const double xi = xi_of(eta);
        if (xi == 0.0) return -std::numeric_limits<double>::infinity();
        const double beta = xi / eta;
        if (beta <= 0.0) return -std::numeric_limits<double>::infinity();
        return -n * std::log(beta) - n * xi - n;
    };

    const double lo = -1.0 / emax + 1e-10 / emax;
    const double hi = 1e3 / emean;
    double best_eta = 0.0, best_ll = profile_ll(0.0);
    const int grid = 600;
    for (int i = 0; i <= grid; ++i) {
        // graded grid, denser near the lower support bound
        const double t = static_cast<double>(i) / grid;
        const double eta = lo + (hi - lo) * t * t * t;
        const double ll = profile_ll(eta);
        if (ll > best_ll) {
            best_ll = ll;
            best_eta = eta;
        }
    }
    const double span = (hi - lo) / grid;
    const double eta_hat = optim::brent_minimize(
        [&](double eta) { return -profile_ll(eta); }, std::max(lo, best_eta - 20.0 * span),
        std::min(hi, best_eta + 20.0 * span), 1e-13);
    const double eta_star = -profile_ll(eta_hat) <= -best_ll ? eta_hat : best_eta;

    GpdFit fit;
    fit.threshold = u;
    fit.n_exceed = e.size();
    fit.n_total = losses.size();
    if (std::abs(eta_star) < 1e-12) {
        fit.xi = 0.0;
        fit.beta = emean;
    } else {
        fit.xi = xi_of(eta_star);
        fit.beta = fit.xi / eta_star;
    }
    fit.loglik = detail::gpd_loglik(e, fit.xi, fit.beta);
    require(std::isfinite(fit.loglik), "fit_gpd: optimizer failed to converge");

    if (fit.xi <= -0.5) {
        fit.se_valid = false;
        fit.std_errors = {std::numeric_limits<double>::quiet_NaN(),
                          std::numeric_limits<double>::quiet_NaN()};
    } else {
        optim::Objective nll = [&e](const std::vector<double>& p) {
            return -detail::gpd_loglik(e, p[0], p[1]);
        };
        fit.std_errors = optim::mle_std_errors(nll, {fit.xi, fit.beta});
        fit.se_valid = std::isfinite(fit.std_errors[0]) && std::isfinite(fit.std_errors[1]);
    }
    return fit;
}

/// Hill tail-index estimate on a tail sample (all points above u):
/// 1/alpha_hat = mean(log x_i - log u), CI = alpha_hat (1 +- z_.025/sqrt(N)).
inline HillFit hill_estimator(const std::vector<double>& tail, double u) {
    require(u > 0.0, "hill_estimator: threshold must be positive");
    require(tail.size() >= 10, "hill_estimator: need at least 10 tail points");
    double s = 0.0;
    for (double v : tail) {
        require(v > u, "hill_estimator: tail point at or below threshold");
        s += std::log(v) - std::log(u);
    }
    const double n = static_cast<double>(tail.size());
    HillFit fit;
    fit.threshold = u;
    fit.n_tail = tail.size();
    fit.alpha_hat = n / s;
    const double z = -stats::norm_ppf(0.025);
    fit.ci_low = fit.alpha_hat * (1.0 - z / std::sqrt(n));
    fit.ci_high = fit.alpha_hat * (1.0 + z / std::sqrt(n));
    return fit;
}

struct MeanExcessPoint {
    double u = 0.0;
    double mean_excess = 0.0;
    std::size_t n_exceed = 0;
    bool low_count = false;  // fewer than 5 exceedances
};

/// Empirical mean excess e_n(u) = sum (x - u)^+ / N_u on a threshold grid.
inline std::vector<MeanExcessPoint> mean_excess_curve(const std::vector<double>& losses,
                                                      const std::vector<double>& grid) {
    require(!grid.empty(), "mean_excess_curve: empty grid");
    require(!losses.empty(), "mean_excess_curve: empty sample");
    const double xmax = *std::max_element(losses.begin(), losses.end());
    std::vector<MeanExcessPoint> out;
    out.reserve(grid.size());
    for (double u : grid) {
        require(u < xmax, "mean_excess_curve: threshold above sample maximum");
        double s = 0.0;
        std::size_t n = 0;
        for (double v : losses)
            if (v > u) {
                s += v - u;
                ++n;
            }
        MeanExcessPoint p;
        p.u = u;
        p.mean_excess = s / static_cast<double>(n);
        p.n_exceed = n;
        p.low_count = n < 5;
        out.push_back(p);
    }
    return out;
}

struct ThresholdSelection {
    double u = 0.0;
    double ks_distance = 0.0;
    double alpha_hat = 0.0;
    std::size_t n_tail = 0;
};

/// Threshold choice for a power-law tail: scan candidate thresholds
/// (every 5th order statistic above the median, at most 2000), fit the
/// tail exponent by the closed-form MLE at each, and keep the threshold
/// minimizing the KS distance between the empirical tail and the fitted
/// Pareto, subject to at least min_tail points above.
inline ThresholdSelection select_threshold_ks(const std::vector<double>& losses,
                                              std::size_t min_tail) {
    require(min_tail >= 10, "select_threshold_ks: min_tail >= 10 required");
    require(losses.size() >= 2 * min_tail, "select_threshold_ks: insufficient data");
    std::vector<double> x = losses;
    std::sort(x.begin(), x.end());
    const std::size_t n = x.size();

    std::vector<std::size_t> candidates;
    const std::size_t start = n / 2;  // above the median
    for (std::size_t i = start; i + min_tail <= n; i += 5) {
        if (x[i] <= 0.0) continue;  // log-scale fit needs positive thresholds
        candidates.push_back(i);
        if (candidates.size() >= 2000) break;
    }
    require(!candidates.empty(), "select_threshold_ks: no usable candidates");

    ThresholdSelection best;
    best.ks_distance = std::numeric_limits<double>::infinity();
    for (std::size_t i : candidates) {
        const double u = x[i];
        const std::size_t m = n - i;  // tail sample x[i..n-1], threshold included
        double s = 0.0;
        for (std::size_t j = i; j < n; ++j) s += std::log(x[j] / u);
        if (s <= 0.0) continue;
        const double alpha = static_cast<double>(m) / s;
        double d = 0.0;
        for (std::size_t j = i; j < n; ++j) {
            const double p = 1.0 - std::pow(u / x[j], alpha);
            const double fn_hi = static_cast<double>(j - i + 1) / m;
            const double fn_lo = static_cast<double>(j - i) / m;
            d = std::max(d, std::max(fn_hi - p, p - fn_lo));
        }
        if (d < best.ks_distance) {
            best.u = u;
            best.ks_distance = d;
            best.alpha_hat = alpha;
            best.n_tail = m;
        }
    }
    require(std::isfinite(best.ks_distance), "select_threshold_ks: scan failed");
    return best;
}

/// Expected number of blocks between exceedances of level u:
/// 1 / (1 - H(u)).
inline double return_level(const GevFit& fit, double u) {
    const double h = gev_cdf(u, fit.xi, fit.mu, fit.sigma);
    require(h < 1.0, "return_level: level beyond the fitted right endpoint");
    return 1.0 / (1.0 - h);
}

}  // namespace tailkit::evt

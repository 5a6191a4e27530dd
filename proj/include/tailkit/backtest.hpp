#pragma once

#include <string>
#include <vector>

#include "tailkit/ols.hpp"
#include "tailkit/risk.hpp"
#include "tailkit/stat_tests.hpp"

namespace tailkit::bt {

/// Ex-post VaR violation indicators: indicator[t] = 1 iff
/// loss[t] > var_path[t] (strict exceedance).
struct ViolationSeries {
    std::vector<int> indicators;
    double coverage_p = 0.01;  // nominal violation probability 1 - q
    std::vector<double> var_path;

    std::size_t n_violations() const {
        std::size_t s = 0;
        for (int v : indicators) s += static_cast<std::size_t>(v);
        return s;
    }
};

enum class BacktestKind { kupiec_uc, em_dq };

inline std::string to_string(BacktestKind k) {
    return k == BacktestKind::kupiec_uc ? "kupiec_uc" : "em_dq";
}

struct BacktestResult {
    BacktestKind test = BacktestKind::kupiec_uc;
    double statistic = 0.0;
    std::size_t dof = 1;
    double p_value = 1.0;
    std::size_t n_violations = 0;
    std::size_t n_obs = 0;
};

inline ViolationSeries violation_series(const std::vector<double>& losses,
                                        const std::vector<double>& var_path, double p) {
    require(losses.size() == var_path.size(), "violation_series: length mismatch");
    require(!losses.empty(), "violation_series: empty input");
    require(p > 0.0 && p < 1.0, "violation_series: p must be in (0,1)");
    ViolationSeries v;
    v.coverage_p = p;
    v.var_path = var_path;
    v.indicators.resize(losses.size());
    for (std::size_t t = 0; t < losses.size(); ++t)
        v.indicators[t] = losses[t] > var_path[t] ? 1 : 0;
    return v;
}

/// Kupiec unconditional-coverage likelihood ratio
/// LR = -2 log[(1-p)^{T0} p^{T1} / ((1-pi)^{T0} pi^{T1})] against chi2(1),
/// with the 0 log 0 = 0 convention when pi is 0 or 1.
inline BacktestResult kupiec_uc(const ViolationSeries& v) {
    const std::size_t t = v.indicators.size();
    require(t >= 1, "kupiec_uc: empty violation series");
    const double p = v.coverage_p;
    const std::size_t t1 = v.n_violations();
    const std::size_t t0 = t - t1;
    const double pi = static_cast<double>(t1) / static_cast<double>(t);

    auto xlogy = [](double x, double y) { return x > 0.0 ? x * std::log(y) : 0.0; };
    const double ll_null = xlogy(static_cast<double>(t0), 1.0 - p) +
                           xlogy(static_cast<double>(t1), p);
    const double ll_alt = xlogy(static_cast<double>(t0), 1.0 - pi) +
                          xlogy(static_cast<double>(t1), pi);
    double lr = -2.0 * (ll_null - ll_alt);
    if (lr < 0.0) lr = 0.0;

    BacktestResult r;
    r.test = BacktestKind::kupiec_uc;
    r.statistic = lr;
    r.dof = 1;
    r.p_value = stats::chi2_sf(lr, 1.0);
    r.n_violations = t1;
    r.n_obs = t;
    return r;
}

/// Engle-Manganelli dynamic quantile test: regress the demeaned hit
/// Hit_t = I_t - p on an intercept, K lagged hits, and K lagged VaR
/// values (standardized to zero mean / unit variance), and form the Wald
/// statistic DQ = Phi' Z'Z Phi / (p (1-p)) against chi2(2K + 1).
inline BacktestResult em_dq(const ViolationSeries& v, std::size_t k_lags) {
    require(k_lags >= 1, "em_dq: need K >= 1");
    const std::size_t t = v.indicators.size();
    require(t > 2 * k_lags + 5, "em_dq: series too short for the lag order");
    const double p = v.coverage_p;

    // standardized VaR regressors keep the Wald statistic scale-free
    double vm = 0.0, vs = 0.0;
    for (double x : v.var_path) vm += x;
    vm /= static_cast<double>(t);
    for (double x : v.var_path) vs += (x - vm) * (x - vm);
    vs = std::sqrt(vs / static_cast<double>(t - 1));
    require(vs > 0.0, "em_dq: constant VaR path gives a singular regressor matrix");

    const std::size_t rows = t - k_lags;
    const std::size_t cols = 2 * k_lags + 1;
    linalg::Matrix z(rows, cols);
    std::vector<double> y(rows);
    for (std::size_t i = 0; i < rows; ++i) {
        const std::size_t tt = i + k_lags;
        y[i] = static_cast<double>(v.indicators[tt]) - p;
        z(i, 0) = 1.0;
        for (std::size_t j = 1; j <= k_lags; ++j) {
            z(i, j) = static_cast<double>(v.indicators[tt - j]) - p;
            z(i, k_lags + j) = (v.var_path[tt - j] - vm) / vs;
        }
    }

    stats::OlsFit fit;
    try {
        fit = stats::ols_fit(y, z, false);
    } catch (const Error&) {
        fail("em_dq: singular regressor matrix");
    }

    // Phi' Z'Z Phi = y'Z (Z'Z)^{-1} Z'y = sum of fitted squares
    double quad = 0.0;
    for (double f : fit.fitted) quad += f * f;
    BacktestResult r;
    r.test = BacktestKind::em_dq;
    r.statistic = quad / (p * (1.0 - p));
    r.dof = cols;
    r.p_value = stats::chi2_sf(r.statistic, static_cast<double>(r.dof));
    r.n_violations = v.n_violations();
    r.n_obs = t;
    return r;
}

/// Ex-ante VaR path from an expanding window: the VaR for date t uses
/// losses[0..t-1] only. The first min_window dates are skipped (no
/// forecast); returned path aligns with losses[min_window..].
struct RollingVarPath {
    std::size_t start = 0;           // index of the first forecasted date
    std::vector<double> var_path;    // VaR for losses[start..]
};

inline RollingVarPath expanding_var_path(const std::vector<double>& losses, double q,
                                         risk::RiskMethod method,
                                         std::size_t min_window = 250) {
    require(losses.size() > min_window, "expanding_var_path: series shorter than window");
    RollingVarPath out;
    out.start = min_window;
    out.var_path.reserve(losses.size() - min_window);
    std::vector<double> window;
    for (std::size_t t = min_window; t < losses.size(); ++t) {
        window.assign(losses.begin(), losses.begin() + static_cast<std::ptrdiff_t>(t));
        switch (method) {
            case risk::RiskMethod::historical:
                out.var_path.push_back(risk::var_historical(window, q).value);
                break;
            case risk::RiskMethod::gaussian: {
                const double mu = sample_mean(window);
                const double sd = sample_std(window);
                out.var_path.push_back(risk::var_gaussian(mu, sd, q).value);
                break;
            }
            default:
                fail("expanding_var_path: unsupported method");
        }
    }
    return out;
}

}  // namespace tailkit::bt

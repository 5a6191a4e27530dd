#pragma once

#include <optional>
#include <vector>

#include "tailkit/core.hpp"
#include "tailkit/optim.hpp"
#include "tailkit/rng.hpp"

namespace tailkit::garch {

enum class Innovation { normal, student_t };

inline std::string to_string(Innovation i) {
    return i == Innovation::normal ? "normal" : "student_t";
}

inline Innovation innovation_from_string(const std::string& s) {
    if (s == "normal") return Innovation::normal;
    if (s == "student_t" || s == "student") return Innovation::student_t;
    fail("unknown innovation law: " + s);
}

/// AR(1)-GARCH(1,1) parameter set:
///   r_t     = mu + theta r_{t-1} + sigma_t z_t
///   sigma^2_t = omega + alpha1 (r_{t-1} - mu_{t-1})^2 + beta1 sigma^2_{t-1}
/// Student innovations are standardized to unit variance, so sigma_t stays
/// the conditional standard deviation.
struct GarchSpec {
    double mean_mu = 0.0;
    double ar_theta = 0.0;
    double omega = 1e-4;
    double alpha1 = 0.0;
    double beta1 = 0.0;
    Innovation innovation = Innovation::normal;
    double nu = 8.0;  // student only

    void validate() const {
        require(omega >= 0.0 && alpha1 >= 0.0 && beta1 >= 0.0,
                "garch: omega, alpha1, beta1 must be nonnegative");
        require(alpha1 + beta1 < 1.0, "garch: alpha1 + beta1 < 1 required");
        require(!(omega == 0.0 && alpha1 == 0.0), "garch: zero variance path");
        if (innovation == Innovation::student_t)
            require(nu > 2.0, "garch: student innovations need nu > 2");
    }

    double unconditional_variance() const { return omega / (1.0 - alpha1 - beta1); }
};

struct GarchFit {
    GarchSpec spec;
    double loglik = 0.0;
    std::vector<double> sigma_path;  // sigma_1..sigma_{n-1}
    std::vector<double> z;           // standardized innovations, same indices
    std::vector<double> std_errors;  // per parameter: mu, theta, omega, alpha1, beta1[, nu]
    bool at_boundary = false;
    bool converged = false;
    double last_return = 0.0;  // r_{n-1}, for one-step forecasts
};

namespace detail {

inline double log_density_std_normal(double z) {
    return -0.918938533204672741780329736406 - 0.5 * z * z;  // -log sqrt(2 pi) - z^2/2
}

/// Log density of the unit-variance Student-t (scale sqrt((nu-2)/nu)).
inline double log_density_std_student(double z, double nu) {
    const double c = std::lgamma(0.5 * (nu + 1.0)) - std::lgamma(0.5 * nu) -
                     0.5 * std::log((nu - 2.0) * 3.14159265358979323846);
    return c - 0.5 * (nu + 1.0) * std::log1p(z * z / (nu - 2.0));
}

struct FilterOut {
    std::vector<double> sigma;
    std::vector<double> z;
    double loglik = 0.0;
};

/// Run the variance recursion conditioning on r_0 and sigma_0.
/// mu_0 is the unconditional AR mean when |theta| < 1, else mu.
/// sigma0_sq defaults to the sample variance of the series.
inline FilterOut filter(const std::vector<double>& r, const GarchSpec& spec,
                        std::optional<double> sigma0_sq) {
    spec.validate();
    require(r.size() >= 2, "garch filter: need at least 2 observations");
    const std::size_t n = r.size();
    double s2 = sigma0_sq ? *sigma0_sq : sample_variance(r);
    require(s2 > 0.0 && std::isfinite(s2), "garch filter: bad sigma0^2");

    const double mu0 = std::abs(spec.ar_theta) < 1.0
                           ? spec.mean_mu / (1.0 - spec.ar_theta)
                           : spec.mean_mu;
    double a_prev = r[0] - mu0;

    FilterOut out;
    out.sigma.resize(n - 1);
    out.z.resize(n - 1);
    for (std::size_t t = 1; t < n; ++t) {
        s2 = spec.omega + spec.alpha1 * a_prev * a_prev + spec.beta1 * s2;
        require(s2 > 0.0 && std::isfinite(s2), "garch filter: nonpositive variance");
        const double sigma = std::sqrt(s2);
        const double mu_t = spec.mean_mu + spec.ar_theta * r[t - 1];
        const double z = (r[t] - mu_t) / sigma;
        out.sigma[t - 1] = sigma;
        out.z[t - 1] = z;
        a_prev = r[t] - mu_t;
        const double lg = spec.innovation == Innovation::normal
                              ? log_density_std_normal(z)
                              : log_density_std_student(z, spec.nu);
        out.loglik += lg - std::log(sigma);
    }
    require(std::isfinite(out.loglik), "garch filter: nonfinite likelihood");
    return out;
}

}  // namespace detail

/// Conditional log-likelihood of the AR(1)-GARCH(1,1) model given r_0 and
/// sigma_0 (sample variance unless overridden).
inline double garch_loglik(const ReturnSeries& series, const GarchSpec& spec,
                           std::optional<double> sigma0_sq = std::nullopt) {
    require(series.size() >= 10, "garch_loglik: need length >= 10");
    return detail::filter(series.values, spec, sigma0_sq).loglik;
}

/// Conditional volatility path and standardized innovations; the
/// reconstruction r_t = mu_t + sigma_t z_t holds exactly.
inline std::pair<std::vector<double>, std::vector<double>> filter_standardized(
    const ReturnSeries& series, const GarchSpec& spec,
    std::optional<double> sigma0_sq = std::nullopt) {
    auto out = detail::filter(series.values, spec, sigma0_sq);
    return {std::move(out.sigma), std::move(out.z)};
}

/// Simulate an AR(1)-GARCH(1,1) path. sigma_0^2 starts at the
/// unconditional variance, r_0 at the unconditional mean plus noise.
inline ReturnSeries simulate_garch(mc::RngStream& stream, const GarchSpec& spec,
                                   std::size_t t_len) {
    spec.validate();
    require(t_len >= 2, "simulate_garch: need T >= 2");
    require(std::abs(spec.ar_theta) < 1.0, "simulate_garch: need |theta| < 1");

    auto draw = [&stream, &spec]() {
        return spec.innovation == Innovation::normal ? mc::normal_draw(stream)
                                                     : mc::student_std_draw(stream, spec.nu);
    };

    ReturnSeries out;
    out.convention = Convention::simple_return;
    out.values.resize(t_len);
    double s2 = spec.unconditional_variance();
    const double mu0 = spec.mean_mu / (1.0 - spec.ar_theta);
    out.values[0] = mu0 + std::sqrt(s2) * draw();
    double a_prev = out.values[0] - mu0;
    for (std::size_t t = 1; t < t_len; ++t) {
        s2 = spec.omega + spec.alpha1 * a_prev * a_prev + spec.beta1 * s2;
        const double mu_t = spec.mean_mu + spec.ar_theta * out.values[t - 1];
        out.values[t] = mu_t + std::sqrt(s2) * draw();
        a_prev = out.values[t] - mu_t;
    }
    return out;
}

/// Fit by conditional pseudo-maximum-likelihood: Nelder-Mead over
/// unconstrained transforms (log omega, logistic persistence split) with
/// jittered restarts; standard errors from the numerical Hessian of the
/// log-likelihood at the optimum.
inline GarchFit fit_ar_garch(const ReturnSeries& series, Innovation innovation,
                             std::size_t restarts = 5) {
    require(series.size() >= 250, "fit_ar_garch: need length >= 250");
    const auto& r = series.values;
    require(*std::max_element(r.begin(), r.end()) > *std::min_element(r.begin(), r.end()),
            "fit_ar_garch: constant series");
    const double var0 = sample_variance(r);
    require(var0 > 0.0, "fit_ar_garch: constant series");
    const bool student = innovation == Innovation::student_t;

    auto sigmoid = [](double v) { return 1.0 / (1.0 + std::exp(-v)); };
    auto unpack = [&](const std::vector<double>& p) {
        GarchSpec s;
        s.mean_mu = p[0];
        s.ar_theta = p[1];
        s.omega = std::exp(p[2]);
        const double persist = sigmoid(p[3]);   // alpha1 + beta1 in (0,1)
        const double share = sigmoid(p[4]);     // alpha1 / persistence
        s.alpha1 = persist * share;
        s.beta1 = persist * (1.0 - share);
        s.innovation = student ? Innovation::student_t : Innovation::normal;
        if (student) s.nu = 2.0 + std::exp(p[5]);
        return s;
    };

    optim::Objective negloglik = [&](const std::vector<double>& p) {
        try {
            const GarchSpec s = unpack(p);
            return -detail::filter(r, s, var0).loglik;
        } catch (const Error&) {
            return std::numeric_limits<double>::infinity();
        }
    };

    // start near mean / lag-1 autocorrelation / moderate persistence
    const double mu_hat = sample_mean(r);
    double theta_hat = 0.0;
    {
        double num = 0.0, den = 0.0;
        for (std::size_t t = 1; t < r.size(); ++t) {
            num += (r[t] - mu_hat) * (r[t - 1] - mu_hat);
            den += (r[t - 1] - mu_hat) * (r[t - 1] - mu_hat);
        }
        if (den > 0.0) theta_hat = num / den;
    }
    std::vector<double> base{mu_hat * (1.0 - theta_hat), theta_hat,
                             std::log(var0 * 0.10), 2.1972, -2.8332};  // s=.9, share=.055
    if (student) base.push_back(std::log(8.0 - 2.0));

    mc::RngStream jitter(0x6a2c1); // fixed: fits stay deterministic
    optim::MinimizeResult best;
    for (std::size_t k = 0; k <= restarts; ++k) {
        std::vector<double> start = base;
        if (k > 0)
            for (double& v : start) v += 0.5 * (jitter.next_double() - 0.5);
        auto res = optim::nelder_mead(negloglik, start, 0.25, 1e-12, 6000);
        // polish pass from the current optimum
        res = optim::nelder_mead(negloglik, res.x, 0.05, 1e-13, 4000);
        if (res.fx < best.fx) best = res;
    }
    require(std::isfinite(best.fx), "fit_ar_garch: optimizer failed to converge");

    GarchFit fit;
    fit.spec = unpack(best.x);
    fit.converged = true;
    auto filt = detail::filter(r, fit.spec, var0);
    fit.loglik = filt.loglik;
    fit.sigma_path = std::move(filt.sigma);
    fit.z = std::move(filt.z);
    fit.last_return = r.back();
    const double persist = fit.spec.alpha1 + fit.spec.beta1;
    fit.at_boundary = persist > 0.998 || fit.spec.omega < 1e-12 * var0;

    // Hessian in the natural parameter space
    optim::Objective nll_natural = [&](const std::vector<double>& q) {
        GarchSpec s;
        s.mean_mu = q[0];
        s.ar_theta = q[1];
        s.omega = q[2];
        s.alpha1 = q[3];
        s.beta1 = q[4];
        s.innovation = fit.spec.innovation;
        if (student) s.nu = q[5];
        try {
            return -detail::filter(r, s, var0).loglik;
        } catch (const Error&) {
            return std::numeric_limits<double>::infinity();
        }
    };
    std::vector<double> natural{fit.spec.mean_mu, fit.spec.ar_theta, fit.spec.omega,
                                fit.spec.alpha1, fit.spec.beta1};
    if (student) natural.push_back(fit.spec.nu);
    fit.std_errors = optim::mle_std_errors(nll_natural, natural);
    return fit;
}

/// sigma forecasts for 1..horizon steps ahead:
/// step 1 uses the last squared shock, later steps iterate
/// sigma^2(k) = omega + (alpha1 + beta1) sigma^2(k-1).
inline std::vector<double> forecast_sigma(const GarchFit& fit, std::size_t horizon) {
    require(horizon >= 1, "forecast_sigma: horizon >= 1 required");
    require(!fit.sigma_path.empty(), "forecast_sigma: empty fit");
    const GarchSpec& s = fit.spec;
    const double sigma_t = fit.sigma_path.back();
    const double a_t = sigma_t * fit.z.back();
    std::vector<double> out(horizon);
    double s2 = s.omega + s.alpha1 * a_t * a_t + s.beta1 * sigma_t * sigma_t;
    out[0] = std::sqrt(s2);
    for (std::size_t k = 1; k < horizon; ++k) {
        s2 = s.omega + (s.alpha1 + s.beta1) * s2;
        out[k] = std::sqrt(s2);
    }
    return out;
}

/// One-step conditional mean mu_{T+1} = mu + theta r_T.
inline double forecast_mean(const GarchFit& fit) {
    return fit.spec.mean_mu + fit.spec.ar_theta * fit.last_return;
}

}  // namespace tailkit::garch

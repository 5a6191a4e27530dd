#pragma once

#include <string>
#include <vector>

#include "tailkit/dist.hpp"
#include "tailkit/evt.hpp"
#include "tailkit/garch.hpp"

namespace tailkit::risk {

enum class RiskKind { var, es };
enum class RiskMethod { historical, gaussian, student, gpd, mc };

inline std::string to_string(RiskKind k) { return k == RiskKind::var ? "var" : "es"; }

inline std::string to_string(RiskMethod m) {
    switch (m) {
        case RiskMethod::historical: return "historical";
        case RiskMethod::gaussian: return "gaussian";
        case RiskMethod::student: return "student";
        case RiskMethod::gpd: return "gpd";
        case RiskMethod::mc: return "mc";
    }
    return "?";
}

/// A VaR or ES figure in loss units (positive = loss) at level q.
struct RiskEstimate {
    RiskKind kind = RiskKind::var;
    RiskMethod method = RiskMethod::historical;
    double q = 0.95;
    double value = 0.0;
    std::string inputs = "sample";  // provenance of the data behind the figure
};

namespace detail {
inline void check_q(double q) {
    require(q > 0.5 && q < 1.0, "risk: level q must be in (0.5, 1)");
}
}  // namespace detail

/// Historical VaR: X_(m) of the ascending sorted losses with m = nq when
/// nq is an integer and floor(nq) + 1 otherwise.
inline RiskEstimate var_historical(std::vector<double> losses, double q) {
    detail::check_q(q);
    require(!losses.empty(), "var_historical: empty sample");
    std::sort(losses.begin(), losses.end());
    const double nq = static_cast<double>(losses.size()) * q;
    std::size_t m = static_cast<std::size_t>(std::floor(nq));
    if (static_cast<double>(m) != nq) m += 1;
    if (m < 1) m = 1;
    if (m > losses.size()) m = losses.size();
    RiskEstimate e;
    e.kind = RiskKind::var;
    e.method = RiskMethod::historical;
    e.q = q;
    e.value = losses[m - 1];
    e.inputs = "historical(n=" + std::to_string(losses.size()) + ")";
    return e;
}

/// Gaussian VaR = mu + sigma z_q.
inline RiskEstimate var_gaussian(double mu, double sigma, double q) {
    detail::check_q(q);
    require(sigma >= 0.0, "var_gaussian: sigma >= 0 required");
    RiskEstimate e;
    e.kind = RiskKind::var;
    e.method = RiskMethod::gaussian;
    e.q = q;
    e.value = mu + sigma * stats::norm_ppf(q);
    e.inputs = "gaussian(mu,sigma)";
    return e;
}

/// Student VaR = mu + t_q(nu) sigma sqrt((nu-2)/nu), sigma the sample
/// standard deviation.
inline RiskEstimate var_student(double mu, double sigma, double nu, double q) {
    detail::check_q(q);
    require(sigma >= 0.0, "var_student: sigma >= 0 required");
    require(nu > 2.0, "var_student: nu > 2 required");
    RiskEstimate e;
    e.kind = RiskKind::var;
    e.method = RiskMethod::student;
    e.q = q;
    e.value = mu + stats::t_ppf(q, nu) * sigma * std::sqrt((nu - 2.0) / nu);
    e.inputs = "student(mu,sigma,nu)";
    return e;
}

/// Gaussian ES = mu + sigma phi(z_q)/(1-q); always >= gaussian VaR.
inline RiskEstimate es_gaussian(double mu, double sigma, double q) {
    detail::check_q(q);
    require(sigma >= 0.0, "es_gaussian: sigma >= 0 required");
    RiskEstimate e;
    e.kind = RiskKind::es;
    e.method = RiskMethod::gaussian;
    e.q = q;
    e.value = mu + sigma * stats::norm_pdf(stats::norm_ppf(q)) / (1.0 - q);
    e.inputs = "gaussian(mu,sigma)";
    return e;
}

/// Historical ES: mean of the losses strictly above the historical VaR.
inline RiskEstimate es_historical(const std::vector<double>& losses, double q) {
    const RiskEstimate var = var_historical(losses, q);
    double s = 0.0;
    std::size_t n = 0;
    for (double v : losses)
        if (v > var.value) {
            s += v;
            ++n;
        }
    require(n > 0, "es_historical: no strict exceedances of the VaR");
    RiskEstimate e;
    e.kind = RiskKind::es;
    e.method = RiskMethod::historical;
    e.q = q;
    e.value = s / static_cast<double>(n);
    e.inputs = var.inputs;
    return e;
}

/// POT tail VaR from a fitted GPD:
/// VaR_q = u + beta/xi [ (n(1-q)/N_u)^{-xi} - 1 ], log limit at xi = 0.
inline RiskEstimate var_gpd(const evt::GpdFit& fit, double q) {
    detail::check_q(q);
    const double tail_frac =
        static_cast<double>(fit.n_exceed) / static_cast<double>(fit.n_total);
    require(1.0 - q < tail_frac, "var_gpd: q below the threshold coverage");
    const double ratio =
        static_cast<double>(fit.n_total) * (1.0 - q) / static_cast<double>(fit.n_exceed);
    RiskEstimate e;
    e.kind = RiskKind::var;
    e.method = RiskMethod::gpd;
    e.q = q;
    if (std::abs(fit.xi) < evt::kXiZero)
        e.value = fit.threshold + fit.beta * std::log(1.0 / ratio);
    else
        e.value = fit.threshold + fit.beta / fit.xi * (std::pow(ratio, -fit.xi) - 1.0);
    e.inputs = "gpd(u=" + std::to_string(fit.threshold) + ")";
    return e;
}

/// Marker recognized by conditional_var.
inline constexpr const char* kInnovationProvenance = "garch_innovations";

/// Historical VaR of the fitted standardized innovations (loss-sign
/// series assumed), tagged for use in conditional_var.
inline RiskEstimate innovations_var_historical(const garch::GarchFit& fit, double q) {
    RiskEstimate e = var_historical(fit.z, q);
    e.inputs = kInnovationProvenance;
    return e;
}

/// GPD tail VaR of the fitted standardized innovations above u.
inline RiskEstimate innovations_var_gpd(const garch::GarchFit& fit, double u, double q) {
    const auto gfit = evt::fit_gpd(fit.z, u);
    RiskEstimate e = var_gpd(gfit, q);
    e.inputs = kInnovationProvenance;
    return e;
}

/// One-step conditional VaR:
/// VaR_q(R_{T+1}) = mu_{T+1} + sigma_{T+1} VaR_q(Z). The z_var estimate
/// must carry innovation provenance from the same kind of filter.
inline RiskEstimate conditional_var(const garch::GarchFit& fit, const RiskEstimate& z_var,
                                    std::size_t horizon = 1) {
    require(horizon == 1, "conditional_var: only the one-step horizon is defined");
    require(z_var.inputs == kInnovationProvenance,
            "conditional_var: z VaR was not computed on standardized innovations");
    const double sigma_next = garch::forecast_sigma(fit, 1)[0];
    const double mu_next = garch::forecast_mean(fit);
    RiskEstimate e;
    e.kind = RiskKind::var;
    e.method = z_var.method;
    e.q = z_var.q;
    e.value = mu_next + sigma_next * z_var.value;
    e.inputs = "conditional(" + to_string(z_var.method) + ")";
    return e;
}

}  // namespace tailkit::risk

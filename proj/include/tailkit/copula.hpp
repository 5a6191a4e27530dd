#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "tailkit/core.hpp"
#include "tailkit/dist.hpp"
#include "tailkit/optim.hpp"
#include "tailkit/rng.hpp"

namespace tailkit::copula {

enum class Family { independence, gaussian, student_t, clayton, gumbel, frank };

inline std::string to_string(Family f) {
    switch (f) {
        case Family::independence: return "independence";
        case Family::gaussian: return "gaussian";
        case Family::student_t: return "student_t";
        case Family::clayton: return "clayton";
        case Family::gumbel: return "gumbel";
        case Family::frank: return "frank";
    }
    return "?";
}

inline Family family_from_string(const std::string& s) {
    if (s == "independence") return Family::independence;
    if (s == "gaussian" || s == "normal") return Family::gaussian;
    if (s == "student_t" || s == "student" || s == "t") return Family::student_t;
    if (s == "clayton") return Family::clayton;
    if (s == "gumbel") return Family::gumbel;
    if (s == "frank") return Family::frank;
    fail("unknown copula family: " + s);
}

/// Bivariate copula with its parameter. rho for the elliptical families
/// (plus nu for student), theta for the Archimedeans.
struct CopulaSpec {
    Family family = Family::independence;
    double rho = 0.0;    // gaussian / student_t
    double nu = 4.0;     // student_t
    double theta = 2.0;  // clayton (>0), gumbel (>=1), frank (!=0)
    double loglik = 0.0; // set by fit_cml

    void validate() const {
        switch (family) {
            case Family::independence: return;
            case Family::gaussian:
                require(rho > -1.0 && rho < 1.0, "copula: rho must be in (-1,1)");
                return;
            case Family::student_t:
                require(rho > -1.0 && rho < 1.0, "copula: rho must be in (-1,1)");
                require(nu > 2.0, "copula: student nu > 2 required");
                return;
            case Family::clayton:
                require(theta > 0.0, "copula: clayton theta > 0 required");
                return;
            case Family::gumbel:
                require(theta >= 1.0, "copula: gumbel theta >= 1 required");
                return;
            case Family::frank:
                require(theta != 0.0, "copula: frank theta must be nonzero");
                return;
        }
    }
};

/// Rank-transformed sample strictly inside the unit square.
struct PseudoSample {
    std::vector<double> u;
    std::vector<double> v;
};

struct TailDependence {
    double lambda_lower = 0.0;
    double lambda_upper = 0.0;
};

/// u_i = rank(x_i)/(n+1), mean ranks for ties.
inline PseudoSample pseudo_observations(const std::vector<double>& x,
                                        const std::vector<double>& y) {
    require(x.size() == y.size(), "pseudo_observations: length mismatch");
    require(!x.empty(), "pseudo_observations: empty sample");
    const double denom = static_cast<double>(x.size()) + 1.0;
    PseudoSample ps;
    ps.u = mean_ranks(x);
    ps.v = mean_ranks(y);
    for (double& r : ps.u) r /= denom;
    for (double& r : ps.v) r /= denom;
    return ps;
}

namespace detail {

/// Gauss-Legendre nodes/weights on [-1, 1], computed once per order by
/// Newton iteration on the Legendre recurrence.
inline const std::pair<std::vector<double>, std::vector<double>>& gauss_legendre(
    std::size_t n) {
    thread_local std::map<std::size_t, std::pair<std::vector<double>, std::vector<double>>>
        cache;
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    std::vector<double> xs(n), ws(n);
    const double pi = 3.14159265358979323846;
    for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(pi * (static_cast<double>(i) + 0.75) /
                            (static_cast<double>(n) + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * x * p1 - static_cast<double>(j) * p2) /
                     (static_cast<double>(j) + 1.0);
            }
            pp = static_cast<double>(n) * (x * p0 - p1) / (x * x - 1.0);
            const double dx = p0 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        xs[i] = -x;
        xs[n - 1 - i] = x;
        ws[i] = ws[n - 1 - i] = 2.0 / ((1.0 - x * x) * pp * pp);
    }
    return cache.emplace(n, std::make_pair(std::move(xs), std::move(ws))).first->second;
}

/// Bivariate standard normal CDF P(X <= x, Y <= y) via the tetrachoric
/// integral Phi2 = Phi(x)Phi(y) + (1/2pi) int_0^{asin rho} exp(...) dtheta.
inline double bvn_cdf(double x, double y, double rho) {
    const double base = stats::norm_cdf(x) * stats::norm_cdf(y);
    if (rho == 0.0) return base;
    const auto& [nodes, weights] = gauss_legendre(48);
    const double hi = std::asin(rho);
    double s = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const double th = 0.5 * hi * (nodes[i] + 1.0);
        const double st = std::sin(th);
        const double ct2 = 1.0 - st * st;
        s += weights[i] * std::exp(-(x * x - 2.0 * st * x * y + y * y) / (2.0 * ct2));
    }
    s *= 0.5 * hi / (2.0 * 3.14159265358979323846);
    double out = base + s;
    if (out < 0.0) out = 0.0;
    if (out > 1.0) out = 1.0;
    return out;
}

/// Mixing grid over the chi-square(nu) probability scale for the
/// bivariate t CDF; panels refined dyadically toward both endpoints.
struct ChiMixGrid {
    std::vector<double> scale;   // sqrt(Q_chi2(p)/nu) at each node
    std::vector<double> weight;  // quadrature weight in p
};

inline const ChiMixGrid& chi_mix_grid(double nu) {
    thread_local std::map<double, ChiMixGrid> cache;
    auto it = cache.find(nu);
    if (it != cache.end()) return it->second;

    std::vector<double> edges{0.5};
    for (double w = 0.25; w > 1e-12; w *= 0.5) {
        edges.push_back(w);          // toward 0
        edges.push_back(1.0 - w);    // toward 1
    }
    edges.push_back(1e-13);
    edges.push_back(1.0 - 1e-13);
    std::sort(edges.begin(), edges.end());

    const auto& [nodes, weights] = gauss_legendre(10);
    ChiMixGrid g;
    for (std::size_t k = 0; k + 1 < edges.size(); ++k) {
        const double a = edges[k], b = edges[k + 1];
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            const double p = 0.5 * (a + b) + 0.5 * (b - a) * nodes[i];
            g.scale.push_back(std::sqrt(stats::chi2_ppf(p, nu) / nu));
            g.weight.push_back(0.5 * (b - a) * weights[i]);
        }
    }
    return cache.emplace(nu, std::move(g)).first->second;
}

/// Bivariate t CDF as a chi-square scale mixture of bivariate normals.
inline double bvt_cdf(double x, double y, double rho, double nu) {
    const ChiMixGrid& g = chi_mix_grid(nu);
    double s = 0.0;
    for (std::size_t i = 0; i < g.scale.size(); ++i)
        s += g.weight[i] * bvn_cdf(x * g.scale[i], y * g.scale[i], rho);
    if (s < 0.0) s = 0.0;
    if (s > 1.0) s = 1.0;
    return s;
}

inline double clayton_cdf(double u, double v, double th) {
    return std::pow(std::pow(u, -th) + std::pow(v, -th) - 1.0, -1.0 / th);
}

inline double gumbel_cdf(double u, double v, double th) {
    const double x = -std::log(u), y = -std::log(v);
    return std::exp(-std::pow(std::pow(x, th) + std::pow(y, th), 1.0 / th));
}

inline double frank_cdf(double u, double v, double th) {
    if (std::abs(th) < 1e-8) return u * v;
    const double em = std::expm1(-th);
    const double a = std::expm1(-th * u) * std::expm1(-th * v) / em;
    return -std::log1p(a) / th;
}

}  // namespace detail

/// Copula CDF C(u, v). Interior points use the family formula (numeric
/// for the elliptical families); exact 0/1 arguments use the closed-form
/// limits C(u,1)=u, C(1,v)=v, C(u,0)=C(0,v)=0. Inputs outside [0,1] are
/// rejected.
inline double copula_cdf(const CopulaSpec& spec, double u, double v) {
    spec.validate();
    require(u >= 0.0 && u <= 1.0 && v >= 0.0 && v <= 1.0,
            "copula_cdf: arguments must lie in [0,1]");
    if (u == 0.0 || v == 0.0) return 0.0;
    if (u == 1.0) return v;
    if (v == 1.0) return u;
    switch (spec.family) {
        case Family::independence: return u * v;
        case Family::gaussian:
            return detail::bvn_cdf(stats::norm_ppf(u), stats::norm_ppf(v), spec.rho);
        case Family::student_t:
            return detail::bvt_cdf(stats::t_ppf(u, spec.nu), stats::t_ppf(v, spec.nu),
                                   spec.rho, spec.nu);
        case Family::clayton: return detail::clayton_cdf(u, v, spec.theta);
        case Family::gumbel: return detail::gumbel_cdf(u, v, spec.theta);
        case Family::frank: return detail::frank_cdf(u, v, spec.theta);
    }
    fail("copula_cdf: unsupported family");
}

/// Copula density c(u, v) on the open unit square. The Archimedean
/// densities are the symbolic derivatives of the CDFs above.
inline double copula_density(const CopulaSpec& spec, double u, double v) {
    spec.validate();
    require(u > 0.0 && u < 1.0 && v > 0.0 && v < 1.0,
            "copula_density: arguments must lie in (0,1)");
    switch (spec.family) {
        case Family::independence: return 1.0;
        case Family::gaussian: {
            const double x = stats::norm_ppf(u), y = stats::norm_ppf(v);
            const double r = spec.rho, o = 1.0 - r * r;
            return std::exp(-(r * r * (x * x + y * y) - 2.0 * r * x * y) / (2.0 * o)) /
                   std::sqrt(o);
        }
        case Family::student_t: {
            const double r = spec.rho, nu = spec.nu, o = 1.0 - r * r;
            const double x = stats::t_ppf(u, nu), y = stats::t_ppf(v, nu);
            const double q = (x * x - 2.0 * r * x * y + y * y) / o;
            const double log_f2 = std::lgamma(0.5 * nu + 1.0) - std::lgamma(0.5 * nu) -
                                  std::log(nu * 3.14159265358979323846) -
                                  0.5 * std::log(o) -
                                  (0.5 * nu + 1.0) * std::log1p(q / nu);
            return std::exp(log_f2 - std::log(stats::t_pdf(x, nu)) -
                            std::log(stats::t_pdf(y, nu)));
        }
        case Family::clayton: {
            const double th = spec.theta;
            const double s = std::pow(u, -th) + std::pow(v, -th) - 1.0;
            return (1.0 + th) * std::pow(u * v, -th - 1.0) * std::pow(s, -1.0 / th - 2.0);
        }
        case Family::gumbel: {
            const double th = spec.theta;
            if (th == 1.0) return 1.0;
            const double x = -std::log(u), y = -std::log(v);
            const double s = std::pow(x, th) + std::pow(y, th);
            const double a = std::pow(s, 1.0 / th);
            const double c = std::exp(-a);
            return c / (u * v) * std::pow(x * y, th - 1.0) *
                   std::pow(s, 2.0 / th - 2.0) * (1.0 + (th - 1.0) / a);
        }
        case Family::frank: {
            const double th = spec.theta;
            if (std::abs(th) < 1e-8) return 1.0;
            const double em = -std::expm1(-th);  // 1 - e^{-theta}
            const double eu = -std::expm1(-th * u), ev = -std::expm1(-th * v);
            const double denom = em - eu * ev;
            return th * em * std::exp(-th * (u + v)) / (denom * denom);
        }
    }
    fail("copula_density: unsupported family");
}

namespace detail {

/// Conditional CDF P(V <= v | U = u) = dC/du, the sampling kernel.
inline double conditional_cdf(const CopulaSpec& spec, double u, double v) {
    switch (spec.family) {
        case Family::independence: return v;
        case Family::clayton: {
            const double th = spec.theta;
            const double s = std::pow(u, -th) + std::pow(v, -th) - 1.0;
            return std::pow(u, -th - 1.0) * std::pow(s, -1.0 / th - 1.0);
        }
        case Family::gumbel: {
            const double th = spec.theta;
            if (th == 1.0) return v;
            const double x = -std::log(u), y = -std::log(v);
            const double s = std::pow(x, th) + std::pow(y, th);
            return gumbel_cdf(u, v, th) / u * std::pow(x, th - 1.0) *
                   std::pow(s, 1.0 / th - 1.0);
        }
        case Family::frank: {
            const double th = spec.theta;
            if (std::abs(th) < 1e-8) return v;
            const double em = std::expm1(-th);
            const double eu = std::expm1(-th * u), ev = std::expm1(-th * v);
            return std::exp(-th * u) * ev / (em + eu * ev);
        }
        default: fail("conditional_cdf: family handled elsewhere");
    }
}

/// Invert the conditional CDF in v by bisection on (0, 1).
inline double conditional_inverse(const CopulaSpec& spec, double u, double w) {
    double lo = 1e-15, hi = 1.0 - 1e-15;
    for (int i = 0; i < 70; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (conditional_cdf(spec, u, mid) < w)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace detail

/// Pairs with uniform margins and the family's dependence. Elliptical
/// families draw correlated normals (plus the chi-square mixing for
/// student), Archimedean families invert the conditional distribution.
inline PseudoSample sample_copula(mc::RngStream& stream, const CopulaSpec& spec,
                                  std::size_t n) {
    spec.validate();
    require(n >= 1, "sample_copula: need n >= 1");
    PseudoSample out;
    out.u.resize(n);
    out.v.resize(n);
    auto open_unit = [&stream]() {
        double x = stream.next_double();
        return x > 0.0 ? x : 0x1.0p-54;
    };
    switch (spec.family) {
        case Family::independence:
            for (std::size_t i = 0; i < n; ++i) {
                out.u[i] = open_unit();
                out.v[i] = open_unit();
            }
            return out;
        case Family::gaussian: {
            const double r = spec.rho, c = std::sqrt(1.0 - r * r);
            for (std::size_t i = 0; i < n; ++i) {
                const double z1 = mc::normal_draw(stream);
                const double z2 = r * z1 + c * mc::normal_draw(stream);
                out.u[i] = stats::norm_cdf(z1);
                out.v[i] = stats::norm_cdf(z2);
            }
            return out;
        }
        case Family::student_t: {
            const double r = spec.rho, c = std::sqrt(1.0 - r * r);
            for (std::size_t i = 0; i < n; ++i) {
                const double z1 = mc::normal_draw(stream);
                const double z2 = r * z1 + c * mc::normal_draw(stream);
                const double s = std::sqrt(mc::chi2_draw(stream, spec.nu) / spec.nu);
                out.u[i] = stats::t_cdf(z1 / s, spec.nu);
                out.v[i] = stats::t_cdf(z2 / s, spec.nu);
            }
            return out;
        }
        case Family::clayton:
        case Family::gumbel:
        case Family::frank:
            for (std::size_t i = 0; i < n; ++i) {
                const double u = open_unit();
                const double w = open_unit();
                out.u[i] = u;
                out.v[i] = detail::conditional_inverse(spec, u, w);
            }
            return out;
    }
    fail("sample_copula: unsupported family");
}

/// Copula parameter from Kendall's tau:
/// gumbel theta = 1/(1-tau), clayton theta = 2 tau/(1-tau),
/// gaussian/student rho = sin(pi tau / 2), frank by numeric inversion of
/// tau(theta) through the Debye function.
inline CopulaSpec fit_tau_inversion(double tau, Family family, double nu = 4.0) {
    require(tau > -1.0 && tau < 1.0, "fit_tau_inversion: tau must be in (-1,1)");
    CopulaSpec spec;
    spec.family = family;
    switch (family) {
        case Family::independence:
            return spec;
        case Family::gaussian:
        case Family::student_t:
            spec.rho = std::sin(tau * 1.5707963267948966);
            spec.nu = nu;
            spec.validate();
            return spec;
        case Family::clayton:
            require(tau > 0.0, "fit_tau_inversion: clayton needs tau > 0");
            spec.theta = 2.0 * tau / (1.0 - tau);
            spec.validate();
            return spec;
        case Family::gumbel:
            require(tau >= 0.0, "fit_tau_inversion: gumbel needs tau >= 0");
            spec.theta = 1.0 / (1.0 - tau);
            spec.validate();
            return spec;
        case Family::frank: {
            require(tau != 0.0, "fit_tau_inversion: frank needs tau != 0");
            // tau(theta) = 1 - 4/theta (1 - D1(theta)), odd in theta
            auto debye1 = [](double th) {
                const auto& [nodes, weights] = detail::gauss_legendre(64);
                double s = 0.0;
                for (std::size_t i = 0; i < nodes.size(); ++i) {
                    const double t = 0.5 * th * (nodes[i] + 1.0);
                    const double f = t > 1e-12 ? t / std::expm1(t) : 1.0 - 0.5 * t;
                    s += weights[i] * f;
                }
                return 0.5 * s;  // (1/theta) * integral, scaled
            };
            auto tau_of = [&debye1](double th) {
                return 1.0 - 4.0 / th * (1.0 - debye1(th));
            };
            const double target = std::abs(tau);
            double lo = 1e-8, hi = 1.0;
            while (tau_of(hi) < target && hi < 745.0) hi *= 2.0;
            require(tau_of(hi) >= target, "fit_tau_inversion: tau out of frank range");
            for (int i = 0; i < 200; ++i) {
                const double mid = 0.5 * (lo + hi);
                if (tau_of(mid) < target)
                    lo = mid;
                else
                    hi = mid;
            }
            spec.theta = tau < 0.0 ? -0.5 * (lo + hi) : 0.5 * (lo + hi);
            spec.validate();
            return spec;
        }
    }
    fail("fit_tau_inversion: unsupported family");
}

/// Canonical maximum likelihood: maximize sum log c(u_i, v_i; theta) over
/// the family's parameter domain. Student-t profiles an integer nu in
/// [3, 30].
inline CopulaSpec fit_cml(const PseudoSample& sample, Family family) {
    require(sample.u.size() == sample.v.size(), "fit_cml: length mismatch");
    require(sample.u.size() >= 50, "fit_cml: need n >= 50");
    for (std::size_t i = 0; i < sample.u.size(); ++i)
        require(sample.u[i] > 0.0 && sample.u[i] < 1.0 && sample.v[i] > 0.0 &&
                    sample.v[i] < 1.0,
                "fit_cml: sample on the boundary of the unit square");

    auto negll = [&sample](const CopulaSpec& s) {
        double ll = 0.0;
        for (std::size_t i = 0; i < sample.u.size(); ++i) {
            const double c = copula_density(s, sample.u[i], sample.v[i]);
            if (!(c > 0.0) || !std::isfinite(c))
                return std::numeric_limits<double>::infinity();
            ll += std::log(c);
        }
        return -ll;
    };

    CopulaSpec best;
    best.family = family;
    double best_nll = std::numeric_limits<double>::infinity();
    auto consider = [&](CopulaSpec s) {
        const double nll = negll(s);
        if (nll < best_nll) {
            best_nll = nll;
            best = s;
        }
    };

    switch (family) {
        case Family::independence:
            best_nll = 0.0;
            break;
        case Family::gaussian: {
            const double r = optim::brent_minimize(
                [&](double rho) {
                    CopulaSpec s;
                    s.family = family;
                    s.rho = rho;
                    return negll(s);
                },
                -0.999, 0.999, 1e-10);
            CopulaSpec s;
            s.family = family;
            s.rho = r;
            consider(s);
            break;
        }
        case Family::student_t: {
            // profile over integer nu with the quantile transforms cached,
            // since t_ppf dominates the cost and does not depend on rho
            const std::size_t n = sample.u.size();
            std::vector<double> x(n), y(n);
            for (int nu = 3; nu <= 30; ++nu) {
                double margin_terms = 0.0;
                for (std::size_t i = 0; i < n; ++i) {
                    x[i] = stats::t_ppf(sample.u[i], nu);
                    y[i] = stats::t_ppf(sample.v[i], nu);
                    margin_terms -= std::log(stats::t_pdf(x[i], nu)) +
                                    std::log(stats::t_pdf(y[i], nu));
                }
                const double c0 = std::lgamma(0.5 * nu + 1.0) - std::lgamma(0.5 * nu) -
                                  std::log(nu * 3.14159265358979323846);
                auto nll_rho = [&](double rho) {
                    const double o = 1.0 - rho * rho;
                    double ll = static_cast<double>(n) * (c0 - 0.5 * std::log(o));
                    for (std::size_t i = 0; i < n; ++i) {
                        const double q = (x[i] * x[i] - 2.0 * rho * x[i] * y[i] +
                                          y[i] * y[i]) / o;
                        ll -= (0.5 * nu + 1.0) * std::log1p(q / nu);
                    }
                    return -(ll + margin_terms);
                };
                const double r = optim::brent_minimize(nll_rho, -0.999, 0.999, 1e-8);
                const double nll = nll_rho(r);
                if (nll < best_nll) {
                    best_nll = nll;
                    best.family = family;
                    best.rho = r;
                    best.nu = nu;
                }
            }
            break;
        }
        case Family::clayton: {
            const double th = optim::brent_minimize(
                [&](double t) {
                    CopulaSpec s;
                    s.family = family;
                    s.theta = t;
                    return negll(s);
                },
                1e-6, 60.0, 1e-10);
            CopulaSpec s;
            s.family = family;
            s.theta = th;
            consider(s);
            break;
        }
        case Family::gumbel: {
            const double th = optim::brent_minimize(
                [&](double t) {
                    CopulaSpec s;
                    s.family = family;
                    s.theta = t;
                    return negll(s);
                },
                1.0, 60.0, 1e-10);
            CopulaSpec s;
            s.family = family;
            s.theta = th;
            consider(s);
            break;
        }
        case Family::frank: {
            const double th = optim::brent_minimize(
                [&](double t) {
                    CopulaSpec s;
                    s.family = family;
                    s.theta = std::abs(t) < 1e-6 ? 1e-6 : t;
                    return negll(s);
                },
                -50.0, 50.0, 1e-10);
            CopulaSpec s;
            s.family = family;
            s.theta = std::abs(th) < 1e-6 ? 1e-6 : th;
            consider(s);
            break;
        }
    }
    require(std::isfinite(best_nll), "fit_cml: likelihood maximization failed");
    best.loglik = -best_nll;
    return best;
}

/// Numeric tail-dependence limits lambda_l = lim q^{-1} C(q,q) and
/// lambda_u = lim (1 - 2q + C(q,q))/(1-q), evaluated along a geometric
/// sequence with repeated Shanks extrapolation.
inline TailDependence tail_dependence_numeric(const CopulaSpec& spec) {
    auto shanks = [](std::vector<double> s) {
        while (s.size() >= 3) {
            std::vector<double> out;
            for (std::size_t i = 0; i + 2 < s.size(); ++i) {
                const double d1 = s[i + 1] - s[i];
                const double d2 = s[i + 2] - s[i + 1];
                const double den = d2 - d1;
                out.push_back(std::abs(den) > 1e-14 ? s[i + 2] - d2 * d2 / den
                                                    : s[i + 2]);
            }
            s.swap(out);
        }
        return s.back();
    };

    std::vector<double> lo_seq, up_seq;
    for (int k = 2; k <= 7; ++k) {
        const double q = std::pow(10.0, -k);
        lo_seq.push_back(copula_cdf(spec, q, q) / q);
        const double p = 1.0 - q;
        up_seq.push_back((1.0 - 2.0 * p + copula_cdf(spec, p, p)) / (1.0 - p));
    }
    TailDependence td;
    td.lambda_lower = std::clamp(shanks(lo_seq), 0.0, 1.0);
    td.lambda_upper = std::clamp(shanks(up_seq), 0.0, 1.0);
    return td;
}

/// Tail-dependence coefficients; exact values where the family admits
/// them, the numeric limit otherwise.
inline TailDependence tail_dependence(const CopulaSpec& spec) {
    spec.validate();
    TailDependence td;
    switch (spec.family) {
        case Family::independence:
        case Family::gaussian:  // attracted to the independent copula
        case Family::frank:
            return td;
        case Family::student_t: {
            const double lam =
                2.0 * stats::t_cdf(-std::sqrt((spec.nu + 1.0) * (1.0 - spec.rho) /
                                              (1.0 + spec.rho)),
                                   spec.nu + 1.0);
            td.lambda_lower = td.lambda_upper = lam;
            return td;
        }
        case Family::clayton:
            td.lambda_lower = std::pow(2.0, -1.0 / spec.theta);
            return td;
        case Family::gumbel:
            td.lambda_upper = 2.0 - std::pow(2.0, 1.0 / spec.theta);
            return td;
    }
    return tail_dependence_numeric(spec);
}

}  // namespace tailkit::copula

#pragma once

#include <cmath>
#include <limits>

#include "tailkit/core.hpp"

namespace tailkit::stats {

inline double norm_pdf(double x) {
    constexpr double inv_sqrt_2pi = 0.39894228040143267793994605993438;
    return inv_sqrt_2pi * std::exp(-0.5 * x * x);
}

inline double norm_cdf(double x) {
    return 0.5 * std::erfc(-x * 0.70710678118654752440084436210485);
}

inline double norm_sf(double x) {
    return 0.5 * std::erfc(x * 0.70710678118654752440084436210485);
}

/// Standard normal quantile. Acklam's rational approximation polished
/// with one Halley step against the erfc-based CDF.
inline double norm_ppf(double p) {
    require(p > 0.0 && p < 1.0, "norm_ppf: p must be in (0,1)");
    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                               2.445134137142996e+00, 3.754408661907416e+00};
    const double plow = 0.02425, phigh = 1.0 - plow;
    double x;
    if (p < plow) {
        const double q = std::sqrt(-2.0 * std::log(p));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    } else if (p <= phigh) {
        const double q = p - 0.5, r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    } else {
        const double q = std::sqrt(-2.0 * std::log(1.0 - p));
        x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    const double e = norm_cdf(x) - p;
    const double u = e / norm_pdf(x);
    x -= u / (1.0 + 0.5 * x * u);
    return x;
}

namespace detail {

/// Regularized lower incomplete gamma P(a, x); series + continued fraction.
inline double gammp(double a, double x) {
    require(a > 0.0 && x >= 0.0, "gammp: bad arguments");
    if (x == 0.0) return 0.0;
    const double lg = std::lgamma(a);
    if (x < a + 1.0) {
        double ap = a, sum = 1.0 / a, del = sum;
        for (int i = 0; i < 500; ++i) {
            ap += 1.0;
            del *= x / ap;
            sum += del;
            if (std::abs(del) < std::abs(sum) * 1e-16) break;
        }
        return sum * std::exp(-x + a * std::log(x) - lg);
    }
    // Lentz continued fraction for Q(a, x)
    const double fpmin = 1e-300;
    double b = x + 1.0 - a, c = 1.0 / fpmin, d = 1.0 / b, h = d;
    for (int i = 1; i <= 500; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < fpmin) d = fpmin;
        c = b + an / c;
        if (std::abs(c) < fpmin) c = fpmin;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 1e-16) break;
    }
    const double q = std::exp(-x + a * std::log(x) - lg) * h;
    return 1.0 - q;
}

inline double gammq(double a, double x) { return 1.0 - gammp(a, x); }

/// Continued fraction for the regularized incomplete beta function.
inline double betacf(double a, double b, double x) {
    const double fpmin = 1e-300;
    const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
    double c = 1.0, d = 1.0 - qab * x / qap;
    if (std::abs(d) < fpmin) d = fpmin;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= 500; ++m) {
        const int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < fpmin) d = fpmin;
        c = 1.0 + aa / c;
        if (std::abs(c) < fpmin) c = fpmin;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < fpmin) d = fpmin;
        c = 1.0 + aa / c;
        if (std::abs(c) < fpmin) c = fpmin;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 1e-16) break;
    }
    return h;
}

/// Regularized incomplete beta I_x(a, b).
inline double betai(double a, double b, double x) {
    require(x >= 0.0 && x <= 1.0, "betai: x outside [0,1]");
    if (x == 0.0) return 0.0;
    if (x == 1.0) return 1.0;
    const double bt = std::exp(std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                               a * std::log(x) + b * std::log1p(-x));
    if (x < (a + 1.0) / (a + b + 2.0)) return bt * betacf(a, b, x) / a;
    return 1.0 - bt * betacf(b, a, 1.0 - x) / b;
}

}  // namespace detail

/// chi-square survival function P(X > x) with k degrees of freedom.
inline double chi2_sf(double x, double k) {
    require(k > 0.0, "chi2_sf: k > 0 required");
    if (x <= 0.0) return 1.0;
    return detail::gammq(0.5 * k, 0.5 * x);
}

inline double chi2_cdf(double x, double k) { return 1.0 - chi2_sf(x, k); }

/// chi-square quantile by bracketing + bisection, polished with Newton.
inline double chi2_ppf(double p, double k) {
    require(p > 0.0 && p < 1.0, "chi2_ppf: p must be in (0,1)");
    require(k > 0.0, "chi2_ppf: k > 0 required");
    double lo = 0.0, hi = k + 10.0 * std::sqrt(2.0 * k) + 10.0;
    while (chi2_cdf(hi, k) < p) hi *= 2.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (chi2_cdf(mid, k) < p)
            lo = mid;
        else
            hi = mid;
        if (hi - lo <= 1e-14 * (1.0 + hi)) break;
    }
    return 0.5 * (lo + hi);
}

inline double t_pdf(double x, double nu) {
    require(nu > 0.0, "t_pdf: nu > 0 required");
    const double lg = std::lgamma(0.5 * (nu + 1.0)) - std::lgamma(0.5 * nu) -
                      0.5 * std::log(nu * 3.14159265358979323846);
    return std::exp(lg - 0.5 * (nu + 1.0) * std::log1p(x * x / nu));
}

/// Student-t CDF via the regularized incomplete beta function.
inline double t_cdf(double x, double nu) {
    require(nu > 0.0, "t_cdf: nu > 0 required");
    if (x == 0.0) return 0.5;
    const double a = 0.5 * detail::betai(0.5 * nu, 0.5, nu / (nu + x * x));
    return x > 0.0 ? 1.0 - a : a;
}

/// Student-t quantile: Hill's expansion around the normal quantile as
/// the starting point, then bracket-guarded Newton on the CDF.
inline double t_ppf(double p, double nu) {
    require(p > 0.0 && p < 1.0, "t_ppf: p must be in (0,1)");
    require(nu > 0.0, "t_ppf: nu > 0 required");
    if (p == 0.5) return 0.0;
    const bool upper = p > 0.5;
    const double pt = upper ? p : 1.0 - p;

    const double z = norm_ppf(pt);
    const double z2 = z * z;
    double x = z + (z2 + 1.0) * z / (4.0 * nu) +
               ((5.0 * z2 + 16.0) * z2 + 3.0) * z / (96.0 * nu * nu) +
               (((3.0 * z2 + 19.0) * z2 + 17.0) * z2 - 15.0) * z /
                   (384.0 * nu * nu * nu);
    if (!(x > 0.0) || !std::isfinite(x)) x = 1.0;

    double lo = 0.0, hi = x;
    while (t_cdf(hi, nu) < pt && hi < 1e300) {
        lo = hi;
        hi = hi * 2.0 + 1.0;
    }
    if (x <= lo || x >= hi) x = 0.5 * (lo + hi);
    for (int i = 0; i < 80; ++i) {
        const double f = t_cdf(x, nu) - pt;
        if (f > 0.0)
            hi = std::min(hi, x);
        else
            lo = std::max(lo, x);
        const double d = t_pdf(x, nu);
        double xn = d > 0.0 ? x - f / d : 0.5 * (lo + hi);
        if (!(xn > lo && xn < hi)) xn = 0.5 * (lo + hi);
        const bool done = std::abs(xn - x) <= 1e-14 * (1.0 + std::abs(xn));
        x = xn;
        if (done) break;
    }
    return upper ? x : -x;
}

/// Kolmogorov limit law survival function
/// Q(r) = 2 sum_{k>=1} (-1)^{k-1} exp(-2 k^2 r^2).
inline double kolmogorov_sf(double r) {
    if (r <= 1e-10) return 1.0;
    if (r < 0.755) {
        // theta-function form converges fast for small r
        const double pi = 3.14159265358979323846;
        const double t = pi * pi / (8.0 * r * r);
        double cdf = 0.0;
        for (int k = 1; k <= 41; k += 2) cdf += std::exp(-t * k * k);
        cdf *= std::sqrt(2.0 * pi) / r;
        double sf = 1.0 - cdf;
        if (sf < 0.0) sf = 0.0;
        return sf;
    }
    double s = 0.0;
    double sign = 1.0;
    for (int k = 1; k <= 100; ++k) {
        const double term = std::exp(-2.0 * k * k * r * r);
        s += sign * term;
        sign = -sign;
        if (term < 1e-18) break;
    }
    const double sf = 2.0 * s;
    return sf < 0.0 ? 0.0 : (sf > 1.0 ? 1.0 : sf);
}

}  // namespace tailkit::stats

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace tailkit {

/// Error thrown by all tailkit operations on contract violations or
/// numerical failure. Message is meant to be machine-printable as-is.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

[[noreturn]] inline void fail(const std::string& msg) { throw Error(msg); }

inline void require(bool cond, const std::string& msg) {
    if (!cond) fail(msg);
}

/// Sign/unit convention of the values held by a ReturnSeries.
/// loss means positive values are losses.
enum class Convention { price, simple_return, log_return, loss };

inline std::string to_string(Convention c) {
    switch (c) {
        case Convention::price: return "price";
        case Convention::simple_return: return "simple-return";
        case Convention::log_return: return "log-return";
        case Convention::loss: return "loss";
    }
    return "?";
}

inline Convention convention_from_string(const std::string& s) {
    if (s == "price") return Convention::price;
    if (s == "simple-return" || s == "simple_return") return Convention::simple_return;
    if (s == "log-return" || s == "log_return") return Convention::log_return;
    if (s == "loss") return Convention::loss;
    fail("unknown convention: " + s);
}

/// Ordered numeric observations, optionally timestamped.
/// Invariants: values finite, length >= 1, timestamps (when present)
/// strictly increasing and aligned with values.
struct ReturnSeries {
    std::vector<std::string> timestamps;  // empty = no timestamps
    std::vector<double> values;
    Convention convention = Convention::simple_return;

    std::size_t size() const { return values.size(); }

    void validate() const {
        require(!values.empty(), "series: length >= 1 required");
        for (double v : values)
            require(std::isfinite(v), "series: values must be finite");
        if (!timestamps.empty()) {
            require(timestamps.size() == values.size(),
                    "series: timestamps/values length mismatch");
            for (std::size_t i = 1; i < timestamps.size(); ++i)
                require(timestamps[i - 1] < timestamps[i],
                        "series: timestamps must be strictly increasing");
        }
    }
};

/// Sample moments. std uses the n-1 divisor; skewness and kurtosis are
/// the plug-in moment ratios (kurtosis raw: normal -> 3, not excess).
struct SummaryStats {
    std::size_t n = 0;
    double mean = 0.0;
    double std = 0.0;
    double skewness = 0.0;
    double kurtosis = 0.0;
};

namespace detail {

inline double mean_of(const std::vector<double>& x) {
    double s = 0.0;
    for (double v : x) s += v;
    return s / static_cast<double>(x.size());
}

// central moments m2..m4 with divisor n
inline void central_moments(const std::vector<double>& x, double& m2, double& m3,
                            double& m4) {
    const double mu = mean_of(x);
    m2 = m3 = m4 = 0.0;
    for (double v : x) {
        const double d = v - mu;
        const double d2 = d * d;
        m2 += d2;
        m3 += d2 * d;
        m4 += d2 * d2;
    }
    const double n = static_cast<double>(x.size());
    m2 /= n;
    m3 /= n;
    m4 /= n;
}

}  // namespace detail

inline double sample_mean(const std::vector<double>& x) {
    require(!x.empty(), "mean: empty sample");
    return detail::mean_of(x);
}

/// Unbiased sample variance (divisor n-1).
inline double sample_variance(const std::vector<double>& x) {
    require(x.size() >= 2, "variance: need n >= 2");
    const double mu = detail::mean_of(x);
    double s = 0.0;
    for (double v : x) s += (v - mu) * (v - mu);
    return s / static_cast<double>(x.size() - 1);
}

inline double sample_std(const std::vector<double>& x) {
    return std::sqrt(sample_variance(x));
}

/// Skewness needs n >= 3 and kurtosis n >= 4; below that the fields stay
/// NaN. A constant series is an error once higher moments are requested.
inline SummaryStats summary_stats(const ReturnSeries& series) {
    const auto& x = series.values;
    require(x.size() >= 2, "summary_stats: need n >= 2");
    SummaryStats s;
    s.n = x.size();
    s.mean = detail::mean_of(x);
    s.std = sample_std(x);
    s.skewness = s.kurtosis = std::numeric_limits<double>::quiet_NaN();
    if (x.size() >= 3) {
        double m2, m3, m4;
        detail::central_moments(x, m2, m3, m4);
        require(m2 > 0.0, "summary_stats: constant series, higher moments undefined");
        s.skewness = m3 / std::pow(m2, 1.5);
        if (x.size() >= 4) s.kurtosis = m4 / (m2 * m2);
    }
    return s;
}

enum class ReturnMode { simple, log };

/// Prices -> returns. simple: P_t/P_{t-1} - 1, log: ln(P_t/P_{t-1}).
/// Output is one observation shorter than the input.
inline ReturnSeries to_returns(const ReturnSeries& series, ReturnMode mode) {
    require(series.convention == Convention::price, "to_returns: input must be prices");
    const auto& p = series.values;
    require(p.size() >= 2, "to_returns: need at least two prices");
    ReturnSeries out;
    out.convention =
        mode == ReturnMode::simple ? Convention::simple_return : Convention::log_return;
    out.values.reserve(p.size() - 1);
    for (std::size_t t = 1; t < p.size(); ++t) {
        if (mode == ReturnMode::simple) {
            require(p[t - 1] != 0.0, "to_returns: zero price");
            out.values.push_back(p[t] / p[t - 1] - 1.0);
        } else {
            require(p[t] > 0.0 && p[t - 1] > 0.0,
                    "to_returns: log mode requires positive prices");
            out.values.push_back(std::log(p[t] / p[t - 1]));
        }
    }
    if (!series.timestamps.empty())
        out.timestamps.assign(series.timestamps.begin() + 1, series.timestamps.end());
    return out;
}

/// Negate a return series into losses (positive = loss).
inline ReturnSeries to_losses(const ReturnSeries& series) {
    require(series.convention == Convention::simple_return ||
                series.convention == Convention::log_return ||
                series.convention == Convention::loss,
            "to_losses: input must be returns or losses");
    ReturnSeries out = series;
    if (series.convention != Convention::loss) {
        for (double& v : out.values) v = -v;
        out.convention = Convention::loss;
    }
    return out;
}

/// Empirical quantile min{ x : F_n(x) >= p } for p in (0, 1].
inline double empirical_quantile(std::vector<double> x, double p) {
    require(!x.empty(), "empirical_quantile: empty sample");
    require(p > 0.0 && p <= 1.0, "empirical_quantile: p must be in (0,1]");
    std::sort(x.begin(), x.end());
    const double np = p * static_cast<double>(x.size());
    std::size_t k = static_cast<std::size_t>(std::ceil(np));
    if (k < 1) k = 1;
    if (k > x.size()) k = x.size();
    return x[k - 1];
}

inline double empirical_quantile(const ReturnSeries& series, double p) {
    return empirical_quantile(series.values, p);
}

/// Mean ranks in 1..n, ties get the average rank.
inline std::vector<double> mean_ranks(const std::vector<double>& x) {
    const std::size_t n = x.size();
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(),
              [&x](std::size_t a, std::size_t b) { return x[a] < x[b]; });
    std::vector<double> r(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && x[idx[j + 1]] == x[idx[i]]) ++j;
        const double avg = 0.5 * (static_cast<double>(i + 1) + static_cast<double>(j + 1));
        for (std::size_t k = i; k <= j; ++k) r[idx[k]] = avg;
        i = j + 1;
    }
    return r;
}

inline double pearson_correlation(const std::vector<double>& x,
                                  const std::vector<double>& y) {
    require(x.size() == y.size(), "pearson: length mismatch");
    require(x.size() >= 2, "pearson: need n >= 2");
    const double mx = detail::mean_of(x), my = detail::mean_of(y);
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
        syy += (y[i] - my) * (y[i] - my);
    }
    require(sxx > 0.0 && syy > 0.0, "pearson: constant input");
    return sxy / std::sqrt(sxx * syy);
}

/// Kendall tau-a: ties count as neither concordant nor discordant,
/// denominator n(n-1)/2.
inline double kendall_tau(const std::vector<double>& x, const std::vector<double>& y) {
    require(x.size() == y.size(), "kendall: length mismatch");
    const std::size_t n = x.size();
    require(n >= 2, "kendall: need n >= 2");
    long long nc = 0, nd = 0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double dx = x[i] - x[j];
            const double dy = y[i] - y[j];
            const double s = dx * dy;
            if (s > 0.0)
                ++nc;
            else if (s < 0.0)
                ++nd;
        }
    }
    const double pairs = 0.5 * static_cast<double>(n) * static_cast<double>(n - 1);
    return static_cast<double>(nc - nd) / pairs;
}

/// Spearman rho = 1 - 6 sum d_i^2 / (n (n^2-1)) on mean ranks.
inline double spearman_rho(const std::vector<double>& x, const std::vector<double>& y) {
    require(x.size() == y.size(), "spearman: length mismatch");
    const std::size_t n = x.size();
    require(n >= 2, "spearman: need n >= 2");
    const auto rx = mean_ranks(x);
    const auto ry = mean_ranks(y);
    double d2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) d2 += (rx[i] - ry[i]) * (rx[i] - ry[i]);
    const double dn = static_cast<double>(n);
    return 1.0 - 6.0 * d2 / (dn * (dn * dn - 1.0));
}

struct RankCorrelations {
    double pearson = 0.0;
    double kendall = 0.0;
    double spearman = 0.0;
};

inline RankCorrelations rank_correlations(const ReturnSeries& x, const ReturnSeries& y) {
    RankCorrelations r;
    r.pearson = pearson_correlation(x.values, y.values);
    r.kendall = kendall_tau(x.values, y.values);
    r.spearman = spearman_rho(x.values, y.values);
    return r;
}

}  // namespace tailkit
